"""Smallest-prime-factor sieve and level sets of the prime-divisor count.

Everything downstream (exact moments, Sathe-style predictions, chaos
sampling) is driven by the tables built here: smallest prime factors,
Omega(n) = number of prime factors with multiplicity, squarefree flags,
and the level sets E(N, m) = {n <= N : Omega(n) = m}.
"""

from dataclasses import dataclass, field
from math import isqrt

import numpy as np

# Hard cap on the sieve size; keeps the spf table (int32) plus derived
# tables within a few GB of commodity memory.
MAX_SIEVE_LIMIT = 10**8


class CapacityError(ValueError):
    """Requested sieve exceeds the configured memory budget."""


@dataclass
class FactorSieve:
    """Immutable factorization tables for [1, limit].

    Attributes
    ----------
    limit : int
        Upper bound N (inclusive).
    spf : np.ndarray
        spf[n] is the smallest prime dividing n for n >= 2; spf[1] = 1,
        spf[0] = 0. spf[p] == p exactly for primes.
    omega : np.ndarray
        omega[n] = Omega(n), prime factors counted with multiplicity.
    squarefree : np.ndarray
        Boolean; True where no p**2 divides n. squarefree[1] is True.
    primes : np.ndarray
        Ascending array of all primes <= limit.
    """

    limit: int
    spf: np.ndarray
    omega: np.ndarray
    squarefree: np.ndarray
    primes: np.ndarray
    _totients: np.ndarray | None = field(default=None, repr=False)

    def totients(self) -> np.ndarray:
        """Euler phi table over [0, limit], built lazily from the primes."""
        if self._totients is None:
            phi = np.arange(self.limit + 1, dtype=np.int64)
            for p in self.primes:
                # phi[m] still carries every power of p at this point,
                # so the integer division is exact.
                phi[p::p] = phi[p::p] // p * (p - 1)
            self._totients = phi
        return self._totients


@dataclass
class CountTable:
    """Level-set sizes and sorted members, counts[m] = #{n <= limit : Omega(n) = m}."""

    limit: int
    counts: np.ndarray
    members: list[np.ndarray]


def build_sieve(limit: int) -> FactorSieve:
    """Sieve smallest prime factors up to `limit` and derive Omega/squarefree tables.

    Runs in O(N log log N); rejects limit < 1 or limit > MAX_SIEVE_LIMIT.
    """
    if limit < 1:
        raise CapacityError(f"sieve limit must be >= 1, got {limit}")
    if limit > MAX_SIEVE_LIMIT:
        raise CapacityError(
            f"sieve limit {limit} exceeds the configured cap {MAX_SIEVE_LIMIT}"
        )

    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            # Composites m with smallest factor p satisfy m >= p*p, so
            # marking from p*p catches them all; already-marked entries
            # keep their smaller factor.
            view = spf[p * p :: p]
            view[view == 0] = p
    if limit >= 2:
        rest = np.flatnonzero(spf[2:] == 0).astype(np.int64) + 2
        spf[rest] = rest
        primes = rest
    else:
        primes = np.empty(0, dtype=np.int64)
    spf[0] = 0
    if limit >= 1:
        spf[1] = 1

    omega = _omega_from_spf(spf)
    squarefree = _squarefree_table(limit, primes)
    return FactorSieve(limit, spf, omega, squarefree, primes)


def _omega_from_spf(spf: np.ndarray) -> np.ndarray:
    # Peel one smallest factor per round from every still-composite n;
    # total work is sum of Omega(n), about N loglog N.
    n = spf.size - 1
    omega = np.zeros(n + 1, dtype=np.int8)
    cur = np.arange(n + 1, dtype=np.int32)
    active = np.flatnonzero(cur >= 2)
    while active.size:
        omega[active] += 1
        cur[active] //= spf[cur[active]]
        active = active[cur[active] >= 2]
    return omega


def _squarefree_table(limit: int, primes: np.ndarray) -> np.ndarray:
    squarefree = np.ones(limit + 1, dtype=bool)
    if limit >= 0:
        squarefree[0] = True  # unused slot
    for p in primes[primes <= isqrt(limit)]:
        squarefree[p * p :: p * p] = False
    return squarefree


def factorize(sieve: FactorSieve, n: int) -> list[int]:
    """Prime factorization of n with multiplicity, ascending. factorize(1) = []."""
    if not 1 <= n <= sieve.limit:
        raise ValueError(f"n={n} outside the sieved range [1, {sieve.limit}]")
    out = []
    while n > 1:
        p = int(sieve.spf[n])
        out.append(p)
        n //= p
    return out


def count_table(sieve: FactorSieve) -> CountTable:
    """Group [1, limit] by Omega into sorted member lists with their sizes."""
    om = sieve.omega[1:]
    counts = np.bincount(om).astype(np.int64)
    # Stable sort by Omega keeps members of each level set ascending.
    order = np.argsort(om, kind="stable").astype(np.int64) + 1
    offsets = np.concatenate(([0], np.cumsum(counts)))
    members = [order[offsets[m] : offsets[m + 1]] for m in range(len(counts))]
    return CountTable(sieve.limit, counts, members)


def e_count(table: CountTable, x: int, m: int) -> int:
    """|E(x, m)| = #{n <= x : Omega(n) = m} for any x <= table.limit."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    if not 0 <= x <= table.limit:
        raise ValueError(f"x={x} outside [0, {table.limit}]")
    if x == 0 or m >= len(table.members):
        return 0
    return int(np.searchsorted(table.members[m], x, side="right"))
