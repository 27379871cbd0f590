"""Exact second and fourth moments of the chaos sum and its homogeneous parts.

All moment values here are exact integers: the fourth moment of the full sum
equals the number of quadruples (a, b, c, d) in [1, N]^4 with ab = cd, and
the fourth moment of the degree-m part has a closed form in level-set counts
over coprime pairs. Each fast path has a brute-force oracle next to it.
"""

import math
import os
from dataclasses import dataclass

import numpy as np

from .sieve import CountTable, FactorSieve, e_count

DEFAULT_PAIR_BUDGET = 10**8
BUDGET_ENV = "STEINLAB_PAIR_BUDGET"

BRUTE_ENERGY_CAP = 5000
BRUTE_LEVEL_CAP = 5000

_GCD_BLOCK = 1 << 22  # elements per gcd-matrix block


class BudgetExceededError(ValueError):
    """Operation would exceed the configured pair-scan or brute-force budget."""


def pair_budget(override: int | None = None) -> int:
    """Resolve the pair-operation budget: explicit value, else env, else default."""
    if override is not None:
        return int(override)
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_PAIR_BUDGET


@dataclass
class EnergyResult:
    N: int
    energy: int  # #{(a,b,c,d) in [1,N]^4 : ab = cd}
    method: str  # "fast" | "brute"


@dataclass
class HomogeneousMoment:
    N: int
    m: int
    l2_squared: int  # |E(N, m)|
    l4_fourth: int
    method: str  # "identity" | "brute"


def energy_brute(N: int) -> EnergyResult:
    """Count ab = cd quadruples as sum over products v of r(v)^2, r(v) = #{ab = v}."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if N > BRUTE_ENERGY_CAP:
        raise BudgetExceededError(
            f"energy_brute capped at N <= {BRUTE_ENERGY_CAP}, got {N}"
        )
    r = np.zeros(N * N + 1, dtype=np.int32)
    for a in range(1, N + 1):
        r[a : a * N + 1 : a] += 1
    total = 0
    for i0 in range(0, r.size, _GCD_BLOCK):
        chunk = r[i0 : i0 + _GCD_BLOCK].astype(np.int64)
        total += int(chunk @ chunk)
    return EnergyResult(N, total, "brute")


def energy_fast(N: int, sieve: FactorSieve) -> EnergyResult:
    """O(N) energy via the coprime parametrization a=gu, b=vs, c=gv, d=us.

    Grouping coprime (u, v) by M = max(u, v) gives
    energy = sum_M floor(N/M)**2 * c(M) with c(1) = 1 and c(M) = 2*phi(M).
    """
    if not 1 <= N <= sieve.limit:
        raise ValueError(f"N={N} outside the sieved range [1, {sieve.limit}]")
    phi = sieve.totients()
    M = np.arange(1, N + 1, dtype=np.int64)
    q = N // M
    c = 2 * phi[1 : N + 1]
    c[0] = 1
    return EnergyResult(N, int(np.sum(q * q * c)), "fast")


def l4_asymptotic_fit(Ns: list[int], sieve: FactorSieve) -> tuple[float, float]:
    """Least-squares fit of energy(N)/N^2 against log N; slope targets 12/pi^2."""
    Ns = [int(n) for n in Ns]
    if len(Ns) < 3:
        raise ValueError(f"need at least 3 sample sizes, got {len(Ns)}")
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("sample sizes must be strictly ascending")
    x = np.log(np.array(Ns, dtype=np.float64))
    y = np.array(
        [energy_fast(n, sieve).energy / (float(n) * float(n)) for n in Ns]
    )
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(intercept)


def _counts_at(N: int, table: CountTable) -> np.ndarray:
    return np.array(
        [e_count(table, N, m) for m in range(len(table.members))], dtype=np.int64
    )


def _coprime_below_weights(mem: np.ndarray) -> np.ndarray:
    """w[i] = #{j < i : gcd(mem[j], mem[i]) = 1} for an ascending array."""
    n = mem.size
    w = np.zeros(n, dtype=np.int64)
    rows = max(1, _GCD_BLOCK // max(n, 1))
    cols = np.arange(n)
    for i0 in range(0, n, rows):
        i1 = min(n, i0 + rows)
        g = np.gcd.outer(mem[i0:i1], mem)
        below = cols[None, :] < np.arange(i0, i1)[:, None]
        w[i0:i1] = ((g == 1) & below).sum(axis=1)
    return w


def _pair_scan_cost(counts: np.ndarray, kmax: int) -> int:
    return int(sum(int(c) * int(c) for c in counts[1 : kmax + 1]))


def fourth_moment_homog_identity(
    N: int, m: int, table: CountTable, budget: int | None = None
) -> HomogeneousMoment:
    """Exact fourth moment of the degree-m part via the coprime-pair identity.

    l4 = |E(N,m)|^2 + 2 * sum_{k=1..m} sum_{a<b in E(N,k), gcd(a,b)=1}
         |E(floor(N/b), m-k)|^2.
    """
    if not 1 <= N <= table.limit:
        raise ValueError(f"N={N} outside the table range [1, {table.limit}]")
    if not 0 <= m < len(table.members):
        raise ValueError(f"m={m} outside the table's level range")
    counts = _counts_at(N, table)
    cost = _pair_scan_cost(counts, m)
    cap = pair_budget(budget)
    if cost > cap:
        raise BudgetExceededError(
            f"pair scan needs {cost} operations, budget is {cap}"
        )
    l2 = int(counts[m])
    total = l2 * l2
    for k in range(1, m + 1):
        mem = table.members[k][: counts[k]]
        if mem.size < 2:
            continue
        w = _coprime_below_weights(mem)
        cnt = np.searchsorted(table.members[m - k], N // mem, side="right")
        total += 2 * int(np.sum(w * cnt.astype(np.int64) ** 2))
    return HomogeneousMoment(N, m, l2, total, "identity")


def fourth_moment_homog_all(
    N: int, table: CountTable, budget: int | None = None
) -> list[HomogeneousMoment]:
    """Fourth moments for every level at once, sharing one pair scan per k."""
    if not 1 <= N <= table.limit:
        raise ValueError(f"N={N} outside the table range [1, {table.limit}]")
    counts = _counts_at(N, table)
    mmax = int(np.max(np.nonzero(counts)[0]))
    cost = _pair_scan_cost(counts, mmax)
    cap = pair_budget(budget)
    if cost > cap:
        raise BudgetExceededError(
            f"pair scan needs {cost} operations, budget is {cap}"
        )
    acc = np.zeros(mmax + 1, dtype=np.int64)
    for k in range(1, mmax + 1):
        mem = table.members[k][: counts[k]]
        if mem.size < 2:
            continue
        w = _coprime_below_weights(mem)
        x = N // mem
        for j in range(mmax - k + 1):
            cnt = np.searchsorted(table.members[j], x, side="right")
            acc[k + j] += 2 * int(np.sum(w * cnt.astype(np.int64) ** 2))
    return [
        HomogeneousMoment(
            N, m, int(counts[m]), int(counts[m]) ** 2 + int(acc[m]), "identity"
        )
        for m in range(mmax + 1)
    ]


def fourth_moment_homog_brute(
    N: int, m: int, table: CountTable
) -> HomogeneousMoment:
    """Oracle fourth moment: sum over products v of r_m(v)^2 with r_m over E(N,m)^2."""
    if not 1 <= N <= table.limit:
        raise ValueError(f"N={N} outside the table range [1, {table.limit}]")
    if not 0 <= m < len(table.members):
        raise ValueError(f"m={m} outside the table's level range")
    size = e_count(table, N, m)
    if size > BRUTE_LEVEL_CAP:
        raise BudgetExceededError(
            f"level set of size {size} exceeds the brute cap {BRUTE_LEVEL_CAP}"
        )
    mem = table.members[m][:size]
    if size == 0:
        return HomogeneousMoment(N, m, 0, 0, "brute")
    prods = np.multiply.outer(mem, mem).ravel()
    _, reps = np.unique(prods, return_counts=True)
    return HomogeneousMoment(N, m, size, int(np.sum(reps.astype(np.int64) ** 2)), "brute")


def ratio_4_2(
    N: int, m: int, table: CountTable, budget: int | None = None
) -> float:
    """L4/L2 norm ratio of the degree-m part; >= 1, undefined on empty level sets."""
    hm = fourth_moment_homog_identity(N, m, table, budget=budget)
    if hm.l2_squared == 0:
        raise ValueError(f"E({N}, {m}) is empty; the norm ratio is undefined")
    return hm.l4_fourth**0.25 / math.sqrt(hm.l2_squared)


def projection_beta_l2(N: int, beta: float, table: CountTable) -> int:
    """Squared L2 norm of the projection onto levels m <= beta * loglog N."""
    if N < 3:
        raise ValueError(f"N must be >= 3 so loglog N is defined, got {N}")
    if N > table.limit:
        raise ValueError(f"N={N} outside the table range [1, {table.limit}]")
    if beta <= 0:
        raise ValueError(f"beta must be > 0, got {beta}")
    cutoff = math.floor(beta * math.log(math.log(N)))
    top = min(cutoff, len(table.members) - 1)
    return int(sum(e_count(table, N, m) for m in range(top + 1)))


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def helson_upper_bound(N: int, tol: float = 1e-9) -> tuple[float, float]:
    """Minimize (N - (e - e^2)(N - 1)) / (1 - e^2) over e in (0, 1).

    Returns (c, e_star) with c = sqrt(min / N) < 1, the constant in the
    L1-vs-L2 comparison for the chaos sum.
    """
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")

    def f(e: float) -> float:
        return (N - (e - e * e) * (N - 1)) / (1.0 - e * e)

    a, b = 1e-12, 1.0 - 1e-9
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    e_star = (a + b) / 2.0
    return math.sqrt(f(e_star) / N), e_star
