"""Truncated Euler product Phi(z) and the main-term prediction for |E(N, m)|.

Phi(z) = Gamma(z+1)**-1 * prod_p (1 - 1/p)**z * (1 - z/p)**-1 has a pole at
z = 2 (the prime p = 2), so evaluation is restricted to [0, 2 - margin].
The prediction for the size of the level set {n <= N : Omega(n) = m} is

    (N / log N) * Phi(m / loglog N) * (loglog N)**(m-1) / (m-1)!

valid for 1 <= m <= (2 - eps) * loglog N, with a relative error that decays
like 1/loglog N inside that range. All products and factorials are handled
in log space.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import exp1

from .sieve import build_sieve

DEFAULT_CUTOFF = 10**6
DEFAULT_MARGIN = 0.05


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0 (absolute error well below 1e-12 on [0.5, 50])."""
    if x <= 0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


@dataclass
class PhiEvaluator:
    """Primes up to `cutoff` plus tail bookkeeping for the Euler product.

    The neglected remainder after the built-in tail correction is
    O(1/cutoff**tail_order); `tail_bound` reports a concrete bound.
    """

    cutoff: int
    primes: np.ndarray
    margin: float = DEFAULT_MARGIN
    tail_order: int = 2

    def __post_init__(self):
        self._inv_p = 1.0 / self.primes.astype(np.float64)
        self._log_1m_inv_p = np.log1p(-self._inv_p)
        # sum_{p > cutoff} 1/p**2 via the prime-density integral
        # int_P^inf dx / (x**2 log x) = E1(log P).
        self._tail_p2 = float(exp1(math.log(self.cutoff)))

    def tail_bound(self, z: float) -> float:
        """Bound on the error left after the second-order tail correction."""
        cubic = (abs(z) ** 3 + abs(z)) / (6.0 * self.cutoff**2)
        density = abs(z * z - z) / 2.0 * self._tail_p2 / math.log(self.cutoff)
        return cubic + density


def phi_evaluator(
    cutoff: int = DEFAULT_CUTOFF,
    margin: float = DEFAULT_MARGIN,
    primes: np.ndarray | None = None,
) -> PhiEvaluator:
    """Build a PhiEvaluator, sieving primes up to `cutoff` unless provided."""
    if cutoff < 2:
        raise ValueError(f"cutoff must be >= 2, got {cutoff}")
    if not 0 < margin < 2:
        raise ValueError(f"margin must lie in (0, 2), got {margin}")
    if primes is None:
        primes = build_sieve(cutoff).primes
    else:
        primes = primes[primes <= cutoff]
    return PhiEvaluator(cutoff, np.asarray(primes, dtype=np.int64), margin)


def phi(ev: PhiEvaluator, z: float) -> float:
    """Evaluate Phi(z) from the truncated product plus a second-order tail term."""
    zmax = 2.0 - ev.margin
    if not 0.0 <= z <= zmax:
        raise ValueError(
            f"z={z} outside [0, {zmax}]; the product has a pole at the prime 2"
        )
    log_terms = z * ev._log_1m_inv_p - np.log1p(-z * ev._inv_p)
    tail = (z * z - z) / 2.0 * ev._tail_p2
    return math.exp(-log_gamma(z + 1.0) + float(log_terms.sum()) + tail)


@dataclass
class SathePrediction:
    N: int
    m: int
    z: float  # m / loglog N
    main_term: float  # NaN when z is inside the pole margin
    in_range: bool  # m <= (2 - eps) * loglog N


_default_ev: PhiEvaluator | None = None


def _get_default_ev() -> PhiEvaluator:
    global _default_ev
    if _default_ev is None:
        _default_ev = phi_evaluator()
    return _default_ev


def sathe_predict(
    N: int, m: int, eps: float, ev: PhiEvaluator | None = None
) -> SathePrediction:
    """Main-term prediction for |E(N, m)|.

    `in_range` records whether m <= (2 - eps) * loglog N, the validity window
    of the asymptotic; outside the Phi domain (z within the pole margin) the
    main term is returned as NaN.
    """
    if N < 3:
        raise ValueError(f"N must be >= 3 so loglog N > 0, got {N}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if ev is None:
        ev = _get_default_ev()
    loglog = math.log(math.log(N))
    z = m / loglog
    in_range = m <= (2.0 - eps) * loglog
    if z <= 2.0 - ev.margin:
        log_main = (
            math.log(N)
            - math.log(math.log(N))
            + math.log(phi(ev, z))
            + (m - 1) * math.log(loglog)
            - log_gamma(float(m))
        )
        main_term = math.exp(log_main)
    else:
        main_term = math.nan
    return SathePrediction(N, m, z, main_term, in_range)


def delta_eps(eps: float) -> float:
    """(2 - exp(-eps) * (1 + log 2 + eps)) / 4, the norm-decay exponent."""
    if eps < 0:
        raise ValueError(f"eps must be >= 0, got {eps}")
    return (2.0 - math.exp(-eps) * (1.0 + math.log(2.0) + eps)) / 4.0


def l2_exponent_y(y: float) -> float:
    """Exponent of log N in the L2 norm of the homogeneous part at m = (e**y / 2) loglog N."""
    return (math.exp(y) * (1.0 + math.log(2.0) - y) - 2.0) / 4.0
