"""Monte Carlo estimation of moments of random completely multiplicative sums.

A sample draws independent values at the primes (uniform on the unit circle,
or fair signs for the sign-chaos variant), extends them multiplicatively to
[1, N], and evaluates |sum|^q. Each sample index gets its own counter-based
stream keyed by (master seed, index), so estimates are reproducible and
independent of the worker count; per-batch partial sums are combined in a
fixed order.
"""

import math
import multiprocessing
from dataclasses import dataclass

import numpy as np

from .sieve import FactorSieve

MODELS = ("steinhaus", "rademacher")

# Fixed batch size: per-batch aggregates are identical no matter how batches
# are assigned to workers, which makes the reduction worker-invariant.
BATCH = 2048

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SamplerConfig:
    model: str
    N: int
    seed: int
    samples: int
    workers: int = 1

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass
class ChaosSample:
    model: str
    values: np.ndarray  # index n in [1, N]; slot 0 unused


@dataclass
class MomentEstimate:
    q: float
    mean: float
    stderr: float
    samples: int
    seed: int


@dataclass
class ProjectionRow:
    m: int
    norm: float
    stderr: float
    exceeds: bool


@dataclass
class ProjectionCheck:
    q: float
    asserting: bool  # the norm comparison is only a theorem for q >= 1
    full_norm: float
    full_stderr: float
    rows: list[ProjectionRow]


def _prime_stream(model: str, seed: int, index: int, nprimes: int) -> np.ndarray:
    # Counter-based generator keyed by (seed, sample index): independent
    # streams with no sequential state shared between samples.
    key = np.array([seed & _MASK64, index & _MASK64], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    if model == "steinhaus":
        return np.exp(2j * np.pi * rng.random(nprimes))
    return rng.integers(0, 2, nprimes, dtype=np.int8) * 2 - 1


def _multiplicative_tables(N: int, sieve: FactorSieve):
    """Primes up to N plus (n, spf(n), n/spf(n)) triples for composite n."""
    primes = sieve.primes[sieve.primes <= N]
    ns = np.arange(2, N + 1, dtype=np.int64)
    spf = sieve.spf[2 : N + 1].astype(np.int64)
    comp = ns[spf != ns]
    return primes, comp, sieve.spf[comp].astype(np.int64), comp // sieve.spf[comp]


def _draw_block(payload: dict, start: int, stop: int) -> np.ndarray:
    model = payload["model"]
    N = payload["N"]
    dtype = np.complex128 if model == "steinhaus" else np.int8
    vals = np.ones((stop - start, N + 1), dtype=dtype)
    vals[:, 0] = 0
    primes = payload["primes"]
    if primes.size:
        pv = np.empty((stop - start, primes.size), dtype=dtype)
        for i in range(stop - start):
            pv[i] = _prime_stream(model, payload["seed"], start + i, primes.size)
        vals[:, primes] = pv
    comp = payload["comp"]
    comp_p = payload["comp_p"]
    comp_q = payload["comp_q"]
    for n, p, q in zip(comp, comp_p, comp_q):
        vals[:, n] = vals[:, p] * vals[:, q]
    return vals


def _abs_sums(vals: np.ndarray, cols: np.ndarray) -> np.ndarray:
    if vals.dtype == np.int8:
        s = vals[:, cols].sum(axis=1, dtype=np.int64)
    else:
        s = vals[:, cols].sum(axis=1)
    return np.abs(s).astype(np.float64)


_CTX: dict = {}


def _init_worker(payload: dict) -> None:
    global _CTX
    _CTX = payload


def _run_batch(bi: int):
    p = _CTX
    start = bi * BATCH
    stop = min(p["samples"], start + BATCH)
    vals = _draw_block(p, start, stop)
    kind = p["kind"]
    if kind == "moment":
        x = _abs_sums(vals, p["cols"]) ** p["q"]
        return float(x.sum()), float((x * x).sum())
    if kind == "tail":
        return (int((_abs_sums(vals, p["cols"]) >= p["threshold"]).sum()),)
    if kind == "projection":
        out = []
        for cols in p["col_sets"]:
            x = _abs_sums(vals, cols) ** p["q"]
            out.append((float(x.sum()), float((x * x).sum())))
        return out
    raise ValueError(f"unknown kernel {kind!r}")


def _run_all(cfg: SamplerConfig, payload: dict) -> list:
    nbatches = (cfg.samples + BATCH - 1) // BATCH
    if cfg.workers <= 1 or nbatches <= 1:
        _init_worker(payload)
        return [_run_batch(i) for i in range(nbatches)]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(
        processes=min(cfg.workers, nbatches),
        initializer=_init_worker,
        initargs=(payload,),
    ) as pool:
        # pool.map preserves batch order, so the reduction below is the
        # same float-addition sequence as the sequential path.
        return pool.map(_run_batch, range(nbatches))


def _base_payload(cfg: SamplerConfig, sieve: FactorSieve) -> dict:
    if cfg.N > sieve.limit:
        raise ValueError(f"N={cfg.N} exceeds the sieve limit {sieve.limit}")
    primes, comp, comp_p, comp_q = _multiplicative_tables(cfg.N, sieve)
    return {
        "model": cfg.model,
        "N": cfg.N,
        "seed": cfg.seed,
        "samples": cfg.samples,
        "primes": primes,
        "comp": comp,
        "comp_p": comp_p,
        "comp_q": comp_q,
    }


def _target_columns(cfg: SamplerConfig, sieve: FactorSieve, m: int | None) -> np.ndarray:
    ns = np.arange(1, cfg.N + 1, dtype=np.int64)
    keep = np.ones(cfg.N, dtype=bool)
    if m is not None:
        keep &= sieve.omega[1 : cfg.N + 1] == m
        if not keep.any():
            raise ValueError(f"E({cfg.N}, {m}) is empty")
    if cfg.model == "rademacher":
        # Signs at non-squarefree n carry weight 0 in the sign chaos.
        keep &= sieve.squarefree[1 : cfg.N + 1]
    return ns[keep]


def draw_sample(cfg: SamplerConfig, index: int, sieve: FactorSieve) -> ChaosSample:
    """Realize one random multiplicative function on [1, N] for a sample index."""
    if not 0 <= index < cfg.samples:
        raise ValueError(f"index {index} outside [0, {cfg.samples})")
    payload = _base_payload(cfg, sieve)
    return ChaosSample(cfg.model, _draw_block(payload, index, index + 1)[0])


def estimate_moment(
    cfg: SamplerConfig, q: float, sieve: FactorSieve, m: int | None = None
) -> MomentEstimate:
    """Monte Carlo estimate of E|sum|^q over the full range or one level set."""
    if q <= 0:
        raise ValueError(f"q must be > 0, got {q}")
    if cfg.samples < 2:
        raise ValueError("need at least 2 samples for a standard error")
    payload = _base_payload(cfg, sieve)
    payload.update(kind="moment", q=float(q), cols=_target_columns(cfg, sieve, m))
    sx = 0.0
    sxx = 0.0
    for bx, bxx in _run_all(cfg, payload):
        sx += bx
        sxx += bxx
    n = cfg.samples
    mean = sx / n
    var = max(0.0, (sxx - n * mean * mean) / (n - 1))
    return MomentEstimate(q, mean, math.sqrt(var / n), n, cfg.seed)


def tail_probability(
    cfg: SamplerConfig, threshold: float, sieve: FactorSieve
) -> MomentEstimate:
    """Fraction of samples with |sum| >= threshold, with binomial standard error."""
    if threshold < 0:
        raise ValueError(f"threshold must be >= 0, got {threshold}")
    if cfg.samples < 2:
        raise ValueError("need at least 2 samples for a standard error")
    payload = _base_payload(cfg, sieve)
    payload.update(kind="tail", threshold=float(threshold), cols=_target_columns(cfg, sieve, None))
    hits = 0
    for (k,) in _run_all(cfg, payload):
        hits += k
    n = cfg.samples
    p = hits / n
    return MomentEstimate(1.0, p, math.sqrt(p * (1.0 - p) / n), n, cfg.seed)


def projection_coeff_check(
    cfg: SamplerConfig, q: float, sieve: FactorSieve
) -> ProjectionCheck:
    """Compare every level's q-norm against the full sum's q-norm.

    For q >= 1 the levels can never exceed the full norm (up to noise); rows
    more than 3 combined standard errors above it are flagged. For q < 1 the
    comparison constant is unknown, so the report is informational only.
    """
    if q <= 0:
        raise ValueError(f"q must be > 0, got {q}")
    if cfg.samples < 2:
        raise ValueError("need at least 2 samples for a standard error")
    asserting = q >= 1.0
    om = sieve.omega[1 : cfg.N + 1]
    levels = sorted(int(m) for m in np.unique(om))
    col_sets = [_target_columns(cfg, sieve, None)]
    kept_levels = []
    for m in levels:
        cols = _target_columns(cfg, sieve, m)
        if cfg.model == "rademacher" and cols.size == 0:
            continue
        kept_levels.append(m)
        col_sets.append(cols)
    payload = _base_payload(cfg, sieve)
    payload.update(kind="projection", q=float(q), col_sets=col_sets)
    n = cfg.samples
    sums = [(0.0, 0.0)] * len(col_sets)
    for batch in _run_all(cfg, payload):
        sums = [(a + bx, b + bxx) for (a, b), (bx, bxx) in zip(sums, batch)]

    def norm_and_err(sx: float, sxx: float) -> tuple[float, float]:
        mean = sx / n
        var = max(0.0, (sxx - n * mean * mean) / (n - 1))
        se_mean = math.sqrt(var / n)
        if mean <= 0.0:
            return 0.0, 0.0
        norm = mean ** (1.0 / q)
        return norm, se_mean * norm / (q * mean)

    full_norm, full_se = norm_and_err(*sums[0])
    rows = []
    for m, (sx, sxx) in zip(kept_levels, sums[1:]):
        norm, se = norm_and_err(sx, sxx)
        exceeds = asserting and norm - full_norm > 3.0 * math.hypot(se, full_se)
        rows.append(ProjectionRow(m, norm, se, exceeds))
    return ProjectionCheck(q, asserting, full_norm, full_se, rows)
