"""Seeded stochastic arrival generators.

Three arrival families share one sampling discipline: a counter-based
Philox stream keyed by (seed, slot) supplies uniforms, and every
distribution is sampled by inverting a precomputed CDF table. Streams
are therefore reproducible regardless of the order slots are evaluated,
and links draw from fixed positions of the per-slot vector, independent
across links.

  * poisson(lam): i.i.d. Poisson(lam) packets per link per slot.
  * file(p, lam): with probability p a burst arrives whose size is
    Poisson(lam/p), else nothing; per-link mean is lam.
  * zipf(lam, support): value v in {0..support-1} with probability
    proportional to (v+1)^-s, the exponent s solved so the mean is lam.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_POISSON_TAIL_EPS = 1e-15
ZIPF_MAX_EXPONENT = 64.0


@dataclass(frozen=True)
class TrafficModel:
    kind: str  # none | poisson | file | zipf
    lam: float = 0.0
    file_prob: float = 0.1
    support: int = 1000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("none", "poisson", "file", "zipf"):
            raise ValueError(f"unknown traffic kind {self.kind!r}")
        if self.kind != "none" and self.lam <= 0:
            raise ValueError("mean arrival rate must be positive")
        if self.kind == "file" and not (0 < self.file_prob <= 1):
            raise ValueError("file arrival probability must be in (0,1]")
        if self.kind == "zipf":
            if self.support < 2:
                raise ValueError("zipf support must have at least two values")
            if self.lam >= (self.support - 1) / 2:
                raise ValueError(
                    "zipf mean must be below the uniform-support mean "
                    f"{(self.support - 1) / 2}"
                )


def _poisson_cdf(lam: float) -> np.ndarray:
    """CDF table of Poisson(lam), truncated where the tail is < 1e-15."""
    pmf = math.exp(-lam)
    cdf = [pmf]
    k = 0
    while 1.0 - cdf[-1] > _POISSON_TAIL_EPS:
        k += 1
        pmf *= lam / k
        cdf.append(cdf[-1] + pmf)
        if k > 10_000:
            break
    return np.asarray(cdf)


def _zipf_mean(s: float, support: int) -> float:
    v = np.arange(support, dtype=np.float64)
    p = (v + 1.0) ** (-s)
    return float((v * p).sum() / p.sum())


def solve_zipf_exponent(lam: float, support: int = 1000) -> float:
    """Exponent s such that the mean of P(v) ~ (v+1)^-s on {0..support-1}
    equals lam to within 1e-9 (bisection; the mean is strictly decreasing
    in s, so the root is unique)."""
    if not (0 < lam < (support - 1) / 2):
        raise ValueError(
            f"mean {lam} unattainable: must lie in (0, {(support - 1) / 2})"
        )
    lo, hi = 0.0, ZIPF_MAX_EXPONENT
    if _zipf_mean(hi, support) > lam:
        raise ValueError(f"mean {lam} needs an exponent above {ZIPF_MAX_EXPONENT}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        mean = _zipf_mean(mid, support)
        if abs(mean - lam) <= 1e-9:
            return mid
        if mean > lam:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@lru_cache(maxsize=64)
def _tables(kind: str, lam: float, file_prob: float, support: int) -> tuple:
    if kind == "poisson":
        return (_poisson_cdf(lam),)
    if kind == "file":
        return (_poisson_cdf(lam / file_prob),)
    if kind == "zipf":
        s = solve_zipf_exponent(lam, support)
        v = np.arange(support, dtype=np.float64)
        p = (v + 1.0) ** (-s)
        return (np.cumsum(p / p.sum()), s)
    return ()


def zipf_exponent_for(model: TrafficModel) -> float:
    if model.kind != "zipf":
        raise ValueError("exponent is only defined for zipf traffic")
    return _tables(model.kind, model.lam, model.file_prob, model.support)[1]


_local = threading.local()


def _slot_rng(seed: int, slot: int) -> np.random.Generator:
    """Counter-based generator keyed by (seed, slot).

    Streams are identical to constructing a fresh Philox with that key;
    resetting the state of a cached instance just skips the costly
    entropy-pool setup. The cache is thread-local, so concurrent runs
    never share generator state.
    """
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(slot)])
    bg = getattr(_local, "philox", None)
    if bg is None:
        bg = np.random.Philox(key=key)
        _local.philox = bg
    state = bg.state
    state["state"]["counter"] = np.zeros(4, dtype=np.uint64)
    state["state"]["key"] = key
    state["buffer_pos"] = 4
    state["has_uint32"] = 0
    state["uinteger"] = 0
    bg.state = state
    return np.random.Generator(bg)


def sample_arrivals(model: TrafficModel, m: int, slot: int) -> np.ndarray:
    """Per-link arrival counts for one slot (int64, length m)."""
    if model.kind == "none" or m == 0:
        return np.zeros(m, dtype=np.int64)
    rng = _slot_rng(model.seed, slot)
    tables = _tables(model.kind, model.lam, model.file_prob, model.support)
    if model.kind == "poisson":
        u = rng.random(m)
        return np.searchsorted(tables[0], u, side="right").astype(np.int64)
    if model.kind == "file":
        # Two fixed-length draws keep the stream layout independent of
        # outcomes: occurrence first, then burst size.
        occur = rng.random(m) < model.file_prob
        sizes = np.searchsorted(tables[0], rng.random(m), side="right").astype(np.int64)
        return np.where(occur, sizes, 0)
    if model.kind == "zipf":
        u = rng.random(m)
        vals = np.searchsorted(tables[0], u, side="right").astype(np.int64)
        # float rounding can leave cdf[-1] a hair under 1.0
        return np.minimum(vals, model.support - 1)
    raise AssertionError(model.kind)
