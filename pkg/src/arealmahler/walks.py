"""Monte Carlo estimators for moments and areal Mahler measures over the bidisk.

Disk points are area-uniform: radius sqrt(u) with u uniform on [0, 1], angle
uniform.  (Drawing the radius itself uniformly would over-weight the centre.)

Each batch owns a Philox stream spawned from one SeedSequence, so results
depend only on (seed, samples, batch) and not on how batches are scheduled.
The log estimators use antithetic pairs (X, Y), (-X, -Y): both families are
invariant in law under that flip.  The standard error is the standard
deviation of the batch means over sqrt(batch).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidSpecError

CHUNK = 1 << 18


@dataclass(frozen=True)
class MCConfig:
    """``batch`` is the number of independent batches the samples are split into."""

    samples: int
    seed: int = 0
    batch: int = 64

    def __post_init__(self):
        if self.samples < 1 or self.batch < 1 or self.samples < self.batch:
            raise InvalidSpecError("need samples >= batch >= 1")
        if not 0 <= self.seed < 2**64:
            raise InvalidSpecError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    std_error: float
    samples_used: int
    rejected: int = 0


def make_streams(seed: int, n: int) -> list[np.random.Generator]:
    """n independent Philox generators spawned from one seed."""
    return [np.random.Generator(np.random.Philox(ss)) for ss in np.random.SeedSequence(seed).spawn(n)]


def sample_disk(rng: np.random.Generator, size: int | None = None):
    """Area-uniform points on the unit disk."""
    u = rng.random(size)
    th = rng.random(size)
    return np.sqrt(u) * np.exp(2j * np.pi * th)


def sample_circle(rng: np.random.Generator, size: int | None = None):
    """Uniform points on the unit circle."""
    return np.exp(2j * np.pi * rng.random(size))


def _batch_sizes(cfg: MCConfig) -> list[int]:
    base, extra = divmod(cfg.samples, cfg.batch)
    return [base + (1 if i < extra else 0) for i in range(cfg.batch)]


def _run(values_fn, cfg: MCConfig, antithetic: bool, workers: int | None) -> MCEstimate:
    """values_fn(x, y) -> real array; pairs (x, y), (-x, -y) when antithetic."""
    sizes = _batch_sizes(cfg)
    streams = make_streams(cfg.seed, cfg.batch)

    def one_batch(args):
        rng, n = args
        total = 0.0
        pair_sum = 0.0
        pair_sq = 0.0
        pairs = 0
        rejected = 0
        done = 0
        while done < n:
            m = min(CHUNK, n - done)
            draws = (m + 1) // 2 if antithetic else m
            x = sample_disk(rng, draws)
            y = sample_disk(rng, draws)
            v = values_fn(x, y)
            bad = ~np.isfinite(v)
            while bad.any():
                # measure-zero events (log of an exact zero); redraw those points
                rejected += int(bad.sum())
                x[bad] = sample_disk(rng, int(bad.sum()))
                y[bad] = sample_disk(rng, int(bad.sum()))
                v = values_fn(x, y)
                bad = ~np.isfinite(v)
            if antithetic:
                w = values_fn(-x, -y)
                bad = ~np.isfinite(w)
                if bad.any():
                    rejected += int(bad.sum())
                    w[bad] = v[bad]
                unit = 0.5 * (v + w)
                # odd chunk: the last pair contributes only its first member
                total += float(np.sum(v)) + float(np.sum(w[: m // 2]))
            else:
                unit = v
                total += float(np.sum(v))
            pair_sum += float(np.sum(unit))
            pair_sq += float(np.sum(unit * unit))
            pairs += unit.size
            done += m
        return total / n, pair_sum, pair_sq, pairs, rejected

    jobs = list(zip(streams, sizes))
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one_batch, jobs))
    else:
        results = [one_batch(j) for j in jobs]
    means = np.array([r[0] for r in results])
    weights = np.array(sizes, dtype=float)
    mean = math.fsum(means * weights) / cfg.samples
    rejected = sum(r[4] for r in results)
    if cfg.batch >= 2:
        se = float(np.std(means, ddof=1) / math.sqrt(cfg.batch))
    else:
        _, s1, s2, n, _ = results[0]
        var = max(s2 / n - (s1 / n) ** 2, 0.0) * n / max(n - 1, 1)
        se = math.sqrt(var / n)
    return MCEstimate(mean, se, cfg.samples, rejected)


def _kval(k) -> float:
    k = getattr(k, "k", k)
    k = abs(complex(k)) if isinstance(k, complex) else float(k)
    if not (k >= 0 and math.isfinite(k)):
        raise DomainError("k must be finite and >= 0")
    return k


def mc_areal_mahler_xyk(k, cfg: MCConfig, workers: int | None = None) -> MCEstimate:
    """E log|X + Y + k| for X, Y area-uniform on the disk."""
    k = _kval(k)
    with np.errstate(divide="ignore"):
        return _run(lambda x, y: np.log(np.abs(x + y + k)), cfg, True, workers)


def _qk_values(k: float):
    lk = math.log(k)

    def f(x, y):
        r = np.abs((x + 1) * (y + 1)) / k
        with np.errstate(divide="ignore"):
            logp = np.log(np.maximum(r, 1.0))
        return lk + logp + 0.5 * (np.minimum(r * r, 1.0) - 1.0)

    return f


def mc_areal_mahler_qk(k, cfg: MCConfig, workers: int | None = None) -> MCEstimate:
    """E over (x, y) in the bidisk of log k + log+|f/k| + (min(|f/k|^2, 1) - 1)/2, f = (x+1)(y+1).

    The z-integral of log|f + kz| over the disk is done exactly by the areal
    Jensen formula, so only x and y are sampled.
    """
    k = _kval(k)
    if k == 0:
        raise DomainError("needs k > 0")
    return _run(_qk_values(k), cfg, True, workers)


def mc_areal_mahler_qk_naive(k, cfg: MCConfig) -> MCEstimate:
    """E log|(x+1)(y+1) + kz| with all three variables sampled (variance baseline)."""
    k = _kval(k)
    if k == 0:
        raise DomainError("needs k > 0")
    sizes = _batch_sizes(cfg)
    streams = make_streams(cfg.seed, cfg.batch)
    means = []
    for rng, n in zip(streams, sizes):
        x = sample_disk(rng, n)
        y = sample_disk(rng, n)
        z = sample_disk(rng, n)
        means.append(float(np.mean(np.log(np.abs((x + 1) * (y + 1) + k * z)))))
    means = np.array(means)
    mean = math.fsum(means * np.array(sizes, dtype=float)) / cfg.samples
    se = float(np.std(means, ddof=1) / math.sqrt(cfg.batch)) if cfg.batch >= 2 else math.nan
    return MCEstimate(mean, se, cfg.samples)


def mc_moment(s: float, k, family: str, cfg: MCConfig, workers: int | None = None) -> MCEstimate:
    """E|X + Y + k|^s (``xyk``) or E|(X+1)(Y+1)|^s (``qk-f-part``) over the bidisk."""
    s = float(s)
    if not s > -2:
        raise DomainError("moments need s > -2")
    if family not in ("xyk", "qk-f-part"):
        raise InvalidSpecError(f"unknown family {family!r}")
    if s == 0:
        return MCEstimate(1.0, 0.0, cfg.samples)
    k = _kval(k)
    if family == "xyk":
        fn = lambda x, y: np.abs(x + y + k) ** s  # noqa: E731
    else:
        fn = lambda x, y: np.abs((x + 1) * (y + 1)) ** s  # noqa: E731
    with np.errstate(divide="ignore"):
        return _run(fn, cfg, True, workers)
