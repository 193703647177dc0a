"""Thresholding shrinkage estimators for a multivariate normal mean.

Observations are ``z = theta + sigma * noise`` with i.i.d. standard normal
noise in ``d`` coordinates.  The estimators here shrink each coordinate by an
amount proportional to ``|z_i|**(beta-1)`` relative to the pooled magnitude
``D = sum |z_i|**beta``, which both shrinks large coordinates gently and
thresholds small ones to exactly zero (in the positive-part form).  ``beta=2``
with ``a = d - 2`` recovers positive-part James-Stein.

All tuning rules are expressed through :class:`ShrinkConfig`; the constant
``a`` is resolved against the dimension by :func:`resolve_a`.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from ._rng import substream

__all__ = [
    "A_RULES",
    "DEFAULT_BETA_GRID",
    "CanonicalSample",
    "ShrinkConfig",
    "SureValue",
    "batch_estimate",
    "batch_sure",
    "c_beta",
    "moment_constant",
    "monte_carlo_a_beta",
    "resolve_a",
    "select_beta_by_sure",
    "shrink_denominator",
    "sure",
    "threshold_estimate",
    "untruncated_estimate",
]

A_RULES = ("finite", "asymptotic", "eb", "theorem", "fixed")

# beta candidates used when tuning by unbiased risk; the risk formula needs
# beta > 1, and beta > 2 is outside the estimator family, hence a grid in (1, 2]
DEFAULT_BETA_GRID = tuple(1.0 + 0.05 * k for k in range(1, 21))


@dataclass(frozen=True)
class ShrinkConfig:
    """Estimator family member: exponent ``beta`` plus a rule for the constant ``a``.

    ``a_rule`` is one of ``finite`` (recommended finite-sample constant),
    ``asymptotic`` (sparse-regime constant growing like ``d`` times a slowly
    varying factor), ``eb`` (empirical-Bayes choice ``a = d``), ``theorem``
    (the largest constant certified minimax for 1 < beta <= 2), or ``fixed``
    (explicit ``fixed_a``).
    """

    beta: float = 4.0 / 3.0
    a_rule: str = "finite"
    fixed_a: float | None = None

    def __post_init__(self):
        if not (0.0 < self.beta <= 2.0):
            raise ValueError(f"beta must be in (0, 2], got {self.beta}")
        if self.a_rule not in A_RULES:
            raise ValueError(f"a_rule must be one of {A_RULES}, got {self.a_rule!r}")
        if self.a_rule == "fixed":
            if self.fixed_a is None or not (self.fixed_a > 0 and math.isfinite(self.fixed_a)):
                raise ValueError("a_rule 'fixed' needs a positive finite fixed_a")
        elif self.fixed_a is not None:
            raise ValueError("fixed_a is only meaningful with a_rule 'fixed'")


@dataclass
class CanonicalSample:
    """One observation vector ``z`` with known noise scale ``sigma``."""

    z: np.ndarray
    sigma: float = 1.0

    def __post_init__(self):
        self.z = np.asarray(self.z, dtype=float)
        if self.z.ndim != 1 or self.z.size < 1:
            raise ValueError("z must be a nonempty 1-d array")
        if not np.all(np.isfinite(self.z)):
            raise ValueError("z must be finite")
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError(f"sigma must be positive and finite, got {self.sigma}")


@dataclass
class SureValue:
    """Unbiased risk estimate, per coordinate and summed."""

    per_coordinate: np.ndarray
    total: float


def moment_constant(beta):
    """E|N(0,1)|**beta, the absolute moment of the standard normal.

    Finite exactly when beta > -1.
    """
    if not beta > -1.0:
        raise ValueError(f"absolute moment requires beta > -1, got {beta}")
    return 2.0 ** (beta / 2.0) * math.exp(special.gammaln((beta + 1.0) / 2.0)) / math.sqrt(math.pi)


def c_beta(beta):
    """Large-d limit of the Bayes-risk-bound constant divided by d.

    Defined for 1/2 < beta <= 2; equals 2 at beta = 2 and 4/pi at beta = 1.
    """
    if not (0.5 < beta <= 2.0):
        raise ValueError(f"c_beta requires beta in (1/2, 2], got {beta}")
    log_c = 2.0 * special.gammaln((beta + 1.0) / 2.0) - special.gammaln((2.0 * beta - 1.0) / 2.0)
    return 4.0 * math.exp(log_c) / math.sqrt(math.pi)


def resolve_a(config, d):
    """Concrete shrinkage constant for dimension ``d`` under ``config.a_rule``."""
    if not (isinstance(d, (int, np.integer)) and d >= 1):
        raise ValueError(f"d must be a positive integer, got {d!r}")
    d = int(d)
    beta = config.beta
    if config.a_rule == "fixed":
        a = float(config.fixed_a)
    elif config.a_rule == "finite":
        if d < 3:
            raise ValueError("finite-sample rule needs d >= 3")
        a = 0.97 * (d - 2) * c_beta(beta)
    elif config.a_rule == "asymptotic":
        a = d * (2.0 * math.log(d)) ** ((2.0 - beta) / 2.0) * moment_constant(beta) if d > 1 else 0.0
    elif config.a_rule == "eb":
        a = float(d)
    else:  # theorem
        if not beta > 1.0:
            raise ValueError("minimaxity bound requires beta > 1")
        a = 2.0 * (beta - 1.0) * d - 2.0 * beta
    if not (a > 0 and math.isfinite(a)):
        raise ValueError(
            f"rule {config.a_rule!r} gives non-positive a={a} at beta={beta}, d={d}"
        )
    return a


def shrink_denominator(sample, beta):
    """Pooled magnitude D = sum |z_i/sigma|**beta of the standardized sample."""
    if not (0.0 < beta <= 2.0):
        raise ValueError(f"beta must be in (0, 2], got {beta}")
    w = np.abs(sample.z / sample.sigma)
    return float((w**beta).sum())


def _clip_mask(absw, beta, a, dnm, strict):
    # decide a*|w|**(beta-2) >= D (or >) in log space so tiny |w| cannot overflow
    if beta == 2.0:
        hit = (a > dnm) if strict else (a >= dnm)
        return np.broadcast_to(hit[..., None], absw.shape)
    with np.errstate(divide="ignore"):
        lhs = math.log(a) + (beta - 2.0) * np.log(absw)
        rhs = np.log(dnm)[..., None]
    return (lhs > rhs) if strict else (lhs >= rhs)


def batch_estimate(z, sigma, beta, a, positive_part=True):
    """Vectorized estimator over rows: ``z`` has shape (m, d), returns (m, d).

    The Monte Carlo engine runs through here; the one-sample wrappers
    :func:`threshold_estimate` / :func:`untruncated_estimate` do too, so a
    single code path serves both.
    """
    z = np.asarray(z, dtype=float)
    if not (a > 0 and math.isfinite(a)):
        raise ValueError(f"a must be positive and finite, got {a}")
    if not (0.0 < beta <= 2.0):
        raise ValueError(f"beta must be in (0, 2], got {beta}")
    w = z / sigma
    absw = np.abs(w)
    dnm = (absw**beta).sum(axis=-1)
    if positive_part:
        clip = _clip_mask(absw, beta, a, dnm, strict=False)
        keep = ~clip
        frac = np.zeros_like(w)
        wide = np.broadcast_to(dnm[..., None], w.shape)
        frac[keep] = a * absw[keep] ** (beta - 2.0) / wide[keep]
        est = np.where(clip, 0.0, (1.0 - frac) * w)
    else:
        if np.any(dnm == 0.0):
            raise ValueError("degenerate input: all coordinates zero")
        gain = np.zeros_like(w)
        nz = absw > 0.0
        wide = np.broadcast_to(dnm[..., None], w.shape)
        gain[nz] = a * np.sign(w[nz]) * absw[nz] ** (beta - 1.0) / wide[nz]
        est = w - gain
    return sigma * est


def threshold_estimate(sample, config):
    """Positive-part estimate: coordinate i becomes (1 - a|w_i|**(beta-2)/D)+ * z_i.

    Coordinates with ``a * |w_i|**(beta-2) >= D`` (including z_i = 0 when
    beta < 2) are set exactly to zero; an all-zero sample returns the zero
    vector.  Computed on standardized coordinates and rescaled by sigma.
    """
    a = resolve_a(config, sample.z.size)
    return batch_estimate(sample.z[None, :], sample.sigma, config.beta, a, positive_part=True)[0]


def untruncated_estimate(sample, config):
    """Shrinkage without truncation; small coordinates can overshoot past zero."""
    a = resolve_a(config, sample.z.size)
    return batch_estimate(sample.z[None, :], sample.sigma, config.beta, a, positive_part=False)[0]


def batch_sure(z, sigma, beta, a):
    """Per-coordinate unbiased risk estimate over rows of ``z`` (shape (m, d))."""
    z = np.asarray(z, dtype=float)
    if not (1.0 < beta <= 2.0):
        raise ValueError(f"unbiased risk formula requires beta in (1, 2], got {beta}")
    if not (a > 0 and math.isfinite(a)):
        raise ValueError(f"a must be positive and finite, got {a}")
    w = z / sigma
    absw = np.abs(w)
    dnm = (absw**beta).sum(axis=-1)
    if np.any(dnm == 0.0):
        raise ValueError("degenerate input: all coordinates zero")
    clip = _clip_mask(absw, beta, a, dnm, strict=True)
    keep = ~clip
    wide = np.broadcast_to(dnm[..., None], w.shape)
    val = np.empty_like(w)
    # zeroed coordinates contribute the risk of estimating by 0: E(w**2 - 1)
    val[clip] = w[clip] ** 2 - 1.0
    small = absw[keep] ** (beta - 2.0) / wide[keep]
    big = absw[keep] ** (2.0 * beta - 2.0) / wide[keep] ** 2
    val[keep] = 1.0 + a * a * big - 2.0 * a * (beta - 1.0) * small + 2.0 * a * beta * big
    return sigma**2 * val


def sure(sample, beta, a):
    """Stein unbiased risk estimate for the positive-part estimator.

    Averaged over draws from N(theta, sigma**2 I), the total converges to the
    exact risk for every theta.
    """
    per = batch_sure(sample.z[None, :], sample.sigma, beta, a)[0]
    return SureValue(per_coordinate=per, total=float(per.sum()))


def select_beta_by_sure(sample, beta_grid=None):
    """Pick (beta, a) on a grid by minimizing the unbiased risk estimate.

    Grid entries outside (1, 2] are ignored; if none remain a ValueError is
    raised.  ``a`` follows the finite-sample rule at each candidate.  Exact
    ties go to the larger beta.
    """
    if beta_grid is None:
        beta_grid = DEFAULT_BETA_GRID
    valid = [float(b) for b in beta_grid if 1.0 < b <= 2.0]
    if not valid:
        raise ValueError("beta grid contains no values in (1, 2]")
    if sample.z.size < 3:
        raise ValueError("beta selection needs d >= 3")
    best_beta = best_a = best_total = None
    for beta in sorted(valid):
        a = resolve_a(ShrinkConfig(beta=beta, a_rule="finite"), sample.z.size)
        total = sure(sample, beta, a).total
        if best_total is None or total <= best_total:
            best_beta, best_a, best_total = beta, a, total
    return best_beta, best_a


def monte_carlo_a_beta(beta, d, reps, seed):
    """Simulated largest Bayes-risk-safe constant: 2 / E[sum|xi|**(2b-2) / (sum|xi|**b)**2].

    Returns (estimate, standard_error); xi is a d-vector of standard normals.
    At beta = 2 the expectation is E[1/chisq_d] = 1/(d-2), so the estimate
    converges to 2(d-2).  Deterministic in ``seed``: replicates are drawn in
    fixed-size batches from counter-keyed substreams, so neither chunking nor
    evaluation order changes the result.
    """
    if not (0.5 < beta <= 2.0):
        raise ValueError(f"simulated constant requires beta in (1/2, 2], got {beta}")
    if d < 3:
        raise ValueError("d must be at least 3")
    reps = int(reps)
    if reps < 1000:
        raise ValueError("need at least 1000 replicates")
    batch = max(1, 2**21 // int(d))
    s1 = 0.0
    s2 = 0.0
    done = 0
    block = 0
    while done < reps:
        take = min(batch, reps - done)
        xi = np.abs(substream(seed, block).standard_normal((take, d)))
        num = (xi ** (2.0 * beta - 2.0)).sum(axis=1)
        den = (xi**beta).sum(axis=1) ** 2
        ratio = num / den
        s1 += float(ratio.sum())
        s2 += float((ratio * ratio).sum())
        done += take
        block += 1
    mean = s1 / reps
    if not (math.isfinite(mean) and mean > 0):
        raise ArithmeticError(f"non-finite accumulation at beta={beta}, d={d}")
    var = max(0.0, (s2 - reps * mean * mean) / (reps - 1))
    se_mean = math.sqrt(var / reps)
    return 2.0 / mean, 2.0 * se_mean / mean**2
