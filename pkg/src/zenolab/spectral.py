"""Spectral measures, tail functionals, and measurement-frequency classification.

A state's energy distribution decides whether infinitely frequent
measurement freezes it (tail weight x * Pr(|X| > x) -> 0), destroys it
(-> infinity), or sits on the critical line. This module carries discrete
measures read off a Hamiltonian and state, a small family of analytic
distributions with cdf / sampler / characteristic function, the tail
functional and its classification, iterated-modulus tables, and seeded
Monte Carlo checks of the two law-of-large-numbers reformulations.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from scipy import integrate, special

from .errors import NotNormalized, QuadratureFailure
from .numeric import tol
from .operators import HermitianOperator

__all__ = [
    "Classification",
    "ClassificationThresholds",
    "SpectralMeasure",
    "DiscreteMeasure",
    "PointMass",
    "Gaussian",
    "Cauchy",
    "TwoSidedPareto",
    "Mixture",
    "TailReport",
    "LLNReport",
    "spectral_measure_of_state",
    "characteristic_fn",
    "tail_delta_curve",
    "classify_regime",
    "zeno_modulus_table",
    "modulus_below_threshold_n",
    "lln_mc",
    "first_abs_moment",
    "standard_family_registry",
    "suggested_tail_grid",
]


class Classification(str, Enum):
    ZENO = "Zeno"
    ANTI_ZENO = "AntiZeno"
    BORDERLINE = "Borderline"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class ClassificationThresholds:
    """Finite-grid stand-ins for limits at infinity; recorded in every report."""

    zeno_ceiling: float = 0.01  # tail weight at the grid top must sit below this
    anti_zeno_floor: float = 1.0  # and above this, with positive slope, for anti-Zeno
    slope_band: float = 0.1  # |log-log slope| inside this band reads as bounded
    residual_cap: float = 0.5  # fit residual beyond this marks a non-straight tail


class SpectralMeasure(ABC):
    """Probability distribution of energy-measurement outcomes."""

    @abstractmethod
    def cdf(self, x) -> np.ndarray:
        """Left-continuous distribution function Pr(X < x)."""

    @abstractmethod
    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """n independent draws."""

    @property
    @abstractmethod
    def tail_exponent(self) -> float:
        """Power-law index of Pr(|X| > x); math.inf for lighter-than-power tails."""

    def survival(self, x) -> np.ndarray:
        """Pr(X > x). Override where 1 - cdf(x) cancels in the far tail."""
        x = np.asarray(x, dtype=float)
        return np.clip(1.0 - self.cdf(x), 0.0, 1.0)

    def prob_abs_greater(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.clip(self.cdf(-x) + self.survival(x), 0.0, 1.0)

    def phi(self, t: float) -> complex:
        """Characteristic function  integral of exp(-i t x) dF(x)."""
        raise QuadratureFailure(f"{type(self).__name__} offers no characteristic function route")

    def log_abs_phi(self, t: float) -> float:
        value = abs(self.phi(t))
        if value <= 0.0:
            return -math.inf
        return math.log(value)

    def median(self) -> float:
        raise NotImplementedError

    def abs_moment(self) -> float:
        """E|X|; math.inf when the tail exponent is at or below 1."""
        if self.tail_exponent <= 1.0:
            return math.inf
        return _abs_moment_by_quadrature(self)


def _abs_moment_by_quadrature(measure: SpectralMeasure) -> float:
    # E|X| = integral over x >= 0 of Pr(|X| > x), plus the analytic power tail.
    # Geometric breakpoints force the adaptive rule to see every scale.
    cutoff = 1.0
    while float(measure.prob_abs_greater(cutoff)) > 1e-14 and cutoff < 1e12:
        cutoff *= 2.0
    points = [cutoff * 2.0**-k for k in range(1, 40) if cutoff * 2.0**-k > 1e-12]
    body, err = integrate.quad(
        lambda x: float(measure.prob_abs_greater(x)), 0.0, cutoff, points=points, limit=800
    )
    if err > 1e-8 * max(1.0, abs(body)):
        raise QuadratureFailure("absolute-moment quadrature did not converge", error_bound=err)
    alpha = measure.tail_exponent
    if math.isinf(alpha):
        return body
    survival_at_cut = float(measure.prob_abs_greater(cutoff))
    tail = survival_at_cut * cutoff / (alpha - 1.0)
    return body + tail


@dataclass(frozen=True)
class DiscreteMeasure(SpectralMeasure):
    """Finitely many atoms; weights sum to one."""

    atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.atoms, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if a.ndim != 1 or a.shape != w.shape or a.size == 0:
            raise ValueError("atoms and weights must be nonempty 1-d arrays of equal length")
        if np.any(np.diff(a) < 0):
            raise ValueError("atoms must ascend")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        total = float(np.sum(w))
        if abs(total - 1.0) > tol(1e-12):
            raise ValueError(f"weights sum to {total!r}, expected 1")
        object.__setattr__(self, "atoms", a)
        object.__setattr__(self, "weights", w)

    def cdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        cum = np.concatenate([[0.0], np.cumsum(self.weights)])
        idx = np.searchsorted(self.atoms, x, side="left")
        return cum[idx]

    def survival(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.array(
            [float(np.sum(self.weights[self.atoms > xi])) for xi in np.atleast_1d(x)]
        ).reshape(x.shape)

    def prob_abs_greater(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        mags = np.abs(self.atoms)
        return np.array(
            [float(np.sum(self.weights[mags > xi])) for xi in np.atleast_1d(x)]
        ).reshape(x.shape)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return rng.choice(self.atoms, size=n, p=self.weights)

    @property
    def tail_exponent(self) -> float:
        return math.inf

    def phi(self, t: float) -> complex:
        return complex(np.sum(self.weights * np.exp(-1j * t * self.atoms)))

    def median(self) -> float:
        cum = np.cumsum(self.weights)
        return float(self.atoms[int(np.searchsorted(cum, 0.5))])

    def abs_moment(self) -> float:
        return float(np.sum(self.weights * np.abs(self.atoms)))

    @property
    def support_radius(self) -> float:
        return float(np.max(np.abs(self.atoms)))


@dataclass(frozen=True)
class PointMass(SpectralMeasure):
    loc: float

    def cdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return (x > self.loc).astype(float)

    def survival(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return (x < self.loc).astype(float)

    def sample(self, n, rng):
        return np.full(n, self.loc)

    @property
    def tail_exponent(self) -> float:
        return math.inf

    def phi(self, t: float) -> complex:
        return complex(np.exp(-1j * t * self.loc))

    def log_abs_phi(self, t: float) -> float:
        return 0.0

    def median(self) -> float:
        return self.loc

    def abs_moment(self) -> float:
        return abs(self.loc)


@dataclass(frozen=True)
class Gaussian(SpectralMeasure):
    mu: float
    sigma: float

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")

    def cdf(self, x) -> np.ndarray:
        z = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        return special.ndtr(z)

    def survival(self, x) -> np.ndarray:
        z = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        return special.ndtr(-z)

    def sample(self, n, rng):
        return rng.normal(self.mu, self.sigma, size=n)

    @property
    def tail_exponent(self) -> float:
        return math.inf

    def phi(self, t: float) -> complex:
        return complex(np.exp(-1j * t * self.mu - 0.5 * (self.sigma * t) ** 2))

    def log_abs_phi(self, t: float) -> float:
        return -0.5 * (self.sigma * t) ** 2

    def median(self) -> float:
        return self.mu


@dataclass(frozen=True)
class Cauchy(SpectralMeasure):
    x0: float
    gamma: float

    def __post_init__(self):
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")

    def cdf(self, x) -> np.ndarray:
        z = (np.asarray(x, dtype=float) - self.x0) / self.gamma
        return 0.5 + np.arctan(z) / math.pi

    def survival(self, x) -> np.ndarray:
        z = (np.asarray(x, dtype=float) - self.x0) / self.gamma
        # arctan(1/z)/pi for z > 0 avoids the pi/2 cancellation in the far tail
        return np.where(z > 0, np.arctan(1.0 / np.where(z > 0, z, 1.0)) / math.pi,
                        0.5 - np.arctan(z) / math.pi)

    def sample(self, n, rng):
        return self.x0 + self.gamma * rng.standard_cauchy(size=n)

    @property
    def tail_exponent(self) -> float:
        return 1.0

    def phi(self, t: float) -> complex:
        return complex(np.exp(-1j * t * self.x0 - self.gamma * abs(t)))

    def log_abs_phi(self, t: float) -> float:
        return -self.gamma * abs(t)

    def median(self) -> float:
        return self.x0


def _pareto_tail_integral_total(alpha: float) -> float:
    # integral over (0, inf) of (1 - cos u) u^(-alpha-1), classical closed form
    return math.pi / (2.0 * math.gamma(alpha + 1.0) * math.sin(math.pi * alpha / 2.0))


def _pareto_tail_integral_head(alpha: float, v: float) -> float:
    # integral over (0, v) of (1 - cos u) u^(-alpha-1); 2 sin^2(u/2) avoids cancellation
    if v <= 0.0:
        return 0.0
    integrand = lambda u: 2.0 * math.sin(u / 2.0) ** 2 * u ** (-alpha - 1.0)
    if v <= 1e-6:
        # leading series term; relative error O(v^2)
        return v ** (2.0 - alpha) / (2.0 * (2.0 - alpha))
    value, err = integrate.quad(integrand, 0.0, v, limit=400)
    if err > 1e-11 * max(1.0, abs(value)):
        raise QuadratureFailure("characteristic-function quadrature did not converge", error_bound=err)
    return value


@dataclass(frozen=True)
class TwoSidedPareto(SpectralMeasure):
    """Symmetric power-law tails: density proportional to |x|^(-alpha-1) for |x| >= scale."""

    alpha: float
    scale: float

    def __post_init__(self):
        # alpha below 1/4 makes the +-1e8 cdf probe meaningless
        if not (0.25 <= self.alpha < 2.0):
            raise ValueError("alpha must lie in [0.25, 2)")
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    def cdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.full(x.shape, 0.5)
        left = x <= -self.scale
        right = x > self.scale
        out = np.where(left, 0.5 * (self.scale / np.abs(np.where(left, x, 1.0))) ** self.alpha, out)
        out = np.where(right, 1.0 - 0.5 * (self.scale / np.where(right, x, 1.0)) ** self.alpha, out)
        return out

    def survival(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.full(x.shape, 0.5)
        left = x <= -self.scale
        right = x > self.scale
        out = np.where(left, 1.0 - 0.5 * (self.scale / np.abs(np.where(left, x, 1.0))) ** self.alpha, out)
        out = np.where(right, 0.5 * (self.scale / np.where(right, x, 1.0)) ** self.alpha, out)
        return out

    def sample(self, n, rng):
        u = rng.uniform(size=n)
        mags = self.scale * rng.uniform(size=n) ** (-1.0 / self.alpha)
        return np.where(u < 0.5, -mags, mags)

    @property
    def tail_exponent(self) -> float:
        return self.alpha

    def one_minus_phi(self, t: float) -> float:
        """1 - phi(t), computed without cancellation; phi is real by symmetry."""
        t = abs(float(t))
        if t == 0.0:
            return 0.0
        v = t * self.scale
        head = _pareto_tail_integral_head(self.alpha, v)
        total = _pareto_tail_integral_total(self.alpha)
        return self.alpha * self.scale**self.alpha * t**self.alpha * (total - head)

    def phi(self, t: float) -> complex:
        return complex(1.0 - self.one_minus_phi(t))

    def log_abs_phi(self, t: float) -> float:
        delta = self.one_minus_phi(t)
        if delta < 1.0:
            return math.log1p(-delta)
        value = abs(1.0 - delta)
        return math.log(value) if value > 0 else -math.inf

    def median(self) -> float:
        return 0.0

    def abs_moment(self) -> float:
        if self.alpha <= 1.0:
            return math.inf
        return self.alpha * self.scale / (self.alpha - 1.0)


@dataclass(frozen=True)
class Mixture(SpectralMeasure):
    """Convex combination of measures; weights must sum to one."""

    components: tuple[tuple[float, SpectralMeasure], ...]

    def __post_init__(self):
        weights = [w for w, _ in self.components]
        if not weights or any(w < 0 for w in weights):
            raise ValueError("mixture weights must be nonnegative")
        if abs(sum(weights) - 1.0) > tol(1e-12):
            raise ValueError("mixture weights must sum to 1")

    def cdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return sum(w * m.cdf(x) for w, m in self.components)

    def survival(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return sum(w * m.survival(x) for w, m in self.components)

    def sample(self, n, rng):
        weights = np.array([w for w, _ in self.components])
        counts = rng.multinomial(n, weights)
        parts = [m.sample(k, rng) for (_, m), k in zip(self.components, counts) if k]
        out = np.concatenate(parts) if parts else np.zeros(0)
        rng.shuffle(out)
        return out

    @property
    def tail_exponent(self) -> float:
        return min(m.tail_exponent for w, m in self.components if w > 0)

    def phi(self, t: float) -> complex:
        return sum(w * m.phi(t) for w, m in self.components)

    def abs_moment(self) -> float:
        return sum(w * m.abs_moment() for w, m in self.components if w > 0)


def spectral_measure_of_state(h: HermitianOperator, psi) -> DiscreteMeasure:
    """Atoms at the eigenvalues with weights |<e_k, psi>|^2.

    Eigenvalues closer than 1e-10 * ||H|| are merged (weight-averaged
    position, summed weight).
    """
    psi = np.asarray(psi, dtype=complex)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > tol(1e-10):
        raise NotNormalized(f"state norm {norm:.12f} deviates from 1")
    weights = np.abs(h.eigenvectors.conj().T @ psi) ** 2
    gap_tol = 1e-10 * max(h.norm, 1e-300)
    atoms: list[float] = []
    merged: list[float] = []
    group_w = 0.0
    group_wx = 0.0
    last = None
    for lam, w in zip(h.eigenvalues, weights):
        if last is not None and lam - last > gap_tol:
            atoms.append(group_wx / group_w if group_w > 0 else last)
            merged.append(group_w)
            group_w = group_wx = 0.0
        group_w += float(w)
        group_wx += float(w) * float(lam)
        last = float(lam)
    atoms.append(group_wx / group_w if group_w > 0 else last)
    merged.append(group_w)
    a = np.array(atoms)
    w = np.array(merged)
    keep = w > 1e-14
    a, w = a[keep], w[keep]
    return DiscreteMeasure(a, w / np.sum(w))


def characteristic_fn(measure: SpectralMeasure, t: float) -> complex:
    """Characteristic function at t, by closed form where the family has one."""
    if not np.isfinite(t):
        raise ValueError("t must be finite")
    return measure.phi(float(t))


@dataclass(frozen=True)
class TailReport:
    """Tail weight x * Pr(|X| > x) on a grid, with an optional classification."""

    x_grid: np.ndarray
    delta_values: np.ndarray
    trend: float | None = None
    trend_residual: float | None = None
    classification: Classification | None = None
    thresholds: ClassificationThresholds | None = None


def tail_delta_curve(measure: SpectralMeasure, x_grid) -> TailReport:
    """Evaluate the tail weight exactly from the cdf (or atom sums)."""
    x = np.asarray(x_grid, dtype=float)
    if np.any(x <= 0) or np.any(np.diff(x) <= 0):
        raise ValueError("x_grid must be positive and increasing")
    delta = x * measure.prob_abs_greater(x)
    return TailReport(x_grid=x, delta_values=np.maximum(delta, 0.0))


def classify_regime(
    measure: SpectralMeasure,
    x_grid,
    thresholds: ClassificationThresholds = ClassificationThresholds(),
) -> TailReport:
    """Classify the tail-weight trend on the top decade of the grid.

    The limit at infinity is out of numerical reach; the thresholds that
    stand in for it travel with the report. A non-monotone tail (residual
    above the cap) is declared Indeterminate rather than forced into a bin.
    """
    base = tail_delta_curve(measure, x_grid)
    x, delta = base.x_grid, base.delta_values
    if x[-1] / x[0] < 1e3:
        raise ValueError("x_grid must span at least three decades")
    top = x >= x[-1] / 10.0
    if int(np.count_nonzero(top)) < 3:
        top = np.zeros_like(top)
        top[-3:] = True

    if float(np.max(delta[top])) <= 1e-300 or delta[-1] <= 1e-300:
        # tail weight reaches exact zero: bounded support, frozen dynamics
        return TailReport(x, delta, trend=-math.inf, trend_residual=0.0,
                          classification=Classification.ZENO, thresholds=thresholds)

    positive = top & (delta > 0)
    xs, ys = x[positive], delta[positive]
    from .numeric import loglog_fit

    slope, _, residual = loglog_fit(xs, ys)
    tip = float(ys[-1])
    steps = ys[1:] / ys[:-1]
    # tolerate mild counter-moves; a straight power tail has steps near x-ratio**slope
    never_rises = bool(np.all(steps <= 1.5)) if steps.size else True
    never_falls = bool(np.all(steps >= 1.0 / 1.5)) if steps.size else True

    # decisive monotone trends classify first: a faster-than-power decay fits a
    # power law badly but is unambiguously heading to zero
    if slope < -thresholds.slope_band and tip < thresholds.zeno_ceiling and never_rises:
        label = Classification.ZENO
    elif slope > thresholds.slope_band and tip > thresholds.anti_zeno_floor and never_falls:
        label = Classification.ANTI_ZENO
    elif residual > thresholds.residual_cap:
        # non-straight: the trend oscillates too much to extrapolate
        label = Classification.INDETERMINATE
    elif abs(slope) <= thresholds.slope_band and never_rises and never_falls:
        label = Classification.BORDERLINE
    else:
        # a clear trend whose magnitude the grid cannot yet confirm
        label = Classification.INDETERMINATE
    return TailReport(x, delta, trend=slope, trend_residual=residual,
                      classification=label, thresholds=thresholds)


def zeno_modulus_table(
    measure: SpectralMeasure, t: float, n_values: Sequence[int]
) -> list[tuple[int, float]]:
    """(n, |phi(t/n)|^(2n)) rows, evaluated in log space for large n."""
    out = []
    for n in n_values:
        n = int(n)
        if n < 1:
            raise ValueError("n values must be positive")
        log_mod = 2.0 * n * measure.log_abs_phi(t / n)
        out.append((n, float(np.exp(log_mod))))
    return out


def modulus_below_threshold_n(
    measure: SpectralMeasure, t: float, threshold: float = 1e-3, n_cap: int = 2**40
) -> int:
    """Smallest power of two n with |phi(t/n)|^(2n) below the threshold."""
    n = 1
    while n <= n_cap:
        if math.exp(2.0 * n * measure.log_abs_phi(t / n)) < threshold:
            return n
        n *= 2
    raise ValueError(f"modulus stayed above {threshold} up to n={n_cap}")


@dataclass(frozen=True)
class LLNReport:
    """Seeded Monte Carlo estimates of mean concentration and spreading.

    Per n: the exceedance probability of |mean - center| > epsilon with the
    center at the empirical median (concentration), and the best containment
    probability of any window of half-width c (spreading).
    """

    n_values: tuple[int, ...]
    concentration_stats: tuple[tuple[int, float, float], ...]  # (n, exceedance, containment)
    trials: int
    seed: int
    epsilon: float
    c: float

    @property
    def stats(self) -> tuple[tuple[int, float, float], ...]:
        return self.concentration_stats


def _empirical_means(measure: SpectralMeasure, n: int, trials: int, rng) -> np.ndarray:
    means = np.empty(trials)
    block = max(1, (1 << 22) // max(n, 1))
    done = 0
    while done < trials:
        take = min(block, trials - done)
        draws = measure.sample(take * n, rng).reshape(take, n)
        means[done : done + take] = draws.mean(axis=1)
        done += take
    return means


def _best_containment(means: np.ndarray, c: float) -> float:
    """Max over centers of the fraction of means inside a half-width-c window."""
    s = np.sort(means)
    best = 0
    j = 0
    for i in range(s.size):
        if j < i:
            j = i
        while j + 1 < s.size and s[j + 1] - s[i] <= 2.0 * c:
            j += 1
        best = max(best, j - i + 1)
    return best / s.size


def lln_mc(
    measure: SpectralMeasure,
    n_values: Sequence[int],
    trials: int,
    seed: int,
    epsilon: float = 0.1,
    c: float = 1.0,
) -> LLNReport:
    """Empirical means of n draws across seeded trials, for each n.

    Deterministic for a fixed seed: each n gets its own generator derived
    from (seed, index), so results do not depend on evaluation order.
    """
    trials = int(trials)
    if trials < 1000:
        raise ValueError("need at least 1000 trials")
    stats = []
    for idx, n in enumerate(n_values):
        n = int(n)
        rng = np.random.default_rng([int(seed), idx])
        means = _empirical_means(measure, n, trials, rng)
        center = float(np.median(means))
        exceed = float(np.mean(np.abs(means - center) > epsilon))
        contain = float(_best_containment(means, c))
        stats.append((n, exceed, contain))
    return LLNReport(
        n_values=tuple(int(n) for n in n_values),
        concentration_stats=tuple(stats),
        trials=trials,
        seed=int(seed),
        epsilon=float(epsilon),
        c=float(c),
    )


def first_abs_moment(measure: SpectralMeasure) -> float:
    """E|X| by atom sum or quadrature with power-tail continuation; inf for alpha <= 1."""
    return measure.abs_moment()


def standard_family_registry() -> dict[str, SpectralMeasure]:
    """Representative measures covering all classification outcomes."""
    return {
        "point_mass": PointMass(0.7),
        "gaussian": Gaussian(0.0, 1.0),
        "gaussian_shifted": Gaussian(2.0, 0.5),
        "cauchy": Cauchy(0.0, 1.0),
        "pareto_heavy": TwoSidedPareto(0.5, 1.0),
        "pareto_integrable": TwoSidedPareto(1.5, 0.01),
        "gauss_pareto_mix": Mixture(((0.7, Gaussian(0.0, 1.0)), (0.3, TwoSidedPareto(1.5, 0.01)))),
        "two_level": DiscreteMeasure(np.array([-1.0, 1.0]), np.array([0.5, 0.5])),
    }


def suggested_tail_grid(measure: SpectralMeasure, points: int = 48) -> np.ndarray:
    """A 3+ decade grid adapted to where the family's tail lives."""
    if isinstance(measure, DiscreteMeasure):
        top = max(measure.support_radius, 1e-6)
        return np.logspace(math.log10(top) - 2.5, math.log10(top) + 1.0, points)
    if isinstance(measure, PointMass):
        top = max(abs(measure.loc), 1e-6)
        return np.logspace(math.log10(top) - 2.5, math.log10(top) + 1.0, points)
    if isinstance(measure, Gaussian):
        hi = abs(measure.mu) + 12.0 * measure.sigma
        return np.logspace(math.log10(hi) - 3.2, math.log10(hi), points)
    if isinstance(measure, Cauchy):
        return np.logspace(0.0, 5.0, points) * measure.gamma
    if isinstance(measure, TwoSidedPareto):
        return np.logspace(0.0, 6.0, points) * measure.scale
    if isinstance(measure, Mixture):
        grids = [suggested_tail_grid(m, points) for _, m in measure.components]
        lo = min(float(g[0]) for g in grids)
        hi = max(float(g[-1]) for g in grids)
        return np.logspace(math.log10(lo), math.log10(hi), points)
    return np.logspace(-1.0, 4.0, points)
