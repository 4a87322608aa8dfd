"""Haar-random two-qubit states and ensemble averages, exact and Monte Carlo.

Reproducibility contract: every Monte Carlo entry point takes a 64-bit seed
and derives all randomness from a counter-based Philox stream keyed by it.
Sample i consumes a fixed-width row of uniforms at a fixed counter offset,
so estimates are bitwise reproducible and independent of how the index
range would be partitioned across workers.  Gaussians come from the inverse
normal CDF applied to those uniforms (fixed draw count per sample, unlike
rejection-based generators).  The Gaussian scale is irrelevant after
normalization, so unit variance is used.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import quad
from scipy.special import gammaln, ndtri

from .protocols import four_copy_bell_bound, full_pipeline, schmidt_pair_bound
from .kraus import CANONICAL_PARAMS

RNG_ALGORITHM = "philox4x64/ndtri, row i = draws [8i, 8i+8)"

_MAX_SEED = 2**64


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < _MAX_SEED:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return seed


def uniform_block(seed: int, n: int, width: int = 8) -> np.ndarray:
    """(n, width) uniforms from Philox keyed by seed; row i depends only on (seed, i)."""
    rng = np.random.Generator(np.random.Philox(key=_check_seed(seed)))
    return rng.random((n, width))


@dataclass
class HaarSample:
    """One Haar-random two-qubit pure state with its derived coordinates."""

    state: np.ndarray   # the four amplitudes c1..c4
    x: np.ndarray       # squared magnitudes |c_i|^2, a point on the simplex
    theta: np.ndarray   # phases of the amplitudes


def _sample_from_uniforms(u: np.ndarray) -> HaarSample:
    z = ndtri(u)
    c = z[:4] + 1j * z[4:]
    c = c / np.linalg.norm(c)
    return HaarSample(state=c, x=np.abs(c) ** 2, theta=np.angle(c))


def sample_haar_two_qubit(rng: np.random.Generator) -> HaarSample:
    """Haar sample via four normalized complex Gaussians."""
    return _sample_from_uniforms(rng.random(8))


def sample_haar_dirichlet(rng: np.random.Generator) -> HaarSample:
    """Alternate construction: flat-Dirichlet magnitudes and uniform phases.

    |c_i|^2 is Dirichlet(1,1,1,1) (exponential spacings) and each phase is
    uniform; the resulting state is Haar-distributed, cross-validating the
    Gaussian route.
    """
    u = rng.random(8)
    e = -np.log(u[:4])
    x = e / e.sum()
    theta = 2.0 * np.pi * u[4:]
    c = np.sqrt(x) * np.exp(1j * theta)
    return HaarSample(state=c, x=x, theta=theta)


def haar_state_block(seed: int, n: int) -> np.ndarray:
    """(n, 4) complex amplitudes; row i is sample i of the seeded stream."""
    u = uniform_block(seed, n, 8)
    z = ndtri(u)
    c = z[:, :4] + 1j * z[:, 4:]
    return c / np.linalg.norm(c, axis=1, keepdims=True)


def schmidt_lambda_pdf(lam: float) -> float:
    """Density 6(2 lam - 1)^2 of the larger squared Schmidt coefficient on [1/2, 1]."""
    if not 0.5 <= lam <= 1.0:
        raise ValueError("lambda must lie in [1/2, 1]")
    return 6.0 * (2.0 * lam - 1.0) ** 2


def _lambda_from_uniform(u):
    # inverse CDF of 6(2l-1)^2: F(l) = (2l-1)^3
    return (np.cbrt(u) + 1.0) / 2.0


def dirichlet_moment_exact(alpha, beta) -> Fraction:
    """Exact mixed moment E[prod x_i^beta_i] under Dirichlet(alpha), integer args only."""
    alpha = [int(a) for a in alpha]
    beta = [int(b) for b in beta]
    if len(alpha) != len(beta):
        raise ValueError("alpha and beta must have equal length")
    if any(a <= 0 for a in alpha):
        raise ValueError("alpha entries must be positive")
    if any(b < 0 for b in beta):
        raise ValueError("beta entries must be non-negative")
    total = Fraction(math.factorial(sum(alpha) - 1), math.factorial(sum(alpha) + sum(beta) - 1))
    for a, b in zip(alpha, beta):
        total *= Fraction(math.factorial(a + b - 1), math.factorial(a - 1))
    return total


def dirichlet_moment(alpha, beta) -> float:
    """E[prod x_i^beta_i] under Dirichlet(alpha); exact rational path for integer alpha."""
    if all(float(a).is_integer() for a in alpha):
        return float(dirichlet_moment_exact([int(a) for a in alpha], beta))
    alpha = [float(a) for a in alpha]
    beta = [int(b) for b in beta]
    if any(a <= 0 for a in alpha):
        raise ValueError("alpha entries must be positive")
    if any(b < 0 for b in beta):
        raise ValueError("beta entries must be non-negative")
    log_val = gammaln(sum(alpha)) - gammaln(sum(alpha) + sum(beta))
    for a, b in zip(alpha, beta):
        log_val += gammaln(a + b) - gammaln(a)
    return float(math.exp(log_val))


@dataclass
class MonteCarloEstimate:
    mean: float
    std_error: float        # sample std / sqrt(n); NaN for n = 1
    n_samples: int
    seed: int
    algorithm: str = RNG_ALGORITHM

    def within_sigmas(self, target: float, k: float = 4.0) -> bool:
        if math.isnan(self.std_error):
            return self.mean == target
        return abs(self.mean - target) <= k * self.std_error


def _estimate(values, seed: int) -> MonteCarloEstimate:
    values = [float(v) for v in values]
    n = len(values)
    if n == 0:
        raise ValueError("need at least one sample")
    # fsum: exactly rounded, so the reduction is order-independent
    mean = math.fsum(values) / n
    if n == 1:
        return MonteCarloEstimate(mean=mean, std_error=float("nan"), n_samples=1, seed=seed)
    var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
    return MonteCarloEstimate(
        mean=mean, std_error=math.sqrt(var / n), n_samples=n, seed=seed
    )


def known_basis_average_quadrature() -> float:
    """Average two-copy success over Haar inputs with a known Schmidt basis.

    Integrates 2 lam (1 - lam) against the lambda density; the analytic
    value is 1/5.
    """
    val, _ = quad(
        lambda lam: schmidt_pair_bound(math.sqrt(lam), math.sqrt(1.0 - lam))
        * schmidt_lambda_pdf(lam),
        0.5,
        1.0,
        epsabs=1e-12,
        epsrel=1e-12,
    )
    return float(val)


def known_basis_average_mc(n_samples: int, seed: int) -> MonteCarloEstimate:
    """Monte Carlo of the known-basis average; samples lambda by inverse CDF."""
    u = uniform_block(seed, n_samples, 1)[:, 0]
    lams = _lambda_from_uniform(u)
    values = [schmidt_pair_bound(math.sqrt(l), math.sqrt(1.0 - l)) for l in lams]
    return _estimate(values, seed)


def unknown_basis_average_exact() -> float:
    """Average four-copy pipeline success over Haar inputs, exactly 2/105.

    The phase term averages to zero, leaving 2 E[x1^2 x4^2] + 2 E[x2^2 x3^2]
    with flat-Dirichlet moments.
    """
    ones = (1, 1, 1, 1)
    m14 = dirichlet_moment_exact(ones, (2, 0, 0, 2))
    m23 = dirichlet_moment_exact(ones, (0, 2, 2, 0))
    return float(2 * m14 + 2 * m23)


def unknown_basis_average_mc(
    n_samples: int, seed: int, use_pipeline: bool = False
) -> MonteCarloEstimate:
    """Monte Carlo of the four-copy average over Haar states.

    use_pipeline=True evaluates the matrix-level pipeline at the symmetric
    parameter point instead of the closed-form bound; both agree pointwise.
    """
    states = haar_state_block(seed, n_samples)
    if use_pipeline:
        values = [full_pipeline(c, CANONICAL_PARAMS).success_prob for c in states]
    else:
        values = [four_copy_bell_bound(c) for c in states]
    return _estimate(values, seed)


def phase_term_mc(n_samples: int, seed: int) -> MonteCarloEstimate:
    """Monte Carlo of Re[c1^2 c4^2 conj(c2)^2 conj(c3)^2]; zero on average.

    The term equals x1 x2 x3 x4 cos(eta) with eta = 2(th1 + th4 - th2 - th3),
    and eta is uniform given the magnitudes.
    """
    states = haar_state_block(seed, n_samples)
    values = [
        (c[0] ** 2 * c[3] ** 2 * np.conj(c[1]) ** 2 * np.conj(c[2]) ** 2).real
        for c in states
    ]
    return _estimate(values, seed)
