"""Two-stage conclusive purification pipeline and its closed-form bounds.

Stage 1 maps two copies of an arbitrary two-qubit pure state to a state
already in the {|00>, |11>} basis; stage 2 (run at the symmetric parameter
point) maps two copies of such a state to the Bell state (|00>+|11>)/sqrt(2)
exactly or fails.  All stage functions work at matrix level and cross-check
themselves against the closed forms.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .kraus import CANONICAL_PARAMS, KrausParams, apply_kraus, build_kraus, lift_local_kraus
from .linalg import ATOL, as_state, bell_phi_plus, tensor

# indices of the (A, B, A', B') basis whose ancilla pair A'B' reads 00
_AB_SLOTS = np.array([0, 4, 8, 12])

# treat branch weights below this as exact failure (amplitudes cancel exactly
# for product inputs, so this only guards float dust)
_ZERO_PROB = 1e-30


@dataclass
class ProtocolResult:
    """Outcome of a conclusive stage or pipeline.

    output is the normalized post-selected state, or None when the success
    probability vanishes and no output exists.  stage_probs multiply to
    success_prob.  product_output marks a defined but unentangled output
    (one Schmidt coefficient numerically zero), which makes any following
    stage fail.
    """

    success_prob: float
    output: np.ndarray | None
    stage_probs: list = field(default_factory=list)
    product_output: bool = False


def _stage_amplitudes(state, params: KrausParams) -> tuple[complex, complex, float]:
    """Matrix-level run of one two-copy branch; returns (alpha', beta', prob)."""
    c = as_state(state, dim=4)
    M = lift_local_kraus(build_kraus(params))
    doubled = tensor(c, c)
    out, prob = apply_kraus(M, doubled)

    # the branch must leave the ancilla pair in |00>; anything else is a bug
    residual = np.linalg.norm(np.delete(out, _AB_SLOTS))
    if residual > ATOL:
        raise RuntimeError(f"branch output leaked outside the |00> ancilla slot: {residual:.3e}")
    ab = out[_AB_SLOTS]
    if abs(ab[1]) > ATOL or abs(ab[2]) > ATOL:
        raise RuntimeError("branch output has support outside the {|00>, |11>} basis")

    alpha, beta = ab[0], ab[3]
    # closed form for the same amplitudes
    u = c[0] * c[3] + c[1] * c[2]
    w = c[0] * c[3] - c[1] * c[2]
    expected_alpha = 2.0 * params.a**2 * u
    expected_beta = 2.0 * params.b**2 * w
    if abs(alpha - expected_alpha) > ATOL or abs(beta - expected_beta) > ATOL:
        raise RuntimeError("matrix-level amplitudes disagree with the closed form")
    return alpha, beta, prob


def stage1(state, params: KrausParams) -> ProtocolResult:
    """First purification round: psi x psi -> alpha'|00> + beta'|11>, or failure.

    alpha' = 2 a^2 (c1 c4 + c2 c3) and beta' = 2 b^2 (c1 c4 - c2 c3); the
    success probability is |alpha'|^2 + |beta'|^2.  Degenerate parameters
    (a = 0 or b = 0) give a product output, reported via product_output.
    """
    alpha, beta, prob = _stage_amplitudes(state, params)
    if prob < _ZERO_PROB:
        return ProtocolResult(success_prob=prob, output=None, stage_probs=[prob])
    output = np.array([alpha, 0.0, 0.0, beta], dtype=complex) / np.sqrt(prob)
    product = min(abs(alpha) ** 2, abs(beta) ** 2) / prob <= 1e-12
    return ProtocolResult(
        success_prob=prob, output=output, stage_probs=[prob], product_output=product
    )


def stage2(state) -> ProtocolResult:
    """Second round on a state already in the {|00>, |11>} basis.

    Requires c2 = c3 = 0 within tolerance; raises ValueError otherwise.
    Runs the symmetric-parameter branch on two copies.  On success the
    output is exactly (|00>+|11>)/sqrt(2) with probability 2|alpha beta|^2.
    """
    c = as_state(state, dim=4)
    if abs(c[1]) > ATOL or abs(c[2]) > ATOL:
        raise ValueError("stage2 input must have Schmidt basis {|00>, |11>}")
    alpha, beta, prob = _stage_amplitudes(c, CANONICAL_PARAMS)
    if prob < _ZERO_PROB:
        return ProtocolResult(success_prob=prob, output=None, stage_probs=[prob])
    output = np.array([alpha, 0.0, 0.0, beta], dtype=complex) / np.sqrt(prob)
    return ProtocolResult(success_prob=prob, output=output, stage_probs=[prob])


def full_pipeline(state, params: KrausParams) -> ProtocolResult:
    """Four copies in, one Bell pair out: stage1 on two independent pairs, then stage2.

    Both stage-1 runs see identical inputs, so their branch probabilities
    coincide and the total success probability is P1^2 * P2.  A failed or
    product stage-1 output makes the pipeline report zero success with an
    undefined output instead of raising.
    """
    first = stage1(state, params)
    p1 = first.success_prob
    if first.output is None or first.product_output:
        p2 = 0.0
        if first.output is not None:
            p2 = stage2(first.output).success_prob
        return ProtocolResult(
            success_prob=p1 * p1 * p2,
            output=None,
            stage_probs=[p1, p1, p2],
            product_output=True,
        )
    second = stage2(first.output)
    p2 = second.success_prob
    return ProtocolResult(
        success_prob=p1 * p1 * p2,
        output=second.output,
        stage_probs=[p1, p1, p2],
        product_output=second.output is None,
    )


def schmidt_pair_bound(alpha, beta) -> float:
    """Optimal conclusive probability for two copies of alpha|00> + beta|11>: 2|alpha beta|^2."""
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > ATOL:
        raise ValueError("Schmidt pair must be normalized")
    return float(2.0 * abs(alpha * beta) ** 2)


def schmidt_conversion_bound(state) -> float:
    """Upper bound 2(|c1 c4| + |c2 c3|)^2 on any single two-copy branch.

    No admissible parameter pair reaches it on states where both c1 c4 and
    c2 c3 are nonzero; the gap is at least 4(1 - f)|c1 c2 c3 c4|.
    """
    c = as_state(state, dim=4)
    return float(2.0 * (abs(c[0] * c[3]) + abs(c[1] * c[2])) ** 2)


def four_copy_bell_bound(state) -> float:
    """Best pipeline success over valid parameters, reached at a = b = sqrt(2)/2.

    Equals 2|c2 c3|^4 + 2|c1 c4|^4 - 4 Re[c1^2 c4^2 conj(c2)^2 conj(c3)^2],
    which is 2|(c1 c4)^2 - (c2 c3)^2|^2, manifestly non-negative.
    """
    c = as_state(state, dim=4)
    cross = (c[0] ** 2 * c[3] ** 2 * np.conj(c[1]) ** 2 * np.conj(c[2]) ** 2).real
    value = (
        2.0 * abs(c[1] * c[2]) ** 4
        + 2.0 * abs(c[0] * c[3]) ** 4
        - 4.0 * cross
    )
    # clip float dust: the quantity is a squared modulus
    return float(max(value, 0.0))


def kalman_stage1_prob(state) -> float:
    """First-round success 2(|c2 c3|^2 + |c1 c4|^2) of the symmetric-parameter branch."""
    c = as_state(state, dim=4)
    return float(2.0 * (abs(c[1] * c[2]) ** 2 + abs(c[0] * c[3]) ** 2))


def kalman_stage2_prob(state) -> float:
    """Second-round success conditioned on the first; undefined when the first fails.

    |(c1 c4)^2 - (c2 c3)^2|^2 / (2 (|c2 c3|^2 + |c1 c4|^2)^2), raising
    ValueError when the stage-1 probability vanishes.
    """
    c = as_state(state, dim=4)
    denom = 2.0 * (abs(c[1] * c[2]) ** 2 + abs(c[0] * c[3]) ** 2) ** 2
    if denom == 0.0:
        raise ValueError("undefined: the first-round success probability vanishes")
    u = c[0] * c[3]
    w = c[1] * c[2]
    return float(abs(u**2 - w**2) ** 2 / denom)


@dataclass
class BoundReport:
    achieved: float
    bound: float
    saturated: bool
    strict: bool


def compare_to_bound(achieved: float, bound: float, atol: float = 1e-9) -> BoundReport:
    """Package an achieved probability against its bound."""
    return BoundReport(
        achieved=float(achieved),
        bound=float(bound),
        saturated=abs(achieved - bound) <= atol,
        strict=achieved < bound,
    )


def bell_fidelity(state) -> float:
    """Fidelity with (|00>+|11>)/sqrt(2), up to global phase."""
    from .linalg import fidelity_up_to_phase

    return fidelity_up_to_phase(state, bell_phi_plus())
