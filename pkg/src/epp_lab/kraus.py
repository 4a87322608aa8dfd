"""Kraus operators for conclusive two-copy purification.

The local operator acts on one party's pair of qubits (her halves of the
two copies).  A single successful branch is modeled; an implicit failure
branch completes the physical map.  Lifting tensors two local copies and
reorders registers so the lifted operator acts on states stored in
(A, B, A', B') order.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import ATOL, basis_state, permutation_matrix

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)
# basis order used by pauli_expand: (x, y, z, identity)
PAULI_BASIS = (SIGMA_X, SIGMA_Y, SIGMA_Z, IDENTITY_2)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)

# (A,B,A',B') -> (A,A',B,B'); the permutation is an involution
COPY_INTERLEAVE = (0, 2, 1, 3)
_P_INTERLEAVE = permutation_matrix(COPY_INTERLEAVE)

# Slack on the parameter constraint so boundary points like a = b = sqrt(2)/2
# survive floating-point rounding.
CONSTRAINT_SLACK = 1e-12


def constraint_value(a, b) -> float:
    """2(|a|^4 + |b|^4); valid parameter pairs keep this at most 1."""
    return float(2.0 * (abs(a) ** 4 + abs(b) ** 4))


def params_valid(a, b) -> bool:
    if a == 0 and b == 0:
        return False
    return constraint_value(a, b) <= 1.0 + CONSTRAINT_SLACK


def f_parameter(a, b) -> float:
    """Asymmetry f = 2 | |a|^4 - |b|^4 |, ranging over [0, 1] for valid pairs.

    f = 1 only at the degenerate corners (|a| = 2**-0.25, b = 0) and the
    mirror image, where the branch output is always a product state.
    """
    return float(2.0 * abs(abs(a) ** 4 - abs(b) ** 4))


@dataclass
class KrausParams:
    """Complex pair (a, b) steering the success branch.

    Invariants enforced on construction: not both zero, and
    2(|a|^4 + |b|^4) <= 1 within CONSTRAINT_SLACK.  A vanishing a or b is
    allowed but flagged degenerate: that branch can only make product
    output, so the purification stage it feeds is useless.
    """

    a: complex
    b: complex

    def __post_init__(self):
        self.a = complex(self.a)
        self.b = complex(self.b)
        if self.a == 0 and self.b == 0:
            raise ValueError("a and b must not both vanish")
        value = constraint_value(self.a, self.b)
        if value > 1.0 + CONSTRAINT_SLACK:
            raise ValueError(f"2(|a|^4 + |b|^4) = {value:.6f} exceeds 1")

    @property
    def f(self) -> float:
        return f_parameter(self.a, self.b)

    @property
    def degenerate(self) -> bool:
        return self.a == 0 or self.b == 0


# stage-2 parameters: the symmetric point saturating the constraint
CANONICAL_PARAMS = KrausParams(np.sqrt(2) / 2, np.sqrt(2) / 2)


def build_kraus(params: KrausParams) -> np.ndarray:
    """Local success-branch operator a(|00><01| + |00><10|) + b(|10><01| - |10><10|)."""
    a, b = params.a, params.b
    K = np.zeros((4, 4), dtype=complex)
    K[0, 1] = a
    K[0, 2] = a
    K[2, 1] = b
    K[2, 2] = -b
    return K


def kalman_kraus() -> np.ndarray:
    """Success branch of the Kalman purification circuit.

    Composition (H tensor |0><0|) . CNOT . (1 tensor sigma_x) with qubit 0
    as the CNOT control; equals build_kraus at a = b = sqrt(2)/2.
    """
    proj0 = np.array([[1, 0], [0, 0]], dtype=complex)
    return np.kron(HADAMARD, proj0) @ CNOT @ np.kron(IDENTITY_2, SIGMA_X)


def lift_local_kraus(K: np.ndarray) -> np.ndarray:
    """Two-party operator K tensor K, expressed in (A, B, A', B') register order.

    K tensor K naturally acts on (A, A')(B, B'); conjugating by the
    interleaving permutation makes the result applicable directly to
    tensor(psi, psi), which is stored as (A, B)(A', B').
    """
    K = np.asarray(K, dtype=complex)
    if K.shape != (4, 4):
        raise ValueError("local operator must be 4x4")
    return _P_INTERLEAVE @ np.kron(K, K) @ _P_INTERLEAVE


def apply_kraus(op: np.ndarray, s: np.ndarray) -> tuple[np.ndarray, float]:
    """Unnormalized branch output op @ s and its squared norm (the branch probability)."""
    op = np.asarray(op, dtype=complex)
    s = np.asarray(s, dtype=complex).reshape(-1)
    if op.shape != (s.size, s.size):
        raise ValueError(f"operator shape {op.shape} does not act on dimension {s.size}")
    out = op @ s
    return out, float(np.vdot(out, out).real)


@dataclass
class KrausMap:
    """Collection of branch operators on a common space."""

    ops: list = field(default_factory=list)
    acts_on: int = 16

    def deficit_eigenvalues(self) -> np.ndarray:
        """Eigenvalues of 1 - sum_i op_i^dag op_i; all >= -tol for a physical map."""
        total = np.zeros((self.acts_on, self.acts_on), dtype=complex)
        for op in self.ops:
            op = np.asarray(op, dtype=complex)
            total += op.conj().T @ op
        return np.linalg.eigvalsh(np.eye(self.acts_on) - total)

    def is_trace_nonincreasing(self, atol: float = ATOL) -> bool:
        return bool(self.deficit_eigenvalues().min() >= -atol)


# Universality demands the lifted operator kill every two-copy component
# that is not proportional to |00>+-|11> after success.  Listed in
# (A, B, A', B') order; the four superposition vectors are normalized.
KILL_VECTOR_LABELS = (
    "0000",
    "0101",
    "1010",
    "1111",
    "0001+0100",
    "0010+1000",
    "0111+1011",
    "1011+1110",
)


def kill_vectors() -> list[tuple[str, np.ndarray]]:
    out = []
    for label in KILL_VECTOR_LABELS:
        parts = label.split("+")
        v = sum(basis_state(4, bits) for bits in parts)
        out.append((label, v / np.linalg.norm(v)))
    return out


@dataclass
class ConstraintReport:
    kill_vector_norms: list
    passed: bool
    tolerance: float = ATOL

    @property
    def max_residual(self) -> float:
        return max(r for _, r in self.kill_vector_norms)


def check_universality_constraints(M: np.ndarray, atol: float = ATOL) -> ConstraintReport:
    """Residual norms ||M v|| over the eight kill vectors."""
    M = np.asarray(M, dtype=complex)
    if M.shape != (16, 16):
        raise ValueError("lifted operator must be 16x16")
    norms = []
    for label, v in kill_vectors():
        norms.append((label, float(np.linalg.norm(M @ v))))
    passed = all(r <= atol for _, r in norms)
    return ConstraintReport(kill_vector_norms=norms, passed=passed, tolerance=atol)


@dataclass
class PauliExpansion:
    """Coefficients r[k, l] of K = sum_kl r[k, l] sigma_k tensor sigma_l."""

    r: np.ndarray

    def reconstruct(self) -> np.ndarray:
        out = np.zeros((4, 4), dtype=complex)
        for k in range(4):
            for l in range(4):
                out += self.r[k, l] * np.kron(PAULI_BASIS[k], PAULI_BASIS[l])
        return out


def pauli_expand(K: np.ndarray) -> PauliExpansion:
    """Expand a 4x4 operator over the (x, y, z, 1) tensor-pair basis.

    r[k, l] = Tr[(sigma_k tensor sigma_l)^dag K] / 4.  For build_kraus the
    expansion collapses to two free entries, r[0, 3] = a/4 and r[2, 3] = b/4,
    with every other entry fixed by linear relations.
    """
    K = np.asarray(K, dtype=complex)
    if K.shape != (4, 4):
        raise ValueError("operator must be 4x4")
    r = np.zeros((4, 4), dtype=complex)
    for k in range(4):
        for l in range(4):
            basis_op = np.kron(PAULI_BASIS[k], PAULI_BASIS[l])
            r[k, l] = np.trace(basis_op.conj().T @ K) / 4.0
    return PauliExpansion(r=r)


def pauli_relation_residuals(expansion: PauliExpansion) -> dict[str, float]:
    """Residuals of the linear relations satisfied by the purifying family.

    Keys name the relation; values are absolute deviations.  All residuals
    vanish (to rounding) exactly when K came from build_kraus.
    """
    r = expansion.r
    i = 1j
    checks = {
        "r21+r12": r[1, 0] + r[0, 1],
        "r22-r11": r[1, 1] - r[0, 0],
        "r23-i*r14": r[1, 2] - i * r[0, 3],
        "r24-i*r13": r[1, 3] - i * r[0, 2],
        "r41+i*r32": r[3, 0] + i * r[2, 1],
        "r42-i*r31": r[3, 1] - i * r[2, 0],
        "r43+r34": r[3, 2] + r[2, 3],
        "r44+r33": r[3, 3] + r[2, 2],
        "r11-r34": r[0, 0] - r[2, 3],
        "r12-i*r34": r[0, 1] - i * r[2, 3],
        "r13-r14": r[0, 2] - r[0, 3],
        "r31-r14": r[2, 0] - r[0, 3],
        "r32-i*r14": r[2, 1] - i * r[0, 3],
        "r33-r34": r[2, 2] - r[2, 3],
    }
    return {name: float(abs(val)) for name, val in checks.items()}
