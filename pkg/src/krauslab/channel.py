"""Kraus families and the structure of their fixed points.

A family ``(a_0, ..., a_{m-1})`` of d x d matrices induces the completely
positive map ``psi(x) = sum_j a_j* x a_j`` and its predual
``psi_*(t) = sum_j a_j t a_j*``.  This module builds the superoperator matrix
of ``psi``, extracts numerical fixed-point spaces and commutants, reports the
spectral gap, and solves for perturbations that repair near-fixed elements.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import opcore

__all__ = [
    "KrausFamily",
    "Superoperator",
    "SubspaceBasis",
    "GapReport",
    "PerturbationResult",
    "SquareClosureReport",
    "fix_tol",
    "unital_tol",
    "apply",
    "apply_predual",
    "superoperator",
    "fixed_space",
    "commutant",
    "subspace_distance",
    "gap_report",
    "solve_perturbation",
    "fix_closed_under_square",
]


def fix_tol(dim: int) -> float:
    """Default singular-value cutoff for numerical fixed spaces."""
    return 1e-8 * dim


def unital_tol(dim: int) -> float:
    """Defect threshold below which a family counts as unital/trace-preserving."""
    return 1e-9 * dim


class KrausFamily:
    """Validated tuple of same-dimension Kraus operators.

    On construction the unital defect ``||sum a_j* a_j - 1||_op`` and the
    counital defect ``||sum a_j a_j* - 1||_op`` are computed once; the family
    is flagged unital (resp. trace-preserving) when the corresponding defect
    is at most ``1e-9 * dim``.
    """

    def __init__(self, ops):
        ops = list(ops)
        if not ops:
            raise ValueError("a Kraus family needs at least one operator")
        mats = []
        for j, a in enumerate(ops):
            m = opcore.as_matrix(a, name=f"kraus[{j}]")
            if m.shape[0] != m.shape[1]:
                raise ValueError(f"kraus[{j}] must be square, got shape {m.shape}")
            mats.append(m)
        d = mats[0].shape[0]
        if any(m.shape != (d, d) for m in mats):
            raise ValueError("all Kraus operators must share one dimension")
        for m in mats:
            m.setflags(write=False)
        self.dim = d
        self.ops = tuple(mats)
        eye = np.eye(d)
        gram_left = sum(a.conj().T @ a for a in mats)
        gram_right = sum(a @ a.conj().T for a in mats)
        self.unital_defect = opcore.op_norm(gram_left - eye)
        self.counital_defect = opcore.op_norm(gram_right - eye)

    def __len__(self) -> int:
        return len(self.ops)

    def __repr__(self) -> str:
        return (
            f"KrausFamily(dim={self.dim}, ops={len(self.ops)}, "
            f"unital_defect={self.unital_defect:.2e}, "
            f"counital_defect={self.counital_defect:.2e})"
        )

    @property
    def defect_tol(self) -> float:
        return unital_tol(self.dim)

    @property
    def is_unital(self) -> bool:
        return self.unital_defect <= self.defect_tol

    @property
    def is_trace_preserving(self) -> bool:
        return self.counital_defect <= self.defect_tol

    def to_json(self) -> dict:
        """Encode as ``{"dim": d, "kraus": [matrix, ...]}``."""
        return {
            "dim": int(self.dim),
            "kraus": [opcore.matrix_to_json(a) for a in self.ops],
        }

    @classmethod
    def from_json(cls, obj) -> "KrausFamily":
        if not isinstance(obj, dict):
            raise ValueError("Kraus object must be a JSON dict")
        if "kraus" not in obj or not isinstance(obj["kraus"], list) or not obj["kraus"]:
            raise ValueError("Kraus object needs a non-empty 'kraus' list")
        mats = [opcore.matrix_from_json(m) for m in obj["kraus"]]
        fam = cls(mats)
        if "dim" in obj and int(obj["dim"]) != fam.dim:
            raise ValueError(
                f"declared dim {obj['dim']} does not match matrices of dim {fam.dim}"
            )
        return fam


def _check_input(family: KrausFamily, x, name: str = "x") -> np.ndarray:
    m = opcore.as_matrix(x, name)
    if m.shape != (family.dim, family.dim):
        raise ValueError(
            f"{name} has shape {m.shape}, expected {(family.dim, family.dim)}"
        )
    return m


def apply(family: KrausFamily, x) -> np.ndarray:
    """Evaluate psi(x) = sum_j a_j* x a_j."""
    m = _check_input(family, x)
    out = np.zeros_like(m)
    for a in family.ops:
        out += a.conj().T @ m @ a
    return out


def apply_predual(family: KrausFamily, t) -> np.ndarray:
    """Evaluate psi_*(t) = sum_j a_j t a_j*.

    Satisfies tr(apply(K, x) @ t) = tr(x @ apply_predual(K, t)); preserves the
    trace of t exactly when the family is unital.
    """
    m = _check_input(family, t, "t")
    out = np.zeros_like(m)
    for a in family.ops:
        out += a @ m @ a.conj().T
    return out


@dataclass(frozen=True, eq=False)
class Superoperator:
    """Matrix of psi acting on column-stacked d x d input."""

    dim: int
    matrix: np.ndarray


def superoperator(family: KrausFamily) -> Superoperator:
    """Build S = sum_j kron(a_j.T, a_j*) so that S @ vec(x) = vec(psi(x)).

    The convention is spot-checked against a direct evaluation on one
    fixed pseudorandom matrix before the result is returned.
    """
    d = family.dim
    s = np.zeros((d * d, d * d), dtype=np.complex128)
    for a in family.ops:
        s += np.kron(a.T, a.conj().T)
    rng = np.random.default_rng(0x5EED)
    probe = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    lhs = s @ opcore.vectorize(probe)
    rhs = opcore.vectorize(apply(family, probe))
    scale = 1.0 + float(np.linalg.norm(rhs))
    if float(np.linalg.norm(lhs - rhs)) > 1e-10 * scale:
        raise ValueError("superoperator build violated the vectorization convention")
    return Superoperator(dim=d, matrix=s)


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """HS-orthonormal basis of a subspace of rows x cols matrices."""

    rows: int
    cols: int
    basis: tuple
    kind: str

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        if self.rows != self.cols:
            raise ValueError("dim is only defined for square-matrix subspaces")
        return self.rows

    def stacked(self) -> np.ndarray:
        """Vectorized basis as orthonormal columns, (rows*cols) x len."""
        if not self.basis:
            return np.zeros((self.rows * self.cols, 0), dtype=np.complex128)
        return np.column_stack([opcore.vectorize(b) for b in self.basis])

    def project(self, x) -> np.ndarray:
        """Orthogonal projection of ``x`` onto the span."""
        m = opcore.as_matrix(x)
        if m.shape != (self.rows, self.cols):
            raise ValueError(f"x has shape {m.shape}, expected {(self.rows, self.cols)}")
        q = self.stacked()
        v = opcore.vectorize(m)
        return opcore.devectorize(q @ (q.conj().T @ v), self.rows, self.cols)

    def distance(self, x) -> float:
        """HS distance from ``x`` to the span."""
        m = opcore.as_matrix(x)
        return float(np.linalg.norm(m - self.project(m)))


def subspace_distance(a: SubspaceBasis, b: SubspaceBasis) -> float:
    """Largest HS distance from a basis element of either space to the other.

    Zero iff the spans agree; both arguments must consist of orthonormal
    elements for the value to be meaningful.
    """
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise ValueError("subspaces live on different matrix shapes")
    worst = 0.0
    for x in a.basis:
        worst = max(worst, b.distance(x))
    for x in b.basis:
        worst = max(worst, a.distance(x))
    return worst


def _hermitian_basis(vecs: np.ndarray, d: int) -> list:
    """Rotate a *-closed kernel basis into HS-orthonormal Hermitian matrices.

    The adjoint-symmetric span of r orthonormal kernel vectors carries exactly
    r real dimensions of Hermitian matrices; the top-r eigenvectors of the real
    Gram matrix of all Hermitian/anti-Hermitian parts recover them.
    """
    r = vecs.shape[1]
    if r == 0:
        return []
    cands = []
    for i in range(r):
        b = opcore.devectorize(vecs[:, i], d, d)
        cands.append((b + b.conj().T) / 2.0)
        cands.append((b - b.conj().T) / 2.0j)
    w = np.column_stack([opcore.vectorize(c) for c in cands])
    gram = (w.conj().T @ w).real
    evals, evecs = np.linalg.eigh(gram)
    order = np.argsort(evals)[::-1][:r]
    basis = []
    for q in order:
        lam = float(evals[q])
        if lam <= 1e-12:
            raise ValueError("fixed space is not numerically closed under adjoints")
        h = sum(evecs[a, q] * cands[a] for a in range(2 * r)) / math.sqrt(lam)
        basis.append((h + h.conj().T) / 2.0)
    return basis


def fixed_space(family: KrausFamily, tol: float | None = None) -> SubspaceBasis:
    """Numerical fixed-point space of psi, with a Hermitian basis.

    Singular vectors of ``S - I`` at singular value <= tol (default
    ``1e-8 * dim``) span the space; the basis is rotated to Hermitian matrices,
    which is possible because the space is closed under adjoints.  For a
    unital family the normalized identity always lies in the span.
    """
    if tol is None:
        tol = fix_tol(family.dim)
    if not family.is_unital:
        warnings.warn(
            "fixed_space of a non-unital family may be trivial", stacklevel=2
        )
    d = family.dim
    s = superoperator(family).matrix
    kernel = opcore.null_space_basis(s - np.eye(d * d), tol)
    basis = _hermitian_basis(kernel, d)
    return SubspaceBasis(rows=d, cols=d, basis=tuple(basis), kind="fixed-space")


def commutant(mats, tol: float | None = None) -> SubspaceBasis:
    """Joint commutant {x : a_j x = x a_j for all j} as a numerical null space.

    The blocks ``kron(I, a_j) - kron(a_j.T, I)`` are stacked and the right
    singular vectors below ``tol`` are returned.  Always contains the
    normalized identity.
    """
    mats = list(mats)
    if not mats:
        raise ValueError("commutant of an empty family is undefined")
    sq = [opcore._square(a, name=f"mats[{j}]") for j, a in enumerate(mats)]
    d = sq[0].shape[0]
    if any(a.shape != (d, d) for a in sq):
        raise ValueError("all matrices must share one dimension")
    if tol is None:
        tol = fix_tol(d)
    eye = np.eye(d)
    stacked = np.vstack([np.kron(eye, a) - np.kron(a.T, eye) for a in sq])
    kernel = opcore.null_space_basis(stacked, tol)
    basis = tuple(
        opcore.devectorize(kernel[:, i], d, d) for i in range(kernel.shape[1])
    )
    return SubspaceBasis(rows=d, cols=d, basis=basis, kind="commutant")


@dataclass(frozen=True)
class GapReport:
    """Singular-value summary of S - I.

    ``restricted_gap`` is the smallest singular value above the fixed-space
    cutoff, or ``math.inf`` when every singular value sits below it.
    """

    sigma_min: float
    restricted_gap: float
    fix_dim: int


def gap_report(family: KrausFamily, tol: float | None = None) -> GapReport:
    """Report sigma_min, the restricted gap and the numerical fixed dimension."""
    if tol is None:
        tol = fix_tol(family.dim)
    d = family.dim
    s = superoperator(family).matrix
    sv = np.sort(np.linalg.svd(s - np.eye(d * d), compute_uv=False))
    fix_dim = int(np.sum(sv <= tol))
    restricted = float(sv[fix_dim]) if fix_dim < sv.size else math.inf
    return GapReport(sigma_min=float(sv[0]), restricted_gap=restricted, fix_dim=fix_dim)


@dataclass(frozen=True, eq=False)
class PerturbationResult:
    """Least-squares perturbation ``z`` and the norm of the unmet residual."""

    z: np.ndarray
    residual: float


def solve_perturbation(family: KrausFamily, y, tol: float | None = None) -> PerturbationResult:
    """Solve (psi - 1)(z) = y - psi(y) in the least-squares sense.

    When the residual vanishes, x = y + z is exactly fixed; in general
    ``||psi(x) - x||_2`` equals the reported residual up to rounding.  The
    pseudo-inverse of ``I - S`` uses an absolute singular-value cutoff equal
    to the fixed-space tolerance, so components of the defect lying along the
    fixed directions are dropped rather than amplified.
    """
    if tol is None:
        tol = fix_tol(family.dim)
    d = family.dim
    m = _check_input(family, y, "y")
    s = superoperator(family).matrix
    a = np.eye(d * d) - s
    b = opcore.vectorize(apply(family, m) - m)
    u, sv, vh = np.linalg.svd(a)
    inv = np.zeros_like(sv)
    np.divide(1.0, sv, out=inv, where=sv > tol)
    z_vec = vh.conj().T @ (inv * (u.conj().T @ b))
    residual = float(np.linalg.norm(a @ z_vec - b))
    return PerturbationResult(z=opcore.devectorize(z_vec, d, d), residual=residual)


@dataclass(frozen=True, eq=False)
class SquareClosureReport:
    """Outcome of testing whether the fixed space is closed under squares."""

    closed: bool
    witness: np.ndarray | None
    fix_dim: int
    commutant_dim: int | None
    subspace_distance: float | None


def fix_closed_under_square(family: KrausFamily, tol: float = 1e-8) -> SquareClosureReport:
    """Test closure of the fixed space under squaring its elements.

    Squaring a real combination of the Hermitian basis expands into the
    Jordan products ``(h_i h_j + h_j h_i) / 2``, so closure is equivalent to
    every such product staying fixed; the first violating product is returned
    as a witness when ``||psi(m) - m||_2 > tol``.  When no violation is found,
    the fixed space must coincide with the commutant of the family, and that
    equality is asserted (dimension match plus mutual projection residual
    <= tol).
    """
    fs = fixed_space(family)
    for i, hi in enumerate(fs.basis):
        for hj in fs.basis[i:]:
            m = (hi @ hj + hj @ hi) / 2.0
            defect = float(np.linalg.norm(apply(family, m) - m))
            if defect > tol:
                return SquareClosureReport(
                    closed=False,
                    witness=m,
                    fix_dim=len(fs),
                    commutant_dim=None,
                    subspace_distance=None,
                )
    com = commutant(list(family.ops))
    dist = subspace_distance(fs, com)
    if len(fs) != len(com) or dist > tol:
        raise ValueError(
            "fixed space is closed under squares yet differs from the commutant "
            f"(dims {len(fs)} vs {len(com)}, distance {dist:.3e})"
        )
    return SquareClosureReport(
        closed=True,
        witness=None,
        fix_dim=len(fs),
        commutant_dim=len(com),
        subspace_distance=dist,
    )
