"""Commuting normal coefficient families and product maps built from them.

For families ``c = (c_j)`` and ``d = (d_j)`` the product map is
``theta(x) = sum_j c_j x d_j``.  When each family is commuting and normal the
two families diagonalize simultaneously, the spectrum of ``theta`` is the set
of pointwise products of joint-spectrum tuples, and the fixed points of the
Kraus-like variant ``sum_j a_j x b_j`` are exactly the intertwiners
``{x : a_j x = x b_j*}``.  The checks here quantify each of those statements.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import opcore
from .channel import SubspaceBasis, subspace_distance

__all__ = [
    "CommutingFamily",
    "DiagonalizationResult",
    "JointSpectrum",
    "SpectrumProductReport",
    "IntertwinerFixedReport",
    "PositiveSpectrumReport",
    "simultaneous_diagonalize",
    "joint_spectrum",
    "theta_apply",
    "theta_superoperator",
    "product_spectrum",
    "spectrum_product_check",
    "hausdorff_distance",
    "intertwiner_space",
    "intertwiner_fixed_point_check",
    "positive_eigenvalue_check",
]

DEFECT_GATE = 1e-9


class CommutingFamily:
    """Tuple of same-dimension matrices with commutativity diagnostics.

    ``accepted`` requires the normality defect ``max_j ||c_j c_j* - c_j* c_j||_2``
    and the commutation defect ``max_{j,k} ||c_j c_k - c_k c_j||_2`` to both be
    at most 1e-9.  Row and column completeness defects (distance of
    ``sum c_j c_j*`` resp. ``sum c_j* c_j`` from the identity in operator norm)
    are recorded but not gated.
    """

    def __init__(self, mats):
        mats = list(mats)
        if not mats:
            raise ValueError("a commuting family needs at least one matrix")
        sq = []
        for j, c in enumerate(mats):
            m = opcore.as_matrix(c, name=f"mats[{j}]")
            if m.shape[0] != m.shape[1]:
                raise ValueError(f"mats[{j}] must be square, got shape {m.shape}")
            sq.append(m)
        d = sq[0].shape[0]
        if any(m.shape != (d, d) for m in sq):
            raise ValueError("all matrices must share one dimension")
        for m in sq:
            m.setflags(write=False)
        self.dim = d
        self.mats = tuple(sq)
        self.normality_defect = max(
            float(np.linalg.norm(c @ c.conj().T - c.conj().T @ c)) for c in sq
        )
        comm = 0.0
        for i in range(len(sq)):
            for j in range(i + 1, len(sq)):
                comm = max(
                    comm, float(np.linalg.norm(sq[i] @ sq[j] - sq[j] @ sq[i]))
                )
        self.commutation_defect = comm
        eye = np.eye(d)
        self.row_completeness_defect = opcore.op_norm(
            sum(c @ c.conj().T for c in sq) - eye
        )
        self.column_completeness_defect = opcore.op_norm(
            sum(c.conj().T @ c for c in sq) - eye
        )

    def __len__(self) -> int:
        return len(self.mats)

    def __repr__(self) -> str:
        return (
            f"CommutingFamily(dim={self.dim}, mats={len(self.mats)}, "
            f"normality={self.normality_defect:.2e}, "
            f"commutation={self.commutation_defect:.2e})"
        )

    @property
    def accepted(self) -> bool:
        return (
            self.normality_defect <= DEFECT_GATE
            and self.commutation_defect <= DEFECT_GATE
        )

    def require_accepted(self) -> None:
        if not self.accepted:
            raise ValueError(
                "family fails the commuting-normal gates: "
                f"normality {self.normality_defect:.3e}, "
                f"commutation {self.commutation_defect:.3e}"
            )


def _family_mats(obj, name: str) -> tuple:
    """Accept a CommutingFamily or a plain sequence of square matrices."""
    if isinstance(obj, CommutingFamily):
        return obj.mats
    mats = [opcore.as_matrix(x, name=f"{name}[{j}]") for j, x in enumerate(list(obj))]
    if not mats:
        raise ValueError(f"{name} must be a non-empty family")
    n = mats[0].shape[0]
    if any(m.shape != (n, n) for m in mats):
        raise ValueError(f"{name} matrices must be square and share one dimension")
    return tuple(mats)


@dataclass(frozen=True, eq=False)
class DiagonalizationResult:
    """Common eigenbasis and the per-matrix diagonals in that basis."""

    unitary: np.ndarray
    diags: tuple


def simultaneous_diagonalize(
    family: CommutingFamily, residual_tol: float = 1e-8
) -> DiagonalizationResult:
    """Common unitary eigenbasis of an accepted commuting normal family.

    A fixed pseudorandom Hermitian combination of the generators splits the
    joint eigenspaces generically; any block it leaves degenerate is refined
    with the Hermitian and anti-Hermitian part of every generator in turn, so
    the refinement terminates with all generators scalar on each block.  The
    off-diagonal residual of every rotated generator is gated at
    ``residual_tol``.
    """
    if not isinstance(family, CommutingFamily):
        family = CommutingFamily(family)
    family.require_accepted()
    d = family.dim
    mats = family.mats
    rng = np.random.default_rng(0xD1A6)
    coeff = rng.standard_normal(2 * len(mats))
    probes = [
        sum(
            coeff[2 * j] * (c + c.conj().T) / 2.0
            + coeff[2 * j + 1] * (c - c.conj().T) / 2.0j
            for j, c in enumerate(mats)
        )
    ]
    for c in mats:
        probes.append((c + c.conj().T) / 2.0)
        probes.append((c - c.conj().T) / 2.0j)

    basis = np.eye(d, dtype=np.complex128)
    blocks = [np.arange(d)]
    for probe in probes:
        gap = 1e-6 * (1.0 + float(np.linalg.norm(probe, 2)))
        refined = []
        for blk in blocks:
            if blk.size == 1:
                refined.append(blk)
                continue
            p = basis[:, blk]
            h = p.conj().T @ probe @ p
            h = (h + h.conj().T) / 2.0
            w, v = np.linalg.eigh(h)
            basis[:, blk] = p @ v
            start = 0
            for i in range(1, blk.size):
                if w[i] - w[i - 1] > gap:
                    refined.append(blk[start:i])
                    start = i
            refined.append(blk[start:])
        blocks = refined

    diags = []
    for c in mats:
        rotated = basis.conj().T @ c @ basis
        off = rotated - np.diag(np.diagonal(rotated))
        if float(np.linalg.norm(off)) > residual_tol:
            raise ValueError(
                f"diagonalization residual {float(np.linalg.norm(off)):.3e} "
                f"above tolerance {residual_tol:.3e}"
            )
        diags.append(np.diagonal(rotated).copy())
    return DiagonalizationResult(unitary=basis, diags=tuple(diags))


@dataclass(frozen=True)
class JointSpectrum:
    """Deduplicated joint eigenvalue tuples of a commuting normal family."""

    points: tuple


def joint_spectrum(family: CommutingFamily, dedupe_tol: float = 1e-8) -> JointSpectrum:
    """Joint spectrum as tuples (one entry per generator) at each eigenvector.

    Tuples closer than ``dedupe_tol`` in Euclidean distance are merged; the
    result is sorted lexicographically by (real, imaginary) parts for
    reproducibility.  Every tuple's norm is bounded by the family norm
    ``||sum c_j* c_j||^(1/2)``.
    """
    if not isinstance(family, CommutingFamily):
        family = CommutingFamily(family)
    res = simultaneous_diagonalize(family)
    rows = np.stack(res.diags, axis=1)
    # lexsort takes its last key as primary, so push component 0 keys last.
    keys = []
    for comp in range(rows.shape[1] - 1, -1, -1):
        keys.append(rows[:, comp].imag)
        keys.append(rows[:, comp].real)
    ordered = rows[np.lexsort(tuple(keys))]
    reps = []
    for row in ordered:
        if all(np.linalg.norm(row - r) > dedupe_tol for r in reps):
            reps.append(row)
    bound = float(
        np.sqrt(opcore.op_norm(sum(c.conj().T @ c for c in family.mats)))
    )
    for r in reps:
        if np.linalg.norm(r) > bound + 1e-9:
            raise ValueError("joint-spectrum tuple exceeds the family norm bound")
    return JointSpectrum(points=tuple(tuple(complex(z) for z in r) for r in reps))


def theta_apply(c, d, x) -> np.ndarray:
    """Evaluate theta(x) = sum_j c_j x d_j for equal-length families."""
    cm = _family_mats(c, "c")
    dm = _family_mats(d, "d")
    if len(cm) != len(dm):
        raise ValueError(f"families have {len(cm)} vs {len(dm)} generators")
    m = opcore.as_matrix(x, "x")
    if m.shape != (cm[0].shape[0], dm[0].shape[0]):
        raise ValueError(
            f"x has shape {m.shape}, expected {(cm[0].shape[0], dm[0].shape[0])}"
        )
    out = np.zeros_like(m)
    for cj, dj in zip(cm, dm):
        out += cj @ m @ dj
    return out


def theta_superoperator(c, d) -> np.ndarray:
    """Matrix sum_j kron(d_j.T, c_j) of theta on column-stacked input."""
    cm = _family_mats(c, "c")
    dm = _family_mats(d, "d")
    if len(cm) != len(dm):
        raise ValueError(f"families have {len(cm)} vs {len(dm)} generators")
    nc, nd = cm[0].shape[0], dm[0].shape[0]
    s = np.zeros((nc * nd, nc * nd), dtype=np.complex128)
    for cj, dj in zip(cm, dm):
        s += np.kron(dj.T, cj)
    return s


def _sorted_complex(vals: np.ndarray) -> np.ndarray:
    arr = np.asarray(vals, dtype=np.complex128).ravel()
    return arr[np.lexsort((arr.imag, arr.real))]


def _dedupe_complex(vals: np.ndarray, tol: float) -> np.ndarray:
    reps: list = []
    for v in _sorted_complex(vals):
        if all(abs(v - r) > tol for r in reps):
            reps.append(complex(v))
    return np.array(reps, dtype=np.complex128)


def product_spectrum(sc: JointSpectrum, sd: JointSpectrum, dedupe_tol: float = 1e-8) -> np.ndarray:
    """All pointwise products sum_j lambda_j mu_j of two joint spectra."""
    if not sc.points or not sd.points:
        raise ValueError("joint spectra must be non-empty")
    if len(sc.points[0]) != len(sd.points[0]):
        raise ValueError("joint spectra have different tuple lengths")
    vals = [
        sum(l * m for l, m in zip(lam, mu))
        for lam in sc.points
        for mu in sd.points
    ]
    return _dedupe_complex(np.array(vals, dtype=np.complex128), dedupe_tol)


def hausdorff_distance(a, b) -> float:
    """Hausdorff distance between two finite sets of complex numbers."""
    av = np.asarray(a, dtype=np.complex128).ravel()
    bv = np.asarray(b, dtype=np.complex128).ravel()
    if av.size == 0 or bv.size == 0:
        raise ValueError("Hausdorff distance needs non-empty sets")
    gaps = np.abs(av[:, None] - bv[None, :])
    return float(max(gaps.min(axis=1).max(), gaps.min(axis=0).max()))


@dataclass(frozen=True, eq=False)
class SpectrumProductReport:
    """Eigenvalues of theta against the product of the joint spectra."""

    eigs: np.ndarray
    product: np.ndarray
    hausdorff: float


def spectrum_product_check(c, d) -> SpectrumProductReport:
    """Compare spec(theta) with the product set of the two joint spectra.

    For accepted commuting normal families the Hausdorff distance vanishes up
    to rounding, because theta is diagonal in the tensor basis built from the
    two common eigenbases.
    """
    cf = c if isinstance(c, CommutingFamily) else CommutingFamily(c)
    df = d if isinstance(d, CommutingFamily) else CommutingFamily(d)
    eigs = _sorted_complex(np.linalg.eigvals(theta_superoperator(cf, df)))
    product = product_spectrum(joint_spectrum(cf), joint_spectrum(df))
    return SpectrumProductReport(
        eigs=eigs,
        product=product,
        hausdorff=hausdorff_distance(eigs, product),
    )


def intertwiner_space(a, b, tol: float | None = None) -> SubspaceBasis:
    """Numerical solution space of a_j x = x b_j* for all j.

    Completeness of the families (``sum a_j a_j* = 1`` row-wise for ``a``,
    ``sum b_j* b_j = 1`` column-wise for ``b``) is checked to 1e-9 and only
    warned about, since the solver itself does not need it.
    """
    am = _family_mats(a, "a")
    bm = _family_mats(b, "b")
    if len(am) != len(bm):
        raise ValueError(f"families have {len(am)} vs {len(bm)} generators")
    na, nb = am[0].shape[0], bm[0].shape[0]
    if tol is None:
        tol = 1e-8 * max(na, nb)
    row_defect = opcore.op_norm(sum(x @ x.conj().T for x in am) - np.eye(na))
    col_defect = opcore.op_norm(sum(x.conj().T @ x for x in bm) - np.eye(nb))
    if row_defect > DEFECT_GATE:
        warnings.warn(
            f"a is not row-complete (defect {row_defect:.3e})", stacklevel=2
        )
    if col_defect > DEFECT_GATE:
        warnings.warn(
            f"b is not column-complete (defect {col_defect:.3e})", stacklevel=2
        )
    blocks = [
        np.kron(np.eye(nb), aj) - np.kron(bj.conj(), np.eye(na))
        for aj, bj in zip(am, bm)
    ]
    kernel = opcore.null_space_basis(np.vstack(blocks), tol)
    basis = tuple(
        opcore.devectorize(kernel[:, i], na, nb) for i in range(kernel.shape[1])
    )
    return SubspaceBasis(rows=na, cols=nb, basis=basis, kind="intertwiner")


@dataclass(frozen=True)
class IntertwinerFixedReport:
    """Fixed points of sum_j a_j x b_j versus the intertwiner space."""

    fix_dim: int
    intertwiner_dim: int
    subspace_distance: float
    passed: bool


def intertwiner_fixed_point_check(a, b, tol: float = 1e-7) -> IntertwinerFixedReport:
    """Check that fixed points of x -> sum_j a_j x b_j are the intertwiners.

    Both spaces are computed as numerical null spaces with cutoff ``tol``; the
    check passes when the dimensions agree and the mutual subspace distance is
    at most ``tol``.
    """
    am = _family_mats(a, "a")
    bm = _family_mats(b, "b")
    s = theta_superoperator(am, bm)
    na, nb = am[0].shape[0], bm[0].shape[0]
    kernel = opcore.null_space_basis(s - np.eye(na * nb), tol)
    fixed = SubspaceBasis(
        rows=na,
        cols=nb,
        basis=tuple(
            opcore.devectorize(kernel[:, i], na, nb) for i in range(kernel.shape[1])
        ),
        kind="fixed-space",
    )
    inter = intertwiner_space(am, bm, tol)
    dist = subspace_distance(fixed, inter) if (len(fixed) or len(inter)) else 0.0
    passed = len(fixed) == len(inter) and dist <= tol
    return IntertwinerFixedReport(
        fix_dim=len(fixed),
        intertwiner_dim=len(inter),
        subspace_distance=dist,
        passed=passed,
    )


@dataclass(frozen=True, eq=False)
class PositiveSpectrumReport:
    """Spectral positivity diagnostics for theta with PSD coefficients."""

    eigs: np.ndarray
    min_real: float
    max_imag: float


def positive_eigenvalue_check(c, d) -> PositiveSpectrumReport:
    """Eigenvalues of theta when every coefficient on both sides is PSD.

    The superoperator is then a sum of Kronecker products of PSD matrices,
    hence PSD itself; the report records how far the generic eigenvalue
    solver strays from the real nonnegative axis.  Commutativity is not
    required.  Non-PSD inputs raise.
    """
    cm = _family_mats(c, "c")
    dm = _family_mats(d, "d")
    if len(cm) != len(dm):
        raise ValueError(f"families have {len(cm)} vs {len(dm)} generators")
    for name, mats in (("c", cm), ("d", dm)):
        for j, m in enumerate(mats):
            sym = opcore.symmetrized(m, name=f"{name}[{j}]")
            w = np.linalg.eigvalsh(sym)
            ptol = 1e-10 * (1.0 + float(np.max(np.abs(w))))
            if float(w[0]) < -ptol:
                raise ValueError(
                    f"{name}[{j}] is not PSD: eigenvalue {float(w[0]):.3e}"
                )
    eigs = _sorted_complex(np.linalg.eigvals(theta_superoperator(cm, dm)))
    return PositiveSpectrumReport(
        eigs=eigs,
        min_real=float(eigs.real.min()),
        max_imag=float(np.abs(eigs.imag).max()),
    )
