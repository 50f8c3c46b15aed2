"""Dense complex matrix primitives shared by the rest of the package.

Operators are plain 2-D complex128 numpy arrays.  Vectorization is column
stacking, so ``vec(A @ X @ B) = kron(B.T, A) @ vec(X)``; every superoperator
matrix in the package is written against that convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

__all__ = [
    "MatrixNorms",
    "HermitianWitness",
    "as_matrix",
    "norms",
    "op_norm",
    "hs_norm",
    "trace_norm",
    "hs_inner",
    "hermitian_witness",
    "symmetrized",
    "positive_part",
    "psd_sqrt",
    "vectorize",
    "devectorize",
    "null_space_basis",
    "linear_map_matrix",
    "matrix_to_json",
    "matrix_from_json",
]


def as_matrix(x, name: str = "matrix") -> np.ndarray:
    """Coerce ``x`` to a 2-D complex128 array, rejecting empty or non-finite input."""
    m = np.asarray(x, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {m.shape}")
    if m.shape[0] == 0 or m.shape[1] == 0:
        raise ValueError(f"{name} must have positive dimensions, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def _square(x, name: str = "matrix") -> np.ndarray:
    m = as_matrix(x, name)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    return m


class MatrixNorms(NamedTuple):
    op: float
    hs: float
    tr: float


def norms(x) -> MatrixNorms:
    """Operator, Hilbert-Schmidt and trace norms, all read off one SVD.

    The three values satisfy ``op <= hs <= tr`` up to rounding.
    """
    s = np.linalg.svd(as_matrix(x), compute_uv=False)
    return MatrixNorms(
        op=float(s[0]),
        hs=float(np.sqrt(np.sum(s * s))),
        tr=float(np.sum(s)),
    )


def op_norm(x) -> float:
    """Largest singular value."""
    return float(np.linalg.svd(as_matrix(x), compute_uv=False)[0])


def hs_norm(x) -> float:
    """Hilbert-Schmidt (Frobenius) norm, sqrt(tr(x* x))."""
    return float(np.linalg.norm(as_matrix(x)))


def trace_norm(x) -> float:
    """Sum of singular values."""
    return float(np.sum(np.linalg.svd(as_matrix(x), compute_uv=False)))


def hs_inner(x, y) -> complex:
    """Hilbert-Schmidt inner product tr(x* y), conjugate-linear in ``x``."""
    mx = as_matrix(x, "x")
    my = as_matrix(y, "y")
    if mx.shape != my.shape:
        raise ValueError(f"shape mismatch {mx.shape} vs {my.shape}")
    return complex(np.vdot(mx, my))


@dataclass(frozen=True, eq=False)
class HermitianWitness:
    """Symmetrized matrix together with how far the input was from Hermitian."""

    matrix: np.ndarray
    asymmetry: float
    tolerance: float

    @property
    def accepted(self) -> bool:
        return self.asymmetry <= self.tolerance


def hermitian_witness(m, name: str = "matrix") -> HermitianWitness:
    """Measure ``||m - m*||_2`` against the scale-aware Hermitian tolerance.

    A matrix passes iff its asymmetry is at most ``1e-10 * (1 + ||m||_2)``.
    """
    a = _square(m, name)
    asym = float(np.linalg.norm(a - a.conj().T))
    tol = 1e-10 * (1.0 + float(np.linalg.norm(a)))
    return HermitianWitness(matrix=(a + a.conj().T) / 2.0, asymmetry=asym, tolerance=tol)


def symmetrized(m, name: str = "matrix") -> np.ndarray:
    """Return (m + m*)/2, raising if the asymmetry exceeds tolerance."""
    w = hermitian_witness(m, name)
    if not w.accepted:
        raise ValueError(
            f"{name} is not Hermitian: asymmetry {w.asymmetry:.3e} "
            f"exceeds tolerance {w.tolerance:.3e}"
        )
    return w.matrix


def positive_part(h) -> np.ndarray:
    """Spectral positive part h_+ of a Hermitian matrix.

    Satisfies h = positive_part(h) - positive_part(-h) after symmetrization.
    """
    sym = symmetrized(h)
    w, v = np.linalg.eigh(sym)
    out = (v * np.clip(w, 0.0, None)) @ v.conj().T
    return (out + out.conj().T) / 2.0


def psd_sqrt(p) -> np.ndarray:
    """Positive square root of a PSD matrix.

    Eigenvalues in ``[-psd_tol, 0)`` with ``psd_tol = 1e-10 * (1 + ||p||_op)``
    are clipped to zero; anything more negative raises.
    """
    sym = symmetrized(p)
    w, v = np.linalg.eigh(sym)
    ptol = 1e-10 * (1.0 + float(np.max(np.abs(w))))
    if float(w[0]) < -ptol:
        raise ValueError(
            f"matrix is not PSD: eigenvalue {float(w[0]):.3e} below -{ptol:.3e}"
        )
    out = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    return (out + out.conj().T) / 2.0


def vectorize(x) -> np.ndarray:
    """Column-stack a rows x cols matrix into a vector of length rows*cols."""
    return as_matrix(x).reshape(-1, order="F").copy()


def devectorize(v, rows: int, cols: int) -> np.ndarray:
    """Inverse of :func:`vectorize` for the given shape."""
    a = np.asarray(v, dtype=np.complex128).ravel()
    if a.size != rows * cols:
        raise ValueError(f"vector of length {a.size} does not fill {rows}x{cols}")
    return a.reshape((rows, cols), order="F").copy()


def null_space_basis(a: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal columns spanning the numerical right null space of ``a``.

    Right singular vectors whose singular value is at most ``tol`` are kept;
    columns beyond the rank of a wide matrix count as exact null directions.
    """
    m = as_matrix(a, "a")
    _, sv, vh = np.linalg.svd(m)
    n = m.shape[1]
    keep = [i for i in range(n) if (sv[i] if i < sv.size else 0.0) <= tol]
    if not keep:
        return np.zeros((n, 0), dtype=np.complex128)
    return vh[keep].conj().T


def linear_map_matrix(fn: Callable[[np.ndarray], np.ndarray], rows: int, cols: int) -> np.ndarray:
    """Matrix of an arbitrary linear map on rows x cols matrices.

    Column ``k`` is the vectorized image of the k-th vectorization basis
    element, so the result acts on column-stacked input.
    """
    columns = []
    for k in range(rows * cols):
        e = np.zeros(rows * cols, dtype=np.complex128)
        e[k] = 1.0
        columns.append(vectorize(fn(devectorize(e, rows, cols))))
    return np.column_stack(columns)


def matrix_to_json(x) -> dict:
    """Encode as ``{"rows": n, "cols": m, "data": [[re, im], ...]}`` row-major."""
    m = as_matrix(x)
    data = [[float(z.real), float(z.imag)] for z in m.ravel(order="C")]
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "data": data}


def matrix_from_json(obj) -> np.ndarray:
    """Decode the row-major ``{"rows", "cols", "data"}`` matrix object."""
    if not isinstance(obj, dict):
        raise ValueError("matrix object must be a JSON dict")
    missing = {"rows", "cols", "data"} - set(obj)
    if missing:
        raise ValueError(f"matrix object missing keys {sorted(missing)}")
    rows, cols = obj["rows"], obj["cols"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0):
        raise ValueError("rows and cols must be positive integers")
    data = obj["data"]
    if not isinstance(data, list) or len(data) != rows * cols:
        raise ValueError(f"data must list {rows * cols} [re, im] pairs")
    flat = np.empty(rows * cols, dtype=np.complex128)
    for k, pair in enumerate(data):
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise ValueError(f"data[{k}] is not an [re, im] pair")
        re, im = float(pair[0]), float(pair[1])
        if not (np.isfinite(re) and np.isfinite(im)):
            raise ValueError(f"data[{k}] is not finite")
        flat[k] = complex(re, im)
    return flat.reshape((rows, cols))
