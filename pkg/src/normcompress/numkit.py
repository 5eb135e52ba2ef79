"""Small dense complex linear algebra: Hermitian spectra, frames, compressions."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .config import TOL, make_rng
from .errors import PreconditionError, VerificationError


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise PreconditionError("matrix has non-finite entries")
    return a


def hermitian_defect(m) -> float:
    a = np.asarray(m)
    return float(np.linalg.norm(a - a.conj().T))


def normal_defect(m) -> float:
    a = np.asarray(m)
    ah = a.conj().T
    return float(np.linalg.norm(a @ ah - ah @ a))


def is_hermitian(m, tol=TOL.hermitian) -> bool:
    return hermitian_defect(m) <= tol


def is_normal(m, tol=TOL.hermitian) -> bool:
    return normal_defect(m) <= tol


@dataclass(frozen=True)
class Frame:
    """k orthonormal columns in C^n, stored as an (n, k) array."""

    columns: np.ndarray

    def __post_init__(self):
        cols = np.asarray(self.columns, dtype=np.complex128)
        if cols.ndim != 2:
            raise PreconditionError("frame columns must form an (n, k) array")
        object.__setattr__(self, "columns", cols)
        err = self.orthonormality_error()
        if err > TOL.orthonormal:
            raise VerificationError(f"frame columns not orthonormal: |F*F - I| = {err:.3e}", err)

    @property
    def n(self) -> int:
        return self.columns.shape[0]

    @property
    def k(self) -> int:
        return self.columns.shape[1]

    def orthonormality_error(self) -> float:
        c = self.columns
        return float(np.linalg.norm(c.conj().T @ c - np.eye(c.shape[1])))

    def swapped(self) -> "Frame":
        return Frame(self.columns[:, ::-1].copy())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "columns": [[{"re": float(v.real), "im": float(v.imag)} for v in col] for col in self.columns.T],
        }

    @classmethod
    def from_json(cls, obj) -> "Frame":
        cols = np.array([[complex(e["re"], e["im"]) for e in col] for col in obj["columns"]], dtype=np.complex128)
        if cols.size == 0:
            return cls(np.zeros((int(obj["n"]), 0), dtype=np.complex128))
        return cls(cols.T)


def hermitian_eigenvalues_batch(stack, tol=TOL.jacobi, max_sweeps=100) -> np.ndarray:
    """Ascending eigenvalues for a (B, n, n) stack of Hermitian matrices."""
    stack = np.asarray(stack, dtype=np.complex128)
    if stack.ndim == 2:
        stack = stack[None]
    vals, sweeps = kernels.eigvalsh_batch(np.ascontiguousarray(stack), tol, max_sweeps)
    if np.any(np.asarray(sweeps) < 0):
        raise VerificationError(f"Jacobi iteration did not converge within {max_sweeps} sweeps")
    return np.asarray(vals)


def hermitian_eigenvalues(h, tol=TOL.hermitian) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix in ascending order (cyclic Jacobi)."""
    h = as_matrix(h)
    defect = hermitian_defect(h)
    if defect > tol:
        raise PreconditionError(f"matrix is not Hermitian: |H - H*|_F = {defect:.3e}")
    h = (h + h.conj().T) / 2
    return hermitian_eigenvalues_batch(h[None])[0]


def _orthogonalize(v, basis):
    # two passes of modified Gram-Schmidt
    for _ in range(2):
        for q in basis:
            v = v - q * np.vdot(q, v)
    return v


def _pivoted_extend(basis, candidates, drop, limit):
    residuals = [_orthogonalize(np.asarray(c, dtype=np.complex128), basis) for c in candidates]
    while residuals and len(basis) < limit:
        norms = [np.linalg.norm(r) for r in residuals]
        i = int(np.argmax(norms))
        if norms[i] < drop:
            break
        q = residuals.pop(i)
        q = _orthogonalize(q, basis)
        q = q / np.linalg.norm(q)
        basis.append(q)
        residuals = [r - q * np.vdot(q, r) for r in residuals]
    return basis


def orthonormal_complement_basis(vectors, n=None, drop=TOL.drop) -> Frame:
    """Orthonormal basis of the orthogonal complement of span(vectors) in C^n.

    Dependent inputs are fine: pivoted Gram-Schmidt discards residuals with
    norm below ``drop``. ``n`` is required only when ``vectors`` is empty.
    """
    vecs = [np.asarray(v, dtype=np.complex128).ravel() for v in vectors]
    if n is None:
        if not vecs:
            raise PreconditionError("ambient dimension unknown for an empty vector list")
        n = vecs[0].size
    if any(v.size != n for v in vecs):
        raise PreconditionError("vectors have inconsistent lengths")
    span = _pivoted_extend([], vecs, drop, n)
    r = len(span)
    full = _pivoted_extend(list(span), list(np.eye(n, dtype=np.complex128)), 1e-8, n)
    comp = full[r:]
    if not comp:
        return Frame(np.zeros((n, 0), dtype=np.complex128))
    return Frame(np.column_stack(comp))


def project_out_batch(constraints, g, drop=TOL.drop) -> np.ndarray:
    """Project each row of ``g`` onto the complement of its constraint columns.

    ``constraints`` has shape (B, n, c) and ``g`` shape (B, n). Constraint
    residuals shorter than ``drop`` are discarded per row, so rank-deficient
    constraint sets are handled without branching.
    """
    cons = np.asarray(constraints, dtype=np.complex128)
    w = np.array(g, dtype=np.complex128, copy=True)
    qs = []
    for j in range(cons.shape[2]):
        v = cons[:, :, j].copy()
        for _ in range(2):
            for q in qs:
                v -= q * np.einsum("bi,bi->b", q.conj(), v)[:, None]
        nrm = np.linalg.norm(v, axis=1)
        keep = nrm > drop
        q = np.where(keep[:, None], v / np.where(keep, nrm, 1.0)[:, None], 0.0)
        qs.append(q)
    for _ in range(2):
        for q in qs:
            w -= q * np.einsum("bi,bi->b", q.conj(), w)[:, None]
    return w


def compress(m, frame: Frame) -> np.ndarray:
    """The k x k compression F* M F of M to the span of the frame."""
    m = as_matrix(m)
    if frame.n != m.shape[0]:
        raise PreconditionError(f"frame dimension {frame.n} does not match matrix dimension {m.shape[0]}")
    f = frame.columns
    return f.conj().T @ m @ f


def _gram_schmidt_qr(z):
    cols = []
    for j in range(z.shape[1]):
        v = _orthogonalize(z[:, j], cols)
        cols.append(v / np.linalg.norm(v))
    return np.column_stack(cols)


def haar_random_frame(n, k, seed=None) -> Frame:
    """k Haar-distributed orthonormal columns in C^n.

    Gram-Schmidt on a complex Gaussian matrix yields the Q factor whose R has a
    positive real diagonal, the phase convention under which Q is Haar.
    """
    if not 1 <= k <= n:
        raise PreconditionError(f"need 1 <= k <= n, got k={k}, n={n}")
    rng = make_rng(seed)
    z = (rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))) / np.sqrt(2.0)
    return Frame(_gram_schmidt_qr(z))


def matrix_to_json(m) -> dict:
    m = as_matrix(m)
    return {
        "n": int(m.shape[0]),
        "entries": [[{"re": float(v.real), "im": float(v.imag)} for v in row] for row in m],
    }


def matrix_from_json(obj) -> np.ndarray:
    entries = obj["entries"]
    m = np.array([[complex(e["re"], e["im"]) for e in row] for row in entries], dtype=np.complex128)
    if "n" in obj and m.shape != (int(obj["n"]), int(obj["n"])):
        raise PreconditionError(f"declared n={obj['n']} does not match entries of shape {m.shape}")
    return as_matrix(m)


def spectrum_to_json(z) -> list:
    return [{"re": float(v.real), "im": float(v.imag)} for v in np.asarray(z, dtype=np.complex128)]


def spectrum_from_json(obj) -> np.ndarray:
    return np.array([complex(e["re"], e["im"]) for e in obj], dtype=np.complex128)
