"""
Dense complex eigensolver with residual diagnostics.

The kernel is LAPACK through scipy.linalg: ``zgeev`` (balancing, Hessenberg
reduction, shifted QR with deflation, eigenvectors from the triangular Schur
factor) for general matrices and ``zheevr`` for Hermitian ones. Everything
around the kernel (validation, normalization, phase fixing, ordering and the
residual check) is done here so results are reproducible and diffable.
"""

import re
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
import numpy.typing as npt
import scipy.linalg
from scipy.linalg import LinAlgError

from ptchain.core.constants import DEFAULT_RESIDUAL_TOLERANCE
from ptchain.core.errors import SolverError, ValidationError
from ptchain.core.logging import get_logger

logger = get_logger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]
ComplexVector = npt.NDArray[np.complex128]

_CONVERGED_ORDER = re.compile(r">=\s*(\d+)")
_FIRST_INTEGER = re.compile(r"(\d+)")


@dataclass(frozen=True)
class EigenDecomposition:
    """
    All eigenpairs of a square complex matrix.

    Attributes:
        values: Eigenvalues sorted by (real part, imaginary part) ascending
        vectors: Right eigenvectors as columns, unit Euclidean norm, ordered
                 like ``values``
        max_residual: Largest ||M v - lambda v||_inf over all pairs
        matrix_norm: ||M||_inf of the decomposed matrix
        residual_tolerance: Relative residual bound the pairs were checked against
        hermitian: True if the Hermitian kernel was used
        singular_values: Singular values of M, descending; None when not computed
    """

    values: ComplexVector
    vectors: ComplexMatrix
    max_residual: float
    matrix_norm: float
    residual_tolerance: float = DEFAULT_RESIDUAL_TOLERANCE
    hermitian: bool = False
    singular_values: Optional[npt.NDArray[np.float64]] = None

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])

    def vector(self, index: int) -> ComplexVector:
        """Return the right eigenvector belonging to ``values[index]``."""
        return self.vectors[:, index]


def as_complex_matrix(m: Any) -> ComplexMatrix:
    """
    Convert input to a square complex128 matrix, rejecting bad shapes and
    non-finite entries before any computation.

    Raises:
        ValidationError: If the input is not a finite square matrix of dim >= 1
    """
    try:
        a = np.asarray(m, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"Matrix entries are not complex numbers: {e}") from e

    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"Matrix must be square, got shape {a.shape}")
    if a.shape[0] < 1:
        raise ValidationError("Matrix dimension must be >= 1")
    if not np.all(np.isfinite(a)):
        raise ValidationError("Matrix contains NaN or Inf entries")
    return a


def infinity_norm(m: Any) -> float:
    """
    Maximum absolute row sum of a square matrix.

    Args:
        m: Square matrix (anything numpy can turn into one)

    Returns:
        ||m||_inf >= 0
    """
    a = as_complex_matrix(m)
    return float(np.max(np.sum(np.abs(a), axis=1)))


def _kernel(a: ComplexMatrix, hermitian: bool) -> tuple[ComplexVector, ComplexMatrix]:
    """Run the LAPACK kernel, translating non-convergence into SolverError."""
    dim = a.shape[0]
    try:
        if hermitian:
            w, v = scipy.linalg.eigh(a, check_finite=False)
            return w.astype(np.complex128), v.astype(np.complex128)
        w, v = scipy.linalg.eig(a, check_finite=False)
        return w.astype(np.complex128), v.astype(np.complex128)
    except LinAlgError as e:
        text = str(e)
        match = _CONVERGED_ORDER.search(text) or _FIRST_INTEGER.search(text)
        index = int(match.group(1)) if match else None
        logger.warning(f"Eigensolver did not converge for dim={dim}: {text}")
        raise SolverError(
            f"QR iteration did not converge for a {dim}x{dim} matrix; "
            f"deflation reached index {index}",
            deflation_index=index,
        ) from e


def _normalize_columns(v: ComplexMatrix) -> ComplexMatrix:
    """Scale each column to unit norm with its largest-modulus entry real positive."""
    norms = np.linalg.norm(v, axis=0)
    if np.any(norms == 0.0):
        raise SolverError("Eigensolver returned a zero eigenvector")
    v = v / norms
    columns = np.arange(v.shape[1])
    pivots = np.argmax(np.abs(v), axis=0)
    anchors = v[pivots, columns]
    phases = anchors / np.abs(anchors)
    return v / phases


def eigen_decompose(
    m: Any, residual_tolerance: float = DEFAULT_RESIDUAL_TOLERANCE
) -> EigenDecomposition:
    """
    Compute all eigenvalues and right eigenvectors of a dense complex matrix.

    Args:
        m: Square matrix with finite entries
        residual_tolerance: Relative bound for ||M v - lambda v||_inf / ||M||_inf

    Returns:
        EigenDecomposition sorted by (re, im), with unit-norm vectors

    Raises:
        ValidationError: Bad shape, NaN/Inf entries or non-positive tolerance
        SolverError: Non-convergence (with the deflation index) or a residual
                     above the tolerance
    """
    if not (np.isfinite(residual_tolerance) and residual_tolerance > 0):
        raise ValidationError(
            f"residual_tolerance must be > 0, got {residual_tolerance!r}"
        )
    a = as_complex_matrix(m)
    hermitian = bool(np.array_equal(a, a.conj().T))

    values, vectors = _kernel(a, hermitian)
    vectors = _normalize_columns(vectors)

    order = np.lexsort((values.imag, values.real))
    values = values[order]
    vectors = vectors[:, order]

    residuals = a @ vectors - vectors * values[np.newaxis, :]
    max_residual = float(np.max(np.abs(residuals))) if residuals.size else 0.0
    norm = float(np.max(np.sum(np.abs(a), axis=1)))
    if max_residual > residual_tolerance * norm:
        raise SolverError(
            f"Eigenpair residual {max_residual:.3e} exceeds "
            f"{residual_tolerance:.1e} * ||M||_inf = {residual_tolerance * norm:.3e}"
        )

    if hermitian:
        singular = np.sort(np.abs(values.real))[::-1]
    else:
        try:
            singular = scipy.linalg.svdvals(a, check_finite=False)
        except LinAlgError as e:
            raise SolverError(f"SVD did not converge for a {a.shape[0]}x{a.shape[0]} matrix") from e

    logger.debug(
        f"Decomposed {a.shape[0]}x{a.shape[0]} matrix "
        f"(hermitian={hermitian}, max_residual={max_residual:.2e})"
    )
    return EigenDecomposition(
        values=values,
        vectors=vectors,
        max_residual=max_residual,
        matrix_norm=norm,
        residual_tolerance=residual_tolerance,
        hermitian=hermitian,
        singular_values=singular,
    )
