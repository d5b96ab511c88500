"""
From eigenpairs to physics: reality and conjugate pairing of energies, the
PT phase of the whole spectrum, site occupations of a state, edge weight,
particle-hole deviation and zero-mode counting.

Expectation values use the normalized right eigenvectors with the ordinary
bracket; no biorthogonal (left/right) weighting is applied.
"""

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ptchain.core.constants import (
    DEFAULT_EDGE_FRACTION,
    DEFAULT_EDGE_THRESHOLD,
    DEFAULT_PAIRING_TOL,
    DEFAULT_REALITY_TOL,
    DEFAULT_RESIDUAL_TOLERANCE,
    DEFAULT_ZERO_TOL,
)
from ptchain.core.errors import SolverError, ValidationError
from ptchain.core.logging import get_logger
from ptchain.core.validation import check_interval, check_positive, raise_if_errors
from ptchain.physics.lattice import ModelKind, ModelSpec, build_matrix, potential_diagonal
from ptchain.physics.numeric import ComplexVector, EigenDecomposition, eigen_decompose

logger = get_logger(__name__)


@dataclass(frozen=True)
class ClassificationTolerances:
    """Every threshold that turns numbers into physics labels."""

    reality_tol: float = DEFAULT_REALITY_TOL
    pairing_tol: float = DEFAULT_PAIRING_TOL
    edge_fraction: float = DEFAULT_EDGE_FRACTION
    edge_threshold: float = DEFAULT_EDGE_THRESHOLD
    zero_tol: float = DEFAULT_ZERO_TOL
    residual_tolerance: float = DEFAULT_RESIDUAL_TOLERANCE

    def __post_init__(self):
        raise_if_errors(
            check_positive("reality_tol", self.reality_tol)
            + check_positive("pairing_tol", self.pairing_tol)
            + check_interval("edge_fraction", self.edge_fraction, 0.0, 0.5, high_open=False)
            + check_interval("edge_threshold", self.edge_threshold, 0.0, 1.0, low_open=False)
            + check_positive("zero_tol", self.zero_tol)
            + check_positive("residual_tolerance", self.residual_tolerance),
            "Tolerances",
        )

    def to_dict(self) -> Dict[str, float]:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class OccupationProfile:
    """
    Site occupations of one state.

    For SSH only ``electron`` is set (<n_i> = |psi_i|^2). For Kitaev the
    vector is (u, v) and electron/hole hold |u_i|^2 and |v_i|^2.
    """

    model_kind: ModelKind
    electron: np.ndarray
    hole: Optional[np.ndarray] = None

    @property
    def n_sites(self) -> int:
        return int(self.electron.shape[0])

    @property
    def total(self) -> np.ndarray:
        if self.hole is None:
            return self.electron
        return self.electron + self.hole

    @property
    def phs_deviation(self) -> Optional[float]:
        """max_i |<n_e,i> - <n_h,i>|; None for SSH."""
        if self.hole is None:
            return None
        return float(np.max(np.abs(self.electron - self.hole)))

    def edge_weight(self, edge_fraction: float) -> float:
        """Occupation on the first and last ceil(edge_fraction * N) sites."""
        return float(np.sum(self.total[edge_mask(self.n_sites, edge_fraction)]))


class PtStatus(str, Enum):
    UNBROKEN = "unbroken"
    BROKEN = "broken"


@dataclass(frozen=True)
class PtPhase:
    status: PtStatus
    non_real_count: int
    real_count: int

    @property
    def completely_broken(self) -> bool:
        """No purely real eigenvalue remains."""
        return self.real_count == 0


@dataclass(frozen=True)
class StateClassification:
    """
    Labels for one eigenstate.

    pt_overlap is |<psi|PT psi>|: 1 for a PT-symmetric state, near 0 for a
    PT-broken one. gain_balance is the first-order growth rate of the state
    under the potential, sum_i Im(U_i) (<n_e,i> - <n_h,i>) (SSH: Im(U_i) <n_i>).
    """

    index: int
    energy: complex
    is_real: bool
    conjugate_partner: Optional[int]
    edge_weight: float
    is_edge: bool
    phs_deviation: Optional[float]
    pt_overlap: float
    gain_balance: float


def edge_mask(n_sites: int, edge_fraction: float) -> np.ndarray:
    """Boolean mask of the first and last ceil(edge_fraction * N) sites."""
    # tolerance keeps exact products such as 0.05 * 200 from rounding up
    width = min(n_sites, max(1, math.ceil(edge_fraction * n_sites - 1e-9)))
    mask = np.zeros(n_sites, dtype=bool)
    mask[:width] = True
    mask[n_sites - width :] = True
    return mask


def occupation_profile(
    vector: ComplexVector, model_kind: ModelKind, n_sites: Optional[int] = None
) -> OccupationProfile:
    """
    Site occupations of a normalized right eigenvector.

    Args:
        vector: Length N (SSH) or 2N (Kitaev) state
        model_kind: Which chain the vector belongs to
        n_sites: Expected chain length, checked if given

    Raises:
        ValidationError: Length does not match the model
    """
    psi = np.asarray(vector, dtype=np.complex128)
    if psi.ndim != 1:
        raise ValidationError(f"State must be a vector, got shape {psi.shape}")
    length = psi.shape[0]

    if model_kind is ModelKind.SSH:
        if length < 1 or (n_sites is not None and length != n_sites):
            raise ValidationError(f"SSH state has length {length}, expected {n_sites}")
        return OccupationProfile(model_kind, np.abs(psi) ** 2)

    if length < 2 or length % 2 or (n_sites is not None and length != 2 * n_sites):
        expected = "an even length" if n_sites is None else str(2 * n_sites)
        raise ValidationError(f"Kitaev state has length {length}, expected {expected}")
    half = length // 2
    return OccupationProfile(model_kind, np.abs(psi[:half]) ** 2, np.abs(psi[half:]) ** 2)


def _pt_overlap(psi: ComplexVector, model_kind: ModelKind) -> float:
    # PT psi = P conj(psi); <psi|PT psi> = sum_i psi_i psi_{P(i)}
    if model_kind is ModelKind.SSH:
        mirrored = psi[::-1]
    else:
        half = psi.shape[0] // 2
        mirrored = np.concatenate([psi[:half][::-1], psi[half:][::-1]])
    return float(abs(np.sum(psi * mirrored)))


def _gain_balance(profile: OccupationProfile, potential: Optional[ComplexVector]) -> float:
    if potential is None:
        return 0.0
    rates = np.asarray(potential).imag
    if profile.hole is None:
        return float(np.sum(rates * profile.electron))
    return float(np.sum(rates * (profile.electron - profile.hole)))


def _pair_conjugates(
    values: np.ndarray, non_real: np.ndarray, tolerance: float
) -> Dict[int, int]:
    """Greedy nearest-conjugate matching of the non-real eigenvalues, in sorted order."""
    partners: Dict[int, int] = {}
    available = non_real.copy()
    for i in np.flatnonzero(non_real):
        if not available[i]:
            continue
        available[i] = False
        distance = np.abs(values - np.conj(values[i]))
        distance[~available] = np.inf
        j = int(np.argmin(distance))
        if not np.isfinite(distance[j]) or distance[j] > tolerance:
            nearest = "none" if not np.isfinite(distance[j]) else f"{distance[j]:.3e}"
            raise SolverError(
                f"Non-real eigenvalue {complex(values[i]):.12g} (index {i}) has no "
                f"conjugate partner within {tolerance:.1e} (nearest: {nearest})"
            )
        available[j] = False
        partners[int(i)] = j
        partners[j] = int(i)
    return partners


def classify_states(
    decomp: EigenDecomposition,
    model_kind: ModelKind,
    tolerances: Optional[ClassificationTolerances] = None,
    potential: Optional[ComplexVector] = None,
) -> Tuple[List[StateClassification], PtPhase]:
    """
    Classify every eigenstate and aggregate the PT phase.

    Args:
        decomp: Eigendecomposition of an SSH or Kitaev matrix
        model_kind: Which chain the matrix describes
        tolerances: Classification thresholds (defaults if None)
        potential: On-site gain/loss values, used for gain_balance

    Returns:
        One StateClassification per eigenvalue (in decomposition order) and
        the PtPhase of the spectrum

    Raises:
        SolverError: A non-real eigenvalue has no conjugate partner; this
                     signals solver noise or a matrix that is not PT symmetric
    """
    tol = tolerances or ClassificationTolerances()
    values = decomp.values
    non_real = np.abs(values.imag) >= tol.reality_tol
    partners = _pair_conjugates(values, non_real, tol.pairing_tol)

    states = []
    for index in range(decomp.dim):
        psi = decomp.vector(index)
        profile = occupation_profile(psi, model_kind)
        weight = profile.edge_weight(tol.edge_fraction)
        states.append(
            StateClassification(
                index=index,
                energy=complex(values[index]),
                is_real=not bool(non_real[index]),
                conjugate_partner=partners.get(index),
                edge_weight=weight,
                is_edge=weight > tol.edge_threshold,
                phs_deviation=profile.phs_deviation,
                pt_overlap=_pt_overlap(psi, model_kind),
                gain_balance=_gain_balance(profile, potential),
            )
        )

    non_real_count = int(np.count_nonzero(non_real))
    phase = PtPhase(
        status=PtStatus.BROKEN if non_real_count else PtStatus.UNBROKEN,
        non_real_count=non_real_count,
        real_count=decomp.dim - non_real_count,
    )
    return states, phase


def count_zero_energies(values: np.ndarray, zero_tol: float = DEFAULT_ZERO_TOL) -> int:
    """Count energies with |Re E| < zero_tol and |Im E| < zero_tol."""
    if not zero_tol > 0:
        raise ValidationError(f"zero_tol must be > 0, got {zero_tol!r}")
    values = np.asarray(values)
    zero = (np.abs(values.real) < zero_tol) & (np.abs(values.imag) < zero_tol)
    return int(np.count_nonzero(zero))


def count_zero_modes(decomp: EigenDecomposition, zero_tol: float = DEFAULT_ZERO_TOL) -> int:
    """
    Number of independent zero-energy states: singular values of M below
    zero_tol.

    At an exceptional point the zero eigenvalue is defective and round-off
    scatters it over a ring of radius ~eps^(1/k), so the eigenvalues cannot be
    counted directly; the null space of M stays well conditioned. Falls back to
    counting eigenvalues when no singular values were computed.
    """
    if decomp.singular_values is None:
        return count_zero_energies(decomp.values, zero_tol)
    if not zero_tol > 0:
        raise ValidationError(f"zero_tol must be > 0, got {zero_tol!r}")
    nullity = int(np.count_nonzero(decomp.singular_values < zero_tol))
    direct = count_zero_energies(decomp.values, zero_tol)
    if direct != nullity:
        logger.debug(
            f"Zero eigenvalue is defective: {direct} eigenvalues within {zero_tol:.1e}, "
            f"null space of dimension {nullity}"
        )
    return nullity


@dataclass(frozen=True)
class SpectrumAnalysis:
    """Everything known about one model instance."""

    spec: ModelSpec
    decomposition: EigenDecomposition
    states: List[StateClassification]
    phase: PtPhase
    zero_modes: int

    def edge_states(self) -> List[StateClassification]:
        return [state for state in self.states if state.is_edge]

    def profile(self, index: int) -> OccupationProfile:
        return occupation_profile(
            self.decomposition.vector(index), self.spec.kind, self.spec.n_sites
        )

    def summary(self) -> Dict[str, Any]:
        return {
            "pt_phase": self.phase.status.value,
            "non_real_count": self.phase.non_real_count,
            "real_count": self.phase.real_count,
            "zero_modes": self.zero_modes,
            "edge_states": len(self.edge_states()),
            "max_residual": self.decomposition.max_residual,
        }


def analyze_model(
    spec: ModelSpec, tolerances: Optional[ClassificationTolerances] = None
) -> SpectrumAnalysis:
    """Build, diagonalize and classify one model instance."""
    tol = tolerances or ClassificationTolerances()
    decomp = eigen_decompose(build_matrix(spec), tol.residual_tolerance)
    potential = potential_diagonal(
        spec.potential.effective_kind, spec.potential.gamma, spec.n_sites
    )
    states, phase = classify_states(decomp, spec.kind, tol, potential)
    return SpectrumAnalysis(
        spec=spec,
        decomposition=decomp,
        states=states,
        phase=phase,
        zero_modes=count_zero_modes(decomp, tol.zero_tol),
    )
