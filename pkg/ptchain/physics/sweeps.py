"""
Parameter sweeps, zero-mode phase maps and the critical gain/loss search.

Grid points are independent tasks evaluated through joblib; results are
assembled by grid index, so output does not depend on the worker count or
on evaluation order.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from ptchain.core.constants import (
    DEFAULT_GAMMA_HI,
    DEFAULT_REALITY_TOL,
    DEFAULT_REFINE_TOL,
    DEFAULT_RESIDUAL_TOLERANCE,
    DEFAULT_SCAN_STEP,
    DEFAULT_ZERO_TOL,
)
from ptchain.core.errors import SolverError, ValidationError
from ptchain.core.logging import get_logger, log_elapsed
from ptchain.core.validation import (
    check_int_at_least,
    check_non_negative,
    check_positive,
    check_range,
    raise_if_errors,
)
from ptchain.physics.lattice import ModelKind, ModelSpec, PotentialKind, build_matrix
from ptchain.physics.numeric import eigen_decompose
from ptchain.physics.spectral import ClassificationTolerances, analyze_model, count_zero_modes

logger = get_logger(__name__)


class SweepAxis(str, Enum):
    THETA = "theta"
    MU = "mu"
    GAMMA = "gamma"


def _parallel_map(func: Callable[..., Any], tasks: Sequence[tuple], workers: int) -> List[Any]:
    """Evaluate func(*task) for every task, results in task order."""
    raise_if_errors(check_int_at_least("workers", workers, 1), "Engine")
    if workers == 1:
        return [func(*task) for task in tasks]
    return Parallel(n_jobs=workers)(delayed(func)(*task) for task in tasks)


@dataclass(frozen=True)
class SweepSpec:
    """A 1-D sweep: `steps` uniformly spaced values of one parameter, endpoints included."""

    base: ModelSpec
    axis: SweepAxis
    start: float
    stop: float
    steps: int
    tolerances: ClassificationTolerances = field(default_factory=ClassificationTolerances)

    def __post_init__(self):
        errors = check_int_at_least("steps", self.steps, 2) + check_range(
            self.axis.value, self.start, self.stop
        )
        if self.axis is SweepAxis.THETA and self.base.kind is not ModelKind.SSH:
            errors.append("a theta sweep needs the SSH model")
        if self.axis is SweepAxis.MU and self.base.kind is not ModelKind.KITAEV:
            errors.append("a mu sweep needs the Kitaev model")
        if self.axis is SweepAxis.GAMMA:
            if self.base.potential.kind is PotentialKind.NONE:
                errors.append("a gamma sweep needs a potential kind (u1 or u2)")
            errors += check_non_negative("gamma start", self.start)
        raise_if_errors(errors, "Sweep")

    def axis_values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    def point(self, value: float) -> ModelSpec:
        return self.base.with_parameter(self.axis.value, float(value))


@dataclass(frozen=True)
class SweepRow:
    axis_value: float
    eigenvalues: np.ndarray
    non_real_count: int
    zero_mode_count: int
    edge_flags: Optional[Tuple[bool, ...]] = None


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: List[SweepRow]

    @property
    def axis_values(self) -> np.ndarray:
        return np.array([row.axis_value for row in self.rows])

    @property
    def non_real_counts(self) -> np.ndarray:
        return np.array([row.non_real_count for row in self.rows])

    @property
    def zero_mode_counts(self) -> np.ndarray:
        return np.array([row.zero_mode_count for row in self.rows])


def _sweep_row(spec: SweepSpec, value: float, include_edges: bool) -> SweepRow:
    try:
        analysis = analyze_model(spec.point(value), spec.tolerances)
    except SolverError as e:
        raise e.at(**{spec.axis.value: float(value)}) from e
    flags = tuple(state.is_edge for state in analysis.states) if include_edges else None
    return SweepRow(
        axis_value=float(value),
        eigenvalues=analysis.decomposition.values,
        non_real_count=analysis.phase.non_real_count,
        zero_mode_count=analysis.zero_modes,
        edge_flags=flags,
    )


def run_sweep(spec: SweepSpec, workers: int = 1, include_edges: bool = True) -> SweepResult:
    """
    Build, decompose and classify the model at every axis value.

    Args:
        spec: Sweep definition
        workers: Number of parallel worker processes
        include_edges: Keep per-state edge flags in every row

    Returns:
        Rows ordered by axis value

    Raises:
        SolverError: With the offending axis value attached
    """
    values = spec.axis_values()
    logger.info(
        f"Sweeping {spec.axis.value} over [{spec.start}, {spec.stop}] "
        f"in {spec.steps} steps ({spec.base.kind.value}, workers={workers})"
    )
    with log_elapsed(logger, f"{spec.axis.value} sweep"):
        rows = _parallel_map(
            _sweep_row, [(spec, float(v), include_edges) for v in values], workers
        )
    return SweepResult(spec=spec, rows=rows)


@dataclass(frozen=True)
class PhaseMap:
    """Zero-mode count per (mu, gamma) cell; counts[i, j] belongs to (mu_i, gamma_j)."""

    mu_axis: np.ndarray
    gamma_axis: np.ndarray
    counts: np.ndarray
    potential: PotentialKind = PotentialKind.END_CAPS
    zero_tol: float = DEFAULT_ZERO_TOL

    def containment_violations(self) -> List[Tuple[int, int]]:
        """
        Cells (i, j) whose count is not 2 although a larger gamma at the same
        mu still has 2 zero modes.
        """
        violations = []
        for i, row in enumerate(self.counts):
            hosting = np.flatnonzero(row == 2)
            if hosting.size == 0:
                continue
            for j in range(int(hosting[-1])):
                if row[j] != 2:
                    violations.append((i, j))
        return violations

    def edge_boundary(self) -> np.ndarray:
        """
        Per mu, the smallest gamma at which the count drops below its gamma=0
        value; NaN where it never drops or there are no zero modes at gamma=0.
        """
        boundary = np.full(self.mu_axis.shape[0], np.nan)
        for i, row in enumerate(self.counts):
            if row[0] == 0:
                continue
            drops = np.flatnonzero(row < row[0])
            if drops.size:
                boundary[i] = self.gamma_axis[drops[0]]
        return boundary


def _map_row(
    base: ModelSpec,
    mu: float,
    gammas: np.ndarray,
    zero_tol: float,
    residual_tolerance: float,
) -> List[int]:
    counts = []
    at_mu = base.with_parameter("mu", mu)
    for gamma in gammas:
        spec = at_mu.with_parameter("gamma", float(gamma))
        try:
            decomp = eigen_decompose(build_matrix(spec), residual_tolerance)
        except SolverError as e:
            raise e.at(mu=mu, gamma=float(gamma)) from e
        counts.append(count_zero_modes(decomp, zero_tol))
    return counts


def zero_mode_map(
    base: ModelSpec,
    mu_range: Tuple[float, float],
    gamma_range: Tuple[float, float],
    mu_steps: int,
    gamma_steps: int,
    zero_tol: float = DEFAULT_ZERO_TOL,
    workers: int = 1,
    residual_tolerance: float = DEFAULT_RESIDUAL_TOLERANCE,
) -> PhaseMap:
    """
    Count zero modes of the Kitaev chain over a (mu, gamma) grid.

    Cells are evaluated independently (one task per mu row). For the
    staggered potential the monotone containment in gamma is checked and
    every violation is logged.

    Raises:
        ValidationError: Not a Kitaev model, no potential kind, bad ranges
        SolverError: With the grid coordinates of the failing cell
    """
    errors = (
        check_range("mu", *mu_range)
        + check_range("gamma", *gamma_range)
        + check_int_at_least("mu_steps", mu_steps, 2)
        + check_int_at_least("gamma_steps", gamma_steps, 2)
        + check_positive("zero_tol", zero_tol)
    )
    if base.kind is not ModelKind.KITAEV:
        errors.append("the zero-mode map needs the Kitaev model")
    if base.potential.kind is PotentialKind.NONE:
        errors.append("the zero-mode map needs a potential kind (u1 or u2)")
    if not errors and gamma_range[0] < 0:
        errors.append(f"gamma start must be >= 0, got {gamma_range[0]!r}")
    raise_if_errors(errors, "Phase map")

    mu_axis = np.linspace(mu_range[0], mu_range[1], mu_steps)
    gamma_axis = np.linspace(gamma_range[0], gamma_range[1], gamma_steps)
    logger.info(
        f"Zero-mode map {mu_steps}x{gamma_steps} for {base.potential.kind.value} "
        f"at N={base.n_sites} (workers={workers})"
    )

    with log_elapsed(logger, "zero-mode map"):
        rows = _parallel_map(
            _map_row,
            [(base, float(mu), gamma_axis, zero_tol, residual_tolerance) for mu in mu_axis],
            workers,
        )
    phase_map = PhaseMap(
        mu_axis=mu_axis,
        gamma_axis=gamma_axis,
        counts=np.array(rows, dtype=int),
        potential=base.potential.kind,
        zero_tol=zero_tol,
    )

    if base.potential.kind is PotentialKind.STAGGERED:
        violations = phase_map.containment_violations()
        if violations:
            cells = ", ".join(
                f"(mu={mu_axis[i]:.4g}, gamma={gamma_axis[j]:.4g})" for i, j in violations[:10]
            )
            logger.warning(
                f"Zero-mode map is not monotone in gamma at {len(violations)} cells: {cells}"
            )
    return phase_map


@dataclass(frozen=True)
class CriticalGammaResult:
    """
    Onset of complete PT breaking (no real eigenvalue left).

    trace holds the coarse scan as (gamma, real_count); refinement holds the
    bisection points in evaluation order.
    """

    found: bool
    gamma_c: Optional[float]
    bracket: Tuple[float, float]
    scan_step: float
    refine_tol: float
    trace: List[Tuple[float, int]]
    refinement: List[Tuple[float, int]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "found": self.found,
            "gamma_c": self.gamma_c,
            "bracket": list(self.bracket),
            "scan_step": self.scan_step,
            "refine_tol": self.refine_tol,
            "trace": [{"gamma": g, "real_count": c} for g, c in self.trace],
            "refinement": [{"gamma": g, "real_count": c} for g, c in self.refinement],
        }


def real_count(
    base: ModelSpec,
    gamma: float,
    reality_tol: float = DEFAULT_REALITY_TOL,
    residual_tolerance: float = DEFAULT_RESIDUAL_TOLERANCE,
) -> int:
    """Number of eigenvalues with |Im E| < reality_tol at the given gamma."""
    try:
        decomp = eigen_decompose(
            build_matrix(base.with_parameter("gamma", gamma)), residual_tolerance
        )
    except SolverError as e:
        raise e.at(gamma=gamma) from e
    return int(np.count_nonzero(np.abs(decomp.values.imag) < reality_tol))


def critical_gamma(
    base: ModelSpec,
    gamma_hi: float = DEFAULT_GAMMA_HI,
    scan_step: float = DEFAULT_SCAN_STEP,
    refine_tol: float = DEFAULT_REFINE_TOL,
    reality_tol: float = DEFAULT_REALITY_TOL,
    residual_tolerance: float = DEFAULT_RESIDUAL_TOLERANCE,
    workers: int = 1,
) -> CriticalGammaResult:
    """
    Find the first gamma at which the spectrum becomes completely PT broken.

    A coarse scan over [0, gamma_hi] locates the first interval where the
    number of real eigenvalues reaches zero; bisection narrows it to a width
    <= refine_tol. The real count may be non-monotone in gamma, so only the
    first onset is refined and the whole scan is returned.
    """
    raise_if_errors(
        check_positive("gamma_hi", gamma_hi)
        + check_positive("scan_step", scan_step)
        + check_positive("refine_tol", refine_tol)
        + check_positive("reality_tol", reality_tol),
        "Critical gamma",
    )
    if base.potential.kind is PotentialKind.NONE:
        raise ValidationError("The critical gamma search needs a potential kind (u1 or u2)")

    intervals = max(1, math.ceil(gamma_hi / scan_step - 1e-9))
    grid = np.linspace(0.0, gamma_hi, intervals + 1)
    counts = _parallel_map(
        real_count,
        [(base, float(g), reality_tol, residual_tolerance) for g in grid],
        workers,
    )
    trace = [(float(g), int(c)) for g, c in zip(grid, counts)]

    onset = next((k for k, (_, c) in enumerate(trace) if c == 0), None)
    if onset is None:
        logger.info(f"No complete PT breaking up to gamma={gamma_hi}")
        return CriticalGammaResult(
            found=False,
            gamma_c=None,
            bracket=(0.0, float(gamma_hi)),
            scan_step=scan_step,
            refine_tol=refine_tol,
            trace=trace,
        )
    if onset == 0:
        return CriticalGammaResult(True, 0.0, (0.0, 0.0), scan_step, refine_tol, trace)

    lo, hi = trace[onset - 1][0], trace[onset][0]
    refinement = []
    while hi - lo > refine_tol:
        mid = 0.5 * (lo + hi)
        count = real_count(base, mid, reality_tol, residual_tolerance)
        refinement.append((mid, count))
        if count == 0:
            hi = mid
        else:
            lo = mid

    gamma_c = 0.5 * (lo + hi)
    logger.info(f"Complete PT breaking at gamma_c={gamma_c:.10g} in [{lo:.10g}, {hi:.10g}]")
    return CriticalGammaResult(
        found=True,
        gamma_c=gamma_c,
        bracket=(lo, hi),
        scan_step=scan_step,
        refine_tol=refine_tol,
        trace=trace,
        refinement=refinement,
    )
