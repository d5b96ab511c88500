"""
Command-line surface of ptchain.

Every command computes all of its results first, then writes its files
(each via write-then-rename) and finally a manifest.json recording every
number that influenced the run, so `ptchain replay` can reproduce it.
"""

import os
import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional

import numpy as np
import typer

from ptchain import __version__
from ptchain.cli.console import (
    show_error,
    show_spinner,
    show_success,
    show_summary,
    show_warning,
)
from ptchain.cli.parsing import parse_angle, parse_float, parse_range
from ptchain.core import constants
from ptchain.core.config import get_setting
from ptchain.core.errors import EmptyResultError, PtChainError, ValidationError
from ptchain.core.logging import configure_logging, get_logger

logger = get_logger(__name__)

app = typer.Typer(
    name="ptchain",
    help="PT-symmetric gain and loss in the SSH and Kitaev chains.",
    no_args_is_help=True,
    add_completion=False,
)

# Options that locate the run rather than define it; never replayed
_NON_REPLAYED = {"out", "workers"}
_REPLAYABLE = ("spectrum", "edge-state", "sweep", "phase-map", "critical-gamma")


def _version_callback(value: bool) -> None:
    if value:
        typer.echo(f"ptchain version {__version__}")
        raise typer.Exit()


@app.callback()
def main_callback(
    log_level: Optional[str] = typer.Option(
        None, "--log-level", help="DEBUG, INFO, WARNING, INSPECT, ERROR or CRITICAL"
    ),
    version: bool = typer.Option(
        False, "--version", callback=_version_callback, is_eager=True,
        help="Show version information and exit",
    ),
) -> None:
    if log_level:
        configure_logging(log_level)


# Shared option factories
def _model_option() -> Any:
    return typer.Option("ssh", "--model", help="ssh or kitaev")


def _n_option(default: int) -> Any:
    return typer.Option(default, "--n", help="Number of sites N")


def _t_option() -> Any:
    return typer.Option(constants.DEFAULT_HOPPING, "--t", help="Hopping t (energy unit)")


def _delta_option() -> Any:
    return typer.Option(
        constants.DEFAULT_SSH_DIMERIZATION, "--delta", help="SSH dimerization, |delta| < 1"
    )


def _theta_option() -> Any:
    return typer.Option("0", "--theta", help="SSH angle, e.g. 0.1pi")


def _pairing_option() -> Any:
    return typer.Option(
        constants.DEFAULT_KITAEV_PAIRING, "--pairing", help="Kitaev p-wave pairing"
    )


def _potential_option() -> Any:
    return typer.Option("none", "--potential", help="none, u1 (end caps) or u2 (staggered)")


def _out_option() -> Any:
    return typer.Option(None, "--out", help="Output directory (default PTCHAIN_OUTPUT_DIR)")


def _workers_option() -> Any:
    return typer.Option(None, "--workers", help="Parallel workers (default PTCHAIN_WORKERS)")


def _zero_tol_option() -> Any:
    return typer.Option(constants.DEFAULT_ZERO_TOL, "--zero-tol", help="Numerical zero")


def _reality_tol_option() -> Any:
    return typer.Option(
        constants.DEFAULT_REALITY_TOL, "--reality-tol", help="|Im E| below this is real"
    )


def _pairing_tol_option() -> Any:
    return typer.Option(
        constants.DEFAULT_PAIRING_TOL, "--pairing-tol", help="Conjugate pairing tolerance"
    )


def _edge_fraction_option() -> Any:
    return typer.Option(
        constants.DEFAULT_EDGE_FRACTION, "--edge-fraction", help="Edge region per end, fraction of N"
    )


def _edge_threshold_option() -> Any:
    return typer.Option(
        constants.DEFAULT_EDGE_THRESHOLD, "--edge-threshold", help="Edge weight above this is an edge state"
    )


def _residual_tol_option() -> Any:
    return typer.Option(
        constants.DEFAULT_RESIDUAL_TOLERANCE, "--residual-tol", help="Relative eigenpair residual bound"
    )


@contextmanager
def _reporting_errors() -> Iterator[None]:
    """Turn a PtChainError into a single diagnostic line and its exit code."""
    try:
        yield
    except PtChainError as e:
        logger.debug(f"{type(e).__name__}: {e}")
        show_error(f"Error: {e}")
        raise typer.Exit(code=e.exit_code)


def _replay_argv(ctx: typer.Context) -> List[str]:
    """Canonical argv that re-creates this invocation's parameters."""
    argv = []
    for param in ctx.command.params:
        if param.param_type_name != "option" or param.name in _NON_REPLAYED:
            continue
        value = ctx.params.get(param.name)
        if value is None:
            continue
        opt = param.opts[0]
        if getattr(param, "is_flag", False):
            if value:
                argv.append(opt)
            continue
        argv.append(f"{opt}={value}")
    return argv


def _resolve_workers(workers: Optional[int]) -> int:
    value = workers if workers is not None else get_setting("PTCHAIN_WORKERS", 1, int)
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValidationError(f"workers must be an integer >= 1, got {value!r}")
    return value


def _resolve_out(out: Optional[str]) -> str:
    return os.path.expanduser(out or get_setting("PTCHAIN_OUTPUT_DIR", "."))


def _model_spec(
    model: str,
    n: int,
    t: float,
    delta: float,
    theta: str,
    pairing: float,
    mu: float,
    potential: str,
    gamma: float,
):
    from ptchain.physics.lattice import (
        GainLoss,
        KitaevParams,
        ModelKind,
        ModelSpec,
        PotentialKind,
        SshParams,
    )

    try:
        kind = ModelKind(model.strip().lower())
    except ValueError:
        raise ValidationError(f"Unknown model {model!r}; use ssh or kitaev") from None

    if kind is ModelKind.SSH:
        params = SshParams(n_sites=n, t=t, delta=delta, theta=parse_angle(theta))
    else:
        params = KitaevParams(n_sites=n, t=t, delta_pair=pairing, mu=mu)
    return ModelSpec(params, GainLoss(PotentialKind.parse(potential), gamma))


def _tolerances(**values: float):
    from ptchain.physics.spectral import ClassificationTolerances

    return ClassificationTolerances(**values)


def _finish(
    ctx: typer.Context,
    out_dir: str,
    files: Dict[str, Any],
    model: Optional[Dict[str, Any]],
    tolerances: Dict[str, Any],
    grid: Optional[Dict[str, Any]],
    workers: int,
    started: float,
    summary: Dict[str, Any],
) -> None:
    """
    Write result files, then the manifest, then print the summary.

    Tables are written as CSV, strings (SVG charts) as they are.
    """
    from ptchain.utils.output import (
        atomic_write_text,
        build_manifest,
        write_csv,
        write_json,
    )

    for name, content in files.items():
        path = os.path.join(out_dir, name)
        if isinstance(content, str):
            atomic_write_text(path, content)
        else:
            write_csv(path, content)

    manifest = build_manifest(
        command=ctx.info_name or ctx.command.name or "",
        argv=_replay_argv(ctx),
        model=model,
        tolerances=tolerances,
        grid=grid,
        workers=workers,
        duration=time.perf_counter() - started,
        outputs=list(files),
        summary=summary,
    )
    logger.inspect(f"Run manifest: {manifest}")  # type: ignore[attr-defined]
    write_json(os.path.join(out_dir, constants.MANIFEST_FILE), manifest)

    show_summary(manifest["command"], summary)
    show_success(f"Wrote {', '.join(sorted(files))} and {constants.MANIFEST_FILE} to {out_dir}")


@app.command("spectrum")
def spectrum_command(
    ctx: typer.Context,
    model: str = _model_option(),
    n: int = _n_option(constants.DEFAULT_FULL_SITES),
    t: float = _t_option(),
    delta: float = _delta_option(),
    theta: str = _theta_option(),
    pairing: float = _pairing_option(),
    mu: float = typer.Option(0.0, "--mu", help="Kitaev chemical potential"),
    potential: str = _potential_option(),
    gamma: float = typer.Option(0.0, "--gamma", help="Gain/loss strength"),
    zero_tol: float = _zero_tol_option(),
    reality_tol: float = _reality_tol_option(),
    pairing_tol: float = _pairing_tol_option(),
    edge_fraction: float = _edge_fraction_option(),
    edge_threshold: float = _edge_threshold_option(),
    residual_tol: float = _residual_tol_option(),
    out: Optional[str] = _out_option(),
) -> None:
    """Energy spectrum with reality and edge labels (spectrum.csv)."""
    started = time.perf_counter()
    with _reporting_errors():
        from ptchain.physics.spectral import analyze_model
        from ptchain.utils.output import results_frame

        spec = _model_spec(model, n, t, delta, theta, pairing, mu, potential, gamma)
        tol = _tolerances(
            zero_tol=zero_tol,
            reality_tol=reality_tol,
            pairing_tol=pairing_tol,
            edge_fraction=edge_fraction,
            edge_threshold=edge_threshold,
            residual_tolerance=residual_tol,
        )
        analysis = analyze_model(spec, tol)
        rows = [
            (
                s.index,
                s.energy.real,
                s.energy.imag,
                s.is_real,
                s.edge_weight,
                s.is_edge,
            )
            for s in analysis.states
        ]
        table = results_frame(["index", "re", "im", "is_real", "edge_weight", "is_edge"], rows)
        _finish(
            ctx,
            _resolve_out(out),
            {constants.SPECTRUM_FILE: table},
            spec.to_dict(),
            tol.to_dict(),
            None,
            1,
            started,
            analysis.summary(),
        )


@app.command("edge-state")
def edge_state_command(
    ctx: typer.Context,
    model: str = _model_option(),
    n: int = _n_option(constants.DEFAULT_FULL_SITES),
    t: float = _t_option(),
    delta: float = _delta_option(),
    theta: str = _theta_option(),
    pairing: float = _pairing_option(),
    mu: float = typer.Option(0.0, "--mu", help="Kitaev chemical potential"),
    potential: str = _potential_option(),
    gamma: float = typer.Option(0.0, "--gamma", help="Gain/loss strength"),
    zero_tol: float = _zero_tol_option(),
    reality_tol: float = _reality_tol_option(),
    pairing_tol: float = _pairing_tol_option(),
    edge_fraction: float = _edge_fraction_option(),
    edge_threshold: float = _edge_threshold_option(),
    residual_tol: float = _residual_tol_option(),
    out: Optional[str] = _out_option(),
) -> None:
    """Site occupations of the edge state closest to zero energy (profile.csv)."""
    started = time.perf_counter()
    with _reporting_errors():
        from ptchain.physics.lattice import ModelKind
        from ptchain.physics.spectral import analyze_model
        from ptchain.utils.output import results_frame

        spec = _model_spec(model, n, t, delta, theta, pairing, mu, potential, gamma)
        tol = _tolerances(
            zero_tol=zero_tol,
            reality_tol=reality_tol,
            pairing_tol=pairing_tol,
            edge_fraction=edge_fraction,
            edge_threshold=edge_threshold,
            residual_tolerance=residual_tol,
        )
        analysis = analyze_model(spec, tol)
        edges = analysis.edge_states()
        if not edges:
            closest = min(analysis.states, key=lambda s: abs(s.energy))
            largest = max(s.edge_weight for s in analysis.states)
            raise EmptyResultError(
                f"No edge state detected: the state closest to zero energy has "
                f"edge_weight {closest.edge_weight:.4g}, the largest edge_weight is "
                f"{largest:.4g} (threshold {tol.edge_threshold})"
            )

        state = min(edges, key=lambda s: (abs(s.energy), s.index))
        profile = analysis.profile(state.index)
        sites = range(1, profile.n_sites + 1)
        if spec.kind is ModelKind.SSH:
            table = results_frame(["site", "n"], zip(sites, profile.electron.tolist()))
        else:
            table = results_frame(
                ["site", "n_e", "n_h"],
                zip(sites, profile.electron.tolist(), profile.hole.tolist()),
            )

        summary = {
            "state_index": state.index,
            "energy_re": state.energy.real,
            "energy_im": state.energy.imag,
            "edge_weight": state.edge_weight,
            "pt_overlap": state.pt_overlap,
            "gain_balance": state.gain_balance,
        }
        if state.phs_deviation is not None:
            summary["phs_deviation"] = state.phs_deviation
        _finish(
            ctx,
            _resolve_out(out),
            {constants.PROFILE_FILE: table},
            spec.to_dict(),
            tol.to_dict(),
            None,
            1,
            started,
            summary,
        )


_DEFAULT_AXIS_RANGES = {"theta": ("-pi", "pi"), "mu": ("0", "4"), "gamma": ("0", "2")}


@app.command("sweep")
def sweep_command(
    ctx: typer.Context,
    axis: str = typer.Option("theta", "--axis", help="theta (SSH), mu (Kitaev) or gamma"),
    start: Optional[str] = typer.Option(None, "--from", help="First axis value, e.g. -pi"),
    stop: Optional[str] = typer.Option(None, "--to", help="Last axis value, e.g. pi"),
    steps: int = typer.Option(constants.DEFAULT_THETA_STEPS, "--steps", help="Number of points, endpoints included"),
    model: str = _model_option(),
    n: int = _n_option(constants.DEFAULT_FULL_SITES),
    t: float = _t_option(),
    delta: float = _delta_option(),
    theta: str = _theta_option(),
    pairing: float = _pairing_option(),
    mu: float = typer.Option(0.0, "--mu", help="Kitaev chemical potential"),
    potential: str = _potential_option(),
    gamma: float = typer.Option(0.0, "--gamma", help="Gain/loss strength"),
    zero_tol: float = _zero_tol_option(),
    reality_tol: float = _reality_tol_option(),
    pairing_tol: float = _pairing_tol_option(),
    edge_fraction: float = _edge_fraction_option(),
    edge_threshold: float = _edge_threshold_option(),
    residual_tol: float = _residual_tol_option(),
    plot: bool = typer.Option(False, "--plot", help=f"Also write {constants.SWEEP_PLOT_FILE}"),
    out: Optional[str] = _out_option(),
    workers: Optional[int] = _workers_option(),
) -> None:
    """All eigenvalues along one parameter axis (sweep.csv)."""
    started = time.perf_counter()
    with _reporting_errors():
        from ptchain.physics.sweeps import SweepAxis, SweepSpec, run_sweep
        from ptchain.utils.output import results_frame

        try:
            sweep_axis = SweepAxis(axis.strip().lower())
        except ValueError:
            raise ValidationError(f"Unknown axis {axis!r}; use theta, mu or gamma") from None
        default_start, default_stop = _DEFAULT_AXIS_RANGES[sweep_axis.value]
        first = parse_float(start or default_start, "--from")
        last = parse_float(stop or default_stop, "--to")

        n_workers = _resolve_workers(workers)
        base = _model_spec(model, n, t, delta, theta, pairing, mu, potential, gamma)
        tol = _tolerances(
            zero_tol=zero_tol,
            reality_tol=reality_tol,
            pairing_tol=pairing_tol,
            edge_fraction=edge_fraction,
            edge_threshold=edge_threshold,
            residual_tolerance=residual_tol,
        )
        sweep = SweepSpec(base, sweep_axis, first, last, steps, tol)
        with show_spinner(f"Sweeping {sweep_axis.value} ({steps} points)"):
            result = run_sweep(sweep, workers=n_workers)

        rows = [
            (row.axis_value, index, value.real, value.imag)
            for row in result.rows
            for index, value in enumerate(row.eigenvalues.tolist())
        ]
        files: Dict[str, Any] = {
            constants.SWEEP_FILE: results_frame(["axis_value", "index", "re", "im"], rows)
        }
        if plot:
            from ptchain.utils.plotting import sweep_figure_svg

            files[constants.SWEEP_PLOT_FILE] = sweep_figure_svg(result)

        counts = result.non_real_counts
        _finish(
            ctx,
            _resolve_out(out),
            files,
            base.to_dict(),
            tol.to_dict(),
            {"axis": sweep_axis.value, "start": first, "stop": last, "steps": steps},
            n_workers,
            started,
            {
                "points": len(result.rows),
                "points_with_non_real": int(np.count_nonzero(counts)),
                "max_non_real_count": int(counts.max()),
            },
        )


@app.command("phase-map")
def phase_map_command(
    ctx: typer.Context,
    mu: str = typer.Option("0:4:81", "--mu", help="mu grid start:stop:steps"),
    gamma: str = typer.Option("0:2:81", "--gamma", help="gamma grid start:stop:steps"),
    potential: str = typer.Option("u1", "--potential", help="u1 (end caps) or u2 (staggered)"),
    model: str = typer.Option("kitaev", "--model", help="Only kitaev is supported"),
    n: int = _n_option(constants.DEFAULT_FAST_SITES),
    t: float = _t_option(),
    pairing: float = _pairing_option(),
    zero_tol: float = _zero_tol_option(),
    residual_tol: float = _residual_tol_option(),
    plot: bool = typer.Option(False, "--plot", help=f"Also write {constants.PHASEMAP_PLOT_FILE}"),
    out: Optional[str] = _out_option(),
    workers: Optional[int] = _workers_option(),
) -> None:
    """Zero-mode count over a (mu, gamma) grid (phasemap.csv, phasemap_boundary.csv)."""
    started = time.perf_counter()
    with _reporting_errors():
        from ptchain.physics.sweeps import zero_mode_map
        from ptchain.utils.output import results_frame

        mu_start, mu_stop, mu_steps = parse_range(mu, "--mu")
        gamma_start, gamma_stop, gamma_steps = parse_range(gamma, "--gamma")
        n_workers = _resolve_workers(workers)
        base = _model_spec(model, n, t, 0.0, "0", pairing, mu_start, potential, 0.0)

        with show_spinner(f"Zero-mode map {mu_steps}x{gamma_steps}"):
            phase_map = zero_mode_map(
                base,
                (mu_start, mu_stop),
                (gamma_start, gamma_stop),
                mu_steps,
                gamma_steps,
                zero_tol=zero_tol,
                workers=n_workers,
                residual_tolerance=residual_tol,
            )

        cells = [
            (float(m), float(g), int(phase_map.counts[i, j]))
            for i, m in enumerate(phase_map.mu_axis)
            for j, g in enumerate(phase_map.gamma_axis)
        ]
        boundary = zip(phase_map.mu_axis.tolist(), phase_map.edge_boundary().tolist())
        files: Dict[str, Any] = {
            constants.PHASEMAP_FILE: results_frame(["mu", "gamma", "count"], cells),
            constants.PHASEMAP_BOUNDARY_FILE: results_frame(["mu", "gamma_c"], boundary),
        }
        if plot:
            from ptchain.utils.plotting import phase_map_figure_svg

            files[constants.PHASEMAP_PLOT_FILE] = phase_map_figure_svg(phase_map)

        # mu and gamma are the grid axes, recorded under "grid"
        model_record = base.to_dict()
        del model_record["parameters"]["mu"]
        del model_record["potential"]["gamma"]

        violations = phase_map.containment_violations()
        if violations:
            show_warning(
                f"{len(violations)} cells have no zero-mode pair although a larger gamma "
                f"at the same mu has one"
            )

        _finish(
            ctx,
            _resolve_out(out),
            files,
            model_record,
            {"zero_tol": zero_tol, "residual_tolerance": residual_tol},
            {
                "mu": {"start": mu_start, "stop": mu_stop, "steps": mu_steps},
                "gamma": {"start": gamma_start, "stop": gamma_stop, "steps": gamma_steps},
            },
            n_workers,
            started,
            {
                "cells": int(phase_map.counts.size),
                "cells_with_two_zero_modes": int(np.count_nonzero(phase_map.counts == 2)),
                "containment_violations": len(violations),
            },
        )


@app.command("critical-gamma")
def critical_gamma_command(
    ctx: typer.Context,
    model: str = _model_option(),
    n: int = _n_option(constants.DEFAULT_FULL_SITES),
    t: float = _t_option(),
    delta: float = _delta_option(),
    theta: str = _theta_option(),
    pairing: float = _pairing_option(),
    mu: float = typer.Option(0.0, "--mu", help="Kitaev chemical potential"),
    potential: str = typer.Option("u1", "--potential", help="u1 (end caps) or u2 (staggered)"),
    gamma_hi: float = typer.Option(constants.DEFAULT_GAMMA_HI, "--gamma-hi", help="Upper end of the scan"),
    scan_step: float = typer.Option(constants.DEFAULT_SCAN_STEP, "--scan-step", help="Coarse scan step"),
    refine_tol: float = typer.Option(constants.DEFAULT_REFINE_TOL, "--refine-tol", help="Bisection bracket width"),
    reality_tol: float = _reality_tol_option(),
    residual_tol: float = _residual_tol_option(),
    out: Optional[str] = _out_option(),
    workers: Optional[int] = _workers_option(),
) -> None:
    """Gain/loss strength of complete PT breaking (critical_gamma.json)."""
    started = time.perf_counter()
    with _reporting_errors():
        from ptchain.physics.sweeps import critical_gamma
        from ptchain.utils.output import json_text

        n_workers = _resolve_workers(workers)
        base = _model_spec(model, n, t, delta, theta, pairing, mu, potential, 0.0)
        with show_spinner("Scanning gamma"):
            result = critical_gamma(
                base,
                gamma_hi=gamma_hi,
                scan_step=scan_step,
                refine_tol=refine_tol,
                reality_tol=reality_tol,
                residual_tolerance=residual_tol,
                workers=n_workers,
            )

        summary: Dict[str, Any] = {"found": result.found}
        if result.found:
            summary["gamma_c"] = result.gamma_c
        _finish(
            ctx,
            _resolve_out(out),
            {constants.CRITICAL_GAMMA_FILE: json_text(result.to_dict())},
            base.to_dict(),
            {"reality_tol": reality_tol, "residual_tolerance": residual_tol, "refine_tol": refine_tol},
            {"gamma_hi": gamma_hi, "scan_step": scan_step},
            n_workers,
            started,
            summary,
        )


@app.command("replay")
def replay_command(
    manifest: str = typer.Argument(..., help="Path to a manifest.json"),
    out: Optional[str] = _out_option(),
) -> None:
    """Re-run the command recorded in a manifest."""
    with _reporting_errors():
        from ptchain.utils.output import read_manifest

        record = read_manifest(manifest)
        if record["command"] not in _REPLAYABLE:
            raise ValidationError(f"Manifest records an unknown command {record['command']!r}")
        args = [record["command"], *record["argv"], "--out", _resolve_out(out)]
        logger.info(f"Replaying: ptchain {' '.join(args)}")

    command = typer.main.get_command(app)
    code = command.main(args=args, prog_name="ptchain", standalone_mode=False)
    if code:
        raise typer.Exit(code=code)


__all__ = ["app"]
