"""Command-line surface: tables and CSV/JSON series for every computation.

Subcommands: ``airy``, ``bouncer``, ``cow``, ``redshift``, ``evolve``.
Exit codes are a stable contract for scripting: 0 success, 1 numeric
failure, 2 usage error.  All stored values are plain numbers (fractions,
radians, SI or natural units); percentages and unit suffixes are formatting
only.  Nothing is random, so every invocation is reproducible.
"""

from __future__ import annotations

import dataclasses
import json
import math
import sys

import click
import numpy as np

from . import __version__
from .airy import ai_negative_zero, airy_values
from .bouncer import level as bouncer_level
from .core import Grid, PhysicalSystem, make_natural_system
from .dynamics import (
    REFERENCE_FRAME_RUN,
    frame_equivalence,
    free_dispersion_width,
    gaussian_packet,
    heisenberg_checks,
    propagate_linear_potential,
)
from .errors import NumericError, ParameterError
from .frames import InterferometerGeometry, cow_phase_shift, cow_phase_shift_time_route, frequency_shift

# CODATA values used by the --si-neutron convenience modes.  The library
# itself hard-codes no constants; these belong to the CLI caller.
NEUTRON_MASS_KG = 1.67492749804e-27
STANDARD_GRAVITY = 9.80665
HBAR_SI = 1.054571817e-34
SPEED_OF_LIGHT = 299792458.0
EV_IN_JOULE = 1.602176634e-19


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _emit(
    columns: dict[str, list],
    meta: dict,
    fmt: str,
    out: str | None,
    table_lines: list[str],
    summary_lines: list[str],
) -> None:
    if fmt == "table":
        if out is not None:
            with open(out, "w", encoding="utf-8") as handle:
                handle.write("\n".join(table_lines + summary_lines) + "\n")
        else:
            for line in table_lines + summary_lines:
                click.echo(line)
        return
    if fmt == "csv":
        names = list(columns)
        length = len(columns[names[0]])
        lines = [",".join(names)]
        for i in range(length):
            lines.append(",".join(_fmt(columns[name][i]) for name in names))
        text = "\n".join(lines) + "\n"
        if out is None:
            click.echo(text, nl=False)
            # keep the data stream clean for piping
            for line in summary_lines:
                click.echo(line, err=True)
        else:
            with open(out, "w", encoding="utf-8") as handle:
                handle.write(text)
            for line in summary_lines:
                click.echo(line)
        return
    if fmt == "json":
        if out is None:
            raise click.UsageError("--out is required with --format json")
        payload = {
            "meta": meta,
            "data": {k: [None if v is None else v for v in vals] for k, vals in columns.items()},
        }
        with open(out, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2)
            handle.write("\n")
        for line in summary_lines:
            click.echo(line)
        return
    raise click.UsageError(f"unknown format {fmt!r}")


def _meta(command: str, units: str, **parameters) -> dict:
    return {
        "command": command,
        "version": __version__,
        "units": units,
        "parameters": parameters,
    }


_FORMAT_OPTION = click.option(
    "--format", "fmt", type=click.Choice(["table", "csv", "json"]), default="table",
    show_default=True, help="Output format.",
)
_OUT_OPTION = click.option(
    "--out", type=click.Path(dir_okay=False, writable=True), default=None,
    help="Write csv/json output to this file (required for json).",
)


@click.group()
@click.version_option(version=__version__, prog_name="gravqm")
def cli() -> None:
    """Quantum mechanics in a uniform gravitational field, from the terminal."""


@cli.command("airy")
@click.option("--eval", "eval_x", type=float, default=None, help="Evaluate Ai, Ai', Bi, Bi' at x.")
@click.option("--zeros", "n_zeros", type=int, default=None, help="Print the first N negative zeros of Ai.")
@_FORMAT_OPTION
@_OUT_OPTION
def cmd_airy(eval_x, n_zeros, fmt, out) -> None:
    """Airy function values or negative zeros of Ai."""
    if (eval_x is None) == (n_zeros is None):
        raise click.UsageError("choose exactly one of --eval X or --zeros N")
    try:
        if eval_x is not None:
            value = airy_values(eval_x)
            columns = {
                "x": [value.x],
                "ai": [value.ai],
                "ai_prime": [value.ai_prime],
                "bi": [value.bi],
                "bi_prime": [value.bi_prime],
            }
            table = [
                f"{'x':>12} {'Ai':>16} {'Ai_prime':>16} {'Bi':>16} {'Bi_prime':>16}",
                f"{value.x:>12.6f} {value.ai:>16.8f} {value.ai_prime:>16.8f} "
                f"{value.bi:>16.8f} {value.bi_prime:>16.8f}",
            ]
            meta = _meta("airy", "dimensionless", eval=eval_x)
            _emit(columns, meta, fmt, out, table, [])
            return
        if n_zeros < 1:
            raise click.UsageError("--zeros needs a positive count")
        zeros = [ai_negative_zero(i) for i in range(1, n_zeros + 1)]
        columns = {
            "n": list(range(1, n_zeros + 1)),
            "zero": zeros,
            "magnitude": [-z for z in zeros],
        }
        table = [f"{'n':>4} {'zero':>16} {'magnitude':>16}"]
        for i, z in enumerate(zeros, start=1):
            table.append(f"{i:>4} {z:>16.8f} {-z:>16.8f}")
        meta = _meta("airy", "dimensionless", zeros=n_zeros)
        _emit(columns, meta, fmt, out, table, [])
    except ParameterError as exc:
        raise click.UsageError(str(exc)) from exc
    except NumericError as exc:
        click.echo(f"numeric failure: {exc}", err=True)
        sys.exit(1)


@cli.command("bouncer")
@click.option("--levels", "n_levels", type=int, required=True, help="Number of levels to print (1..50).")
@click.option("--si-neutron", is_flag=True, help="Use CODATA neutron constants and print energies in peV.")
@_FORMAT_OPTION
@_OUT_OPTION
def cmd_bouncer(n_levels, si_neutron, fmt, out) -> None:
    """Quantized levels above an infinite floor in a linear potential.

    Natural mode uses a system with unit energy scale, so the printed
    energies equal the dimensionless ones.
    """
    if not 1 <= n_levels <= 50:
        raise click.UsageError("--levels must be in 1..50")
    try:
        if si_neutron:
            system = PhysicalSystem(
                m_i=NEUTRON_MASS_KG, m_g=NEUTRON_MASS_KG,
                g=STANDARD_GRAVITY, hbar=HBAR_SI,
            )
            units = "si"
        else:
            system = dataclasses.replace(make_natural_system(0.5), g=2.0)
            units = "natural"
        levels = [bouncer_level(system, n) for n in range(1, n_levels + 1)]
    except ParameterError as exc:
        raise click.UsageError(str(exc)) from exc
    except NumericError as exc:
        click.echo(f"numeric failure: {exc}", err=True)
        sys.exit(1)

    columns = {
        "n": [lv.n for lv in levels],
        "e_tilde": [lv.e_tilde for lv in levels],
        "energy": [lv.energy for lv in levels],
        "p_outside": [lv.p_outside for lv in levels],
    }
    if si_neutron:
        columns["energy_peV"] = [lv.energy / EV_IN_JOULE * 1e12 for lv in levels]
        table = [f"{'n':>4} {'E_tilde':>10} {'E [J]':>14} {'E [peV]':>10} {'P_outside [%]':>14}"]
        for lv in levels:
            pev = lv.energy / EV_IN_JOULE * 1e12
            table.append(
                f"{lv.n:>4} {lv.e_tilde:>10.4f} {lv.energy:>14.6e} {pev:>10.2f} "
                f"{100.0 * lv.p_outside:>14.2f}"
            )
    else:
        table = [f"{'n':>4} {'E_tilde':>10} {'E [natural]':>12} {'P_outside [%]':>14}"]
        for lv in levels:
            table.append(
                f"{lv.n:>4} {lv.e_tilde:>10.4f} {lv.energy:>12.4f} "
                f"{100.0 * lv.p_outside:>14.2f}"
            )
    meta = _meta("bouncer", units, levels=n_levels, si_neutron=si_neutron)
    _emit(columns, meta, fmt, out, table, [])


@cli.command("cow")
@click.option("--lambda", "--wavelength", "wavelength", type=float, required=True,
              help="Beam wavelength.")
@click.option("--height", type=float, required=True, help="Vertical separation z of the beams.")
@click.option("--length", type=float, required=True, help="Horizontal length d of the loop.")
@click.option("--a", "accel", type=float, default=None,
              help="Frame/field acceleration (defaults: 1 natural, standard gravity with --si-neutron).")
@click.option("--si-neutron", is_flag=True, help="Use CODATA neutron constants.")
@click.option("--via-time-route", is_flag=True,
              help="Also compute the shift as |m a t z / hbar| with t = d/v and check agreement.")
@_FORMAT_OPTION
@_OUT_OPTION
def cmd_cow(wavelength, height, length, accel, si_neutron, via_time_route, fmt, out) -> None:
    """Interferometric phase shift proportional to the enclosed beam area."""
    try:
        if si_neutron:
            a = STANDARD_GRAVITY if accel is None else accel
            system = PhysicalSystem(
                m_i=NEUTRON_MASS_KG, m_g=NEUTRON_MASS_KG, g=STANDARD_GRAVITY,
                a=a, hbar=HBAR_SI,
            )
            units = "si"
        else:
            a = 1.0 if accel is None else accel
            system = dataclasses.replace(make_natural_system(1.0), a=a, g=a)
            units = "natural"
        geom = InterferometerGeometry(
            wavelength=wavelength, height=height, horizontal_length=length
        )
        phase = cow_phase_shift(geom, system)
    except ParameterError as exc:
        raise click.UsageError(str(exc)) from exc
    except NumericError as exc:
        click.echo(f"numeric failure: {exc}", err=True)
        sys.exit(1)

    columns = {
        "phase_rad": [phase],
        "fringes": [phase / (2.0 * math.pi)],
        "area": [geom.area],
    }
    table = [
        f"phase shift : {phase:.10g} rad",
        f"fringes     : {phase / (2.0 * math.pi):.10g}",
        f"area        : {geom.area:.10g}",
    ]
    summary: list[str] = []
    if via_time_route:
        phase_t = cow_phase_shift_time_route(geom, system)
        agreement = abs(phase - phase_t) / max(abs(phase), 1e-300)
        columns["phase_rad_time_route"] = [phase_t]
        columns["route_rel_difference"] = [agreement]
        summary.append(f"time-route phase : {phase_t:.10g} rad (rel diff {agreement:.3e})")
    meta = _meta(
        "cow", units, wavelength=wavelength, height=height, length=length, a=a,
        si_neutron=si_neutron,
    )
    _emit(columns, meta, fmt, out, table, summary)


@cli.command("redshift")
@click.option("--z", "z_sep", type=float, required=True, help="Vertical detector separation.")
@click.option("--si", is_flag=True, help="Neutron SI constants; also prints a*z/c^2.")
@click.option("--mass", type=float, default=1.0, show_default=True, help="Mass (natural mode).")
@click.option("--accel", type=float, default=1.0, show_default=True, help="Acceleration (natural mode).")
@click.option("--hbar", "hbar_value", type=float, default=1.0, show_default=True, help="hbar (natural mode).")
@click.option("--omega-prime", type=float, default=None,
              help="Reference angular frequency for the ratio in natural mode.")
@_FORMAT_OPTION
@_OUT_OPTION
def cmd_redshift(z_sep, si, mass, accel, hbar_value, omega_prime, fmt, out) -> None:
    """Frequency shift between detectors at different heights."""
    try:
        if si:
            system = PhysicalSystem(
                m_i=NEUTRON_MASS_KG, m_g=NEUTRON_MASS_KG, g=STANDARD_GRAVITY,
                a=STANDARD_GRAVITY, hbar=HBAR_SI,
            )
            units = "si"
        else:
            system = PhysicalSystem(m_i=mass, m_g=mass, a=accel, hbar=hbar_value)
            units = "natural"
        delta_omega = frequency_shift(system, z_sep)
    except ParameterError as exc:
        raise click.UsageError(str(exc)) from exc
    except NumericError as exc:
        click.echo(f"numeric failure: {exc}", err=True)
        sys.exit(1)

    columns = {"z": [z_sep], "delta_omega": [delta_omega]}
    table = [f"delta_omega : {delta_omega:.10g} rad/s" if si else f"delta_omega : {delta_omega:.10g}"]
    if si:
        ratio = system.a * z_sep / SPEED_OF_LIGHT**2
        columns["ratio"] = [ratio]
        table.append(f"delta_omega/omega' = a*z/c^2 : {ratio:.10g}")
    elif omega_prime is not None:
        ratio = delta_omega / omega_prime
        columns["ratio"] = [ratio]
        table.append(f"delta_omega/omega' : {ratio:.10g}")
    meta = _meta("redshift", units, z=z_sep, si=si)
    _emit(columns, meta, fmt, out, table, [])


_DEMO_DEFAULTS = {
    "frame-equivalence": dict(REFERENCE_FRAME_RUN),
    "bouncer-moments": dict(z_min=-14.0, z_max=13.0, n_points=12288, dt=2.5e-4,
                            t_final=1.0, sigma0=0.5, center=0.0),
    "free-dispersion": dict(z_min=-12.0, z_max=12.0, n_points=4096, dt=5e-4,
                            t_final=0.8660254037844386, sigma0=0.5, center=0.0),
}


@cli.command("evolve")
@click.option("--demo", type=click.Choice(sorted(_DEMO_DEFAULTS)), required=True,
              help="Which propagation demo to run.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True, help="Series output format.")
@_OUT_OPTION
@click.option("--n-points", type=int, default=None, help="Override the grid size.")
@click.option("--dt", type=float, default=None, help="Override the time step.")
@click.option("--t-final", type=float, default=None, help="Override the total time.")
def cmd_evolve(demo, fmt, out, n_points, dt, t_final) -> None:
    """Time-dependent demos in natural units (m = g = hbar = 1).

    Emits a data series plus a summary line; the summary statistics are
    recomputable from the emitted series.
    """
    cfg = dict(_DEMO_DEFAULTS[demo])
    if n_points is not None:
        cfg["n_points"] = n_points
    if dt is not None:
        cfg["dt"] = dt
    if t_final is not None:
        cfg["t_final"] = t_final
    n_steps = max(1, round(cfg["t_final"] / cfg["dt"]))
    try:
        grid = Grid(cfg["z_min"], cfg["z_max"], cfg["n_points"], dt=cfg["dt"], n_steps=n_steps)
        system = dataclasses.replace(make_natural_system(1.0), g=1.0, a=1.0)
        psi0 = gaussian_packet(grid, center=cfg["center"], sigma=cfg["sigma0"])
        if demo == "frame-equivalence":
            result = frame_equivalence(psi0, system)
            diff = np.abs(result.transformed.values - result.direct.values)
            columns = {
                "z": list(grid.z),
                "abs_transformed": list(np.abs(result.transformed.values)),
                "abs_direct": list(np.abs(result.direct.values)),
                "abs_difference": list(diff),
            }
            summary = [f"max_mismatch={_fmt(result.max_mismatch)}"]
        elif demo == "bouncer-moments":
            report = propagate_linear_potential(
                psi0, system, system.weight, momentum_method="spectral"
            )
            t, mz, mp_, sz, sp_ = report.moment_series.T
            columns = {
                "t": list(t), "mean_z": list(mz), "mean_p": list(mp_),
                "sigma_z": list(sz), "sigma_p": list(sp_),
            }
            checks = heisenberg_checks(report, system)
            summary = [f"norm_drift={_fmt(report.norm_drift)}"]
            summary += [
                f"{name}: residual={_fmt(oc.residual)} tol={_fmt(oc.tolerance)} "
                f"{'pass' if oc.passed else 'FAIL'}"
                for name, oc in checks.items()
            ]
        else:  # free-dispersion
            system = dataclasses.replace(system, g=0.0, a=0.0)
            report = propagate_linear_potential(psi0, system, 0.0)
            t, _, _, sz, _ = report.moment_series.T
            analytic = free_dispersion_width(cfg["sigma0"], t, system)
            columns = {
                "t": list(t),
                "width": list(sz),
                "width_analytic": list(analytic),
            }
            rel = np.max(np.abs(sz[1:] - analytic[1:]) / analytic[1:]) if t.size > 1 else 0.0
            summary = [f"max_rel_width_deviation={_fmt(rel)}"]
    except ParameterError as exc:
        raise click.UsageError(str(exc)) from exc
    except NumericError as exc:
        click.echo(f"numeric failure: {exc}", err=True)
        sys.exit(1)
    meta = _meta("evolve", "natural", demo=demo, **cfg, n_steps=n_steps)
    _emit(columns, meta, fmt, out, [], summary)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
