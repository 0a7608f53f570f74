"""push-bench command line interface."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from micropush.bench import (
    DEFAULT_CIRCLE_LENGTH,
    DEFAULT_NODES,
    DEFAULT_NOISE_STD,
    ExperimentGrid,
    gen_circle,
    load_path,
    run_grid,
    run_trial,
    write_report,
)
from micropush.sim import PlantConfig


def _float_list(_ctx, _param, value: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in value.split(","))
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}")


@click.group()
def main():
    """Benchmark harness for the corridor pushing algorithm."""


@main.command()
@click.option("--widths", default="5,10,15", callback=_float_list, show_default=True,
              help="Corridor widths in um, comma-separated.")
@click.option("--freqs", default="3,6,9,12,15", callback=_float_list, show_default=True,
              help="Field frequencies in Hz, comma-separated.")
@click.option("--trials", default=4, show_default=True)
@click.option("--seed", default=0, show_default=True, help="Base seed; cells derive from it.")
@click.option("--noise", default=DEFAULT_NOISE_STD, show_default=True,
              help="Observation noise std in um.")
@click.option("--out", "out_dir", default="bench_out", show_default=True,
              type=click.Path(file_okay=False))
def grid(widths, freqs, trials, seed, noise, out_dir):
    """Run the full width x frequency experiment grid."""
    g = ExperimentGrid(widths=widths, freqs=freqs, trials=trials, seed_base=seed)
    report = run_grid(g, PlantConfig(noise_std=noise))
    paths = write_report(report, out_dir)
    click.echo(report.summary_table())
    click.echo(f"wrote {paths['json']}, {paths['csv']}, {paths['summary']}")
    if not report.all_trends_pass():
        sys.exit(2)


@main.command()
@click.option("--width", required=True, type=float, help="Corridor width in um.")
@click.option("--freq", required=True, type=float, help="Field frequency in Hz.")
@click.option("--path", "path_file", type=click.Path(exists=True, dir_okay=False),
              help="Desired path file (x y um pairs).")
@click.option("--circle", "circle_spec", help="LEN,N: circle of polygonal length LEN with N nodes.")
@click.option("--noise", default=0.0, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_file", type=click.Path(dir_okay=False), default=None,
              help="Write the TrialResult JSON here.")
def single(width, freq, path_file, circle_spec, noise, seed, out_file):
    """Run one trial against a path file or a generated circle."""
    if (path_file is None) == (circle_spec is None):
        raise click.UsageError("provide exactly one of --path or --circle")
    if path_file is not None:
        traj = load_path(path_file)
    else:
        try:
            length, n = circle_spec.split(",")
            traj = gen_circle((300.0, 300.0), float(length), int(n))
        except ValueError:
            raise click.BadParameter(f"--circle expects LEN,N, got {circle_spec!r}")
    result = run_trial(width, freq, 0, traj, PlantConfig(noise_std=noise), seed_base=seed)
    status = "TIMEOUT" if result.timed_out else f"completed in {result.completion_s:.2f} s"
    click.echo(f"mae = {result.mae_um:.3f} um, {status}, chatter = {result.chatter}")
    if out_file:
        Path(out_file).write_text(json.dumps(result.to_json_dict(), indent=2) + "\n")
        click.echo(f"wrote {out_file}")
    if result.timed_out:
        sys.exit(1)


@main.command()
@click.argument("report", type=click.Path(exists=True, dir_okay=False))
def summarize(report):
    """Print the summary table of an existing report.json."""
    data = json.loads(Path(report).read_text())
    click.echo(f"{'width_um':>9} {'freq_hz':>8} {'mae_mean':>9} {'mae_std':>8} "
               f"{'time_mean':>10} {'time_std':>9} {'chatter':>8}")
    for cell in data.get("cells", []):
        click.echo(
            f"{cell['corridor_width_um']:9g} {cell['freq_hz']:8g} "
            f"{cell['mae_mean']:9.3f} {cell['mae_std']:8.3f} "
            f"{cell['completion_mean']:10.3f} {cell['completion_std']:9.3f} "
            f"{cell['chatter_mean']:8.2f}"
        )
    failed = [c for c in data.get("trend_checks", []) if not c["passed"]]
    for c in data.get("trend_checks", []):
        click.echo(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['name']}")
    if failed:
        sys.exit(2)


@click.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8750, show_default=True)
def serve(host, port):
    """Run the live simulation session server."""
    import uvicorn

    from micropush.server import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
