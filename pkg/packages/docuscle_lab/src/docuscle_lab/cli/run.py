#!/usr/bin/env python3
"""
docuscle command-line interface.

Every command reads a JSON run configuration, validates it completely, runs
and writes one report (stdout unless --out is given). Exit status is 0 on
success, 2 when the configuration is invalid and 3 when a run fails.

Examples:
    docuscle exact --config configs/plus_state.json
    docuscle simulate --config configs/e5_mixed.json --out e5_report.json
    docuscle scan --config configs/scan_quantum.json --progress
    docuscle violate --config configs/violate_qubit.json --seed 3
"""

from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional, Tuple

import typer
from docuscle_beam.pipeline import Emitter, standard_experiment
from docuscle_beam.report import simulate
from docuscle_types.errors import ConfigValidationError, DocuscleError
from docuscle_types.schemas.config import U64_MAX, RunConfig
from docuscle_types.schemas.models import ScanConfig
from docuscle_types.utils.deterministic_ids import instance_id
from docuscle_types.utils.export_schema import export_all_schemas
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from ..config.loader import build_instance, load_config
from ..experiments.convergence import convergence_rows, convergence_study
from ..experiments.exact import evaluate_instance
from ..experiments.scan import default_scan_config, scan_equivalence, scan_rows
from ..experiments.violation import find_ltp_violation
from ..utils.logging_utils import setup_logging
from ..writer import atomic_write, encode_json, write_report

app = typer.Typer(no_args_is_help=True, help="docuscle beam simulator and exact evaluator")
console = Console(stderr=True, soft_wrap=True)

EXIT_CONFIG = 2
EXIT_RUNTIME = 3

CONFIG = typer.Option(..., "--config", "-c", help="JSON run configuration")
OUT = typer.Option(None, "--out", "-o", help="Report path (default: stdout)")
FORMAT = typer.Option(None, "--format", "-f", help="json or csv (default: config or json)")
SEED = typer.Option(None, "--seed", help="Top-level seed, overrides the config")
VERBOSE = typer.Option(False, "--verbose", "-v", help="Debug logging")
JSON_LOGS = typer.Option(False, "--json-logs", help="Log serialized JSON records")


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Map typed errors to exit statuses with a one-line diagnostic."""
    try:
        yield
    except ConfigValidationError as exc:
        console.print(f"[red]❌ config error[/red] {escape(str(exc))}")
        raise typer.Exit(EXIT_CONFIG)
    except ValidationError as exc:
        first = exc.errors()[0]
        field = ".".join(str(p) for p in first.get("loc", ()))
        message = escape(f"{field}: {first.get('msg')}")
        console.print(f"[red]❌ config error[/red] {message}")
        raise typer.Exit(EXIT_CONFIG)
    except DocuscleError as exc:
        console.print(f"[red]❌ {exc.reason}[/red] {escape(str(exc))}")
        raise typer.Exit(EXIT_RUNTIME)


def _prepare(
    config_path: Path, seed: Optional[int], verbose: bool, json_logs: bool
) -> Tuple[RunConfig, Optional[int]]:
    setup_logging("DEBUG" if verbose else "WARNING", json_only=json_logs)
    config = load_config(config_path)
    seed = seed if seed is not None else config.seed
    if seed is not None and not 0 <= seed <= U64_MAX:
        raise ConfigValidationError(f"seed must be in 0..{U64_MAX}", field="seed")
    return config, seed


def _require(config: RunConfig, seed: Optional[int], *fields: str) -> int:
    if seed is None:
        raise ConfigValidationError("a seed is required (--seed or config)", field="seed")
    for name in fields:
        if getattr(config, name) is None:
            raise ConfigValidationError("required for this command", field=name)
    return seed


def _destination(config: RunConfig, out: Optional[Path], fmt: Optional[str]):
    return (out or config.output.path), (fmt or config.output.format)


@app.command("exact")
def cmd_exact(
    config_path: Path = CONFIG,
    out: Optional[Path] = OUT,
    fmt: Optional[str] = FORMAT,
    seed: Optional[int] = SEED,
    verbose: bool = VERBOSE,
    json_logs: bool = JSON_LOGS,
) -> None:
    """Exact r, p, q, x, boost and naturalness flags and LTP residual."""
    with _exit_codes():
        config, seed = _prepare(config_path, seed, verbose, json_logs)
        state, x, r = build_instance(config, seed)
        report = evaluate_instance(
            state, x, r, config.tolerance, instance_id=instance_id(config.instance())
        )
        path, fmt = _destination(config, out, fmt)
        row = report.model_dump(exclude={"reasons"})
        row["reasons"] = ";".join(f"{k}={v}" for k, v in report.reasons.items())
        write_report(report, path, fmt, rows=[row])


@app.command("simulate")
def cmd_simulate(
    config_path: Path = CONFIG,
    out: Optional[Path] = OUT,
    fmt: Optional[str] = FORMAT,
    seed: Optional[int] = SEED,
    verbose: bool = VERBOSE,
    json_logs: bool = JSON_LOGS,
) -> None:
    """Beam run of one standard experiment with estimates against exact values."""
    with _exit_codes():
        config, seed = _prepare(config_path, seed, verbose, json_logs)
        seed = _require(config, seed, "experiment", "n")
        state, x, r = build_instance(config, seed)
        pipeline = standard_experiment(config.experiment, Emitter(state), x, r)
        report = simulate(
            pipeline, config.n, seed, emission_cap=config.emission_cap, workers=config.workers
        )
        path, fmt = _destination(config, out, fmt)
        write_report(report, path, fmt, rows=[c.model_dump() for c in report.comparisons])

        table = Table(title=f"{config.experiment.value} N={config.n} seed={seed}")
        for column in ("quantity", "estimate", "± se", "exact", "within 5σ"):
            table.add_column(column)
        for c in report.comparisons:
            table.add_row(
                c.quantity,
                f"{c.estimate:.6f}",
                f"{c.standard_error:.2g}",
                "-" if c.exact is None else f"{c.exact:.6f}",
                "-" if c.within_5sigma is None else ("✅" if c.within_5sigma else "❌"),
            )
        console.print(table)


@app.command("scan")
def cmd_scan(
    config_path: Path = CONFIG,
    out: Optional[Path] = OUT,
    fmt: Optional[str] = FORMAT,
    seed: Optional[int] = SEED,
    verbose: bool = VERBOSE,
    json_logs: bool = JSON_LOGS,
    progress: bool = typer.Option(False, "--progress", help="Progress bar over dims"),
) -> None:
    """Count sign agreement of (x - r) and naturalness over random instances."""
    with _exit_codes():
        config, seed = _prepare(config_path, seed, verbose, json_logs)
        seed = _require(config, seed)
        if config.dims is None:
            scan_config = default_scan_config(config.model, seed, config.trials)
        else:
            scan_config = ScanConfig(
                model=config.model,
                dims=config.dims,
                trials=config.trials or 10_000,
                seed=seed,
            )
        if config.tolerance is not None:
            scan_config = scan_config.model_copy(update={"tolerance": config.tolerance})
        report = scan_equivalence(scan_config, workers=config.workers, progress=progress)
        path, fmt = _destination(config, out, fmt)
        write_report(report, path, fmt, rows=scan_rows(report))
        if fmt == "csv" and path is not None:
            atomic_write(Path(path).with_suffix(".summary.json"), encode_json(report))

        colour = "green" if report.disagree == 0 else "red"
        console.print(
            f"[{colour}]disagree={report.disagree}[/{colour}] "
            f"sequential_disagree={report.sequential_disagree} "
            f"({report.elapsed_seconds:.1f}s)"
        )


@app.command("violate")
def cmd_violate(
    config_path: Path = CONFIG,
    out: Optional[Path] = OUT,
    fmt: Optional[str] = FORMAT,
    seed: Optional[int] = SEED,
    verbose: bool = VERBOSE,
    json_logs: bool = JSON_LOGS,
) -> None:
    """Random search for the largest quantum LTP residual."""
    with _exit_codes():
        config, seed = _prepare(config_path, seed, verbose, json_logs)
        seed = _require(config, seed, "dim", "budget")
        generator = "commuting" if config.commuting else ("pure" if config.pure else "ginibre")
        report = find_ltp_violation(
            config.dim,
            config.budget,
            seed,
            generator=generator,
            projector_rank=config.projector_rank,
        )
        path, fmt = _destination(config, out, fmt)
        write_report(report, path, fmt)
        if report.diagnostic:
            console.print(f"[yellow]{escape(report.diagnostic)}[/yellow]")


@app.command("convergence")
def cmd_convergence(
    config_path: Path = CONFIG,
    out: Optional[Path] = OUT,
    fmt: Optional[str] = FORMAT,
    seed: Optional[int] = SEED,
    verbose: bool = VERBOSE,
    json_logs: bool = JSON_LOGS,
) -> None:
    """Estimate against exact value for each N of n_list."""
    with _exit_codes():
        config, seed = _prepare(config_path, seed, verbose, json_logs)
        seed = _require(config, seed, "experiment", "n_list")
        state, x, r = build_instance(config, seed)
        report = convergence_study(
            config.experiment,
            state,
            x,
            r,
            config.n_list,
            seed,
            emission_cap=config.emission_cap,
            workers=config.workers,
        )
        path, fmt = _destination(config, out, fmt)
        write_report(report, path, fmt, rows=convergence_rows(report))


@app.command("validate")
def cmd_validate(
    config_path: Path = CONFIG,
    seed: Optional[int] = SEED,
    verbose: bool = VERBOSE,
) -> None:
    """Parse a config and build every object it describes, without running."""
    with _exit_codes():
        config, seed = _prepare(config_path, seed, verbose, False)
        built = ""
        if config.state is not None or config.x is not None or config.r is not None:
            state, _, _ = build_instance(config, seed)
            built = f" ({config.model} instance, dim {state.dim})"
        console.print(f"[green]✅ {config_path} is valid{built}[/green]")


@app.command("schema")
def cmd_schema(
    output_dir: Path = typer.Argument(..., help="Directory for *.schema.json files"),
    version: str = typer.Option("0.1.0", help="Schema version"),
) -> None:
    """Write JSON Schema files for the config and report models."""
    paths = export_all_schemas(output_dir, version)
    console.print(f"[green]✅ Wrote {len(paths)} schemas to {output_dir}[/green]")


if __name__ == "__main__":
    app()
