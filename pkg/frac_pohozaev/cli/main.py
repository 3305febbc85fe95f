"""Command-line front end: ``fracpoho verify|suite|oracle|constants``."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import click
import orjson
import pandas as pd

from ..exceptions import ConfigurationError
from ..geometry.ball_domain import BallDomain
from ..numerics.special_functions import FracParams, OperatorParams, beta_fn, make_constants
from ..oracle.fields import bump, eigen_bump
from ..oracle.principal_value import (
    OracleBudget,
    frac_laplacian_pv,
    product_rule_residual,
    s_harmonicity_residual,
)
from ..schemas.report import IdentityReport
from ..schemas.run_config import RunConfig
from ..utils.config import (
    get_settings,
    get_verification_configuration,
    load_run_file,
    validate_config,
)
from ..utils.logging import setup_logger
from ..utils.parallel import shutdown_pools
from ..verification.error_handling import (
    EXIT_OK,
    EXIT_RESIDUAL,
    build_error_report,
)
from ..verification.registry import run_identity
from ..verification.suite import acceptance_suite

CSV_COLUMNS = ["order", "lhs", "rhs", "abs_residual", "rel_residual", "seconds"]
JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_APPEND_NEWLINE

logger = setup_logger(__name__)


def _dump(document: Any) -> bytes:
    return orjson.dumps(document, option=JSON_OPTIONS)


def write_report(report: IdentityReport, directory: Path, stem: str, *, timings: bool) -> Path:
    """Write ``<stem>.json`` and the ``<stem>.csv`` refinement table; return the JSON path."""

    directory.mkdir(parents=True, exist_ok=True)
    json_path = directory / f"{stem}.json"
    json_path.write_bytes(_dump(report.to_document(timings=timings)))
    table = pd.DataFrame(report.history_rows(timings=timings), columns=CSV_COLUMNS)
    table.to_csv(directory / f"{stem}.csv", index=False, float_format="%.17g")
    return json_path


def _fail(identity_id: str, exc: Exception) -> int:
    error = build_error_report(exc, identity_id=identity_id)
    click.echo(_dump({"error": error.to_dict()}), nl=False)
    return error.exit_code


def _assemble_config(identity_id: str, config_file: str | None, flags: dict[str, Any]) -> RunConfig:
    values: dict[str, Any] = {}
    if config_file is not None:
        values.update(load_run_file(config_file))
    values.update({key: value for key, value in flags.items() if value is not None})
    values["identity_id"] = identity_id
    model = validate_config(values, RunConfig)
    assert isinstance(model, RunConfig)
    return model


def _record_timings(no_timings: bool) -> bool:
    return get_settings().record_timings and not no_timings


def _output_dir(config_output: Path | None, flag: str | None) -> Path:
    if flag is not None:
        return Path(flag)
    if config_output is not None:
        return config_output
    return get_settings().output_dir


def _summary(report: IdentityReport) -> str:
    status = "PASS" if report.passed else "FAIL"
    return (
        f"{status} {report.identity_id}: lhs={report.lhs:.17g} rhs={report.rhs:.17g} "
        f"rel_residual={report.rel_residual:.3e} (tol {report.tolerance:.1e}, "
        f"order {report.quad_order})"
    )


def _exit(ctx: click.Context, code: int) -> None:
    shutdown_pools()
    ctx.exit(code)


@click.group()
@click.version_option(package_name="frac-pohozaev")
def cli() -> None:
    """Verify Pohozaev identities for Green functions of (−Δ)^s on balls."""


@cli.command()
@click.argument("identity_id", metavar="IDENTITY")
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False),
              help="Run file: key=value lines, or YAML by extension.")
@click.option("--dim", type=int, help="Ambient dimension N.")
@click.option("--s", "s", type=float, help="Order s in (0, 1], 1 = classical Laplacian.")
@click.option("--R", "R", type=float, help="Ball radius.")
@click.option("--x", type=str, help="First pole, comma-separated.")
@click.option("--y", type=str, help="Second pole, comma-separated.")
@click.option("--xi", type=str, help="Centre ξ, comma-separated.")
@click.option("--axis", type=int, help="Component index for local-vector.")
@click.option("--orders", type=str, help="Quadrature order ladder, e.g. 10,20,40.")
@click.option("--rhos", type=str, help="Decreasing mollification radii for mollified.")
@click.option("--tol", type=float, help="Relative tolerance (default from configuration).")
@click.option("--output", type=click.Path(file_okay=False), help="Report directory.")
@click.option("--seed", type=int, help="Seed of the sampled sphere rule.")
@click.option("--sampled", is_flag=True, default=None, help="Use a Monte-Carlo sphere rule.")
@click.option("--no-timings", is_flag=True, help="Write zero timings (byte-identical reruns).")
@click.option("--json", "output_json", is_flag=True, help="Print the report JSON to stdout.")
@click.pass_context
def verify(
    ctx: click.Context,
    identity_id: str,
    config_file: str | None,
    no_timings: bool,
    output_json: bool,
    output: str | None,
    **flags: Any,
) -> None:
    """
    Verify one identity and write its JSON report and CSV refinement table.

    IDENTITY is one of: robin, bilinear, bilinear-general, difference, local,
    local-vector, local-robin, mollified.

    Examples:

        fracpoho verify robin --dim 3 --s 0.5 --x 0.3,0,0 --orders 10,20,40 --tol 1e-7

        fracpoho verify local --dim 3 --x 0.1,0,0 --y 0,0.2,0 --xi 0.5,0.5,0.5
    """
    flags["sampled"] = flags["sampled"] or None
    try:
        config = _assemble_config(identity_id, config_file, flags)
        report = run_identity(config)
    except Exception as exc:
        _exit(ctx, _fail(identity_id, exc))
        return

    timings = _record_timings(no_timings)
    directory = _output_dir(config.output, output)
    write_report(report, directory, identity_id, timings=timings)
    if output_json:
        click.echo(_dump(report.to_document(timings=timings)), nl=False)
    else:
        click.echo(_summary(report))
    _exit(ctx, EXIT_OK if report.passed else EXIT_RESIDUAL)


@cli.command()
@click.argument("selection", type=click.Choice(["all"]))
@click.option("--dim", type=int, default=3, show_default=True, help="Ambient dimension N.")
@click.option("--output", type=click.Path(file_okay=False), help="Report directory.")
@click.option("--no-timings", is_flag=True, help="Write zero timings (byte-identical reruns).")
@click.pass_context
def suite(ctx: click.Context, selection: str, dim: int, output: str | None, no_timings: bool) -> None:
    """Run the acceptance matrix for one dimension (SELECTION must be ``all``)."""

    timings = _record_timings(no_timings)
    directory = _output_dir(None, output)
    try:
        configs = acceptance_suite(dim)
    except Exception as exc:
        _exit(ctx, _fail("suite", exc))
        return

    worst = EXIT_OK
    summary: list[dict[str, Any]] = []
    for index, config in enumerate(configs):
        stem = f"{index:03d}-{config.identity_id}"
        try:
            report = run_identity(config)
        except Exception as exc:
            error = build_error_report(exc, identity_id=config.identity_id)
            summary.append({"run": stem, "error": error.to_dict()})
            worst = max(worst, error.exit_code)
            continue
        write_report(report, directory, stem, timings=timings)
        click.echo(_summary(report))
        summary.append(
            {"run": stem, "passed": report.passed, "rel_residual": report.rel_residual}
        )
        if not report.passed:
            worst = max(worst, EXIT_RESIDUAL)

    directory.mkdir(parents=True, exist_ok=True)
    (directory / "suite-summary.json").write_bytes(_dump({"dim": dim, "runs": summary}))
    logger.info("Suite finished with %d runs, exit status %d", len(configs), worst)
    _exit(ctx, worst)


def _floats(text: str | None, name: str) -> list[float] | None:
    if text is None:
        return None
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ConfigurationError(f"--{name} must be a comma-separated list of numbers, got {text!r}")


def _oracle_budget(doubled: bool) -> OracleBudget:
    budget = OracleBudget.from_settings(get_verification_configuration().oracle)
    return budget.doubled() if doubled else budget


@cli.command()
@click.argument("kind", type=click.Choice(["pv", "product-rule", "s-harmonicity"]))
@click.option("--dim", type=int, default=1, show_default=True)
@click.option("--s", "s", type=float, default=0.5, show_default=True)
@click.option("--z", type=str, default=None, help="Evaluation point (default: origin).")
@click.option("--x", type=str, default=None, help="Pole of H_s(x, ·) for s-harmonicity.")
@click.option("--field", type=click.Choice(["eigen", "bump"]), default="eigen", show_default=True,
              help="Field for pv: (1−|t|²)_+^s or a C^∞ bump.")
@click.option("--centers", type=str, default=None,
              help="Bump centres as 'c1;c2' (product-rule) or 'c' (pv bump).")
@click.option("--radius", type=float, default=0.8, show_default=True, help="Bump radius.")
@click.option("--tol", type=float, default=None, help="Residual tolerance.")
@click.option("--doubled", is_flag=True, help="Use the doubled oracle budget.")
@click.pass_context
def oracle(
    ctx: click.Context,
    kind: str,
    dim: int,
    s: float,
    z: str | None,
    x: str | None,
    field: str,
    centers: str | None,
    radius: float,
    tol: float | None,
    doubled: bool,
) -> None:
    """Evaluate the principal-value oracle: pv, product-rule or s-harmonicity."""

    try:
        p = OperatorParams(dim, s)
        point = _floats(z, "z") or [0.0] * dim
        budget = _oracle_budget(doubled)
        tolerances = get_verification_configuration().tolerances
        document: dict[str, Any] = {"oracle": kind, "params": {"N": dim, "s": s, "z": point}}
        if kind == "pv":
            if field == "eigen":
                u = eigen_bump(dim, s)
            else:
                centre = _floats(centers, "centers") or [0.0] * dim
                u = bump(centre, radius, dim)
            document["value"] = frac_laplacian_pv(u, point, p, budget)
            passed = True
        else:
            if kind == "product-rule":
                parts = (centers or "-0.2;0.3").split(";")
                if len(parts) != 2:
                    raise ConfigurationError("--centers must hold two centres separated by ';'")
                u = bump(_floats(parts[0], "centers"), radius, dim)
                v = bump(_floats(parts[1], "centers"), radius, dim)
                residual = product_rule_residual(u, v, point, p, budget)
                limit = tol or tolerances.get("product-rule", 1e-4)
            else:
                pole = _floats(x, "x") or [0.0] * dim
                document["params"]["x"] = pole
                residual = s_harmonicity_residual(
                    FracParams(dim, s),
                    BallDomain(dim, 1.0),
                    pole,
                    point,
                    budget,
                    fd_step=get_verification_configuration().oracle.fd_step,
                )
                limit = tol or tolerances.get("s-harmonicity", 1e-3)
            passed = residual <= limit
            document.update({"residual": residual, "tolerance": limit, "passed": passed})
    except Exception as exc:
        _exit(ctx, _fail(f"oracle:{kind}", exc))
        return

    click.echo(_dump(document), nl=False)
    _exit(ctx, EXIT_OK if passed else EXIT_RESIDUAL)


@cli.command()
@click.option("--dim", type=int, required=True, help="Ambient dimension N.")
@click.option("--s", "s", type=float, required=True, help="Order s in (0, 1].")
@click.pass_context
def constants(ctx: click.Context, dim: int, s: float) -> None:
    """Print the normalization constants for (N, s) as JSON."""

    try:
        p = FracParams(dim, s)
        values = make_constants(p)
    except Exception as exc:
        _exit(ctx, _fail("constants", exc))
        return

    document: dict[str, Any] = {
        "N": p.N,
        "s": p.s,
        "c_norm": values.c_norm,
        "b_fund": values.b_fund,
        "kappa_bgr": values.kappa_bgr,
        "sphere_area": values.sphere_area,
    }
    if not p.is_local:
        document["kappa_times_beta"] = values.kappa_bgr * beta_fn(p.s, p.N / 2.0 - p.s)
    click.echo(_dump(document), nl=False)
    _exit(ctx, EXIT_OK)


if __name__ == "__main__":  # pragma: no cover
    cli()
