#!/usr/bin/env python3
# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
import csv
import io
import json
import logging
import sys
import time
from typing import Any, Dict, Optional

import click
from click_option_group import optgroup

from polargrass.errors import BudgetExceeded, FormInAnnihilator, WrongCharacteristic
from polargrass.formulas import code_dimension, line_count, SectionClass, STRUCTURED_CLASSES
from polargrass.gcode import (
    abc_census,
    build_code,
    build_symplectic_code,
    min_distance_exhaustive,
    min_weight_form,
    min_weight_structural_scan,
    subcode_check,
    weight_direct,
    weight_from_radical,
    weight_recursive,
)
from polargrass.grassmann import enumerate_delta_k
from polargrass.quadgeo import radical_profile
from polargrass.scan import DEFAULT_BUDGET, DEFAULT_WORKERS, scan_code
from polargrass.validate import (
    validate_code_params,
    validate_even,
    validate_form,
)
from polargrass.verify import DEFAULT_SEED, run_suite, spectrum as weight_spectrum


def format_dict(data: Dict[str, Any]) -> str:
    """Format a dictionary for display."""
    return json.dumps(data, indent=2)


def format_csv(data: Dict[str, Any]) -> str:
    """Format a dictionary as a one-record CSV; nested values are JSON encoded."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(list(data))
    writer.writerow(
        [json.dumps(v) if isinstance(v, (dict, list)) or v is None else v for v in data.values()]
    )
    return buf.getvalue()


def format_record(data: Dict[str, Any], output_format: str) -> str:
    format_methods = {
        "json": format_dict,
        "csv": format_csv,
    }
    return format_methods[output_format](data)


def emit(text: str, out: Optional[str]) -> None:
    if out is None:
        click.echo(text)
        return
    with open(out, "w") as f:
        f.write(text if text.endswith("\n") else text + "\n")
    logging.info(f"Wrote {out}")


def code_options(with_k: bool = True):
    """Shared --q/--n(/--k) option group."""

    def decorator(f):
        options = [
            optgroup.group("Code parameters", help="The code of lines (or k-spaces) of Q(2n, q)."),
            optgroup.option("--q", type=int, required=True, help="Field order, a prime power"),
            optgroup.option("--n", type=int, required=True, help="V has dimension 2n+1"),
        ]
        if with_k:
            options.append(
                optgroup.option("--k", type=int, default=2, show_default=True, help="Grade of the subspaces")
            )
        for option in reversed(options):
            f = option(f)
        return f

    return decorator


def scan_options(f):
    """Shared --budget/--workers option group."""
    options = [
        optgroup.group("Exhaustive scan", help="Limits of the full codeword enumeration."),
        optgroup.option(
            "--budget",
            type=click.IntRange(min=1),
            default=DEFAULT_BUDGET,
            show_default=True,
            help="Maximal number of codewords to enumerate",
        ),
        optgroup.option(
            "--workers",
            type=click.IntRange(min=1),
            default=DEFAULT_WORKERS,
            show_default=True,
            help="Number of scanning processes",
        ),
    ]
    for option in reversed(options):
        f = option(f)
    return f


out_option = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write to a file instead of stdout")
record_format_option = click.option(
    "--format",
    "output_format",
    type=click.Choice(["json", "csv"]),
    default="json",
    help="Format to output the result in",
)


def budget_exceeded(e: BudgetExceeded) -> None:
    logging.error(str(e))
    sys.exit(1)


@click.group()
@click.option("--verbose", is_flag=True, help="Log progress at DEBUG level")
def cli(verbose: bool):
    """Command-line tool to build and verify polar line Grassmann codes."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING)


@cli.command()
def version():
    """Show the version of polargrass."""
    try:
        from importlib.metadata import version as get_version

        pkg_version = get_version("polargrass")
    except Exception:
        # Fallback to the version in __init__.py if setuptools-scm isn't available
        import polargrass

        pkg_version = polargrass.__version__
    click.echo(f"polargrass version {pkg_version}")


@cli.command()
@code_options()
@record_format_option
@out_option
def build(q: int, n: int, k: int, output_format: str, out: Optional[str]):
    """Build the code and show its length and dimension."""
    space = validate_code_params(q=q, n=n, k=k, exit_on_error=True)
    code = build_code(enumerate_delta_k(space, k))
    data = code.to_dict()
    data["expected_K"] = code_dimension(q, n, k)
    if k == 2:
        data["expected_N"] = line_count(q, n)
    emit(format_record(data, output_format), out)


@cli.command()
@code_options()
@click.option(
    "--what",
    type=click.Choice(["lines", "generator", "full-generator"]),
    default="lines",
    show_default=True,
    help="Column labels with Plücker coordinates, or a generator matrix",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["json", "text"]),
    default="json",
    help="Format to output the dump in",
)
@out_option
def dump(q: int, n: int, k: int, what: str, output_format: str, out: Optional[str]):
    """Dump the projective system or a generator matrix."""
    space = validate_code_params(q=q, n=n, k=k, exit_on_error=True)
    system = enumerate_delta_k(space, k)
    if what == "lines":
        text = system.to_json() if output_format == "json" else "\n".join(system.dump_lines())
    else:
        code = build_code(system)
        matrix = code.gen_reduced if what == "generator" else code.gen_full
        if output_format == "json":
            text = format_dict({"rows": matrix.rows, "cols": matrix.cols, "q": q, "entries": matrix.entries.tolist()})
        else:
            text = matrix.to_text()
    emit(text, out)


@cli.command()
@code_options(with_k=False)
@click.option("--form", "form_spec", type=str, required=True, help="beta, elementary:i,j (1-based) or a matrix file")
@record_format_option
@out_option
def weight(q: int, n: int, form_spec: str, output_format: str, out: Optional[str]):
    """Compute the weight of a form's codeword by every method."""
    space = validate_code_params(q=q, n=n, exit_on_error=True)
    form = validate_form(form_spec, space, exit_on_error=True)
    code = build_code(enumerate_delta_k(space, 2))
    try:
        report = abc_census(code, form)
        emit(format_record(report.to_dict(), output_format), out)
        return
    except (FormInAnnihilator, WrongCharacteristic) as e:
        logging.debug(f"No residual census: {e}")
    data = {
        "weight": weight_direct(code, form),
        "method_agreement": {
            "direct": weight_direct(code, form),
            "recursive": weight_recursive(code, form),
            "radical": weight_from_radical(code, form),
        },
        "profile": radical_profile(form).to_dict(),
    }
    emit(format_record(data, output_format), out)


@cli.command()
@code_options(with_k=False)
@click.option(
    "--method",
    type=click.Choice(["exhaustive", "structural", "recursive"]),
    default="exhaustive",
    show_default=True,
    help="Full scan, or the constructed radical classes weighed directly or recursively",
)
@click.option("--certify", is_flag=True, help="Check every minimum-weight word's radical (exhaustive only)")
@scan_options
@record_format_option
@out_option
def mindist(
    q: int,
    n: int,
    method: str,
    certify: bool,
    budget: int,
    workers: int,
    output_format: str,
    out: Optional[str],
):
    """Compute the minimum distance of the line code."""
    space = validate_code_params(q=q, n=n, exit_on_error=True)
    start = time.perf_counter()
    code = build_code(enumerate_delta_k(space, 2))
    data: Dict[str, Any] = {"q": q, "n": n, "k": 2, "N": code.N, "K": code.K}
    if method == "exhaustive":
        try:
            result = min_distance_exhaustive(code, budget=budget, workers=workers)
        except BudgetExceeded as e:
            budget_exceeded(e)
        data["d_min"] = result.d_min
        data["min_weight_count"] = result.min_weight_count
        if certify:
            data["structural"] = min_weight_structural_scan(code, result).to_dict()
    else:
        measure = weight_direct if method == "structural" else weight_recursive
        weights = {cls.value: measure(code, min_weight_form(space, cls)) for cls in STRUCTURED_CLASSES}
        data["class_weights"] = weights
        data["d_min"] = weights[SectionClass.HYPERBOLIC_CONE.value]
        # the constructed classes give d_min but not the number of words reaching it
        data["min_weight_count"] = None
    data["elapsed"] = round(time.perf_counter() - start, 3)
    data["method"] = method
    emit(format_record(data, output_format), out)


@cli.command()
@code_options(with_k=False)
@scan_options
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["json", "csv"]),
    default="json",
    help="Format to output the distribution in",
)
@out_option
def spectrum(q: int, n: int, budget: int, workers: int, output_format: str, out: Optional[str]):
    """Compute the full weight distribution of the line code."""
    space = validate_code_params(q=q, n=n, exit_on_error=True)
    code = build_code(enumerate_delta_k(space, 2))
    try:
        hist = weight_spectrum(code, budget=budget, workers=workers)
    except BudgetExceeded as e:
        budget_exceeded(e)
    if output_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["weight", "count"])
        writer.writerows(sorted(hist.items()))
        emit(buf.getvalue(), out)
    else:
        emit(format_dict({"q": q, "n": n, "N": code.N, "K": code.K, "spectrum": {str(w): c for w, c in hist.items()}}), out)


@cli.command()
@code_options(with_k=False)
@click.option("--exhaustive", is_flag=True, help="Also scan the symplectic code for its minimum distance")
@scan_options
@record_format_option
@out_option
def symplectic(
    q: int, n: int, exhaustive: bool, budget: int, workers: int, output_format: str, out: Optional[str]
):
    """Compare the symplectic line code of V/N with the orthogonal one."""
    validate_even(q, exit_on_error=True)
    space = validate_code_params(q=q, n=n, exit_on_error=True)
    orth = build_code(enumerate_delta_k(space, 2))
    symp = build_symplectic_code(space, orth.system)
    result = subcode_check(orth, symp)
    data: Dict[str, Any] = {
        "q": q,
        "n": n,
        "N": orth.N,
        "K_orthogonal": orth.K,
        "K_symplectic": symp.K,
        "is_subcode": result.is_subcode,
        "codimension": result.codimension,
    }
    if exhaustive:
        try:
            data["d_min_symplectic"] = scan_code(symp.gen_reduced, budget=budget, workers=workers).d_min
        except BudgetExceeded as e:
            budget_exceeded(e)
    emit(format_record(data, output_format), out)
    if not result.is_subcode:
        sys.exit(1)


@cli.command()
@click.option(
    "--suite",
    type=click.Choice(["core", "extended"]),
    default="core",
    show_default=True,
    help="core: acceptance checks on small fields; extended adds GF(4) and GF(8) scans",
)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="Seed of the random form samples")
@scan_options
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["json", "csv"]),
    default="json",
    help="Format to output the report in",
)
@out_option
def verify(suite: str, seed: int, budget: int, workers: int, output_format: str, out: Optional[str]):
    """Run a check suite and report every check."""
    report = run_suite(suite, budget=budget, workers=workers, seed=seed)
    format_methods = {
        "json": report.to_json,
        "csv": report.to_csv,
    }
    emit(format_methods[output_format](), out)
    if not report.ok:
        sys.exit(1)


def main():
    """Main entry point for the polargrass CLI."""
    cli()


if __name__ == "__main__":
    main()
