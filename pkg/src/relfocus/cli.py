"""Command line surface.

Exit codes: 0 success, 1 malformed input, 2 guard refusal, 3 internal
invariant violation.  Diagnostics go to stderr; with ``--json`` the standard
stream carries exactly one machine-readable report, validated against the
v1 schema before printing.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import click

from . import io as rio
from .correlation import mincor_family
from .decompose import factorize as run_factorize
from .decompose import focus as run_focus
from .decompose import is_independent
from .errors import GuardError, InputError, InternalInvariantError
from .oracle import gen_planted, gen_random_relation, oracle_focus
from .partition import bottom
from .relation import Relation

EXIT_INPUT = 1
EXIT_GUARD = 2
EXIT_BUG = 3


class _ExitCodeGroup(click.Group):
    """Map domain errors onto the documented exit codes."""

    def main(self, *args, standalone_mode=True, **kwargs):
        try:
            rv = super().main(*args, standalone_mode=False, **kwargs)
        except click.exceptions.Exit as exc:
            sys.exit(exc.exit_code)
        except click.ClickException as exc:
            exc.show()
            sys.exit(EXIT_INPUT)
        except click.exceptions.Abort:
            click.echo("aborted", err=True)
            sys.exit(EXIT_INPUT)
        except InputError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        except GuardError as exc:
            click.echo(f"refused: {exc}", err=True)
            sys.exit(EXIT_GUARD)
        except InternalInvariantError as exc:
            click.echo(f"internal invariant violated, please report a bug: {exc}", err=True)
            sys.exit(EXIT_BUG)
        if standalone_mode:
            sys.exit(0)
        return rv


@click.group(cls=_ExitCodeGroup)
@click.version_option(package_name="relfocus")
def cli() -> None:
    """Factor a relation stored as CSV into independent components."""


def _emit(report: dict, as_json: bool, human_lines: list[str]) -> None:
    if as_json:
        try:
            rio.validate_report(report)
        except Exception as exc:  # schema violation in our own output
            raise InternalInvariantError(f"report failed schema validation: {exc}") from exc
        click.echo(json.dumps(report, separators=(",", ":")))
    else:
        for line in human_lines:
            click.echo(line)


@cli.command()
@click.argument("in_csv", type=click.Path(dir_okay=False))
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None,
              help="Directory for one CSV per factor, named by block (AB.csv).")
@click.option("--paranoid", is_flag=True, help="Also materialize the factor join when verifying.")
@click.option("--max-mincor-size", type=click.IntRange(min=1), default=None,
              help="Cap the correlated-set search; failed re-checks are reported UNVERIFIED.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report on stdout.")
def factorize(in_csv, out_dir, paranoid, max_mincor_size, as_json) -> None:
    """Compute the finest independent grouping and write the factors."""
    loaded = rio.load_relation(in_csv)
    started = time.perf_counter()
    result = run_factorize(loaded.relation, paranoid=paranoid, max_mincor_size=max_mincor_size)
    elapsed = (time.perf_counter() - started) * 1000.0
    scheme = loaded.relation.scheme

    files = None
    if out_dir is not None:
        target = Path(out_dir)
        target.mkdir(parents=True, exist_ok=True)
        files = []
        for factor, block in zip(result.factors, result.focus.blocks):
            name = rio.block_filename(scheme, block)
            (target / name).write_text(rio.relation_to_csv(factor), encoding="utf-8")
            files.append(name)

    status = rio.STATUS_VERIFIED if result.verified else rio.STATUS_UNVERIFIED
    report = rio.build_report(
        "factorize",
        loaded,
        elapsed,
        status=status,
        focus=rio.partition_to_names(result.focus, scheme),
        factors=rio.factors_to_json(result, files),
        cell_counts={"flat": result.cells_flat, "factorized": result.cells_factorized},
        trace=rio.trace_to_json(loaded.relation, result.trace),
    )
    lines = [f"focus: {rio.format_partition(result.focus, scheme)}"]
    for factor, block in zip(result.factors, result.focus.blocks):
        lines.append(f"factor {''.join(rio.block_names(scheme, block))}: {len(factor)} tuples")
    lines.append(f"cells: {result.cells_flat} flat -> {result.cells_factorized} factorized")
    lines.append(f"status: {status}")
    _emit(report, as_json, lines)


@cli.command()
@click.argument("in_csv", type=click.Path(dir_okay=False))
@click.option("--partition", "partition_text", default=None,
              help='Grouping to analyze, e.g. [["A","B"],["C","D"]]; default: singletons.')
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report on stdout.")
def mincors(in_csv, partition_text, as_json) -> None:
    """List the minimal correlated block sets with their evidence."""
    loaded = rio.load_relation(in_csv)
    rel = loaded.relation
    grouping = (
        bottom(len(rel.scheme))
        if partition_text is None
        else rio.parse_partition(partition_text, rel.scheme)
    )
    started = time.perf_counter()
    family = mincor_family(rel, grouping)
    elapsed = (time.perf_counter() - started) * 1000.0

    singles = [list(rio.block_names(rel.scheme, grouping.blocks[p])) for p in family.singletons]
    evidence = rio.mincor_evidence(rel, family)
    report = rio.build_report(
        "mincors",
        loaded,
        elapsed,
        grouping=rio.partition_to_names(grouping, rel.scheme),
        mincors=evidence,
        **({"singletons": singles} if singles else {}),
    )
    lines = [f"grouping: {rio.format_partition(grouping, rel.scheme)}"]
    for entry in evidence:
        blocks = json.dumps(entry["blocks"], separators=(",", ":"))
        lines.append(
            f"mincor {blocks}: projection {entry['projection_tuples']}"
            f" < product {entry['product_of_block_tuples']}"
        )
    if not evidence:
        lines.append("mincors: (none)")
    lines.append(
        "singletons: " + (json.dumps(singles, separators=(",", ":")) if singles else "(none)")
    )
    _emit(report, as_json, lines)


@cli.command(name="alpha-trace")
@click.argument("in_csv", type=click.Path(dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report on stdout.")
def alpha_trace(in_csv, as_json) -> None:
    """Show the coarsening chain from singletons to the fixed point."""
    loaded = rio.load_relation(in_csv)
    rel = loaded.relation
    started = time.perf_counter()
    _, trace = run_focus(rel)
    elapsed = (time.perf_counter() - started) * 1000.0

    report = rio.build_report(
        "alpha-trace",
        loaded,
        elapsed,
        trace=rio.trace_to_json(rel, trace),
        focus=rio.partition_to_names(trace.fixed_point, rel.scheme),
    )
    lines = []
    for i, step in enumerate(trace.steps, start=1):
        src = rio.format_partition(step.start, rel.scheme)
        dst = rio.format_partition(step.result, rel.scheme)
        if step.result == step.start:
            lines.append(f"step {i}: fixed point {dst}")
        else:
            lines.append(f"step {i}: {src} -> {dst}")
    _emit(report, as_json, lines)


@cli.command()
@click.argument("in_csv", type=click.Path(dir_okay=False))
@click.option("--partition", "partition_text", required=True,
              help='Grouping to test, e.g. [["A","B"],["C","D"]].')
@click.option("--paranoid", is_flag=True, help="Also materialize the join when testing.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report on stdout.")
def check(in_csv, partition_text, paranoid, as_json) -> None:
    """Report whether a grouping is independent for the relation."""
    loaded = rio.load_relation(in_csv)
    rel = loaded.relation
    grouping = rio.parse_partition(partition_text, rel.scheme)
    started = time.perf_counter()
    verdict = is_independent(rel, grouping, paranoid=paranoid)
    elapsed = (time.perf_counter() - started) * 1000.0

    report = rio.build_report(
        "check",
        loaded,
        elapsed,
        partition=rio.partition_to_names(grouping, rel.scheme),
        independent=verdict,
    )
    _emit(report, as_json, [f"independent: {str(verdict).lower()}"])


@cli.command()
@click.argument("in_csv", type=click.Path(dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report on stdout.")
def oracle(in_csv, as_json) -> None:
    """Brute-force focus by exhaustive partition enumeration (guarded)."""
    loaded = rio.load_relation(in_csv)
    rel = loaded.relation
    started = time.perf_counter()
    result = oracle_focus(rel)
    elapsed = (time.perf_counter() - started) * 1000.0

    report = rio.build_report(
        "oracle",
        loaded,
        elapsed,
        focus=rio.partition_to_names(result, rel.scheme),
    )
    _emit(report, as_json, [f"focus: {rio.format_partition(result, rel.scheme)}"])


def _relation_from_gen_spec(seed: int, spec: dict) -> tuple[Relation, list[list[str]] | None]:
    kind = spec.get("kind")
    if kind == "random":
        try:
            rel = gen_random_relation(
                seed,
                int(spec["attributes"]),
                int(spec.get("max_domain", 3)),
                int(spec.get("max_tuples", 20)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad random spec: {exc}") from exc
        return rel, None
    if kind == "planted":
        try:
            blocks = [(int(a), int(t)) for a, t in spec["blocks"]]
            inst = gen_planted(seed, blocks, int(spec.get("max_domain", 3)))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad planted spec: {exc}") from exc
        planted = [
            [inst.relation.scheme.attributes[i].name for i in ids]
            for ids in inst.planted.to_sets()
        ]
        return inst.relation, planted
    raise InputError('generator spec needs "kind": "random" or "planted"')


@cli.command()
@click.option("--seed", type=int, required=True, help="RNG seed; same seed, same instance.")
@click.option("--spec", "spec_text", required=True,
              help='Instance spec, e.g. {"kind":"random","attributes":4,"max_tuples":20}'
                   ' or {"kind":"planted","blocks":[[2,3],[2,2]]}.')
@click.option("--out", "out_file", type=click.Path(dir_okay=False), required=True,
              help="CSV file to write; a .meta.json sidecar records the seed and spec.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report on stdout.")
def gen(seed, spec_text, out_file, as_json) -> None:
    """Generate a reproducible test instance as CSV plus sidecar metadata."""
    try:
        spec = json.loads(spec_text)
    except json.JSONDecodeError as exc:
        raise InputError(f"spec is not valid JSON: {exc}") from exc
    if not isinstance(spec, dict):
        raise InputError("spec must be a JSON object")

    started = time.perf_counter()
    rel, planted = _relation_from_gen_spec(seed, spec)
    elapsed = (time.perf_counter() - started) * 1000.0

    csv_text = rio.relation_to_csv(rel)
    out_path = Path(out_file)
    out_path.write_text(csv_text, encoding="utf-8")
    sidecar = {
        "schema_version": "v1",
        "seed": seed,
        "spec": spec,
        "attributes": len(rel.scheme),
        "tuples": len(rel),
    }
    if planted is not None:
        sidecar["planted"] = planted
    sidecar_path = Path(str(out_file) + ".meta.json")
    sidecar_path.write_text(json.dumps(sidecar, indent=2) + "\n", encoding="utf-8")

    loaded = rio.load_relation(csv_text.encode("utf-8"))
    report = rio.build_report(
        "gen",
        loaded,
        elapsed,
        seed=seed,
        spec=spec,
        output={"csv": str(out_path), "sidecar": str(sidecar_path)},
    )
    _emit(
        report,
        as_json,
        [
            f"wrote {out_path} ({len(rel)} tuples, {len(rel.scheme)} attributes)",
            f"sidecar {sidecar_path}",
        ],
    )


main = cli

if __name__ == "__main__":
    main()
