"""CSV ingestion and serialization, partition text form, and JSON reports.

CSV files follow the RFC 4180 subset: UTF-8, comma separated, LF line
endings on output, first row is the header.  Cell values are opaque
strings; nothing is type-inferred.  The canonical text form of a partition
is a JSON array of arrays of attribute names with blocks in canonical
order, e.g. ``[["A","B"],["C","D"]]``.
"""

from __future__ import annotations

import csv
import hashlib
import io as _stdio
import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

import jsonschema

from .correlation import MincorFamily
from .decompose import AlphaTrace, Factorization
from .errors import InputError
from .partition import Partition, ids_of, mask_of
from .relation import Relation, Scheme, projection_size

STATUS_VERIFIED = "VERIFIED"
STATUS_UNVERIFIED = "UNVERIFIED"


@dataclass(frozen=True)
class CsvTable:
    """A rectangular table of strings with a unique, nonempty header."""

    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class LoadedRelation:
    """A relation plus the ingestion facts reports care about."""

    relation: Relation
    digest: str
    duplicates_dropped: int
    path: str | None = None


def read_table(data: bytes | str) -> CsvTable:
    """Parse CSV bytes or text into a validated table."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"input is not valid UTF-8: {exc}") from exc
    else:
        text = data
    records = list(csv.reader(_stdio.StringIO(text)))
    records = [tuple(r) for r in records if r]
    if not records:
        raise InputError("empty CSV input")
    header = records[0]
    if any(not name for name in header):
        raise InputError("empty attribute name in CSV header")
    if len(set(header)) != len(header):
        raise InputError("duplicate attribute names in CSV header")
    rows = records[1:]
    if not rows:
        raise InputError("CSV has a header but no data rows")
    for i, row in enumerate(rows, start=2):
        if len(row) != len(header):
            raise InputError(f"row {i} has {len(row)} cells, expected {len(header)}")
    return CsvTable(header, tuple(rows))


def table_to_relation(table: CsvTable) -> tuple[Relation, int]:
    """Intern a table into a relation; returns it with the dropped-duplicate count."""
    relation = Relation.from_rows(table.header, table.rows)
    return relation, len(table.rows) - len(relation)


def load_relation(source: str | Path | bytes) -> LoadedRelation:
    """Read a CSV file (or raw bytes) into a relation with ingestion facts."""
    if isinstance(source, bytes):
        raw = source
        path = None
    else:
        try:
            raw = Path(source).read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from exc
        path = str(source)
    table = read_table(raw)
    try:
        relation, dropped = table_to_relation(table)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return LoadedRelation(
        relation=relation,
        digest=hashlib.sha256(raw).hexdigest(),
        duplicates_dropped=dropped,
        path=path,
    )


def relation_to_csv(rel: Relation) -> str:
    """Serialize a relation: header plus label rows in canonical order, LF-terminated."""
    buf = _stdio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(rel.scheme.names)
    for row in rel.rows():
        writer.writerow(row)
    return buf.getvalue()


def block_names(scheme: Scheme, attr_mask: int) -> tuple[str, ...]:
    return tuple(scheme.attributes[i].name for i in ids_of(attr_mask))


def block_filename(scheme: Scheme, attr_mask: int) -> str:
    """Factor file name: the block's attribute names joined, plus .csv."""
    return "".join(block_names(scheme, attr_mask)) + ".csv"


def format_partition(part: Partition, scheme: Scheme) -> str:
    """Canonical text form: JSON array of arrays of attribute names."""
    return json.dumps(partition_to_names(part, scheme), separators=(",", ":"))


def partition_to_names(part: Partition, scheme: Scheme) -> list[list[str]]:
    return [list(block_names(scheme, b)) for b in part.blocks]


def parse_partition(text: str, scheme: Scheme) -> Partition:
    """Parse the canonical text form against a scheme.

    Bare attribute names are tolerated (``[[A,B],[C,D]]``) by quoting them
    before the JSON parse.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        try:
            data = json.loads(re.sub(r"[^\[\],\s\"]+", lambda m: f'"{m.group(0)}"', text))
        except json.JSONDecodeError as exc:
            raise InputError(f"partition is not valid JSON: {exc}") from exc
    if not isinstance(data, list) or not all(isinstance(b, list) for b in data):
        raise InputError("partition must be a JSON array of arrays of attribute names")
    masks = []
    seen: set[str] = set()
    for block in data:
        if not block:
            raise InputError("empty block in partition")
        for name in block:
            if not isinstance(name, str):
                raise InputError("attribute names must be strings")
            if name in seen:
                raise InputError(f"attribute {name!r} appears twice in partition")
            seen.add(name)
        try:
            masks.append(mask_of(scheme.index(n) for n in block))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    if seen != set(scheme.names):
        missing = sorted(set(scheme.names) - seen)
        raise InputError(f"partition does not cover the scheme; missing {missing}")
    return Partition.from_masks(masks)


def mincor_evidence(rel: Relation, family: MincorFamily) -> list[dict]:
    """Per-mincor evidence: block names and the two compared cardinalities."""
    out = []
    for m in family.mincors:
        union = 0
        product = 1
        blocks = []
        for pos in m:
            block = family.ground.blocks[pos]
            union |= block
            product *= projection_size(rel, block)
            blocks.append(list(block_names(rel.scheme, block)))
        out.append(
            {
                "blocks": blocks,
                "projection_tuples": projection_size(rel, union),
                "product_of_block_tuples": product,
            }
        )
    return out


def trace_to_json(rel: Relation, trace: AlphaTrace) -> list[dict]:
    return [
        {
            "from": partition_to_names(step.start, rel.scheme),
            "mincors": mincor_evidence(rel, step.family),
            "to": partition_to_names(step.result, rel.scheme),
        }
        for step in trace.steps
    ]


def factors_to_json(fz: Factorization, files: Iterable[str] | None = None) -> list[dict]:
    scheme = fz.relation.scheme
    entries = []
    names = list(files) if files is not None else [None] * len(fz.factors)
    for factor, block, fname in zip(fz.factors, fz.focus.blocks, names):
        entry: dict = {
            "attributes": list(block_names(scheme, block)),
            "tuples": len(factor),
        }
        if fname is not None:
            entry["file"] = fname
        entries.append(entry)
    return entries


def build_report(
    command: str,
    loaded: LoadedRelation,
    timing_ms: float,
    status: str = STATUS_VERIFIED,
    **sections,
) -> dict:
    """Assemble a v1 report; the caller adds command-specific sections."""
    report = {
        "schema_version": "v1",
        "command": command,
        "input": {
            "path": loaded.path,
            "digest": loaded.digest,
            "attributes": len(loaded.relation.scheme),
            "tuples": len(loaded.relation),
            "duplicates_dropped": loaded.duplicates_dropped,
        },
        "status": status,
        "timing_ms": round(timing_ms, 3),
    }
    report.update(sections)
    return report


def report_schema() -> dict:
    text = resources.files("relfocus.schemas").joinpath("report-v1.json").read_text("utf-8")
    return json.loads(text)


def validate_report(report: dict) -> None:
    """Raise jsonschema.ValidationError if the report violates the v1 schema."""
    jsonschema.validate(report, report_schema())
