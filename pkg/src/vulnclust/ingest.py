"""Region dataset and contiguity graph: parsing, validation, canonical CSV output.

The canonical CSV schema is one row per small-area region with columns
``id, name, child_count``, the seven vulnerability proportions, the four
demographic proportions, ``irsd`` and ``remoteness``. Empty cells mean
"missing". The adjacency file lists one ``idA,idB`` edge per line.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping

DOMAINS = ("physical", "social", "emotional", "language", "communication", "vuln1", "vuln2")
DEMOGRAPHICS = ("preschool", "indigenous", "english", "australia")
PROPORTION_FIELDS = DOMAINS + DEMOGRAPHICS
CATEGORICAL_FIELDS = ("irsd", "remoteness")
IMPUTABLE_FIELDS = PROPORTION_FIELDS + CATEGORICAL_FIELDS

REQUIRED_COLUMNS = ("id", "name", "child_count") + PROPORTION_FIELDS + CATEGORICAL_FIELDS


class Remoteness(Enum):
    """Accessibility categories, ordered least to most remote."""

    MAJOR_CITY = "Major City"
    INNER_REGIONAL = "Inner Regional"
    OUTER_REGIONAL = "Outer Regional"
    REMOTE = "Remote"
    VERY_REMOTE = "Very Remote"

    @property
    def ordinal(self) -> int:
        return _REMOTENESS_ORDER[self]


_REMOTENESS_ORDER = {member: i for i, member in enumerate(Remoteness)}
_REMOTENESS_BY_LABEL = {member.value.lower(): member for member in Remoteness}


class ParseError(ValueError):
    """Fatal ingestion problem, located by row and column where known."""

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        self.row = row
        self.column = column
        if row is not None and column is not None:
            message += f" (row {row}, column {column!r})"
        elif row is not None:
            message += f" (row {row})"
        super().__init__(message)


class DuplicateId(ParseError):
    pass


class OutOfRangeProportion(ParseError):
    pass


class BadIrsd(ParseError):
    pass


class UnknownRemotenessLabel(ParseError):
    pass


class MalformedRow(ParseError):
    pass


class UnknownRegionId(ParseError):
    pass


class SelfLoop(ParseError):
    pass


@dataclass(frozen=True)
class Region:
    """One small-area record. ``None`` marks a missing value."""

    id: str
    name: str
    child_count: int
    domain_props: Mapping[str, float | None]
    demo_props: Mapping[str, float | None]
    irsd: int | None
    remoteness: Remoteness | None

    def proportion(self, field_id: str) -> float | None:
        if field_id in self.domain_props:
            return self.domain_props[field_id]
        return self.demo_props[field_id]

    def missing_fields(self) -> tuple[str, ...]:
        missing = [f for f in PROPORTION_FIELDS if self.proportion(f) is None]
        if self.irsd is None:
            missing.append("irsd")
        if self.remoteness is None:
            missing.append("remoteness")
        return tuple(missing)


@dataclass(frozen=True)
class Provenance:
    data_file: str
    adjacency_file: str | None = None
    ingested_at: str = ""
    extra_columns: tuple[str, ...] = ()


@dataclass(frozen=True)
class AdjacencyGraph:
    """Symmetric contiguity relation over a fixed node set, no self-loops."""

    nodes: tuple[str, ...]
    neighbor_map: Mapping[str, frozenset[str]]

    @classmethod
    def from_edges(cls, nodes: Iterable[str], edges: Iterable[tuple[str, str]]) -> "AdjacencyGraph":
        node_tuple = tuple(nodes)
        node_set = set(node_tuple)
        neighbor_sets: dict[str, set[str]] = {node: set() for node in node_tuple}
        for a, b in edges:
            if a not in node_set:
                raise UnknownRegionId(f"edge endpoint {a!r} is not a known region id")
            if b not in node_set:
                raise UnknownRegionId(f"edge endpoint {b!r} is not a known region id")
            if a == b:
                raise SelfLoop(f"self-loop on region {a!r}")
            neighbor_sets[a].add(b)
            neighbor_sets[b].add(a)
        return cls(node_tuple, {node: frozenset(ns) for node, ns in neighbor_sets.items()})

    def neighbors(self, region_id: str) -> tuple[str, ...]:
        return tuple(sorted(self.neighbor_map[region_id]))

    def degree(self, region_id: str) -> int:
        return len(self.neighbor_map[region_id])

    def edges(self) -> tuple[tuple[str, str], ...]:
        seen = set()
        for node in self.nodes:
            for other in self.neighbor_map[node]:
                pair = (node, other) if node < other else (other, node)
                seen.add(pair)
        return tuple(sorted(seen))

    def without(self, removed: Iterable[str]) -> "AdjacencyGraph":
        gone = set(removed)
        kept = tuple(n for n in self.nodes if n not in gone)
        return AdjacencyGraph(
            kept,
            {n: frozenset(self.neighbor_map[n] - gone) for n in kept},
        )


@dataclass(frozen=True)
class RegionTable:
    """Parsed region records before any adjacency is attached."""

    regions: tuple[Region, ...]
    provenance: Provenance

    @cached_property
    def by_id(self) -> Mapping[str, Region]:
        return {r.id: r for r in self.regions}

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.regions)


@dataclass(frozen=True)
class Dataset:
    """Immutable region records plus their contiguity graph."""

    regions: tuple[Region, ...]
    adjacency: AdjacencyGraph
    provenance: Provenance

    @cached_property
    def by_id(self) -> Mapping[str, Region]:
        return {r.id: r for r in self.regions}

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.regions)


@dataclass(frozen=True)
class ValidationWarning:
    kind: str
    message: str
    region_id: str | None = None
    field: str | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "message": self.message}
        if self.region_id is not None:
            out["region_id"] = self.region_id
        if self.field is not None:
            out["field"] = self.field
        return out


def _decode(data: bytes | str) -> str:
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def _parse_proportion(cell: str, row: int, column: str) -> float | None:
    cell = cell.strip()
    if cell == "":
        return None
    try:
        value = float(cell)
    except ValueError:
        raise MalformedRow(f"expected a number, got {cell!r}", row, column) from None
    if not math.isfinite(value) or not 0.0 <= value <= 1.0:
        raise OutOfRangeProportion(f"proportion {cell} outside [0, 1]", row, column)
    return value


def _parse_irsd(cell: str, row: int) -> int | None:
    cell = cell.strip()
    if cell == "":
        return None
    try:
        value = int(cell)
    except ValueError:
        raise BadIrsd(f"IRSD decile must be an integer, got {cell!r}", row, "irsd") from None
    if not 1 <= value <= 10:
        raise BadIrsd(f"IRSD decile {value} outside 1..10", row, "irsd")
    return value


def _parse_remoteness(cell: str, row: int) -> Remoteness | None:
    cell = cell.strip()
    if cell == "":
        return None
    member = _REMOTENESS_BY_LABEL.get(cell.lower())
    if member is None:
        raise UnknownRemotenessLabel(f"unknown remoteness label {cell!r}", row, "remoteness")
    return member


def parse_dataset(data: bytes | str, source_name: str = "<memory>") -> RegionTable:
    """Parse the canonical region CSV. Raises a ParseError subclass on bad input.

    Row numbers in errors are 1-based file lines (the header is row 1).
    Unknown extra columns are recorded on the provenance and surface later as
    warnings from :func:`validate`, never as errors.
    """
    reader = csv.reader(io.StringIO(_decode(data)))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedRow("empty input: missing header row", 1) from None
    header = [h.strip() for h in header]

    positions: dict[str, int] = {}
    extras: list[str] = []
    for idx, column in enumerate(header):
        if column in REQUIRED_COLUMNS:
            if column in positions:
                raise MalformedRow(f"column {column!r} appears twice in header", 1, column)
            positions[column] = idx
        else:
            extras.append(column)
    for column in REQUIRED_COLUMNS:
        if column not in positions:
            raise MalformedRow(f"missing required column {column!r}", 1, column)

    regions: list[Region] = []
    seen_ids: set[str] = set()
    for row_no, cells in enumerate(reader, start=2):
        if len(cells) != len(header):
            raise MalformedRow(
                f"expected {len(header)} cells, got {len(cells)}", row_no
            )

        def cell(column: str) -> str:
            return cells[positions[column]]

        region_id = cell("id").strip()
        if not region_id:
            raise MalformedRow("empty region id", row_no, "id")
        if region_id in seen_ids:
            raise DuplicateId(f"region id {region_id!r} already seen", row_no, "id")
        seen_ids.add(region_id)

        count_cell = cell("child_count").strip()
        try:
            child_count = int(count_cell)
        except ValueError:
            raise MalformedRow(
                f"child_count must be an integer, got {count_cell!r}", row_no, "child_count"
            ) from None
        if child_count < 0:
            raise MalformedRow(f"child_count must be nonnegative, got {child_count}", row_no, "child_count")

        regions.append(
            Region(
                id=region_id,
                name=cell("name").strip(),
                child_count=child_count,
                domain_props={f: _parse_proportion(cell(f), row_no, f) for f in DOMAINS},
                demo_props={f: _parse_proportion(cell(f), row_no, f) for f in DEMOGRAPHICS},
                irsd=_parse_irsd(cell("irsd"), row_no),
                remoteness=_parse_remoteness(cell("remoteness"), row_no),
            )
        )

    provenance = Provenance(
        data_file=source_name,
        ingested_at=datetime.now(timezone.utc).isoformat(),
        extra_columns=tuple(extras),
    )
    return RegionTable(tuple(regions), provenance)


def parse_adjacency(data: bytes | str, table: RegionTable, source_name: str = "<memory>") -> Dataset:
    """Attach the contiguity edges to a parsed region table.

    One ``idA,idB`` edge per line; blank lines and ``#`` comments are skipped.
    The symmetric closure is applied, so listing each edge once is enough.
    """
    known = set(table.ids)
    edges: list[tuple[str, str]] = []
    for line_no, raw in enumerate(_decode(data).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2 or not all(parts):
            raise MalformedRow(f"expected 'idA,idB', got {raw!r}", line_no)
        a, b = parts
        for endpoint in (a, b):
            if endpoint not in known:
                raise UnknownRegionId(f"edge endpoint {endpoint!r} is not a region id", line_no)
        if a == b:
            raise SelfLoop(f"self-loop on region {a!r}", line_no)
        edges.append((a, b))

    graph = AdjacencyGraph.from_edges(table.ids, edges)
    return Dataset(
        regions=table.regions,
        adjacency=graph,
        provenance=replace(table.provenance, adjacency_file=source_name),
    )


def validate(dataset: Dataset) -> list[ValidationWarning]:
    """Return non-fatal warnings: isolation, missing fields, duplicate names,
    unknown extra columns. Pure: never mutates the dataset."""
    warnings: list[ValidationWarning] = []
    for region in dataset.regions:
        if dataset.adjacency.degree(region.id) == 0:
            warnings.append(
                ValidationWarning(
                    "isolated_region",
                    f"region {region.id!r} has no contiguous neighbours",
                    region_id=region.id,
                )
            )
    for region in dataset.regions:
        for field_id in region.missing_fields():
            warnings.append(
                ValidationWarning(
                    "missing_field",
                    f"region {region.id!r} is missing {field_id!r}",
                    region_id=region.id,
                    field=field_id,
                )
            )
    by_name: dict[str, list[str]] = {}
    for region in dataset.regions:
        by_name.setdefault(region.name, []).append(region.id)
    for name, ids in by_name.items():
        if len(ids) > 1:
            warnings.append(
                ValidationWarning(
                    "duplicate_name",
                    f"name {name!r} shared by regions {', '.join(ids)}",
                )
            )
    for column in dataset.provenance.extra_columns:
        warnings.append(
            ValidationWarning("unknown_column", f"ignored unknown column {column!r}", field=column)
        )
    return warnings


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Remoteness):
        return value.value
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_dataset_csv(table: RegionTable | Dataset) -> str:
    """Canonical CSV writer; exact inverse of :func:`parse_dataset`."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(REQUIRED_COLUMNS)
    for region in table.regions:
        writer.writerow(
            [region.id, region.name, region.child_count]
            + [_format_cell(region.domain_props[f]) for f in DOMAINS]
            + [_format_cell(region.demo_props[f]) for f in DEMOGRAPHICS]
            + [_format_cell(region.irsd), _format_cell(region.remoteness)]
        )
    return out.getvalue()
