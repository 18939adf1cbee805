"""Fill missing region values from contiguous neighbours, then drop what remains.

Numeric fields take the arithmetic mean of non-missing neighbour values;
categorical fields take the neighbourhood mode. Imputation runs in synchronous
rounds so chains of mutually-missing neighbours resolve: a value filled in
round r feeds round r+1, up to :data:`ROUND_LIMIT` rounds. Regions that still
have missing fields afterwards (isolated islands, exhausted chains) are
excluded from the dataset.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from typing import Callable

from .ingest import (
    CATEGORICAL_FIELDS,
    DEMOGRAPHICS,
    DOMAINS,
    PROPORTION_FIELDS,
    Dataset,
    Region,
    Remoteness,
)

ROUND_LIMIT = 10


@dataclass(frozen=True)
class FilledCell:
    region_id: str
    field: str
    value: float | int | Remoteness
    neighbor_count: int
    round: int

    def to_json(self) -> dict:
        value = self.value.value if isinstance(self.value, Remoteness) else self.value
        return {
            "region_id": self.region_id,
            "field": self.field,
            "value": value,
            "neighbor_count": self.neighbor_count,
            "round": self.round,
        }


@dataclass(frozen=True)
class ImputationReport:
    filled: tuple[FilledCell, ...] = ()
    excluded: tuple[str, ...] = ()
    unresolved: tuple[tuple[str, str], ...] = ()

    def merged(self, other: "ImputationReport") -> "ImputationReport":
        return ImputationReport(
            self.filled + other.filled,
            self.excluded + other.excluded,
            self.unresolved + other.unresolved,
        )

    def to_json(self) -> dict:
        return {
            "filled": [cell.to_json() for cell in self.filled],
            "excluded": list(self.excluded),
            "unresolved": [list(pair) for pair in self.unresolved],
        }


def _get_field(region: Region, field: str):
    if field in DOMAINS:
        return region.domain_props[field]
    if field in DEMOGRAPHICS:
        return region.demo_props[field]
    if field == "irsd":
        return region.irsd
    if field == "remoteness":
        return region.remoteness
    raise ValueError(f"unknown field {field!r}")


def _with_field(region: Region, field: str, value) -> Region:
    if field in DOMAINS:
        return replace(region, domain_props={**region.domain_props, field: value})
    if field in DEMOGRAPHICS:
        return replace(region, demo_props={**region.demo_props, field: value})
    if field == "irsd":
        return replace(region, irsd=value)
    return replace(region, remoteness=value)


def _impute_field(dataset: Dataset, field: str, pick: Callable[[list], object]) -> tuple[Dataset, ImputationReport]:
    values = {r.id: _get_field(r, field) for r in dataset.regions}
    filled: list[FilledCell] = []

    for round_no in range(1, ROUND_LIMIT + 1):
        # Synchronous round: every fill reads the values as of the round start.
        updates: dict[str, tuple[object, int]] = {}
        for region in dataset.regions:
            if values[region.id] is not None:
                continue
            neighbour_values = [
                values[n] for n in dataset.adjacency.neighbors(region.id) if values[n] is not None
            ]
            if neighbour_values:
                updates[region.id] = (pick(neighbour_values), len(neighbour_values))
        if not updates:
            break
        for region_id, (value, count) in updates.items():
            values[region_id] = value
            filled.append(FilledCell(region_id, field, value, count, round_no))

    unresolved = tuple((r.id, field) for r in dataset.regions if values[r.id] is None)
    if filled:
        regions = tuple(
            _with_field(r, field, values[r.id]) if _get_field(r, field) is None else r
            for r in dataset.regions
        )
        dataset = replace(dataset, regions=regions)
    return dataset, ImputationReport(filled=tuple(filled), unresolved=unresolved)


def impute_numeric(dataset: Dataset, field: str) -> tuple[Dataset, ImputationReport]:
    """Fill missing values of one proportion field with neighbour means."""
    if field not in PROPORTION_FIELDS:
        raise ValueError(f"{field!r} is not a proportion field")
    return _impute_field(dataset, field, lambda vs: sum(vs) / len(vs))


def _modal(values: list, ordinal: Callable) -> object:
    counts = Counter(values)
    top = max(counts.values())
    return min((v for v, c in counts.items() if c == top), key=ordinal)


def impute_categorical(dataset: Dataset, field: str) -> tuple[Dataset, ImputationReport]:
    """Fill missing irsd/remoteness with the neighbourhood mode.

    Ties break to the smallest canonical ordinal: the lowest IRSD decile, or
    the least remote category.
    """
    if field not in CATEGORICAL_FIELDS:
        raise ValueError(f"{field!r} is not a categorical field")
    if field == "irsd":
        return _impute_field(dataset, field, lambda vs: _modal(vs, ordinal=int))
    return _impute_field(dataset, field, lambda vs: _modal(vs, ordinal=lambda r: r.ordinal))


def exclude_unresolvable(dataset: Dataset, report: ImputationReport) -> tuple[Dataset, ImputationReport]:
    """Drop regions that still have missing fields, and their incident edges."""
    excluded = tuple(r.id for r in dataset.regions if r.missing_fields())
    if not excluded:
        return dataset, report
    kept = tuple(r for r in dataset.regions if not r.missing_fields())
    dataset = replace(dataset, regions=kept, adjacency=dataset.adjacency.without(excluded))
    return dataset, replace(report, excluded=report.excluded + excluded)


def impute_dataset(dataset: Dataset) -> tuple[Dataset, ImputationReport]:
    """Run the full schedule: every field independently, then exclusion."""
    report = ImputationReport()
    for field in PROPORTION_FIELDS:
        dataset, partial = impute_numeric(dataset, field)
        report = report.merged(partial)
    for field in CATEGORICAL_FIELDS:
        dataset, partial = impute_categorical(dataset, field)
        report = report.merged(partial)
    return exclude_unresolvable(dataset, report)
