#!/usr/bin/env python3
"""Generate the bundled synthetic dataset: 56 grid regions plus 2 islands.

Regions sit on an 8x7 grid with 4-neighbour contiguity. Each region gets a
latent vulnerability tier that drives its domain proportions (4 log-scale
bands), demographics, IRSD decile and remoteness mix, so the bundled data has
recoverable cluster structure. A few percent of cells are blanked at random
(all imputable from neighbours); the two islands have no edges and keep
missing fields, so the pipeline excludes exactly those two. One grid region
is deliberately absent from the GeoJSON to exercise the dashboard's
"no geometry" path.

Deterministic: re-running reproduces the committed files byte for byte.
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "data"

GRID_COLS = 8
GRID_ROWS = 7
N_GRID = GRID_COLS * GRID_ROWS
ISLANDS = 2
SEED = 20180601  # census year + collection month, purely a fixed seed

DOMAINS = ("physical", "social", "emotional", "language", "communication", "vuln1", "vuln2")
DEMOGRAPHICS = ("preschool", "indigenous", "english", "australia")
REMOTENESS = ("Major City", "Inner Regional", "Outer Regional", "Remote", "Very Remote")

TIER_PROBS = (0.25, 0.35, 0.25, 0.15)
TIER_CENTERS = (0.05, 0.10, 0.17, 0.28)  # domain proportion bands, least to most vulnerable
REMOTENESS_BY_TIER = (
    (0.75, 0.15, 0.08, 0.01, 0.01),
    (0.55, 0.25, 0.15, 0.03, 0.02),
    (0.35, 0.30, 0.25, 0.05, 0.05),
    (0.10, 0.25, 0.35, 0.10, 0.20),
)

FIRST = ("Banksia", "Cooran", "Marlow", "Tallow", "Yarrin", "Pelican", "Ironbark", "Saltbush")
SECOND = ("Creek", "Downs", "Ridge", "Plains", "Bay", "Heights", "Crossing")


def main() -> int:
    rng = np.random.default_rng(SEED)
    n_total = N_GRID + ISLANDS

    tiers = rng.choice(4, size=n_total, p=TIER_PROBS)
    rows = []
    for i in range(n_total):
        tier = int(tiers[i])
        record = {
            "id": f"SY{i + 1:03d}",
            "name": f"{FIRST[i % len(FIRST)]} {SECOND[(i // len(FIRST)) % len(SECOND)]} {i + 1}",
            "child_count": int(rng.poisson(120)),
        }
        for domain in DOMAINS:
            center = TIER_CENTERS[tier] * (1.35 if domain == "vuln1" else 1.0)
            value = center * float(np.exp(rng.normal(0.0, 0.10)))
            record[domain] = round(min(max(value, 0.004), 0.95), 4)
        record["preschool"] = round(float(np.clip(rng.normal(0.92 - 0.05 * tier, 0.05), 0.3, 1.0)), 4)
        record["indigenous"] = round(float(np.clip(rng.normal(0.05 + 0.09 * tier, 0.06), 0.0, 1.0)), 4)
        record["english"] = round(float(np.clip(rng.normal(0.90 - 0.06 * tier, 0.08), 0.05, 1.0)), 4)
        record["australia"] = round(float(np.clip(rng.normal(0.87, 0.05), 0.4, 1.0)), 4)
        record["irsd"] = int(np.clip(round(rng.normal(8.0 - 2.1 * tier, 1.4)), 1, 10))
        record["remoteness"] = REMOTENESS[int(rng.choice(5, p=REMOTENESS_BY_TIER[tier]))]
        rows.append(record)

    # Blank ~4% of grid cells per imputable column; islands lose three fields
    # each and have no neighbours, so they stay unresolved.
    columns = list(DOMAINS + DEMOGRAPHICS) + ["irsd", "remoteness"]
    for column in columns:
        for i in np.where(rng.random(N_GRID) < 0.04)[0]:
            rows[i][column] = ""
    for i in (N_GRID, N_GRID + 1):
        for column in ("physical", "irsd", "remoteness"):
            rows[i][column] = ""

    header = ["id", "name", "child_count", *DOMAINS, *DEMOGRAPHICS, "irsd", "remoteness"]
    OUT.mkdir(exist_ok=True)
    with open(OUT / "synthetic_regions.csv", "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)

    edges = []
    for i in range(N_GRID):
        row, col = divmod(i, GRID_COLS)
        if col + 1 < GRID_COLS:
            edges.append((rows[i]["id"], rows[i + 1]["id"]))
        if row + 1 < GRID_ROWS:
            edges.append((rows[i]["id"], rows[i + GRID_COLS]["id"]))
    with open(OUT / "synthetic_adjacency.txt", "w") as f:
        f.write("# contiguity edges, one per line; islands SY057/SY058 have none\n")
        for a, b in edges:
            f.write(f"{a},{b}\n")

    features = []
    for i, record in enumerate(rows):
        if record["id"] == "SY041":
            continue  # deliberately missing geometry
        if i < N_GRID:
            row, col = divmod(i, GRID_COLS)
            x, y = float(col), float(-row)
        else:
            x, y = float(GRID_COLS + 2 + 2 * (i - N_GRID)), -2.0
        ring = [[x, y], [x + 1, y], [x + 1, y - 1], [x, y - 1], [x, y]]
        features.append(
            {
                "type": "Feature",
                "properties": {"id": record["id"], "name": record["name"]},
                "geometry": {"type": "Polygon", "coordinates": [ring]},
            }
        )
    with open(OUT / "synthetic_regions.geojson", "w") as f:
        json.dump({"type": "FeatureCollection", "features": features}, f, indent=2, sort_keys=True)
        f.write("\n")

    # Self-check: the pipeline must impute every grid cell and drop only the islands.
    sys.path.insert(0, str(ROOT / "src"))
    from vulnclust.impute import impute_dataset
    from vulnclust.ingest import parse_adjacency, parse_dataset

    table = parse_dataset((OUT / "synthetic_regions.csv").read_bytes())
    dataset = parse_adjacency((OUT / "synthetic_adjacency.txt").read_bytes(), table)
    imputed, report = impute_dataset(dataset)
    assert report.excluded == ("SY057", "SY058"), report.excluded
    assert len(imputed.regions) == N_GRID, len(imputed.regions)
    print(f"wrote {n_total} regions, {len(edges)} edges, {len(features)} geometries -> {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
