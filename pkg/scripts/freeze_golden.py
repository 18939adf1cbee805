#!/usr/bin/env python3
"""Regenerate the committed golden artifact from the bundled synthetic data.

Run only when the pipeline's output format or the bundled dataset changes on
purpose; the end-to-end determinism tests compare fresh runs against this
directory byte for byte (timestamp aside). Audit the diff before committing.
"""

from __future__ import annotations

import shutil
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from vulnclust.pipeline import PipelineConfig, run_pipeline, write_artifact  # noqa: E402

GOLDEN = ROOT / "tests" / "golden"


def main() -> int:
    if GOLDEN.exists():
        shutil.rmtree(GOLDEN)
    artifact = run_pipeline(
        ROOT / "data" / "synthetic_regions.csv",
        ROOT / "data" / "synthetic_adjacency.txt",
        PipelineConfig(),
        ROOT / "data" / "synthetic_regions.geojson",
    )
    run_dir = write_artifact(artifact, GOLDEN)
    files = sorted(p.relative_to(GOLDEN) for p in run_dir.rglob("*") if p.is_file())
    print(f"froze {len(files)} files under {run_dir}")
    for f in files:
        print(" ", f)
    return 0


if __name__ == "__main__":
    sys.exit(main())
