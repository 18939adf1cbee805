/** Summary/map view-model tests against payloads captured from the golden
 * artifact, plus a divergence probe proving displayed numbers are API fields,
 * not client-side recomputations. */

import { describe, expect, it } from "vitest";
import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { ClusterPayload, DomainData, GeoJsonPayload, SelectionPayload } from "../src/api.js";
import { BOX_VARIABLES, buildBoxPlot, buildMapView, buildSummary, quartiles } from "../src/viewmodel.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, name), "utf-8")) as T;
}

const clusterC1 = fixture<ClusterPayload>("cluster_physical_C1.json");
const selection = fixture<SelectionPayload>("selection_physical.json");
const geojson = fixture<GeoJsonPayload>("geojson_physical.json");

function domainData(): DomainData {
  const clusters: Record<string, ClusterPayload> = {};
  for (const label of ["C1", "C2", "C3", "C4"]) {
    clusters[label] = fixture<ClusterPayload>(`cluster_physical_${label}.json`);
  }
  return { selection, clusters, geojson };
}

describe("buildSummary on golden payloads", () => {
  it("copies displayed statistics verbatim from API fields", () => {
    const summary = buildSummary(clusterC1);
    expect(summary.label).toBe(clusterC1.label);
    expect(summary.n).toBe(clusterC1.n);
    expect(summary.domainMean).toBe(clusterC1.domain_mean);
    expect(summary.domainRange).toEqual(clusterC1.domain_range);
    for (const box of summary.boxes) {
      expect(box.displayedMean).toBe(clusterC1.demographics[box.variable].mean);
      expect(box.displayedRange).toEqual(clusterC1.demographics[box.variable].range);
    }
    const remotenessShares = summary.remotenessPie.slices.map((s) => [s.label, s.share]);
    for (const [label, share] of remotenessShares) {
      expect(share).toBe(clusterC1.remoteness_dist[label as string]);
    }
    for (const slice of summary.irsdPie.slices) {
      expect(slice.share).toBe(clusterC1.irsd_dist[slice.label]);
    }
  });

  it("builds one box plot per demographic from member-level values", () => {
    const summary = buildSummary(clusterC1);
    expect(summary.boxes.map((b) => b.variable)).toEqual([...BOX_VARIABLES]);
    for (const box of summary.boxes) {
      expect(box.values).toHaveLength(clusterC1.n);
      expect(box.q1).toBeLessThanOrEqual(box.median);
      expect(box.median).toBeLessThanOrEqual(box.q3);
      expect(box.whiskerLow).toBeLessThanOrEqual(box.q1);
      expect(box.whiskerHigh).toBeGreaterThanOrEqual(box.q3);
    }
  });

  it("never recomputes the displayed mean from members (divergence probe)", () => {
    // A payload whose stated mean deliberately disagrees with its members:
    // the view model must show the stated field, proving zero recomputation.
    const probe: ClusterPayload = {
      ...clusterC1,
      n: 2,
      domain_mean: 0.42,
      demographics: {
        australia: { mean: 0.42, range: [0.1, 0.2] },
        english: { mean: 0.42, range: [0.1, 0.2] },
        indigenous: { mean: 0.42, range: [0.1, 0.2] },
        preschool: { mean: 0.42, range: [0.1, 0.2] },
      },
      member_ids: ["X1", "X2"],
      members: [
        { id: "X1", name: "A", domain_value: 0.1, australia: 0.1, english: 0.1, indigenous: 0.1, preschool: 0.1, irsd: 5, remoteness: "Remote" },
        { id: "X2", name: "B", domain_value: 0.2, australia: 0.2, english: 0.2, indigenous: 0.2, preschool: 0.2, irsd: 5, remoteness: "Remote" },
      ],
    };
    const summary = buildSummary(probe);
    expect(summary.domainMean).toBe(0.42);
    for (const box of summary.boxes) {
      expect(box.displayedMean).toBe(0.42); // member average would be 0.15
    }
  });

  it("degenerates cleanly for a single-member cluster", () => {
    const single: ClusterPayload = {
      ...clusterC1,
      n: 1,
      member_ids: [clusterC1.member_ids[0]],
      members: [clusterC1.members[0]],
    };
    const summary = buildSummary(single);
    for (const box of summary.boxes) {
      expect(box.q1).toBe(box.median);
      expect(box.median).toBe(box.q3);
      expect(box.outliers).toEqual([]);
    }
  });

  it("pie slice angles cover exactly the stated shares", () => {
    const summary = buildSummary(clusterC1);
    for (const pie of [summary.remotenessPie, summary.irsdPie]) {
      for (const slice of pie.slices) {
        expect(slice.endAngle - slice.startAngle).toBeCloseTo(slice.share * 2 * Math.PI, 12);
      }
      const total = pie.slices.reduce((acc, s) => acc + (s.endAngle - s.startAngle), 0);
      expect(total).toBeCloseTo(2 * Math.PI, 6);
    }
  });
});

describe("quartiles and whiskers", () => {
  it("computes linear-interpolation quartiles", () => {
    expect(quartiles([1, 2, 3, 4])).toEqual({ q1: 1.75, median: 2.5, q3: 3.25 });
    expect(quartiles([5])).toEqual({ q1: 5, median: 5, q3: 5 });
  });

  it("marks Tukey outliers beyond 1.5 IQR", () => {
    const members = [0.1, 0.11, 0.12, 0.13, 0.14, 0.9].map((v, i) => ({
      id: `m${i}`, name: "", domain_value: v,
      australia: v, english: v, indigenous: v, preschool: v, irsd: 5, remoteness: "Remote",
    }));
    const box = buildBoxPlot("australia", members, 0.25, [0.1, 0.9]);
    expect(box.outliers).toEqual([0.9]);
    expect(box.whiskerHigh).toBeLessThan(0.9);
  });
});

describe("buildMapView on golden payloads", () => {
  it("colors every region by its cluster and legend spans C1..Ck", () => {
    const view = buildMapView(domainData());
    expect(view.k).toBe(4);
    expect(view.legend.map((l) => l.label)).toEqual(["C1", "C2", "C3", "C4"]);
    const byLabel = new Map(view.legend.map((l) => [l.label, l.color]));
    for (const region of view.regions) {
      expect(region.fill).toBe(byLabel.get(region.label));
    }
  });

  it("lists clustered regions that lack geometry", () => {
    const view = buildMapView(domainData());
    // SY041 is deliberately absent from the bundled GeoJSON.
    expect(view.missingGeometry.map((m) => m.id)).toContain("SY041");
    const mapped = new Set(view.regions.map((r) => r.id));
    for (const missing of view.missingGeometry) {
      expect(mapped.has(missing.id)).toBe(false);
    }
  });

  it("covers every clustered member exactly once (map + missing list)", () => {
    const data = domainData();
    const view = buildMapView(data);
    const total = Object.values(data.clusters).reduce((acc, c) => acc + c.n, 0);
    expect(view.regions.length + view.missingGeometry.length).toBe(total);
  });
});
