/** Pure view-model builders: everything rendered is a function of (state, fetched data).
 *
 * Displayed statistics (means, shares, counts) are copied verbatim from API
 * fields, never recomputed client-side. The only client-side arithmetic is
 * plot geometry: box-plot quartiles/whiskers drawn over the member-level
 * values the API provides, pie arc angles for the API's shares, and map
 * projection.
 */

import type { ClusterPayload, DomainData, GeoFeature, MemberRecord } from "./api.js";
import { colorForLabel, irsdColor, remotenessColor, remotenessOrder } from "./colors.js";

export interface BoxPlotSpec {
  variable: string;
  /** Displayed next to the plot; taken from the API's demographics mean field. */
  displayedMean: number;
  displayedRange: [number, number];
  /** Member-level values from the API, used only to draw the distribution. */
  values: number[];
  q1: number;
  median: number;
  q3: number;
  whiskerLow: number;
  whiskerHigh: number;
  outliers: number[];
}

export interface PieSlice {
  label: string;
  /** Share straight from the API distribution field. */
  share: number;
  startAngle: number;
  endAngle: number;
  color: string;
}

export interface PieSpec {
  title: string;
  slices: PieSlice[];
}

export interface SummaryViewModel {
  label: string;
  n: number;
  domain: string;
  domainMean: number;
  domainRange: [number, number];
  boxes: BoxPlotSpec[];
  remotenessPie: PieSpec;
  irsdPie: PieSpec;
  memberIds: string[];
}

export interface MapRegion {
  id: string;
  name: string;
  label: string;
  domainValue: number;
  fill: string;
  feature: GeoFeature;
}

export interface MapViewModel {
  k: number;
  regions: MapRegion[];
  /** Clustered regions with no geometry in the GeoJSON; listed below the map. */
  missingGeometry: { id: string; name: string; label: string }[];
  legend: { label: string; color: string }[];
}

export const BOX_VARIABLES = ["australia", "english", "indigenous", "preschool"] as const;

/** Linear-interpolation quartiles (type 7) over an ascending copy of values. */
export function quartiles(values: number[]): { q1: number; median: number; q3: number } {
  const sorted = [...values].sort((a, b) => a - b);
  const at = (p: number): number => {
    const position = (sorted.length - 1) * p;
    const index = Math.floor(position);
    const frac = position - index;
    return frac === 0
      ? sorted[index]
      : sorted[index] + (sorted[index + 1] - sorted[index]) * frac;
  };
  return { q1: at(0.25), median: at(0.5), q3: at(0.75) };
}

/** Tukey box: whiskers at the most extreme values within 1.5 IQR of the box. */
export function buildBoxPlot(
  variable: string,
  members: MemberRecord[],
  displayedMean: number,
  displayedRange: [number, number],
): BoxPlotSpec {
  const values = members.map((m) => m[variable as keyof MemberRecord] as number);
  const { q1, median, q3 } = quartiles(values);
  const iqr = q3 - q1;
  const low = q1 - 1.5 * iqr;
  const high = q3 + 1.5 * iqr;
  const inside = values.filter((v) => v >= low && v <= high);
  return {
    variable,
    displayedMean,
    displayedRange,
    values,
    q1,
    median,
    q3,
    whiskerLow: Math.min(...inside),
    whiskerHigh: Math.max(...inside),
    outliers: values.filter((v) => v < low || v > high),
  };
}

export function buildPie(title: string, entries: { label: string; share: number; color: string }[]): PieSpec {
  const slices: PieSlice[] = [];
  let angle = 0;
  for (const entry of entries) {
    const sweep = entry.share * 2 * Math.PI;
    slices.push({ ...entry, startAngle: angle, endAngle: angle + sweep });
    angle += sweep;
  }
  return { title, slices };
}

export function buildSummary(cluster: ClusterPayload): SummaryViewModel {
  const boxes = BOX_VARIABLES.map((variable) =>
    buildBoxPlot(
      variable,
      cluster.members,
      cluster.demographics[variable].mean,
      cluster.demographics[variable].range,
    ),
  );
  const remotenessPie = buildPie(
    "Remoteness",
    remotenessOrder().map((category) => ({
      label: category,
      share: cluster.remoteness_dist[category] ?? 0,
      color: remotenessColor(category),
    })),
  );
  const irsdPie = buildPie(
    "IRSD decile",
    Array.from({ length: 10 }, (_, i) => ({
      label: String(i + 1),
      share: cluster.irsd_dist[String(i + 1)] ?? 0,
      color: irsdColor(i + 1),
    })),
  );
  return {
    label: cluster.label,
    n: cluster.n,
    domain: cluster.domain,
    domainMean: cluster.domain_mean,
    domainRange: cluster.domain_range,
    boxes,
    remotenessPie,
    irsdPie,
    memberIds: cluster.member_ids,
  };
}

export function buildMapView(data: DomainData): MapViewModel {
  const k = data.selection.chosen_k;
  const byId = new Map<string, GeoFeature>();
  for (const feature of data.geojson?.features ?? []) {
    byId.set(feature.properties.id, feature);
  }
  const regions: MapRegion[] = [];
  const missingGeometry: MapViewModel["missingGeometry"] = [];
  for (const label of Object.keys(data.clusters).sort()) {
    const cluster = data.clusters[label];
    const fill = colorForLabel(label, k);
    for (const member of cluster.members) {
      const feature = byId.get(member.id);
      if (feature === undefined) {
        missingGeometry.push({ id: member.id, name: member.name, label });
      } else {
        regions.push({
          id: member.id,
          name: member.name,
          label,
          domainValue: member.domain_value,
          fill,
          feature,
        });
      }
    }
  }
  missingGeometry.sort((a, b) => a.id.localeCompare(b.id));
  regions.sort((a, b) => a.id.localeCompare(b.id));
  return {
    k,
    regions,
    missingGeometry,
    legend: Array.from({ length: k }, (_, i) => ({
      label: `C${i + 1}`,
      color: colorForLabel(`C${i + 1}`, k),
    })),
  };
}
