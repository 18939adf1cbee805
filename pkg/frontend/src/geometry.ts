/** GeoJSON-to-SVG path plumbing: bounds, a linear projector, path strings. */

import type { GeoFeature } from "./api.js";

export interface Bounds {
  minX: number;
  minY: number;
  maxX: number;
  maxY: number;
}

type Ring = number[][];

function rings(feature: GeoFeature): Ring[] {
  const geometry = feature.geometry;
  if (geometry.type === "Polygon") {
    return geometry.coordinates as Ring[];
  }
  return (geometry.coordinates as Ring[][]).flat();
}

export function featureBounds(features: GeoFeature[]): Bounds {
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const feature of features) {
    for (const ring of rings(feature)) {
      for (const [x, y] of ring) {
        if (x < minX) minX = x;
        if (y < minY) minY = y;
        if (x > maxX) maxX = x;
        if (y > maxY) maxY = y;
      }
    }
  }
  return { minX, minY, maxX, maxY };
}

export type Projector = (x: number, y: number) => [number, number];

/** Fit bounds into width x height with padding, preserving aspect, y up -> down. */
export function makeProjector(bounds: Bounds, width: number, height: number, pad = 10): Projector {
  const spanX = Math.max(bounds.maxX - bounds.minX, 1e-9);
  const spanY = Math.max(bounds.maxY - bounds.minY, 1e-9);
  const scale = Math.min((width - 2 * pad) / spanX, (height - 2 * pad) / spanY);
  const offsetX = (width - spanX * scale) / 2;
  const offsetY = (height - spanY * scale) / 2;
  return (x, y) => [
    offsetX + (x - bounds.minX) * scale,
    offsetY + (bounds.maxY - y) * scale,
  ];
}

export function featurePath(feature: GeoFeature, project: Projector): string {
  const parts: string[] = [];
  for (const ring of rings(feature)) {
    ring.forEach(([x, y], i) => {
      const [px, py] = project(x, y);
      parts.push(`${i === 0 ? "M" : "L"}${px.toFixed(2)},${py.toFixed(2)}`);
    });
    parts.push("Z");
  }
  return parts.join("");
}

/** SVG arc path for one pie slice around (cx, cy). */
export function arcPath(
  cx: number,
  cy: number,
  radius: number,
  startAngle: number,
  endAngle: number,
): string {
  const sweep = endAngle - startAngle;
  if (sweep <= 0) return "";
  if (sweep >= 2 * Math.PI - 1e-9) {
    // full circle: two half arcs, a single arc command cannot close on itself
    const top = `${cx},${cy - radius}`;
    const bottom = `${cx},${cy + radius}`;
    return `M${top} A${radius},${radius} 0 1 1 ${bottom} A${radius},${radius} 0 1 1 ${top}Z`;
  }
  const x0 = cx + radius * Math.sin(startAngle);
  const y0 = cy - radius * Math.cos(startAngle);
  const x1 = cx + radius * Math.sin(endAngle);
  const y1 = cy - radius * Math.cos(endAngle);
  const largeArc = sweep > Math.PI ? 1 : 0;
  return `M${cx},${cy} L${x0},${y0} A${radius},${radius} 0 ${largeArc} 1 ${x1},${y1}Z`;
}
