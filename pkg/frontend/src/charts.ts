/** SVG renderers for the summary tab: box plots and pie charts.
 * All numbers shown as text come from the view model's displayed* fields,
 * which are verbatim API values. */

import { arcPath } from "./geometry.js";
import { clear, el, formatPercent, formatProportion, svg } from "./dom.js";
import type { BoxPlotSpec, PieSpec } from "./viewmodel.js";

const BOX_WIDTH = 190;
const BOX_HEIGHT = 150;
const PLOT_TOP = 12;
const PLOT_BOTTOM = BOX_HEIGHT - 24;

function yScale(spec: BoxPlotSpec): (v: number) => number {
  const lo = Math.min(spec.whiskerLow, ...spec.outliers, spec.q1);
  const hi = Math.max(spec.whiskerHigh, ...spec.outliers, spec.q3);
  const span = Math.max(hi - lo, 1e-9);
  return (v) => PLOT_BOTTOM - ((v - lo) / span) * (PLOT_BOTTOM - PLOT_TOP);
}

export function renderBoxPlot(container: Element, spec: BoxPlotSpec): void {
  const figure = el("figure", { class: "box-plot" });
  const caption = el("figcaption");
  caption.append(
    el("span", { class: "variable" }, spec.variable),
    el("span", { class: "mean", "data-role": "displayed-mean" }, `mean ${formatProportion(spec.displayedMean)}`),
  );

  const plot = svg("svg", {
    viewBox: `0 0 ${BOX_WIDTH} ${BOX_HEIGHT}`,
    role: "img",
    "aria-label": `${spec.variable} distribution`,
  });
  const y = yScale(spec);
  const cx = BOX_WIDTH / 2;
  const half = 34;

  if (spec.values.length === 1) {
    // Single member: the plot degenerates to one tick.
    plot.append(
      svg("line", {
        x1: String(cx - half), x2: String(cx + half),
        y1: String(y(spec.median)), y2: String(y(spec.median)),
        class: "median",
      }),
    );
  } else {
    plot.append(
      svg("line", { x1: String(cx), x2: String(cx), y1: String(y(spec.whiskerLow)), y2: String(y(spec.q1)), class: "whisker" }),
      svg("line", { x1: String(cx), x2: String(cx), y1: String(y(spec.q3)), y2: String(y(spec.whiskerHigh)), class: "whisker" }),
      svg("line", { x1: String(cx - half / 2), x2: String(cx + half / 2), y1: String(y(spec.whiskerLow)), y2: String(y(spec.whiskerLow)), class: "whisker" }),
      svg("line", { x1: String(cx - half / 2), x2: String(cx + half / 2), y1: String(y(spec.whiskerHigh)), y2: String(y(spec.whiskerHigh)), class: "whisker" }),
      svg("rect", {
        x: String(cx - half),
        y: String(y(spec.q3)),
        width: String(2 * half),
        height: String(Math.max(y(spec.q1) - y(spec.q3), 0.5)),
        class: "box",
      }),
      svg("line", { x1: String(cx - half), x2: String(cx + half), y1: String(y(spec.median)), y2: String(y(spec.median)), class: "median" }),
    );
    for (const outlier of spec.outliers) {
      plot.append(svg("circle", { cx: String(cx), cy: String(y(outlier)), r: "2.5", class: "outlier" }));
    }
  }

  figure.append(plot, caption);
  container.append(figure);
}

export function renderPie(container: Element, spec: PieSpec): void {
  const figure = el("figure", { class: "pie" });
  const plot = svg("svg", { viewBox: "0 0 120 120", role: "img", "aria-label": spec.title });
  for (const slice of spec.slices) {
    if (slice.share <= 0) continue;
    const path = svg("path", { d: arcPath(60, 60, 52, slice.startAngle, slice.endAngle), fill: slice.color });
    path.append(svg("title"));
    path.querySelector("title")!.textContent = `${slice.label}: ${formatPercent(slice.share)}`;
    plot.append(path);
  }
  const legend = el("ul", { class: "pie-legend" });
  for (const slice of spec.slices) {
    if (slice.share <= 0) continue;
    const item = el("li", { "data-slice": slice.label });
    const swatch = el("span", { class: "swatch" });
    swatch.style.background = slice.color;
    item.append(swatch, el("span", {}, `${slice.label} `), el("span", { "data-role": "share" }, formatPercent(slice.share)));
    legend.append(item);
  }
  figure.append(el("figcaption", {}, spec.title), plot, legend);
  container.append(figure);
}

export function renderCharts(
  boxContainer: Element,
  pieContainer: Element,
  boxes: BoxPlotSpec[],
  pies: PieSpec[],
): void {
  clear(boxContainer);
  clear(pieContainer);
  for (const box of boxes) renderBoxPlot(boxContainer, box);
  for (const pie of pies) renderPie(pieContainer, pie);
}
