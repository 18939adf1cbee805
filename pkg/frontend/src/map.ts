/** Choropleth rendering with pan/zoom and hover details, plus the small
 * inset map the summary tab uses to highlight one cluster's members. */

import { HIGHLIGHT, NEUTRAL } from "./colors.js";
import { clear, el, formatProportion, svg } from "./dom.js";
import { featureBounds, featurePath, makeProjector } from "./geometry.js";
import type { MapViewModel } from "./viewmodel.js";
import type { Viewport } from "./state.js";

const WIDTH = 760;
const HEIGHT = 560;

export interface MapCallbacks {
  onViewport(viewport: Viewport): void;
}

export function renderMap(
  container: Element,
  view: MapViewModel,
  viewport: Viewport,
  callbacks: MapCallbacks,
): void {
  clear(container);
  if (view.regions.length === 0) {
    container.append(el("p", { class: "map-empty" }, "No geometry available for this run."));
    renderMissingList(container, view);
    return;
  }

  const root = svg("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "choropleth",
    role: "img",
    "aria-label": "cluster map",
  }) as SVGSVGElement;
  const layer = svg("g", {
    transform: `translate(${viewport.x},${viewport.y}) scale(${viewport.scale})`,
  });
  root.append(layer);

  const bounds = featureBounds(view.regions.map((r) => r.feature));
  const project = makeProjector(bounds, WIDTH, HEIGHT);
  const tooltip = el("div", { class: "tooltip hidden" });

  for (const region of view.regions) {
    const path = svg("path", {
      d: featurePath(region.feature, project),
      fill: region.fill,
      class: "region",
      "data-id": region.id,
      "data-label": region.label,
    });
    path.addEventListener("mousemove", (event) => {
      tooltip.classList.remove("hidden");
      tooltip.textContent =
        `${region.id} ${region.name} — ${region.label}, ` +
        `proportion ${formatProportion(region.domainValue)}`;
      const rect = container.getBoundingClientRect();
      tooltip.style.left = `${(event as MouseEvent).clientX - rect.left + 12}px`;
      tooltip.style.top = `${(event as MouseEvent).clientY - rect.top + 12}px`;
    });
    path.addEventListener("mouseleave", () => tooltip.classList.add("hidden"));
    layer.append(path);
  }

  attachPanZoom(root, viewport, callbacks);

  const legend = el("ul", { class: "map-legend" });
  for (const entry of view.legend) {
    const item = el("li", {});
    const swatch = el("span", { class: "swatch" });
    swatch.style.background = entry.color;
    item.append(swatch, el("span", {}, entry.label));
    legend.append(item);
  }

  const frame = el("div", { class: "map-frame" });
  frame.append(root, tooltip);
  container.append(frame, legend);
  renderMissingList(container, view);
}

function renderMissingList(container: Element, view: MapViewModel): void {
  if (view.missingGeometry.length === 0) return;
  const box = el("div", { class: "missing-geometry" });
  box.append(el("h3", {}, "No geometry"));
  const list = el("ul", {});
  for (const entry of view.missingGeometry) {
    list.append(el("li", { "data-id": entry.id }, `${entry.id} ${entry.name} (${entry.label})`));
  }
  box.append(list);
  container.append(box);
}

function attachPanZoom(root: SVGSVGElement, start: Viewport, callbacks: MapCallbacks): void {
  let viewport = { ...start };
  const layer = root.querySelector("g")!;

  const apply = () => {
    layer.setAttribute(
      "transform",
      `translate(${viewport.x},${viewport.y}) scale(${viewport.scale})`,
    );
  };

  root.addEventListener("wheel", (event) => {
    event.preventDefault();
    const factor = (event as WheelEvent).deltaY < 0 ? 1.2 : 1 / 1.2;
    const scale = Math.min(40, Math.max(0.25, viewport.scale * factor));
    const rect = root.getBoundingClientRect();
    const px = ((event as WheelEvent).clientX - rect.left) * (WIDTH / rect.width);
    const py = ((event as WheelEvent).clientY - rect.top) * (HEIGHT / rect.height);
    // keep the point under the cursor fixed while zooming
    viewport = {
      scale,
      x: px - ((px - viewport.x) / viewport.scale) * scale,
      y: py - ((py - viewport.y) / viewport.scale) * scale,
    };
    apply();
    callbacks.onViewport(viewport);
  });

  let dragging: { startX: number; startY: number; baseX: number; baseY: number } | null = null;
  root.addEventListener("pointerdown", (event) => {
    dragging = {
      startX: (event as PointerEvent).clientX,
      startY: (event as PointerEvent).clientY,
      baseX: viewport.x,
      baseY: viewport.y,
    };
    root.setPointerCapture((event as PointerEvent).pointerId);
  });
  root.addEventListener("pointermove", (event) => {
    if (!dragging) return;
    const rect = root.getBoundingClientRect();
    const dx = ((event as PointerEvent).clientX - dragging.startX) * (WIDTH / rect.width);
    const dy = ((event as PointerEvent).clientY - dragging.startY) * (HEIGHT / rect.height);
    viewport = { ...viewport, x: dragging.baseX + dx, y: dragging.baseY + dy };
    apply();
  });
  root.addEventListener("pointerup", () => {
    if (dragging) callbacks.onViewport(viewport);
    dragging = null;
  });
}

/** Static inset map: the selected cluster's members highlighted, rest neutral. */
export function renderInset(container: Element, view: MapViewModel, memberIds: string[]): void {
  clear(container);
  if (view.regions.length === 0) return;
  const members = new Set(memberIds);
  const root = svg("svg", { viewBox: "0 0 300 240", class: "inset", role: "img", "aria-label": "cluster location" });
  const bounds = featureBounds(view.regions.map((r) => r.feature));
  const project = makeProjector(bounds, 300, 240, 6);
  for (const region of view.regions) {
    root.append(
      svg("path", {
        d: featurePath(region.feature, project),
        fill: members.has(region.id) ? HIGHLIGHT : NEUTRAL,
        class: "region",
        "data-id": region.id,
      }),
    );
  }
  container.append(root);
}
