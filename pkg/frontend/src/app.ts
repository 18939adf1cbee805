/** Wires state, fetching and rendering together.
 *
 * One in-flight load at a time: switching run/domain aborts the previous
 * fetch so a slow response can never clobber a newer selection. On fetch
 * failure an error banner appears and the stale view stays up.
 */

import { ApiClient, type DomainData, type RunSummary } from "./api.js";
import { renderCharts } from "./charts.js";
import { clear, el, formatProportion } from "./dom.js";
import { renderInset, renderMap } from "./map.js";
import {
  type ViewState,
  clampCluster,
  initialState,
  withCluster,
  withDomain,
  withRun,
  withTab,
  withViewport,
} from "./state.js";
import { buildMapView, buildSummary } from "./viewmodel.js";

interface Ui {
  banner: HTMLElement;
  runSelect: HTMLSelectElement;
  domainSelect: HTMLSelectElement;
  clusterSelect: HTMLSelectElement;
  tabButtons: HTMLElement;
  summaryTab: HTMLElement;
  mapTab: HTMLElement;
  stats: HTMLElement;
  boxes: HTMLElement;
  pies: HTMLElement;
  inset: HTMLElement;
  map: HTMLElement;
}

export class App {
  state: ViewState = initialState;
  private runs: RunSummary[] = [];
  private data: DomainData | null = null;
  private inflight: AbortController | null = null;

  constructor(private readonly api: ApiClient, private readonly ui: Ui) {}

  async start(): Promise<void> {
    this.bindControls();
    try {
      this.runs = await this.api.listRuns();
    } catch (error) {
      this.showError(`Cannot reach the results API: ${(error as Error).message}`);
      return;
    }
    if (this.runs.length === 0) {
      this.showError("The artifact store has no runs.");
      return;
    }
    const run = this.runs[0];
    this.state = withRun(this.state, run.run_id, run.config.domains[0]);
    this.fillSelect(this.ui.runSelect, this.runs.map((r) => r.run_id), run.run_id);
    this.fillSelect(this.ui.domainSelect, run.config.domains, this.state.domain!);
    await this.loadDomain();
  }

  private bindControls(): void {
    this.ui.runSelect.addEventListener("change", () => {
      const run = this.runs.find((r) => r.run_id === this.ui.runSelect.value);
      if (!run) return;
      this.state = withRun(this.state, run.run_id, run.config.domains[0]);
      this.fillSelect(this.ui.domainSelect, run.config.domains, this.state.domain!);
      void this.loadDomain();
    });
    this.ui.domainSelect.addEventListener("change", () => {
      this.state = withDomain(this.state, this.ui.domainSelect.value);
      void this.loadDomain();
    });
    this.ui.clusterSelect.addEventListener("change", () => {
      this.state = withCluster(this.state, this.ui.clusterSelect.value);
      this.render();
    });
    this.ui.tabButtons.querySelectorAll("button").forEach((button) => {
      button.addEventListener("click", () => {
        this.state = withTab(this.state, button.dataset.tab as ViewState["tab"]);
        this.render();
      });
    });
  }

  private fillSelect(select: HTMLSelectElement, options: string[], value: string): void {
    clear(select);
    for (const option of options) select.append(el("option", { value: option }, option));
    select.value = value;
  }

  private async loadDomain(): Promise<void> {
    if (this.state.runId === null || this.state.domain === null) return;
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const data = await this.api.domainData(
        this.state.runId,
        this.state.domain,
        controller.signal,
      );
      if (controller !== this.inflight) return; // superseded by a newer selection
      this.data = data;
      this.state = clampCluster(this.state, data.selection.chosen_k);
      this.fillSelect(
        this.ui.clusterSelect,
        Object.keys(data.clusters).sort(),
        this.state.cluster,
      );
      this.hideError();
      this.render();
    } catch (error) {
      if ((error as Error).name === "AbortError") return;
      this.showError(`Load failed: ${(error as Error).message}`); // stale view stays
    }
  }

  render(): void {
    if (this.data === null) return;
    const onSummary = this.state.tab === "summary";
    this.ui.summaryTab.classList.toggle("hidden", !onSummary);
    this.ui.mapTab.classList.toggle("hidden", onSummary);
    this.ui.tabButtons.querySelectorAll("button").forEach((button) => {
      button.classList.toggle("active", button.dataset.tab === this.state.tab);
    });
    if (onSummary) {
      this.renderSummary();
    } else {
      this.renderMapTab();
    }
  }

  private renderSummary(): void {
    const cluster = this.data!.clusters[this.state.cluster];
    if (!cluster) return;
    const summary = buildSummary(cluster);
    clear(this.ui.stats);
    this.ui.stats.append(
      el("span", { class: "stat", "data-role": "label" }, summary.label),
      el("span", { class: "stat", "data-role": "n" }, `n = ${summary.n}`),
      el(
        "span",
        { class: "stat", "data-role": "domain-mean" },
        `${summary.domain} mean ${formatProportion(summary.domainMean)}`,
      ),
      el(
        "span",
        { class: "stat", "data-role": "domain-range" },
        `range ${formatProportion(summary.domainRange[0])} – ${formatProportion(summary.domainRange[1])}`,
      ),
    );
    renderCharts(this.ui.boxes, this.ui.pies, summary.boxes, [
      summary.remotenessPie,
      summary.irsdPie,
    ]);
    renderInset(this.ui.inset, buildMapView(this.data!), summary.memberIds);
  }

  private renderMapTab(): void {
    renderMap(this.ui.map, buildMapView(this.data!), this.state.viewport, {
      onViewport: (viewport) => {
        this.state = withViewport(this.state, viewport);
      },
    });
  }

  private showError(message: string): void {
    this.ui.banner.textContent = message;
    this.ui.banner.classList.remove("hidden");
  }

  private hideError(): void {
    this.ui.banner.classList.add("hidden");
  }
}

export function mount(document: Document, baseUrl: string): App {
  const need = (id: string): HTMLElement => {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node;
  };
  const app = new App(new ApiClient(baseUrl), {
    banner: need("banner"),
    runSelect: need("run-select") as HTMLSelectElement,
    domainSelect: need("domain-select") as HTMLSelectElement,
    clusterSelect: need("cluster-select") as HTMLSelectElement,
    tabButtons: need("tabs"),
    summaryTab: need("summary-tab"),
    mapTab: need("map-tab"),
    stats: need("cluster-stats"),
    boxes: need("boxes"),
    pies: need("pies"),
    inset: need("inset"),
    map: need("map"),
  });
  void app.start();
  return app;
}
