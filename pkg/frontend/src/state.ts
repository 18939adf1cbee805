/** View state and its transitions. Pure: each transition returns a new state. */

export type Tab = "summary" | "map";

export interface Viewport {
  x: number;
  y: number;
  scale: number;
}

export interface ViewState {
  runId: string | null;
  domain: string | null;
  cluster: string;
  tab: Tab;
  viewport: Viewport;
}

export const INITIAL_VIEWPORT: Viewport = { x: 0, y: 0, scale: 1 };

export const initialState: ViewState = {
  runId: null,
  domain: null,
  cluster: "C1",
  tab: "summary",
  viewport: INITIAL_VIEWPORT,
};

export function withRun(state: ViewState, runId: string, firstDomain: string): ViewState {
  return { ...state, runId, domain: firstDomain, cluster: "C1" };
}

/** Switching domain resets the cluster selector to C1 but keeps the viewport. */
export function withDomain(state: ViewState, domain: string): ViewState {
  return { ...state, domain, cluster: "C1" };
}

export function withCluster(state: ViewState, cluster: string): ViewState {
  return { ...state, cluster };
}

export function withTab(state: ViewState, tab: Tab): ViewState {
  return { ...state, tab };
}

export function withViewport(state: ViewState, viewport: Viewport): ViewState {
  return { ...state, viewport };
}

/** Clamp the cluster selector to the labels valid for the current k. */
export function clampCluster(state: ViewState, k: number): ViewState {
  const index = parseInt(state.cluster.slice(1), 10);
  if (Number.isFinite(index) && index >= 1 && index <= k) return state;
  return { ...state, cluster: "C1" };
}
