/** Typed client for the read-only results API (schema version 1). */

export interface RunConfig {
  domains: string[];
  epsilon: number;
  k_min: number;
  k_max: number;
  restarts: number;
  seed: number;
  max_iter: number;
}

export interface RunSummary {
  run_id: string;
  created_at: string;
  config: RunConfig;
}

export interface SweepEntry {
  k: number;
  average_width: number;
  solution: { k: number; seed: number; wcss: number; assignments: Record<string, number> };
}

export interface SelectionPayload {
  schema_version: string;
  domain: string;
  chosen_k: number;
  rationale: string;
  sweep: SweepEntry[];
}

export interface DemographicStat {
  mean: number;
  range: [number, number];
}

export interface MemberRecord {
  id: string;
  name: string;
  domain_value: number;
  australia: number;
  english: number;
  indigenous: number;
  preschool: number;
  irsd: number;
  remoteness: string;
}

export interface ClusterPayload {
  schema_version: string;
  domain: string;
  label: string;
  n: number;
  domain_mean: number;
  domain_range: [number, number];
  centroid: number;
  demographics: Record<string, DemographicStat>;
  remoteness_dist: Record<string, number>;
  irsd_dist: Record<string, number>;
  member_ids: string[];
  members: MemberRecord[];
}

export interface ComparisonPayload {
  schema_version: string;
  domain: string;
  rows: { metric: string; values: Record<string, number> }[];
}

export interface SilhouettePayload {
  schema_version: string;
  domain: string;
  average: number;
  band: string;
  per_cluster: { cluster: number; mean_width: number }[];
  per_point: Record<string, number>;
}

export interface GeoFeature {
  type: "Feature";
  properties: { id: string; name: string; cluster_label: string; domain_value: number };
  geometry: { type: "Polygon" | "MultiPolygon"; coordinates: number[][][] | number[][][][] };
}

export interface GeoJsonPayload {
  type: "FeatureCollection";
  features: GeoFeature[];
}

/** Everything one domain view needs: selection, every cluster, optional geometry. */
export interface DomainData {
  selection: SelectionPayload;
  clusters: Record<string, ClusterPayload>;
  geojson: GeoJsonPayload | null;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private async get<T>(path: string, signal?: AbortSignal): Promise<T> {
    const response = await fetch(this.baseUrl + path, { signal });
    if (!response.ok) {
      let message = `${response.status} for ${path}`;
      try {
        const body = await response.json();
        if (body && body.message) message = body.message;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, message);
    }
    return (await response.json()) as T;
  }

  async listRuns(signal?: AbortSignal): Promise<RunSummary[]> {
    const doc = await this.get<{ runs: RunSummary[] }>("/runs", signal);
    return doc.runs;
  }

  async domains(runId: string, signal?: AbortSignal): Promise<string[]> {
    const doc = await this.get<{ domains: string[] }>(`/runs/${runId}/domains`, signal);
    return doc.domains;
  }

  selection(runId: string, domain: string, signal?: AbortSignal): Promise<SelectionPayload> {
    return this.get(`/runs/${runId}/domains/${domain}/selection`, signal);
  }

  cluster(
    runId: string,
    domain: string,
    label: string,
    signal?: AbortSignal,
  ): Promise<ClusterPayload> {
    return this.get(`/runs/${runId}/domains/${domain}/clusters/${label}`, signal);
  }

  comparison(runId: string, domain: string, signal?: AbortSignal): Promise<ComparisonPayload> {
    return this.get(`/runs/${runId}/domains/${domain}/comparison`, signal);
  }

  silhouette(runId: string, domain: string, signal?: AbortSignal): Promise<SilhouettePayload> {
    return this.get(`/runs/${runId}/domains/${domain}/silhouette`, signal);
  }

  async geojson(
    runId: string,
    domain: string,
    signal?: AbortSignal,
  ): Promise<GeoJsonPayload | null> {
    try {
      return await this.get<GeoJsonPayload>(`/runs/${runId}/domains/${domain}/geojson`, signal);
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) return null; // run has no geometry
      throw error;
    }
  }

  /** Fetch the full bundle for one (run, domain): selection, all k clusters, geometry. */
  async domainData(runId: string, domain: string, signal?: AbortSignal): Promise<DomainData> {
    const selection = await this.selection(runId, domain, signal);
    const labels = Array.from({ length: selection.chosen_k }, (_, i) => `C${i + 1}`);
    const [clusterList, geojson] = await Promise.all([
      Promise.all(labels.map((label) => this.cluster(runId, domain, label, signal))),
      this.geojson(runId, domain, signal),
    ]);
    const clusters: Record<string, ClusterPayload> = {};
    for (const payload of clusterList) clusters[payload.label] = payload;
    return { selection, clusters, geojson };
  }
}
