/**
 * Wire types for the partitioning session API.
 *
 * Field names mirror the JSON exactly: report payloads are snake_case,
 * envelope fields are camelCase. Nothing here is renamed, so a value seen
 * on screen can be grepped verbatim in a response body.
 */

export type SessionStatus = "fresh" | "running" | "awaiting-user" | "done";
export type SessionMode = "automatic" | "interactive";
export type ActionName = "refine" | "accept" | "abort";

export interface SplitCandidate {
  rank: number;
  vertex: number;
  relation: string;
  size: number;
  access: number;
  splittable: boolean;
}

export interface NodeLoad {
  node: number;
  size_load: number;
  access_load: number;
}

export interface IterationDiff {
  cut_delta: number;
  sf_delta: number;
  feasible_before: boolean;
  feasible_now: boolean;
}

export interface GraphSummary {
  vertex_count: number;
  edge_count: number;
  iteration: number;
  status: SessionStatus;
  split_candidates: SplitCandidate[];
  per_node: NodeLoad[];
  diff: IterationDiff | null;
}

export interface Violation {
  node: number;
  kind: string;
  limit: number;
  actual: number;
}

export interface WarmStartInfo {
  start_cut: number;
  warm_cut: number;
  fresh_cut: number;
  adopted: "warm" | "fresh";
}

export interface ReportExtensions {
  cv_size: number;
  cv_access: number;
  balance_ok: boolean;
  per_node_incident_cut: number[];
  // present from the second iteration on
  warm_start?: WarmStartInfo;
  diff?: IterationDiff;
}

export interface IterationReport {
  distributed_txn_count: number;
  total_txn_count: number;
  distributed_fraction: number;
  per_node: NodeLoad[];
  sf: number;
  dsf: number;
  wsf: number;
  violations: Violation[];
  feasible: boolean;
  iteration_index: number;
  extensions: ReportExtensions;
}

export interface SessionConfigDoc {
  seed?: number;
  top_k?: number;
  rank_mode?: "size" | "ratio";
}

export interface CreateSessionRequest {
  schema: unknown;
  workload: unknown;
  constraints: unknown;
  mode?: SessionMode;
  config?: SessionConfigDoc;
}

export interface CreateSessionResponse {
  sessionId: string;
  status: SessionStatus;
  createdAt: number;
  graph: GraphSummary;
}

export interface StepResponse {
  report: IterationReport;
  graph: GraphSummary;
}

export interface ActionResponse {
  status: SessionStatus;
  graph: GraphSummary;
}

export interface RoutingTableDoc {
  k: number;
  relations: Record<string, unknown>;
}

export interface TableResponse {
  table: RoutingTableDoc;
  iteration: number;
}

export interface SessionReportResponse {
  status: SessionStatus;
  mode: SessionMode;
  best_index: number | null;
  reports: IterationReport[];
}
