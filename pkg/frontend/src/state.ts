/**
 * View state for one session per browser tab.
 *
 * Everything shown comes straight out of server responses; the only
 * client-owned pieces are the candidate selection, the busy flag, and
 * the last error body. Status transitions are never guessed locally:
 * the status rendered is always the one the server last reported.
 */

import type {
  ActionName,
  ActionResponse,
  CreateSessionResponse,
  GraphSummary,
  IterationReport,
  SessionMode,
  SessionReportResponse,
  SessionStatus,
  StepResponse,
  TableResponse,
} from "./types.js";

export interface ViewError {
  status: number;
  body: string;
}

export interface SessionView {
  sessionId: string | null;
  status: SessionStatus | null;
  mode: SessionMode;
  createdAt: number | null;
  graph: GraphSummary | null;
  reports: IterationReport[];
  summary: SessionReportResponse | null;
  selected: number[];
  accepted: boolean;
  tableText: string | null;
  tableIteration: number | null;
  lastError: ViewError | null;
  busy: boolean;
}

export function initialView(): SessionView {
  return {
    sessionId: null,
    status: null,
    mode: "interactive",
    createdAt: null,
    graph: null,
    reports: [],
    summary: null,
    selected: [],
    accepted: false,
    tableText: null,
    tableIteration: null,
    lastError: null,
    busy: false,
  };
}

export function canStep(view: SessionView): boolean {
  return (
    view.sessionId !== null &&
    !view.busy &&
    (view.status === "fresh" || view.status === "awaiting-user")
  );
}

export function canRefine(view: SessionView): boolean {
  return view.sessionId !== null && !view.busy && view.status === "awaiting-user";
}

export const canAccept = canRefine;
export const canAbort = canRefine;

export function canSelect(view: SessionView): boolean {
  return view.status === "awaiting-user" && !view.busy;
}

export function canDownload(view: SessionView): boolean {
  return view.accepted && !view.busy;
}

export function toggleCandidate(view: SessionView, vertex: number): void {
  const at = view.selected.indexOf(vertex);
  if (at >= 0) {
    view.selected.splice(at, 1);
  } else {
    view.selected.push(vertex);
  }
}

/** Selection as sent to the service: ascending, duplicate-free. */
export function selectedIds(view: SessionView): number[] {
  return [...new Set(view.selected)].sort((a, b) => a - b);
}

export function applyCreate(view: SessionView, resp: CreateSessionResponse, mode: SessionMode): void {
  view.sessionId = resp.sessionId;
  view.status = resp.status;
  view.mode = mode;
  view.createdAt = resp.createdAt;
  view.graph = resp.graph;
  view.reports = [];
  view.summary = null;
  view.selected = [];
  view.accepted = false;
  view.tableText = null;
  view.tableIteration = null;
  view.lastError = null;
}

export function applyStep(view: SessionView, resp: StepResponse): void {
  view.reports.push(resp.report);
  view.graph = resp.graph;
  view.status = resp.graph.status;
  view.lastError = null;
}

export function applyAction(view: SessionView, action: ActionName, resp: ActionResponse): void {
  view.graph = resp.graph;
  view.status = resp.status;
  // vertex ids refer to the graph they were picked from; a refine
  // replaced that graph, and accept/abort ended the run
  view.selected = [];
  if (action === "accept") {
    view.accepted = true;
  }
  view.lastError = null;
}

export function applySummary(view: SessionView, resp: SessionReportResponse): void {
  view.summary = resp;
  view.status = resp.status;
}

export function applyTable(view: SessionView, parsed: TableResponse, text: string): void {
  view.tableText = text;
  view.tableIteration = parsed.iteration;
}

export function applyError(view: SessionView, status: number, body: string): void {
  view.lastError = { status, body };
}
