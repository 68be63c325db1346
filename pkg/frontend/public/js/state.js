/**
 * View state for one session per browser tab.
 *
 * Everything shown comes straight out of server responses; the only
 * client-owned pieces are the candidate selection, the busy flag, and
 * the last error body. Status transitions are never guessed locally:
 * the status rendered is always the one the server last reported.
 */
export function initialView() {
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
export function canStep(view) {
    return (view.sessionId !== null &&
        !view.busy &&
        (view.status === "fresh" || view.status === "awaiting-user"));
}
export function canRefine(view) {
    return view.sessionId !== null && !view.busy && view.status === "awaiting-user";
}
export const canAccept = canRefine;
export const canAbort = canRefine;
export function canSelect(view) {
    return view.status === "awaiting-user" && !view.busy;
}
export function canDownload(view) {
    return view.accepted && !view.busy;
}
export function toggleCandidate(view, vertex) {
    const at = view.selected.indexOf(vertex);
    if (at >= 0) {
        view.selected.splice(at, 1);
    }
    else {
        view.selected.push(vertex);
    }
}
/** Selection as sent to the service: ascending, duplicate-free. */
export function selectedIds(view) {
    return [...new Set(view.selected)].sort((a, b) => a - b);
}
export function applyCreate(view, resp, mode) {
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
export function applyStep(view, resp) {
    view.reports.push(resp.report);
    view.graph = resp.graph;
    view.status = resp.graph.status;
    view.lastError = null;
}
export function applyAction(view, action, resp) {
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
export function applySummary(view, resp) {
    view.summary = resp;
    view.status = resp.status;
}
export function applyTable(view, parsed, text) {
    view.tableText = text;
    view.tableIteration = parsed.iteration;
}
export function applyError(view, status, body) {
    view.lastError = { status, body };
}
