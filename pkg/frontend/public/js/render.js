/**
 * Pure HTML renderers over the session view.
 *
 * Every numeric value on screen is formatted straight off the parsed
 * payload (see format.ts); bar and polyline geometry is the only place
 * numbers are arithmetically combined, and geometry is never displayed
 * as text. Elements the app reacts to carry data-action / data-vertex
 * attributes; tests locate values via data-metric hooks.
 */
import { escapeHtml, fmtFloat, fmtInt, fmtSigned } from "./format.js";
import { canAbort, canAccept, canDownload, canRefine, canSelect, canStep, } from "./state.js";
function badge(ok, yes, no) {
    return `<span class="badge ${ok ? "ok" : "bad"}" data-feasible="${ok}">${ok ? yes : no}</span>`;
}
function disabledUnless(allowed) {
    return allowed ? "" : " disabled";
}
export function renderSessionHead(view) {
    const graph = view.graph;
    const counts = graph === null
        ? ""
        : ` &middot; ${fmtInt(graph.vertex_count)} tuple groups, ${fmtInt(graph.edge_count)} co-access edges` +
            ` &middot; iteration ${fmtInt(graph.iteration)}`;
    return `<header class="session-head">
  <span class="session-id">session ${escapeHtml(view.sessionId ?? "")}</span>
  <span class="status" data-status="${escapeHtml(view.status ?? "")}">${escapeHtml(view.status ?? "")}</span>
  <span class="mode">${escapeHtml(view.mode)}</span>${counts}
</header>`;
}
export function renderMetrics(report) {
    return `<section class="panel" data-panel="metrics">
  <h3>iteration ${fmtInt(report.iteration_index)}</h3>
  <dl class="metrics">
    <div><dt>distributed</dt><dd><span data-metric="cut">${fmtInt(report.distributed_txn_count)}</span>
      of <span data-metric="total">${fmtInt(report.total_txn_count)}</span></dd></div>
    <div><dt>fraction</dt><dd data-metric="fraction">${fmtFloat(report.distributed_fraction)}</dd></div>
    <div><dt>skew</dt><dd data-metric="sf">${fmtFloat(report.sf)}</dd></div>
    <div><dt>data skew</dt><dd data-metric="dsf">${fmtFloat(report.dsf)}</dd></div>
    <div><dt>access skew</dt><dd data-metric="wsf">${fmtFloat(report.wsf)}</dd></div>
  </dl>
  ${badge(report.feasible, "feasible", "infeasible")}
</section>`;
}
function renderWarmStart(info) {
    return `<p class="warm-start">carried labels started at cut <span data-metric="start-cut">${fmtInt(info.start_cut)}</span>,
reached <span data-metric="warm-cut">${fmtInt(info.warm_cut)}</span>; fresh pass reached
<span data-metric="fresh-cut">${fmtInt(info.fresh_cut)}</span>; adopted <b>${escapeHtml(info.adopted)}</b></p>`;
}
export function renderDiffPanel(report) {
    const diff = report.extensions.diff;
    if (diff === undefined) {
        return "";
    }
    const warm = report.extensions.warm_start;
    return `<section class="panel" data-panel="diff">
  <h3>since previous iteration</h3>
  <dl class="metrics">
    <div><dt>cut delta</dt><dd data-metric="cut-delta" class="${diff.cut_delta > 0 ? "worse" : "better"}">${fmtSigned(diff.cut_delta)}</dd></div>
    <div><dt>skew delta</dt><dd data-metric="sf-delta">${fmtSigned(diff.sf_delta, fmtFloat)}</dd></div>
  </dl>
  <p>${badge(diff.feasible_before, "was feasible", "was infeasible")} &rarr;
  ${badge(diff.feasible_now, "feasible", "infeasible")}</p>
  ${warm ? renderWarmStart(warm) : ""}
</section>`;
}
function violationFor(violations, node, kind) {
    return violations.find((v) => v.node === node && v.kind === kind);
}
function barRow(label, node, kind, value, max, over) {
    // width is layout only; the number shown next to the bar is the raw load
    const pct = max > 0 ? Math.min(100, (value / max) * 100) : 0;
    const note = over === undefined
        ? ""
        : `<span class="violation">limit ${fmtInt(over.limit)}, actual ${fmtInt(over.actual)}</span>`;
    return `<div class="bar-row${over ? " over" : ""}" data-node="${node}" data-kind="${kind}">
    <span class="bar-label">${escapeHtml(label)}</span>
    <span class="bar-track"><span class="bar-fill ${kind}" style="width:${pct.toFixed(1)}%"></span></span>
    <span class="load" data-node="${node}" data-kind="${kind}">${fmtInt(value)}</span>
    ${note}
  </div>`;
}
export function renderLoadBars(perNode, violations) {
    if (perNode.length === 0) {
        return "";
    }
    const maxSize = Math.max(...perNode.map((n) => n.size_load));
    const maxAccess = Math.max(...perNode.map((n) => n.access_load));
    const rows = perNode
        .map((n) => barRow(`node ${fmtInt(n.node)} size`, n.node, "size", n.size_load, maxSize, violationFor(violations, n.node, "storage")) +
        barRow(`node ${fmtInt(n.node)} access`, n.node, "access", n.access_load, maxAccess, violationFor(violations, n.node, "processing")))
        .join("\n");
    return `<section class="panel" data-panel="loads">
  <h3>per-node load</h3>
  ${rows}
</section>`;
}
export function renderCutTrend(reports) {
    if (reports.length === 0) {
        return "";
    }
    const cuts = reports.map((r) => r.distributed_txn_count);
    const lo = Math.min(...cuts);
    const hi = Math.max(...cuts);
    const width = 360;
    const height = 72;
    const pad = 8;
    const x = (i) => reports.length === 1 ? width / 2 : pad + (i * (width - 2 * pad)) / (reports.length - 1);
    const y = (cut) => hi === lo ? height / 2 : height - pad - ((cut - lo) * (height - 2 * pad)) / (hi - lo);
    const points = cuts.map((c, i) => `${x(i).toFixed(1)},${y(c).toFixed(1)}`).join(" ");
    const dots = reports
        .map((r, i) => `<circle cx="${x(i).toFixed(1)}" cy="${y(r.distributed_txn_count).toFixed(1)}" r="3.5"
 class="${r.feasible ? "ok" : "bad"}"><title>iteration ${fmtInt(r.iteration_index)}: ${fmtInt(r.distributed_txn_count)}</title></circle>`)
        .join("");
    const items = reports
        .map((r) => `<li>iteration ${fmtInt(r.iteration_index)}: cut <span class="trend-cut" data-iteration="${r.iteration_index}">${fmtInt(r.distributed_txn_count)}</span> ${badge(r.feasible, "feasible", "infeasible")}</li>`)
        .join("\n");
    return `<section class="panel" data-panel="trend">
  <h3>distributed transactions per iteration</h3>
  <svg viewBox="0 0 ${width} ${height}" role="img" aria-label="cut trend">
    <polyline points="${points}" fill="none" class="trend-line"/>
    ${dots}
  </svg>
  <ol class="trend-list">
${items}
  </ol>
</section>`;
}
function candidateRow(c, selected, selectable) {
    const disabled = disabledUnless(selectable && c.splittable);
    return `<tr class="${c.splittable ? "" : "unsplittable"}">
    <td><input type="checkbox" data-vertex="${c.vertex}"${selected ? " checked" : ""}${disabled}></td>
    <td>${fmtInt(c.rank)}</td>
    <td>${fmtInt(c.vertex)}</td>
    <td>${escapeHtml(c.relation)}</td>
    <td>${fmtInt(c.size)}</td>
    <td>${fmtInt(c.access)}</td>
    <td>${c.splittable ? "yes" : "no"}</td>
  </tr>`;
}
export function renderCandidates(view) {
    const graph = view.graph;
    if (graph === null || graph.split_candidates.length === 0) {
        return "";
    }
    const selectable = canSelect(view);
    const rows = graph.split_candidates
        .map((c) => candidateRow(c, view.selected.includes(c.vertex), selectable))
        .join("\n");
    return `<section class="panel" data-panel="candidates">
  <h3>split candidates</h3>
  <table class="candidates">
    <thead><tr><th></th><th>rank</th><th>group</th><th>relation</th><th>tuples</th><th>accesses</th><th>splittable</th></tr></thead>
    <tbody>
${rows}
    </tbody>
  </table>
</section>`;
}
export function renderControls(view) {
    const selected = view.selected.length;
    const refineLabel = selected > 0 ? `Refine (${selected} selected)` : "Refine";
    const download = canDownload(view)
        ? `<button class="download-link" data-action="download">Download routing table</button>`
        : "";
    const saved = view.tableIteration === null
        ? ""
        : `<span class="table-note">routing table from iteration ${fmtInt(view.tableIteration)} fetched</span>`;
    return `<section class="panel controls" data-panel="controls">
  <button data-action="step"${disabledUnless(canStep(view))}>Step</button>
  <button data-action="refine"${disabledUnless(canRefine(view))}>${refineLabel}</button>
  <button data-action="accept"${disabledUnless(canAccept(view))}>Accept</button>
  <button data-action="abort"${disabledUnless(canAbort(view))}>Abort</button>
  ${download}
  ${saved}
</section>`;
}
export function renderBest(view) {
    const summary = view.summary;
    if (summary === null || summary.reports.length === 0) {
        return "";
    }
    const rows = summary.reports
        .map((r, i) => `<tr class="${i === summary.best_index ? "best" : ""}">
      <td>${fmtInt(r.iteration_index)}</td>
      <td>${fmtInt(r.distributed_txn_count)}</td>
      <td>${fmtFloat(r.sf)}</td>
      <td>${badge(r.feasible, "feasible", "infeasible")}</td>
    </tr>`)
        .join("\n");
    const bestLine = summary.best_index === null
        ? ""
        : `<p>best so far: iteration ${fmtInt(summary.reports[summary.best_index].iteration_index)}</p>`;
    return `<section class="panel" data-panel="best">
  <h3>all iterations</h3>
  ${bestLine}
  <table class="iterations">
    <thead><tr><th>iteration</th><th>cut</th><th>skew</th><th></th></tr></thead>
    <tbody>
${rows}
    </tbody>
  </table>
</section>`;
}
export function renderError(view) {
    if (view.lastError === null) {
        return "";
    }
    return `<section class="panel error" data-panel="error">
  <h3>HTTP ${fmtInt(view.lastError.status)}</h3>
  <pre class="error-body">${escapeHtml(view.lastError.body)}</pre>
</section>`;
}
export function renderApp(view) {
    if (view.sessionId === null) {
        return `<p class="hint">Load a schema and workload, set the cluster constraints, and create a session.</p>`;
    }
    const latest = view.reports.length > 0 ? view.reports[view.reports.length - 1] : null;
    const parts = [
        renderSessionHead(view),
        latest ? renderMetrics(latest) : `<p class="hint">No iterations yet; press Step.</p>`,
        latest ? renderDiffPanel(latest) : "",
        latest ? renderLoadBars(latest.per_node, latest.violations) : "",
        renderCutTrend(view.reports),
        renderCandidates(view),
        renderControls(view),
        renderBest(view),
        renderError(view),
    ];
    return `<div class="session${view.busy ? " busy" : ""}">\n${parts.filter((p) => p !== "").join("\n")}\n</div>`;
}
