import { describe, expect, it } from "vitest";
import { escapeHtml, fmtFloat, fmtInt, fmtSigned } from "../src/format.js";
import { renderApp, renderDiffPanel, renderLoadBars } from "../src/render.js";
import { initialView, type SessionView } from "../src/state.js";
import type { GraphSummary, IterationReport, SplitCandidate } from "../src/types.js";

function makeReport(overrides: Partial<IterationReport> = {}): IterationReport {
  return {
    distributed_txn_count: 12,
    total_txn_count: 100,
    distributed_fraction: 0.12,
    per_node: [
      { node: 0, size_load: 500, access_load: 90 },
      { node: 1, size_load: 700, access_load: 60 },
    ],
    sf: 120.5,
    dsf: 100.0,
    wsf: 20.0,
    violations: [],
    feasible: true,
    iteration_index: 1,
    extensions: { cv_size: 0.1, cv_access: 0.2, balance_ok: true, per_node_incident_cut: [6, 6] },
    ...overrides,
  };
}

function makeCandidates(): SplitCandidate[] {
  return [
    { rank: 0, vertex: 4, relation: "orders", size: 900, access: 40, splittable: true },
    { rank: 1, vertex: 7, relation: "items", size: 500, access: 22, splittable: false },
  ];
}

function makeGraph(overrides: Partial<GraphSummary> = {}): GraphSummary {
  return {
    vertex_count: 10,
    edge_count: 4,
    iteration: 1,
    status: "awaiting-user",
    split_candidates: makeCandidates(),
    per_node: [],
    diff: null,
    ...overrides,
  };
}

function makeView(overrides: Partial<SessionView> = {}): SessionView {
  const view = initialView();
  Object.assign(view, {
    sessionId: "abc123",
    status: "awaiting-user",
    graph: makeGraph(),
    reports: [makeReport()],
  });
  Object.assign(view, overrides);
  return view;
}

function button(html: string, action: string): { present: boolean; disabled: boolean } {
  const m = new RegExp(`<button[^>]*data-action="${action}"([^>]*)>`).exec(html);
  return { present: m !== null, disabled: m !== null && m[1]!.includes("disabled") };
}

describe("formatting", () => {
  it("keeps integral floats in wire form", () => {
    expect(fmtFloat(4610)).toBe("4610.0");
    expect(fmtFloat(0.055)).toBe("0.055");
    expect(fmtFloat(2845.625)).toBe("2845.625");
    expect(fmtInt(11)).toBe("11");
  });

  it("signs deltas explicitly", () => {
    expect(fmtSigned(3)).toBe("+3");
    expect(fmtSigned(-2)).toBe("-2");
    expect(fmtSigned(0)).toBe("0");
    expect(fmtSigned(0, fmtFloat)).toBe("0.0");
    expect(fmtSigned(-1764.375, fmtFloat)).toBe("-1764.375");
  });

  it("escapes markup", () => {
    expect(escapeHtml(`<b a="1">&'`)).toBe("&lt;b a=&quot;1&quot;&gt;&amp;&#39;");
  });
});

describe("diff panel", () => {
  it("is absent for the first iteration", () => {
    expect(renderDiffPanel(makeReport())).toBe("");
    expect(renderApp(makeView())).not.toContain('data-panel="diff"');
  });

  it("shows the cut delta with its sign", () => {
    const worse = makeReport({
      iteration_index: 2,
      extensions: {
        cv_size: 0,
        cv_access: 0,
        balance_ok: true,
        per_node_incident_cut: [6, 6],
        diff: { cut_delta: 3, sf_delta: -0.5, feasible_before: false, feasible_now: true },
      },
    });
    const html = renderDiffPanel(worse);
    expect(html).toContain('data-metric="cut-delta" class="worse">+3<');
    expect(html).toContain('data-metric="sf-delta">-0.5<');
    expect(html).toContain("was infeasible");

    const better = makeReport({
      iteration_index: 2,
      extensions: {
        cv_size: 0,
        cv_access: 0,
        balance_ok: true,
        per_node_incident_cut: [6, 6],
        diff: { cut_delta: -2, sf_delta: 0.0, feasible_before: true, feasible_now: true },
      },
    });
    expect(renderDiffPanel(better)).toContain('data-metric="cut-delta" class="better">-2<');
    expect(renderDiffPanel(better)).toContain('data-metric="sf-delta">0.0<');
  });

  it("surfaces the warm start cuts when present", () => {
    const report = makeReport({
      extensions: {
        cv_size: 0,
        cv_access: 0,
        balance_ok: true,
        per_node_incident_cut: [6, 6],
        diff: { cut_delta: -1, sf_delta: 0.0, feasible_before: true, feasible_now: true },
        warm_start: { start_cut: 11, warm_cut: 11, fresh_cut: 10, adopted: "fresh" },
      },
    });
    const html = renderDiffPanel(report);
    expect(html).toContain('data-metric="start-cut">11<');
    expect(html).toContain('data-metric="fresh-cut">10<');
    expect(html).toContain("<b>fresh</b>");
  });
});

describe("load bars", () => {
  const perNode = [
    { node: 0, size_load: 500, access_load: 90 },
    { node: 1, size_load: 700, access_load: 60 },
  ];

  it("marks the violating node bar and shows limit and actual", () => {
    const html = renderLoadBars(perNode, [
      { node: 1, kind: "storage", limit: 600, actual: 700 },
    ]);
    expect(html).toContain('<div class="bar-row over" data-node="1" data-kind="size">');
    expect(html).toContain("limit 600, actual 700");
    expect(html).toContain('<div class="bar-row" data-node="0" data-kind="size">');
    // access bars untouched by a storage violation
    expect(html).not.toContain('bar-row over" data-node="1" data-kind="access"');
  });

  it("highlights the access bar for processing violations", () => {
    const html = renderLoadBars(perNode, [
      { node: 0, kind: "processing", limit: 80, actual: 90 },
    ]);
    expect(html).toContain('<div class="bar-row over" data-node="0" data-kind="access">');
    expect(html).toContain("limit 80, actual 90");
  });

  it("prints raw load values next to the bars", () => {
    const html = renderLoadBars(perNode, []);
    expect(html).toContain('data-node="1" data-kind="size">700<');
    expect(html).toContain('data-node="0" data-kind="access">90<');
  });
});

describe("controls", () => {
  it("enables only Step on a fresh session", () => {
    const html = renderApp(makeView({ status: "fresh", reports: [] }));
    expect(button(html, "step").disabled).toBe(false);
    expect(button(html, "refine").disabled).toBe(true);
    expect(button(html, "accept").disabled).toBe(true);
    expect(button(html, "abort").disabled).toBe(true);
    expect(button(html, "download").present).toBe(false);
  });

  it("enables the steering actions while awaiting the user", () => {
    const html = renderApp(makeView());
    for (const action of ["step", "refine", "accept", "abort"]) {
      expect(button(html, action).disabled).toBe(false);
    }
    expect(button(html, "download").present).toBe(false);
  });

  it("after accept only the download link remains live", () => {
    const html = renderApp(makeView({ status: "done", accepted: true }));
    for (const action of ["step", "refine", "accept", "abort"]) {
      expect(button(html, action).disabled).toBe(true);
    }
    expect(button(html, "download").present).toBe(true);
  });

  it("after abort every control is dead", () => {
    const html = renderApp(makeView({ status: "done", accepted: false }));
    for (const action of ["step", "refine", "accept", "abort"]) {
      expect(button(html, action).disabled).toBe(true);
    }
    expect(button(html, "download").present).toBe(false);
  });

  it("disables everything while a request is in flight", () => {
    const html = renderApp(makeView({ busy: true }));
    for (const action of ["step", "refine", "accept", "abort"]) {
      expect(button(html, action).disabled).toBe(true);
    }
  });

  it("counts the selection on the refine label", () => {
    const html = renderApp(makeView({ selected: [4, 9, 2] }));
    expect(html).toContain("Refine (3 selected)");
  });
});

describe("candidate list", () => {
  it("renders checkboxes only for splittable groups", () => {
    const html = renderApp(makeView({ selected: [4] }));
    expect(html).toContain('<input type="checkbox" data-vertex="4" checked>');
    expect(html).toContain('<input type="checkbox" data-vertex="7" disabled>');
    expect(html).toContain('<tr class="unsplittable">');
  });

  it("freezes the selection when the session is done", () => {
    const html = renderApp(makeView({ status: "done" }));
    expect(html).toContain('<input type="checkbox" data-vertex="4" disabled>');
  });
});

describe("error panel", () => {
  it("shows the status code and the verbatim body", () => {
    const body = '{"detail":"cannot apply \'refine\' while session is \'fresh\'"}';
    const html = renderApp(makeView({ lastError: { status: 409, body } }));
    expect(html).toContain("HTTP 409");
    expect(html).toContain(escapeHtml(body));
  });

  it("is absent without an error", () => {
    expect(renderApp(makeView())).not.toContain('data-panel="error"');
  });
});

describe("page skeleton", () => {
  it("prompts for documents before a session exists", () => {
    expect(renderApp(initialView())).toContain("create a session");
  });

  it("names the session and its status", () => {
    const html = renderApp(makeView());
    expect(html).toContain("session abc123");
    expect(html).toContain('data-status="awaiting-user"');
  });

  it("marks the best iteration in the summary table", () => {
    const html = renderApp(
      makeView({
        summary: {
          status: "awaiting-user",
          mode: "interactive",
          best_index: 1,
          reports: [
            makeReport(),
            makeReport({ iteration_index: 2, distributed_txn_count: 9 }),
          ],
        },
      }),
    );
    expect(html).toContain("best so far: iteration 2");
    expect(html).toContain('<tr class="best">');
  });
});
