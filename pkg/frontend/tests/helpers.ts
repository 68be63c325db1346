import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { expect } from "vitest";
import type { FetchLike } from "../src/api.js";

export interface RecordedExchange {
  method: string;
  path: string;
  body: string | null;
  status: number;
  response: string;
}

export interface RecordedSession {
  note: string;
  sessionId: string;
  exchanges: RecordedExchange[];
}

export function loadRecording(): RecordedSession {
  const here = dirname(fileURLToPath(import.meta.url));
  const raw = readFileSync(join(here, "fixtures", "recorded-session.json"), "utf8");
  return JSON.parse(raw) as RecordedSession;
}

/**
 * Fetch stub that serves the recorded exchanges strictly in order and
 * fails the test on any request the recording does not contain. Request
 * bodies must match the recorded bytes exactly.
 */
export function replayFetch(exchanges: RecordedExchange[]): {
  fetch: FetchLike;
  served: () => number;
} {
  let cursor = 0;
  const fetchImpl: FetchLike = (input, init) => {
    const next = exchanges[cursor];
    expect(next, `request past the ${exchanges.length} recorded exchanges`).toBeDefined();
    cursor += 1;
    const method = init?.method ?? "GET";
    expect(`${method} ${input}`).toBe(`${next!.method} ${next!.path}`);
    const body = typeof init?.body === "string" ? init.body : null;
    expect(body).toBe(next!.body);
    return Promise.resolve(
      new Response(next!.response, {
        status: next!.status,
        headers: { "content-type": "application/json" },
      }),
    );
  };
  return { fetch: fetchImpl, served: () => cursor };
}

/** Fetch stub returning one canned response for every request. */
export function cannedFetch(status: number, text: string): FetchLike {
  return () =>
    Promise.resolve(
      new Response(text, { status, headers: { "content-type": "application/json" } }),
    );
}
