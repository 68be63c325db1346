/**
 * ServiceClient
 *
 * Typed fetch client for the partitioning session API. One method per
 * documented endpoint; the UI talks to no other routes.
 *
 * Every exchange (method, path, request body, status, verbatim response
 * text) is appended to `log`. The replay tests diff that log against a
 * recorded session of direct API calls, which only works because this
 * client never rewrites or re-serializes what the service sent.
 */

import type {
  ActionName,
  ActionResponse,
  CreateSessionRequest,
  CreateSessionResponse,
  GraphSummary,
  SessionReportResponse,
  StepResponse,
  TableResponse,
} from "./types.js";

export interface Exchange {
  method: string;
  path: string;
  body: string | null;
  status: number;
  response: string;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly body: string,
  ) {
    super(`service responded ${status}`);
    this.name = "ServiceError";
  }
}

export class ServiceClient {
  readonly log: Exchange[] = [];
  private readonly fetchImpl: FetchLike;

  constructor(
    private readonly baseUrl: string = "",
    fetchImpl?: FetchLike,
  ) {
    // wrap instead of storing fetch directly: browsers reject fetch
    // called without its original `this`
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<string> {
    const payload = body === undefined ? null : JSON.stringify(body);
    const init: RequestInit = { method };
    if (payload !== null) {
      init.body = payload;
      init.headers = { "content-type": "application/json" };
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const text = await response.text();
    this.log.push({ method, path, body: payload, status: response.status, response: text });
    if (!response.ok) {
      throw new ServiceError(response.status, text);
    }
    return text;
  }

  async createSession(body: CreateSessionRequest): Promise<CreateSessionResponse> {
    const text = await this.request("POST", "/sessions", body);
    return JSON.parse(text) as CreateSessionResponse;
  }

  async step(sessionId: string): Promise<StepResponse> {
    const text = await this.request("POST", `/sessions/${sessionId}/step`);
    return JSON.parse(text) as StepResponse;
  }

  async applyAction(
    sessionId: string,
    action: ActionName,
    vertexIds?: number[],
  ): Promise<ActionResponse> {
    const body: { action: ActionName; vertexIds?: number[] } = { action };
    if (vertexIds !== undefined) {
      body.vertexIds = vertexIds;
    }
    const text = await this.request("POST", `/sessions/${sessionId}/action`, body);
    return JSON.parse(text) as ActionResponse;
  }

  async fetchReport(sessionId: string): Promise<SessionReportResponse> {
    const text = await this.request("GET", `/sessions/${sessionId}/report`);
    return JSON.parse(text) as SessionReportResponse;
  }

  async fetchGraph(sessionId: string): Promise<GraphSummary> {
    const text = await this.request("GET", `/sessions/${sessionId}/graph-summary`);
    return JSON.parse(text) as GraphSummary;
  }

  /** Raw text is returned alongside the parse; downloads save it untouched. */
  async fetchTable(sessionId: string): Promise<{ parsed: TableResponse; text: string }> {
    const text = await this.request("GET", `/sessions/${sessionId}/table`);
    return { parsed: JSON.parse(text) as TableResponse, text };
  }
}
