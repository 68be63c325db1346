/**
 * SessionApp drives one session: it owns the view state, calls the
 * service through the typed client, and re-renders after every exchange.
 * All HTTP errors land in the view verbatim instead of being thrown at
 * the DOM glue.
 */

import { ServiceClient, ServiceError } from "./api.js";
import { renderApp } from "./render.js";
import {
  applyAction,
  applyCreate,
  applyError,
  applyStep,
  applySummary,
  applyTable,
  canAbort,
  canAccept,
  canDownload,
  canRefine,
  canStep,
  initialView,
  selectedIds,
  toggleCandidate,
  type SessionView,
} from "./state.js";
import type { ActionName, CreateSessionRequest, SessionMode } from "./types.js";

export interface SavedTable {
  filename: string;
  text: string;
}

export class SessionApp {
  readonly view: SessionView;

  constructor(
    private readonly client: ServiceClient,
    private readonly sink: (html: string) => void = () => {},
  ) {
    this.view = initialView();
  }

  render(): string {
    const html = renderApp(this.view);
    this.sink(html);
    return html;
  }

  private sessionId(): string {
    const id = this.view.sessionId;
    if (id === null) {
      throw new Error("no session");
    }
    return id;
  }

  private async guarded(work: () => Promise<void>): Promise<void> {
    this.view.busy = true;
    this.render();
    try {
      await work();
    } catch (err) {
      if (err instanceof ServiceError) {
        applyError(this.view, err.status, err.body);
      } else {
        throw err;
      }
    } finally {
      this.view.busy = false;
      this.render();
    }
  }

  async create(request: CreateSessionRequest): Promise<void> {
    const mode: SessionMode = request.mode ?? "automatic";
    await this.guarded(async () => {
      const resp = await this.client.createSession(request);
      applyCreate(this.view, resp, mode);
    });
  }

  async step(): Promise<void> {
    if (!canStep(this.view)) {
      return;
    }
    await this.guarded(async () => {
      const resp = await this.client.step(this.sessionId());
      applyStep(this.view, resp);
      // poll the cumulative report once per step; there is no push channel
      const summary = await this.client.fetchReport(this.sessionId());
      applySummary(this.view, summary);
    });
  }

  private async action(name: ActionName, vertexIds?: number[]): Promise<void> {
    await this.guarded(async () => {
      const resp = await this.client.applyAction(this.sessionId(), name, vertexIds);
      applyAction(this.view, name, resp);
    });
  }

  async refine(): Promise<void> {
    if (!canRefine(this.view)) {
      return;
    }
    const picks = selectedIds(this.view);
    // empty selection delegates the choice of split targets to the server
    await this.action("refine", picks.length > 0 ? picks : undefined);
  }

  async accept(): Promise<void> {
    if (!canAccept(this.view)) {
      return;
    }
    await this.action("accept");
  }

  async abort(): Promise<void> {
    if (!canAbort(this.view)) {
      return;
    }
    await this.action("abort");
  }

  /** Fetch the routing table; returns the verbatim bytes to save. */
  async download(): Promise<SavedTable | null> {
    if (!canDownload(this.view)) {
      return null;
    }
    let saved: SavedTable | null = null;
    await this.guarded(async () => {
      const { parsed, text } = await this.client.fetchTable(this.sessionId());
      applyTable(this.view, parsed, text);
      saved = { filename: `routing-table-${this.sessionId()}.json`, text };
    });
    return saved;
  }

  toggle(vertex: number): void {
    toggleCandidate(this.view, vertex);
    this.render();
  }
}
