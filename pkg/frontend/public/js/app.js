/**
 * SessionApp drives one session: it owns the view state, calls the
 * service through the typed client, and re-renders after every exchange.
 * All HTTP errors land in the view verbatim instead of being thrown at
 * the DOM glue.
 */
import { ServiceError } from "./api.js";
import { renderApp } from "./render.js";
import { applyAction, applyCreate, applyError, applyStep, applySummary, applyTable, canAbort, canAccept, canDownload, canRefine, canStep, initialView, selectedIds, toggleCandidate, } from "./state.js";
export class SessionApp {
    client;
    sink;
    view;
    constructor(client, sink = () => { }) {
        this.client = client;
        this.sink = sink;
        this.view = initialView();
    }
    render() {
        const html = renderApp(this.view);
        this.sink(html);
        return html;
    }
    sessionId() {
        const id = this.view.sessionId;
        if (id === null) {
            throw new Error("no session");
        }
        return id;
    }
    async guarded(work) {
        this.view.busy = true;
        this.render();
        try {
            await work();
        }
        catch (err) {
            if (err instanceof ServiceError) {
                applyError(this.view, err.status, err.body);
            }
            else {
                throw err;
            }
        }
        finally {
            this.view.busy = false;
            this.render();
        }
    }
    async create(request) {
        const mode = request.mode ?? "automatic";
        await this.guarded(async () => {
            const resp = await this.client.createSession(request);
            applyCreate(this.view, resp, mode);
        });
    }
    async step() {
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
    async action(name, vertexIds) {
        await this.guarded(async () => {
            const resp = await this.client.applyAction(this.sessionId(), name, vertexIds);
            applyAction(this.view, name, resp);
        });
    }
    async refine() {
        if (!canRefine(this.view)) {
            return;
        }
        const picks = selectedIds(this.view);
        // empty selection delegates the choice of split targets to the server
        await this.action("refine", picks.length > 0 ? picks : undefined);
    }
    async accept() {
        if (!canAccept(this.view)) {
            return;
        }
        await this.action("accept");
    }
    async abort() {
        if (!canAbort(this.view)) {
            return;
        }
        await this.action("abort");
    }
    /** Fetch the routing table; returns the verbatim bytes to save. */
    async download() {
        if (!canDownload(this.view)) {
            return null;
        }
        let saved = null;
        await this.guarded(async () => {
            const { parsed, text } = await this.client.fetchTable(this.sessionId());
            applyTable(this.view, parsed, text);
            saved = { filename: `routing-table-${this.sessionId()}.json`, text };
        });
        return saved;
    }
    toggle(vertex) {
        toggleCandidate(this.view, vertex);
        this.render();
    }
}
