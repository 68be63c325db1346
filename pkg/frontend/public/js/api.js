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
export class ServiceError extends Error {
    status;
    body;
    constructor(status, body) {
        super(`service responded ${status}`);
        this.status = status;
        this.body = body;
        this.name = "ServiceError";
    }
}
export class ServiceClient {
    baseUrl;
    log = [];
    fetchImpl;
    constructor(baseUrl = "", fetchImpl) {
        this.baseUrl = baseUrl;
        // wrap instead of storing fetch directly: browsers reject fetch
        // called without its original `this`
        this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
    }
    async request(method, path, body) {
        const payload = body === undefined ? null : JSON.stringify(body);
        const init = { method };
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
    async createSession(body) {
        const text = await this.request("POST", "/sessions", body);
        return JSON.parse(text);
    }
    async step(sessionId) {
        const text = await this.request("POST", `/sessions/${sessionId}/step`);
        return JSON.parse(text);
    }
    async applyAction(sessionId, action, vertexIds) {
        const body = { action };
        if (vertexIds !== undefined) {
            body.vertexIds = vertexIds;
        }
        const text = await this.request("POST", `/sessions/${sessionId}/action`, body);
        return JSON.parse(text);
    }
    async fetchReport(sessionId) {
        const text = await this.request("GET", `/sessions/${sessionId}/report`);
        return JSON.parse(text);
    }
    async fetchGraph(sessionId) {
        const text = await this.request("GET", `/sessions/${sessionId}/graph-summary`);
        return JSON.parse(text);
    }
    /** Raw text is returned alongside the parse; downloads save it untouched. */
    async fetchTable(sessionId) {
        const text = await this.request("GET", `/sessions/${sessionId}/table`);
        return { parsed: JSON.parse(text), text };
    }
}
