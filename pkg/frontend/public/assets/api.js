export class ApiError extends Error {
    status;
    detail;
    constructor(status, detail) {
        super(`${status}: ${detail}`);
        this.status = status;
        this.detail = detail;
        this.name = "ApiError";
    }
}
/**
 * Thin client for the review service. All dashboard data flows through the
 * endpoints below; there is no other backend.
 */
export class ServiceClient {
    baseUrl;
    fetchFn;
    constructor(baseUrl = "", fetchFn) {
        this.baseUrl = baseUrl;
        this.fetchFn = fetchFn ?? ((url) => fetch(url));
    }
    async sessions() {
        return (await this.getJson("/api/sessions"));
    }
    async summary(sessionId) {
        return (await this.getJson(`/api/sessions/${encodeURIComponent(sessionId)}/summary`));
    }
    async timeline(sessionId, from, to) {
        const params = new URLSearchParams();
        if (from !== undefined)
            params.set("from", String(from));
        if (to !== undefined)
            params.set("to", String(to));
        const query = params.toString();
        const path = `/api/sessions/${encodeURIComponent(sessionId)}/timeline${query ? `?${query}` : ""}`;
        return (await this.getJson(path));
    }
    mediaUrl(sessionId) {
        return `${this.baseUrl}/api/sessions/${encodeURIComponent(sessionId)}/media`;
    }
    async getJson(path) {
        const response = await this.fetchFn(this.baseUrl + path);
        if (!response.ok) {
            const text = await response.text().catch(() => "");
            let detail = text;
            try {
                detail = JSON.parse(text).detail ?? text;
            }
            catch {
                // plain-text error body
            }
            throw new ApiError(response.status, detail || "request failed");
        }
        return response.json();
    }
}
//# sourceMappingURL=api.js.map