import type { SessionInfo, SessionSummary, TimelineSlice } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`${status}: ${detail}`);
    this.name = "ApiError";
  }
}

type FetchLike = (url: string) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
  text(): Promise<string>;
}>;

/** What the screens need from the backend; tests substitute fakes. */
export interface DashboardApi {
  sessions(): Promise<SessionInfo[]>;
  summary(sessionId: string): Promise<SessionSummary>;
  timeline(sessionId: string, from?: number, to?: number): Promise<TimelineSlice>;
  mediaUrl(sessionId: string): string;
}

/**
 * Thin client for the review service. All dashboard data flows through the
 * endpoints below; there is no other backend.
 */
export class ServiceClient implements DashboardApi {
  private readonly fetchFn: FetchLike;

  constructor(
    private readonly baseUrl = "",
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((url) => fetch(url));
  }

  async sessions(): Promise<SessionInfo[]> {
    return (await this.getJson("/api/sessions")) as SessionInfo[];
  }

  async summary(sessionId: string): Promise<SessionSummary> {
    return (await this.getJson(`/api/sessions/${encodeURIComponent(sessionId)}/summary`)) as SessionSummary;
  }

  async timeline(sessionId: string, from?: number, to?: number): Promise<TimelineSlice> {
    const params = new URLSearchParams();
    if (from !== undefined) params.set("from", String(from));
    if (to !== undefined) params.set("to", String(to));
    const query = params.toString();
    const path = `/api/sessions/${encodeURIComponent(sessionId)}/timeline${query ? `?${query}` : ""}`;
    return (await this.getJson(path)) as TimelineSlice;
  }

  mediaUrl(sessionId: string): string {
    return `${this.baseUrl}/api/sessions/${encodeURIComponent(sessionId)}/media`;
  }

  private async getJson(path: string): Promise<unknown> {
    const response = await this.fetchFn(this.baseUrl + path);
    if (!response.ok) {
      const text = await response.text().catch(() => "");
      let detail = text;
      try {
        detail = (JSON.parse(text) as { detail?: string }).detail ?? text;
      } catch {
        // plain-text error body
      }
      throw new ApiError(response.status, detail || "request failed");
    }
    return response.json();
  }
}
