import { describe, expect, it } from "vitest";

import { ApiError, ServiceClient } from "../src/api.js";

interface FakeResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
  text(): Promise<string>;
}

function jsonResponse(body: unknown, status = 200): FakeResponse {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: () => Promise.resolve(body),
    text: () => Promise.resolve(JSON.stringify(body)),
  };
}

function textResponse(body: string, status: number): FakeResponse {
  return {
    ok: false,
    status,
    json: () => Promise.reject(new Error("not json")),
    text: () => Promise.resolve(body),
  };
}

function clientWith(responder: (url: string) => FakeResponse): { client: ServiceClient; urls: string[] } {
  const urls: string[] = [];
  const client = new ServiceClient("", (url) => {
    urls.push(url);
    return Promise.resolve(responder(url));
  });
  return { client, urls };
}

describe("ServiceClient", () => {
  it("hits the session index", async () => {
    const { client, urls } = clientWith(() => jsonResponse([]));
    await client.sessions();
    expect(urls).toEqual(["/api/sessions"]);
  });

  it("builds summary and timeline paths, escaping the id", async () => {
    const { client, urls } = clientWith(() => jsonResponse({}));
    await client.summary("week 3");
    await client.timeline("week 3");
    await client.timeline("s1", 10, 30.5);
    expect(urls).toEqual([
      "/api/sessions/week%203/summary",
      "/api/sessions/week%203/timeline",
      "/api/sessions/s1/timeline?from=10&to=30.5",
    ]);
  });

  it("passes a lone from bound through", async () => {
    const { client, urls } = clientWith(() => jsonResponse({}));
    await client.timeline("s1", 42);
    expect(urls).toEqual(["/api/sessions/s1/timeline?from=42"]);
  });

  it("prefixes a base url and exposes the media url without fetching", () => {
    const client = new ServiceClient("http://reviewer:8000");
    expect(client.mediaUrl("s1")).toBe("http://reviewer:8000/api/sessions/s1/media");
  });

  it("raises ApiError with the service detail", async () => {
    const { client } = clientWith(() => jsonResponse({ detail: "session 'x' is not analyzed" }, 404));
    const err = await client.summary("x").catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(404);
    expect((err as ApiError).detail).toBe("session 'x' is not analyzed");
  });

  it("falls back to the raw body when the error is not json", async () => {
    const { client } = clientWith(() => textResponse("bad gateway", 502));
    const err = await client.sessions().catch((e: unknown) => e);
    expect((err as ApiError).detail).toBe("bad gateway");
  });
});
