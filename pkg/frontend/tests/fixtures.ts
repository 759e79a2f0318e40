/**
 * In-memory fixture server: a fetch replacement implementing just enough
 * of the /v1 contract for the UI tests. The comment endpoint floors
 * timestamps to whole seconds exactly like the real service.
 */

import type { CommentView, HitView, SearchResponse } from "../src/api.js";

export interface RecordedRequest {
  method: string;
  path: string;
  body: unknown;
}

export class FixtureServer {
  requests: RecordedRequest[] = [];
  searchResponse: SearchResponse;
  searchStatus = 200;
  feedbackStatus = 201;
  private comments: CommentView[] = [];
  private nextId = 1;

  constructor(searchResponse: SearchResponse) {
    this.searchResponse = searchResponse;
  }

  seedComments(rows: CommentView[]): void {
    this.comments = [...rows];
  }

  fetch = async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    const url = new URL(String(input), "http://fixture.test");
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.requests.push({ method, path: url.pathname, body });

    if (url.pathname === "/v1/search") {
      if (this.searchStatus !== 200) {
        return json(this.searchStatus, { error: "EmptyQuery", detail: "rejected" });
      }
      return json(200, this.searchResponse);
    }
    if (url.pathname === "/v1/feedback" && method === "POST") {
      if (this.feedbackStatus !== 201) {
        return json(this.feedbackStatus, { error: "Boom", detail: "server error" });
      }
      return json(201, { id: `fb${this.nextId++}` });
    }
    if (url.pathname === "/v1/comments" && method === "POST") {
      const row: CommentView = {
        id: `c${this.nextId++}`,
        video_id: body.video_id,
        second: Math.floor(body.timestamp_s),
        body: body.body,
        link: body.link ?? null,
        client_id: body.client,
        created_at: Date.now() / 1000,
      };
      this.comments.push(row);
      return json(201, { id: row.id });
    }
    const threadMatch = url.pathname.match(/^\/v1\/videos\/([^/]+)\/comments$/);
    if (threadMatch) {
      const from = Number(url.searchParams.get("from") ?? 0);
      const to = Number(url.searchParams.get("to") ?? Infinity);
      const rows = this.comments
        .filter((c) => c.video_id === decodeURIComponent(threadMatch[1]!) &&
          c.second >= from && c.second <= to)
        .sort((a, b) => a.second - b.second || a.created_at - b.created_at);
      return json(200, rows);
    }
    return json(404, { error: "NotFound", detail: url.pathname });
  };
}

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export function makeHit(overrides: Partial<HitView>): HitView {
  return {
    video_id: "vid",
    start_s: 10,
    end_s: 14,
    score: 1.0,
    snippet: "بسم الله الرحمن الرحيم",
    matched_terms: ["الرحمن"],
    comments: [],
    media_ref: "media/vid.mp4",
    ...overrides,
  };
}

export function makeSearchResponse(hits: HitView[]): SearchResponse {
  return { query_norm: "الرحمن", hits, related: [] };
}
