/**
 * Typed client for the /v1 JSON API. This is the only place the UI
 * touches the network.
 */

export interface CommentView {
  id: string;
  video_id: string;
  second: number;
  body: string;
  link: string | null;
  client_id: string;
  created_at: number;
}

export interface HitView {
  video_id: string;
  start_s: number;
  end_s: number;
  score: number;
  snippet: string;
  matched_terms: string[];
  comments: CommentView[];
  media_ref: string | null;
}

export interface RelatedView {
  source: string;
  title: string;
  locator: string;
  snippet: string;
  score: number;
}

export interface SearchResponse {
  query_norm: string;
  hits: HitView[];
  related: RelatedView[];
}

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
    this.name = "ApiError";
  }
}

async function asJson<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = (await resp.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  async search(q: string, clientId: string, k?: number): Promise<SearchResponse> {
    const params = new URLSearchParams({ q, client: clientId });
    if (k !== undefined) params.set("k", String(k));
    const resp = await fetch(`${this.baseUrl}/v1/search?${params}`);
    return asJson<SearchResponse>(resp);
  }

  async postFeedback(req: {
    query: string;
    video_id: string;
    timestamp_s: number;
    vote: 1 | -1;
    client: string;
  }): Promise<{ id: string }> {
    const resp = await fetch(`${this.baseUrl}/v1/feedback`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(req),
    });
    return asJson<{ id: string }>(resp);
  }

  async postComment(req: {
    video_id: string;
    timestamp_s: number;
    body: string;
    link?: string;
    client: string;
  }): Promise<{ id: string }> {
    const resp = await fetch(`${this.baseUrl}/v1/comments`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(req),
    });
    return asJson<{ id: string }>(resp);
  }

  async commentsInRange(
    videoId: string,
    from: number,
    to: number,
  ): Promise<CommentView[]> {
    const params = new URLSearchParams({ from: String(from), to: String(to) });
    const resp = await fetch(
      `${this.baseUrl}/v1/videos/${encodeURIComponent(videoId)}/comments?${params}`,
    );
    return asJson<CommentView[]>(resp);
  }
}
