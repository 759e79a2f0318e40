/**
 * Single-page search client: a search panel on top, result cards below,
 * each with an inline player, feedback controls, and a per-second
 * comment drawer. All ordering and scoring comes from the server; the
 * UI never re-ranks.
 */

import { ApiClient, ApiError, CommentView, HitView, SearchResponse } from "./api.js";
import { PostQueue, clientId } from "./state.js";

/**
 * Presentation-only mirror of the server's Arabic normalization, used
 * to decide which snippet words to highlight. Scoring stays server-side.
 */
export function displayNormalize(word: string): string {
  return word
    .normalize("NFC")
    .replace(/\p{Mn}/gu, "")
    .replace(/ـ/g, "")
    .replace(/[أإآٱ]/g, "ا")
    .replace(/ى/g, "ي")
    .replace(/ة/g, "ه")
    .toLowerCase();
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function formatSeconds(s: number): string {
  const whole = Math.floor(s);
  const m = Math.floor(whole / 60);
  const sec = whole % 60;
  return `${m}:${String(sec).padStart(2, "0")}`;
}

/** Snippet with every word matching a query term wrapped in <mark>. */
export function renderSnippet(snippet: string, matchedTerms: string[]): HTMLElement {
  const container = el("p", "snippet");
  const matched = new Set(matchedTerms.map(displayNormalize));
  const words = snippet.split(" ");
  words.forEach((word, i) => {
    if (matched.has(displayNormalize(word))) {
      container.appendChild(el("mark", "", word));
    } else {
      container.appendChild(document.createTextNode(word));
    }
    if (i < words.length - 1) container.appendChild(document.createTextNode(" "));
  });
  return container;
}

interface CardRefs {
  hit: HitView;
  query: string;
  root: HTMLElement;
  player: HTMLVideoElement | null;
  positionLabel: HTMLElement;
  thread: HTMLElement;
  feedbackStatus: HTMLElement;
  upButton: HTMLButtonElement;
  downButton: HTMLButtonElement;
}

export class SearchPage {
  private readonly api: ApiClient;
  private readonly client: string;
  private readonly queue = new PostQueue();
  private searchInFlight = false;

  private form!: HTMLFormElement;
  private input!: HTMLInputElement;
  private messageArea!: HTMLElement;
  private resultsArea!: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    api?: ApiClient,
    storage: Storage = window.localStorage,
  ) {
    this.api = api ?? new ApiClient();
    this.client = clientId(storage);
    this.buildShell();
  }

  private buildShell(): void {
    this.root.replaceChildren();
    this.form = el("form", "search-panel");
    this.input = el("input");
    this.input.type = "search";
    this.input.placeholder = "ابحث عن معنى…";
    this.input.setAttribute("aria-label", "search query");
    const button = el("button", "", "بحث");
    button.type = "submit";
    this.form.append(this.input, button);
    this.form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submitSearch();
    });

    this.messageArea = el("div", "message");
    this.messageArea.setAttribute("role", "status");
    this.resultsArea = el("div", "results");
    this.root.append(this.form, this.messageArea, this.resultsArea);
  }

  /** Run one search; empty queries never reach the network. */
  async submitSearch(): Promise<void> {
    const query = this.input.value.trim();
    if (!query) {
      this.showMessage("اكتب كلمة للبحث أولا");
      return;
    }
    if (this.searchInFlight) return;
    this.searchInFlight = true;
    this.showMessage("");
    try {
      const response = await this.api.search(query, this.client);
      this.renderResults(query, response);
    } catch (error) {
      if (error instanceof ApiError) {
        this.showMessage(`تعذر البحث: ${error.message}`);
      } else {
        this.showMessage("تعذر الاتصال بالخادم");
      }
    } finally {
      this.searchInFlight = false;
    }
  }

  private showMessage(text: string): void {
    this.messageArea.textContent = text;
  }

  private renderResults(query: string, response: SearchResponse): void {
    this.resultsArea.replaceChildren();
    if (response.hits.length === 0) {
      this.resultsArea.appendChild(
        el("p", "empty", "لا توجد نتائج في المقاطع المفهرسة."));
    }
    for (const hit of response.hits) {
      this.resultsArea.appendChild(this.buildCard(query, hit));
    }
    if (response.related.length > 0) {
      const aside = el("aside", "related");
      aside.appendChild(el("h3", "", "مصادر أخرى لنفس المعنى"));
      const list = el("ul");
      for (const resource of response.related) {
        const item = el("li");
        item.appendChild(el("strong", "", resource.title));
        item.appendChild(document.createTextNode(" · "));
        item.appendChild(el("span", "", resource.snippet));
        list.appendChild(item);
      }
      aside.appendChild(list);
      this.resultsArea.appendChild(aside);
    }
  }

  private buildCard(query: string, hit: HitView): HTMLElement {
    const card = el("article", "card");
    card.dataset.videoId = hit.video_id;
    card.dataset.startS = String(hit.start_s);

    const header = el("header");
    header.appendChild(el("span", "video-id", hit.video_id));
    header.appendChild(
      el("span", "start", `يبدأ عند ${formatSeconds(hit.start_s)}`));
    header.appendChild(el("span", "score", hit.score.toFixed(3)));
    card.appendChild(header);

    card.appendChild(renderSnippet(hit.snippet, hit.matched_terms));

    const refs: CardRefs = {
      hit,
      query,
      root: card,
      player: null,
      positionLabel: el("span", "position"),
      thread: el("div", "thread"),
      feedbackStatus: el("span", "feedback-status"),
      upButton: el("button", "vote-up", "▲ هذه هي اللحظة"),
      downButton: el("button", "vote-down", "▼ ليست هنا"),
    };

    card.appendChild(this.buildPlayerArea(refs));
    card.appendChild(this.buildFeedbackControls(refs));
    card.appendChild(this.buildCommentDrawer(refs));
    this.renderThread(refs, hit.comments);
    return card;
  }

  private buildPlayerArea(refs: CardRefs): HTMLElement {
    const area = el("div", "player-area");
    const { hit } = refs;
    if (hit.media_ref) {
      const video = el("video");
      video.src = hit.media_ref;
      video.controls = true;
      video.preload = "none";
      video.addEventListener("timeupdate", () => {
        refs.positionLabel.textContent =
          `الموضع الحالي: ${formatSeconds(video.currentTime)}`;
      });
      refs.player = video;
      area.appendChild(video);

      const jump = el("button", "jump", `اذهب إلى ${formatSeconds(hit.start_s)}`);
      jump.type = "button";
      jump.addEventListener("click", () => this.jumpToTime(refs));
      area.appendChild(jump);
    } else {
      // degrade: no playable media, show a copyable locator + timestamp
      const fallback = el("code", "locator",
        `${hit.video_id} @ ${hit.start_s.toFixed(1)}s`);
      area.appendChild(fallback);
    }
    area.appendChild(refs.positionLabel);
    return area;
  }

  /** Seek the inline player to the hit start. */
  jumpToTime(refs: CardRefs): void {
    if (!refs.player) return;
    refs.player.currentTime = refs.hit.start_s;
    refs.positionLabel.textContent =
      `الموضع الحالي: ${formatSeconds(refs.hit.start_s)}`;
    void refs.player.play?.()?.catch?.(() => undefined);
  }

  /** The second feedback and comments anchor to: player position when
   * the user has one, else the hit start. */
  private currentSecond(refs: CardRefs): number {
    if (refs.player && refs.player.currentTime > 0) {
      return refs.player.currentTime;
    }
    return refs.hit.start_s;
  }

  private buildFeedbackControls(refs: CardRefs): HTMLElement {
    const controls = el("div", "feedback");
    refs.upButton.type = "button";
    refs.downButton.type = "button";
    refs.upButton.addEventListener("click", () => void this.submitFeedback(refs, 1));
    refs.downButton.addEventListener("click", () => void this.submitFeedback(refs, -1));
    controls.append(refs.upButton, refs.downButton, refs.feedbackStatus);
    return controls;
  }

  async submitFeedback(refs: CardRefs, vote: 1 | -1): Promise<void> {
    const button = vote === 1 ? refs.upButton : refs.downButton;
    const other = vote === 1 ? refs.downButton : refs.upButton;
    const hadVote = button.classList.contains("voted");
    button.classList.add("voted");
    other.classList.remove("voted");
    refs.feedbackStatus.textContent = "...";
    try {
      await this.queue.enqueue(() => this.api.postFeedback({
        query: refs.query,
        video_id: refs.hit.video_id,
        timestamp_s: this.currentSecond(refs),
        vote,
        client: this.client,
      }));
      refs.feedbackStatus.textContent = "سجلنا رأيك";
    } catch (error) {
      if (!hadVote) button.classList.remove("voted");
      refs.feedbackStatus.textContent = error instanceof ApiError
        ? `لم يسجل: ${error.message}`
        : "لم يسجل: تعذر الاتصال";
    }
  }

  private buildCommentDrawer(refs: CardRefs): HTMLElement {
    const drawer = el("section", "comments");
    drawer.appendChild(el("h4", "", "تعليقات على هذه اللحظة"));
    drawer.appendChild(refs.thread);

    const composer = el("form", "composer");
    const body = el("textarea");
    body.placeholder = "أضف تعليقا عند الموضع الحالي";
    const link = el("input");
    link.type = "url";
    link.placeholder = "رابط (اختياري)";
    const send = el("button", "", "انشر");
    send.type = "submit";
    composer.append(body, link, send);
    composer.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.postComment(refs, body, link);
    });
    drawer.appendChild(composer);
    return drawer;
  }

  async postComment(
    refs: CardRefs,
    body: HTMLTextAreaElement,
    link: HTMLInputElement,
  ): Promise<void> {
    const text = body.value.trim();
    if (!text) {
      refs.feedbackStatus.textContent = "التعليق فارغ";
      return;
    }
    const timestamp = this.currentSecond(refs);
    try {
      await this.queue.enqueue(() => this.api.postComment({
        video_id: refs.hit.video_id,
        timestamp_s: timestamp,
        body: text,
        link: link.value.trim() || undefined,
        client: this.client,
      }));
      body.value = "";
      link.value = "";
      const rows = await this.api.commentsInRange(
        refs.hit.video_id,
        Math.floor(Math.min(refs.hit.start_s, timestamp)),
        Math.ceil(Math.max(refs.hit.end_s, timestamp)),
      );
      this.renderThread(refs, rows);
    } catch (error) {
      refs.feedbackStatus.textContent = error instanceof ApiError
        ? `لم ينشر: ${error.message}`
        : "لم ينشر: تعذر الاتصال";
    }
  }

  /** Comments grouped by their anchor second, in order. */
  private renderThread(refs: CardRefs, comments: CommentView[]): void {
    refs.thread.replaceChildren();
    const bySecond = new Map<number, CommentView[]>();
    for (const comment of comments) {
      const group = bySecond.get(comment.second);
      if (group) {
        group.push(comment);
      } else {
        bySecond.set(comment.second, [comment]);
      }
    }
    for (const [second, group] of [...bySecond.entries()].sort((a, b) => a[0] - b[0])) {
      const block = el("div", "second-group");
      block.dataset.second = String(second);
      block.appendChild(el("h5", "", `عند الثانية ${second}`));
      for (const comment of group) {
        const row = el("div", "comment");
        row.appendChild(el("span", "body", comment.body));
        if (comment.link) {
          const anchor = el("a", "comment-link", comment.link);
          anchor.href = comment.link;
          anchor.rel = "noopener";
          row.appendChild(anchor);
        }
        block.appendChild(row);
      }
      refs.thread.appendChild(block);
    }
  }
}
