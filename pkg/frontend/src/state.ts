/** Browser-local client identity and write serialization. */

const CLIENT_ID_KEY = "timeseek.client_id";

/**
 * Anonymous, persistent client token. No accounts: the server only uses
 * it to deduplicate feedback votes.
 */
export function clientId(storage: Storage): string {
  let id = storage.getItem(CLIENT_ID_KEY);
  if (!id) {
    id = "web-" + Math.random().toString(36).slice(2, 12) + Date.now().toString(36);
    storage.setItem(CLIENT_ID_KEY, id);
  }
  return id;
}

/**
 * FIFO queue for mutating requests: feedback and comment posts run one
 * at a time, in submission order, so retries and UI state stay simple.
 */
export class PostQueue {
  private tail: Promise<unknown> = Promise.resolve();

  enqueue<T>(task: () => Promise<T>): Promise<T> {
    const next = this.tail.then(task, task);
    this.tail = next.catch(() => undefined);
    return next;
  }
}
