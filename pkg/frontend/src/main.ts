import { ApiClient } from "./api.js";
import { SearchPage } from "./app.js";

declare global {
  interface Window {
    TIMESEEK_API_BASE?: string;
  }
}

const root = document.getElementById("app");
if (root) {
  new SearchPage(root, new ApiClient(window.TIMESEEK_API_BASE ?? ""));
}
