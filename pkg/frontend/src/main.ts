/** Browser entry point: wires the chat thread and answer renderer to
 * the DOM. All state lives in ChatThread; this file only reflects it. */

import { ApiClient } from "./api.js";
import { renderAnswer } from "./render.js";
import { ChatThread } from "./thread.js";
import type { ChatMessage } from "./types.js";

const API_BASE = (window as { MADD_API_BASE?: string } & Window).MADD_API_BASE ?? "";

function sessionId(): string {
  const key = "madd-session";
  let id = window.localStorage.getItem(key);
  if (!id) {
    id = "web-" + Math.random().toString(36).slice(2);
    window.localStorage.setItem(key, id);
  }
  return id;
}

function messageHtml(message: ChatMessage): string {
  if (message.role === "answer" && message.answer) {
    return `<div class="message answer">${renderAnswer(message.answer)}</div>`;
  }
  const text = message.text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
  return `<div class="message ${message.role}">${text}</div>`;
}

function main(): void {
  const threadEl = document.getElementById("thread");
  const form = document.getElementById("chat-form") as HTMLFormElement | null;
  const input = document.getElementById("chat-input") as HTMLInputElement | null;
  if (!threadEl || !form || !input) return;

  const thread = new ChatThread(new ApiClient(API_BASE), sessionId());

  const redraw = () => {
    threadEl.innerHTML = thread.messages.map(messageHtml).join("");
    threadEl.lastElementChild?.scrollIntoView({ block: "end" });
  };

  threadEl.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.matches("button.copy")) {
      const smiles = target.getAttribute("data-smiles") ?? "";
      void navigator.clipboard.writeText(smiles);
    }
  });

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const text = input.value;
    if (!text.trim() || thread.busy) return;
    input.value = "";
    void thread
      .send(text)
      .catch(() => undefined)
      .finally(redraw);
    redraw();
  });
}

main();
