/** Chat thread state: one in-flight request per session, clarification
 * detection, and message history. */

import type { ApiClient } from "./api.js";
import {
  answerSmiles,
  type ChatMessage,
  type ChatResponse,
  type StructuredAnswer,
} from "./types.js";

/** A reply with no molecules whose only narrative asks a question is a
 * clarification request, not a final answer. */
export function isClarification(answer: StructuredAnswer): boolean {
  if (answerSmiles(answer).length > 0) return false;
  if (answer.sections.length !== 1) return false;
  const narrative = answer.sections[0]?.narrative.trim() ?? "";
  return narrative.endsWith("?") || /please enter a query/i.test(narrative);
}

export class ChatThread {
  readonly messages: ChatMessage[] = [];
  private inFlight = false;

  constructor(
    private readonly client: ApiClient,
    readonly sessionId: string = "default",
    private readonly now: () => number = Date.now,
  ) {}

  get busy(): boolean {
    return this.inFlight;
  }

  async send(text: string): Promise<ChatMessage> {
    const trimmed = text.trim();
    if (!trimmed) throw new Error("message must be non-empty");
    if (this.inFlight) throw new Error("a request is already in flight");
    this.messages.push({ role: "user", text: trimmed, timestamp: this.now() });
    this.inFlight = true;
    try {
      const response: ChatResponse = await this.client.chat(
        trimmed,
        this.sessionId,
      );
      const role = isClarification(response.answer) ? "clarification" : "answer";
      const message: ChatMessage = {
        role,
        text: response.answer.sections.map((s) => s.narrative).join("\n"),
        answer: response.answer,
        timestamp: this.now(),
      };
      this.messages.push(message);
      return message;
    } catch (error) {
      const message: ChatMessage = {
        role: "system",
        text: error instanceof Error ? error.message : String(error),
        timestamp: this.now(),
      };
      this.messages.push(message);
      throw error;
    } finally {
      this.inFlight = false;
    }
  }
}
