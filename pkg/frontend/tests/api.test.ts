import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { MockServer, answerWith, makeChatResponse } from "./mockServer.js";

describe("ApiClient", () => {
  it("posts chat messages with the session id", async () => {
    const server = new MockServer();
    server.on("/chat", () => ({
      status: 200,
      payload: makeChatResponse(answerWith([]), "s9"),
    }));
    const client = new ApiClient("http://api.test", server.fetch);
    const response = await client.chat("hello", "s9");
    expect(response.session_id).toBe("s9");
    expect(server.requests).toHaveLength(1);
    expect(server.requests[0]).toMatchObject({
      path: "/chat",
      method: "POST",
      body: { message: "hello", session_id: "s9" },
    });
  });

  it("wraps non-200 responses in ApiError with the server detail", async () => {
    const server = new MockServer();
    server.on("/chat", () => ({ status: 400, payload: { detail: "empty message" } }));
    const client = new ApiClient("http://api.test", server.fetch);
    await expect(client.chat("x")).rejects.toThrowError(ApiError);
    const error = (await client.chat("x").catch((e) => e)) as ApiError;
    expect(error.status).toBe(400);
    expect(error.detail).toBe("empty message");
  });

  it("sends generate requests and returns the job id", async () => {
    const server = new MockServer();
    server.on("/generate", () => ({ status: 200, payload: { job_id: "j1" } }));
    const client = new ApiClient("http://api.test", server.fetch);
    const { job_id } = await client.generate("Alzhmr", 3, { trainIfMissing: true });
    expect(job_id).toBe("j1");
    expect(server.requests[0]?.body).toEqual({
      case: "Alzhmr",
      num: 3,
      model: "CVAE",
      train_if_missing: true,
    });
  });

  it("fetches trained models", async () => {
    const server = new MockServer();
    server.on("/models", () => ({
      status: 200,
      payload: { Alzhmr: "trained model" },
    }));
    const client = new ApiClient("http://api.test", server.fetch);
    expect(await client.models()).toEqual({ Alzhmr: "trained model" });
    expect(server.requests[0]?.method).toBe("GET");
  });

  it("evaluates SMILES through the pipeline endpoint", async () => {
    const server = new MockServer();
    server.on("/pipeline/evaluate", () => ({
      status: 200,
      payload: {
        rows: [{ Smiles: "CCO", GR1: 0 }],
        percentages: { GR1: 0, GR2: 0, GR3: 0, GR4: 0, GR5: 0 },
        n_valid: 1,
        n_total: 1,
      },
    }));
    const client = new ApiClient("http://api.test", server.fetch);
    const result = await client.evaluatePipeline(["CCO"]);
    expect(result.n_valid).toBe(1);
    expect(server.requests[0]?.body).toEqual({ smiles: ["CCO"], case: "" });
  });
});
