/** Typed client for the server REST API. All chemistry stays server-side. */

import type { ChatResponse, GroupName, Job, MoleculeRecord } from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export type FetchLike = (
  input: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

async function parseDetail(response: { json(): Promise<unknown> }): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: string };
    return body?.detail ?? "";
  } catch {
    return "";
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch as unknown as FetchLike,
  ) {}

  private async request<T>(path: string, method: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (response.status !== 200) {
      throw new ApiError(response.status, await parseDetail(response));
    }
    return (await response.json()) as T;
  }

  chat(message: string, sessionId = "default"): Promise<ChatResponse> {
    return this.request<ChatResponse>("/chat", "POST", {
      message,
      session_id: sessionId,
    });
  }

  generate(
    caseName: string,
    num: number,
    options: { model?: string; trainIfMissing?: boolean } = {},
  ): Promise<{ job_id: string }> {
    return this.request("/generate", "POST", {
      case: caseName,
      num,
      model: options.model ?? "CVAE",
      train_if_missing: options.trainIfMissing ?? false,
    });
  }

  job(jobId: string): Promise<Job> {
    return this.request<Job>(`/jobs/${jobId}`, "GET");
  }

  models(): Promise<Record<string, string>> {
    return this.request("/models", "GET");
  }

  evaluatePipeline(smiles: string[], caseName = ""): Promise<{
    rows: MoleculeRecord[];
    percentages: Record<GroupName, number>;
    n_valid: number;
    n_total: number;
  }> {
    return this.request("/pipeline/evaluate", "POST", {
      smiles,
      case: caseName,
    });
  }

  fetchDataset(target: string, source = "chembl", measure = "IC50"): Promise<{ job_id: string }> {
    return this.request("/datasets/fetch", "POST", { source, target, measure });
  }
}
