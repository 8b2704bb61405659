/** Job polling: timer-driven, stops at the first terminal state. */

import type { ApiClient } from "./api.js";
import { isTerminal, type Job } from "./types.js";

export interface PollOptions {
  intervalMs?: number;
  maxAttempts?: number;
  onUpdate?: (job: Job) => void;
  /** Injectable for tests; defaults to setTimeout-based sleep. */
  sleep?: (ms: number) => Promise<void>;
}

const defaultSleep = (ms: number) =>
  new Promise<void>((resolve) => setTimeout(resolve, ms));

/**
 * Polls until the job reaches done/failed; resolves with the terminal
 * job. Rejects if maxAttempts is exhausted first.
 */
export async function pollJob(
  client: ApiClient,
  jobId: string,
  options: PollOptions = {},
): Promise<Job> {
  const interval = options.intervalMs ?? 500;
  const maxAttempts = options.maxAttempts ?? 240;
  const sleep = options.sleep ?? defaultSleep;
  for (let attempt = 0; attempt < maxAttempts; attempt++) {
    const job = await client.job(jobId);
    options.onUpdate?.(job);
    if (isTerminal(job.status)) return job;
    await sleep(interval);
  }
  throw new Error(`job ${jobId} did not reach a terminal state`);
}
