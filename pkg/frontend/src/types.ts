/** Wire types mirroring the server's REST payloads. */

export const GROUP_NAMES = ["GR1", "GR2", "GR3", "GR4", "GR5"] as const;
export type GroupName = (typeof GROUP_NAMES)[number];

/** One molecule record: "Smiles" plus property columns (numbers or 0/1 flags). */
export type MoleculeRecord = Record<string, string | number>;

export interface AnswerSection {
  task: string;
  narrative: string;
  molecules: MoleculeRecord[];
}

export interface ToolProvenance {
  name: string;
  parameters: Record<string, unknown>;
}

export interface StructuredAnswer {
  sections: AnswerSection[];
  provenance: ToolProvenance[];
  partial: boolean;
}

export interface ChatResponse {
  session_id: string;
  run_id: string;
  answer: StructuredAnswer;
  plan: string[];
  tools: string[];
}

export type JobStatus = "queued" | "running" | "done" | "failed";

export interface Job {
  id: string;
  kind: string;
  status: JobStatus;
  progress: string;
  result: unknown;
  error: string;
}

export interface GenerateResult {
  molecules: string[];
  valid_fraction: number;
  rows: MoleculeRecord[];
  percentages: Record<GroupName, number>;
}

export type MessageRole = "user" | "system" | "answer" | "clarification";

export interface ChatMessage {
  role: MessageRole;
  text: string;
  answer?: StructuredAnswer;
  timestamp: number;
}

export function isTerminal(status: JobStatus): boolean {
  return status === "done" || status === "failed";
}

/** All SMILES strings present in an answer payload, with multiplicity. */
export function answerSmiles(answer: StructuredAnswer): string[] {
  const out: string[] = [];
  for (const section of answer.sections) {
    for (const mol of section.molecules) {
      const smiles = mol["Smiles"];
      if (typeof smiles === "string" && smiles.length > 0) out.push(smiles);
    }
  }
  return out;
}
