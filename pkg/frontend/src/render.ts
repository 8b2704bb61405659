/** HTML renderers for structured answers: sections, molecule cards, and
 * GR1-GR5 badges. Pure string -> string; no client-side chemistry. */

import {
  GROUP_NAMES,
  type AnswerSection,
  type MoleculeRecord,
  type StructuredAnswer,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function flagPasses(value: string | number | undefined): boolean {
  return value === 1 || value === "1";
}

/** Fixed GR1 -> GR5 order; passing groups get the "pass" class. */
export function renderBadges(mol: MoleculeRecord): string {
  const badges = GROUP_NAMES.map((name) => {
    const cls = flagPasses(mol[name]) ? "badge pass" : "badge fail";
    return `<span class="${cls}" data-group="${name}">${name}</span>`;
  });
  return `<div class="badges">${badges.join("")}</div>`;
}

const BADGE_KEYS = new Set<string>(GROUP_NAMES);

export function renderMoleculeCard(mol: MoleculeRecord): string {
  const smiles = typeof mol["Smiles"] === "string" ? mol["Smiles"] : "";
  const properties = Object.entries(mol)
    .filter(([key]) => key !== "Smiles" && !BADGE_KEYS.has(key))
    .map(
      ([key, value]) =>
        `<dt>${escapeHtml(key)}</dt><dd>${escapeHtml(String(value))}</dd>`,
    )
    .join("");
  return [
    `<div class="molecule-card" data-smiles="${escapeHtml(smiles)}">`,
    `<code class="smiles">${escapeHtml(smiles)}</code>`,
    `<button class="copy" data-smiles="${escapeHtml(smiles)}">Copy</button>`,
    renderBadges(mol),
    `<dl class="properties">${properties}</dl>`,
    `</div>`,
  ].join("");
}

export function renderSection(section: AnswerSection, index: number): string {
  const cards =
    section.molecules.length === 0
      ? `<p class="no-hits">No molecules for this task.</p>`
      : section.molecules.map(renderMoleculeCard).join("");
  return [
    `<section class="answer-section" data-task-index="${index}">`,
    `<h3>Task ${index + 1}: ${escapeHtml(section.task)}</h3>`,
    `<p class="narrative">${escapeHtml(section.narrative)}</p>`,
    cards,
    `</section>`,
  ].join("");
}

export function renderAnswer(answer: StructuredAnswer): string {
  const sections = answer.sections
    .map((section, i) => renderSection(section, i))
    .join("");
  const partial = answer.partial
    ? `<p class="partial-warning">Partial answer: some results could not be summarized.</p>`
    : "";
  return `<div class="structured-answer">${sections}${partial}</div>`;
}
