// Live ranking view: score bars in server order, per-quality sub-bars, and
// the violations list for excluded platforms. Every number shown is lifted
// verbatim from the evaluation response.

import { h } from './dom.js';
import { scoreText } from './format.js';
import type { EvaluationDoc, KbCatalog, ViolationDoc } from './types.js';

export interface RankingRow {
  rank: number;
  platformId: string;
  platformName: string;
  scoreText: string; // API score at one decimal, e.g. "79.2"
  barWidth: number; // percent width, the raw API score
  qualities: { qualityId: string; qualityName: string; scoreText: string; barWidth: number }[];
  supportedCount: number;
  missingCount: number;
}

export interface InfeasibleRow {
  platformId: string;
  platformName: string;
  violations: string[];
}

const KIND_TEXT: Record<ViolationDoc['kind'], string> = {
  MissingMust: 'missing Must feature',
  PresentWont: "supports a Won't feature",
  LevelBelowMust: 'below the Must level for',
};

export function rankingRows(catalog: KbCatalog, evaluation: EvaluationDoc): RankingRow[] {
  const platformNames = new Map(catalog.platforms.map((p) => [p.id, p.name]));
  const qualityNames = new Map(catalog.qualities.map((q) => [q.id, q.name]));
  return evaluation.feasible.map((entry, i) => ({
    rank: i + 1,
    platformId: entry.platformId,
    platformName: platformNames.get(entry.platformId) ?? entry.platformId,
    scoreText: scoreText(entry.score),
    barWidth: entry.score,
    qualities: Object.entries(entry.qualitySubscores)
      .sort(([a], [b]) => (a < b ? -1 : 1))
      .map(([qualityId, score]) => ({
        qualityId,
        qualityName: qualityNames.get(qualityId) ?? qualityId,
        scoreText: scoreText(score),
        barWidth: score,
      })),
    supportedCount: entry.supportedSoft.length,
    missingCount: entry.missingSoft.length,
  }));
}

export function infeasibleRows(catalog: KbCatalog, evaluation: EvaluationDoc): InfeasibleRow[] {
  const platformNames = new Map(catalog.platforms.map((p) => [p.id, p.name]));
  const featureNames = new Map<string, string>();
  for (const f of catalog.booleanFeatures) featureNames.set(f.id, f.name);
  for (const f of catalog.ordinalFeatures) featureNames.set(f.id, f.name);
  return Object.keys(evaluation.infeasible)
    .sort()
    .map((platformId) => ({
      platformId,
      platformName: platformNames.get(platformId) ?? platformId,
      violations: evaluation.infeasible[platformId].map(
        (v) =>
          `${KIND_TEXT[v.kind]} ${featureNames.get(v.requirement.featureId) ?? v.requirement.featureId}`,
      ),
    }));
}

export function renderRanking(
  catalog: KbCatalog,
  evaluation: EvaluationDoc,
  onOpenWizard: () => void,
): HTMLElement {
  const section = h('section', { className: 'ranking' });
  const rows = rankingRows(catalog, evaluation);

  if (rows.length === 0) {
    section.appendChild(
      h(
        'div',
        { className: 'empty-feasible' },
        h('p', {}, 'No platform satisfies every hard constraint.'),
        h(
          'button',
          { className: 'open-wizard-button', onClick: onOpenWizard },
          'Open the relaxation wizard',
        ),
      ),
    );
  }

  for (const row of rows) {
    const qualityBars = row.qualities.map((q) =>
      h(
        'div',
        { className: 'quality-row' },
        h('span', { className: 'quality-name' }, q.qualityName),
        h(
          'div',
          { className: 'bar-track' },
          h('div', { className: 'bar quality-bar', style: `width:${q.barWidth}%` }),
        ),
        h('span', { className: 'quality-score' }, q.scoreText),
      ),
    );
    section.appendChild(
      h(
        'div',
        { className: 'ranking-row', 'data-platform': row.platformId },
        h('span', { className: 'rank' }, String(row.rank)),
        h('span', { className: 'platform-name' }, row.platformName),
        h(
          'div',
          { className: 'bar-track' },
          h('div', { className: 'bar score-bar', style: `width:${row.barWidth}%` }),
        ),
        h('span', { className: 'score' }, row.scoreText),
        h(
          'span',
          { className: 'soft-counts' },
          `${row.supportedCount} soft met / ${row.missingCount} missing`,
        ),
        h('div', { className: 'quality-bars' }, ...qualityBars),
      ),
    );
  }

  const excluded = infeasibleRows(catalog, evaluation);
  if (excluded.length > 0) {
    const list = h('div', { className: 'infeasible-list' }, h('h3', {}, 'Excluded platforms'));
    for (const row of excluded) {
      list.appendChild(
        h(
          'div',
          { className: 'infeasible-row', 'data-platform': row.platformId },
          h('span', { className: 'platform-name' }, row.platformName),
          h('span', { className: 'violations' }, row.violations.join('; ')),
        ),
      );
    }
    section.appendChild(list);
  }
  return section;
}
