// MoSCoW requirement editor: one row per catalog feature with a priority
// picker, a level picker for ordinal features, and a coverage badge that
// surfaces the vulnerability signal before infeasibility ever happens.

import { h } from './dom.js';
import { coverageText, LEVEL_LABELS, PRIORITY_LABELS } from './format.js';
import type { Store, UiCaseView } from './state.js';
import type { KbCatalog, LevelCode, PriorityValue, RequirementDoc } from './types.js';

export const WONT_TOOLTIP =
  "Won't-Have means the feature must NOT be present - it is not \"don't care\", " +
  'and it cannot apply to a level-based feature.';

export interface EditorRow {
  featureId: string;
  name: string;
  category: string;
  ordinal: boolean;
  priority: PriorityValue;
  requiredLevel: LevelCode | null;
  coverageBadge: string | null; // e.g. "64%", Boolean features only
  zeroCoverageWarning: boolean; // Must on a feature nothing supports
  wontDisabled: boolean;
  wontTooltip: string | null;
}

const PRIORITIES: PriorityValue[] = ['none', 'must', 'should', 'could', 'wont'];
const LEVELS: LevelCode[] = ['L', 'M', 'H'];

export function editorRows(catalog: KbCatalog, requirements: RequirementDoc[]): EditorRow[] {
  const byFeature = new Map(requirements.map((r) => [r.featureId, r]));
  const rows: EditorRow[] = [];
  for (const feature of catalog.booleanFeatures) {
    const req = byFeature.get(feature.id);
    const priority = req?.priority ?? 'none';
    rows.push({
      featureId: feature.id,
      name: feature.name,
      category: feature.category,
      ordinal: false,
      priority,
      requiredLevel: null,
      coverageBadge: coverageText(feature.coverage),
      zeroCoverageWarning: priority === 'must' && feature.coverage === 0,
      wontDisabled: false,
      wontTooltip: null,
    });
  }
  for (const feature of catalog.ordinalFeatures) {
    const req = byFeature.get(feature.id);
    rows.push({
      featureId: feature.id,
      name: feature.name,
      category: 'ordinal',
      ordinal: true,
      priority: req?.priority ?? 'none',
      requiredLevel: req?.requiredLevel ?? 'M',
      coverageBadge: null,
      zeroCoverageWarning: false,
      wontDisabled: true,
      wontTooltip: WONT_TOOLTIP,
    });
  }
  return rows;
}

export function renderEditor(store: Store, catalog: KbCatalog, view: UiCaseView): HTMLElement {
  const rows = editorRows(catalog, view.edited);
  const table = h('table', { className: 'editor-table' });
  table.appendChild(
    h(
      'tr',
      {},
      h('th', {}, 'feature'),
      h('th', {}, 'coverage'),
      h('th', {}, 'priority'),
      h('th', {}, 'level'),
    ),
  );
  for (const row of rows) {
    table.appendChild(renderRow(store, row));
  }

  const header = h(
    'div',
    { className: 'editor-header' },
    h('span', { className: 'case-name' }, view.name),
    h('span', { className: 'revision-badge' }, `revision ${view.revision}`),
    view.dirty
      ? h('span', { className: 'dirty-badge' }, 'unsaved edits')
      : h('span', { className: 'synced-badge' }, 'synced'),
    h(
      'button',
      { className: 'save-button', disabled: !view.dirty, onClick: () => void store.save() },
      'Save & re-evaluate',
    ),
    h(
      'button',
      { className: 'discard-button', disabled: !view.dirty, onClick: () => store.discardEdits() },
      'Discard edits',
    ),
  );
  return h('section', { className: 'editor' }, header, table);
}

function renderRow(store: Store, row: EditorRow): HTMLElement {
  const prioritySelect = h('select', {
    className: 'priority-select',
    'data-feature': row.featureId,
    onChange: (event: Event) => {
      const value = (event.target as HTMLSelectElement).value as PriorityValue;
      store.setPriority(row.featureId, value, row.ordinal ? row.requiredLevel ?? 'M' : undefined);
    },
  }) as HTMLSelectElement;
  for (const priority of PRIORITIES) {
    const option = h('option', { value: priority }, PRIORITY_LABELS[priority]) as HTMLOptionElement;
    if (priority === row.priority) option.setAttribute('selected', '');
    if (priority === 'wont' && row.wontDisabled) {
      option.setAttribute('disabled', '');
      if (row.wontTooltip) option.setAttribute('title', row.wontTooltip);
    }
    prioritySelect.appendChild(option);
  }
  if (row.wontDisabled && row.wontTooltip) prioritySelect.setAttribute('title', row.wontTooltip);

  let levelCell: HTMLElement;
  if (row.ordinal) {
    const levelSelect = h('select', {
      className: 'level-select',
      'data-feature': row.featureId,
      onChange: (event: Event) => {
        const value = (event.target as HTMLSelectElement).value as LevelCode;
        store.setPriority(row.featureId, row.priority, value);
      },
    });
    for (const level of LEVELS) {
      const option = h('option', { value: level }, LEVEL_LABELS[level]) as HTMLOptionElement;
      if (level === row.requiredLevel) option.setAttribute('selected', '');
      levelSelect.appendChild(option);
    }
    levelCell = levelSelect;
  } else {
    levelCell = h('span', { className: 'level-na' }, '-');
  }

  const badges: HTMLElement[] = [];
  if (row.coverageBadge !== null) {
    badges.push(h('span', { className: 'coverage-badge' }, row.coverageBadge));
  }
  if (row.zeroCoverageWarning) {
    badges.push(
      h('span', { className: 'warning-badge' }, '0% of platforms support this'),
    );
  }

  return h(
    'tr',
    { className: 'editor-row', 'data-feature': row.featureId },
    h('td', {}, h('span', { className: 'feature-name' }, row.name)),
    h('td', {}, ...badges),
    h('td', {}, prioritySelect),
    h('td', {}, levelCell),
  );
}
