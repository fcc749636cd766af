// Bootstrap and top-level render loop. The page re-renders from scratch on
// every store notification; at this scale that is simpler than any diffing.

import { DssClient } from './api.js';
import { h } from './dom.js';
import { renderEditor } from './editor.js';
import { renderRanking } from './ranking.js';
import { Store } from './state.js';
import { renderWizard } from './wizard.js';

const DEFAULT_BASE = 'http://127.0.0.1:8437';

function baseUrl(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get('api') ?? DEFAULT_BASE;
}

const store = new Store(new DssClient(baseUrl()));
const root = document.getElementById('app');

function renderCasePicker(): HTMLElement {
  const picker = h('div', { className: 'case-picker' }, h('h3', {}, 'Cases'));
  for (const entry of store.state.cases) {
    picker.appendChild(
      h(
        'button',
        { className: 'case-link', onClick: () => void store.openCase(entry.id) },
        `${entry.name} (rev ${entry.revision})`,
      ),
    );
  }
  const nameInput = h('input', { placeholder: 'new case name', className: 'new-case-name' });
  picker.appendChild(
    h(
      'div',
      { className: 'new-case' },
      nameInput,
      h(
        'button',
        {
          onClick: () => {
            const name = (nameInput as HTMLInputElement).value.trim();
            if (name) void store.createCase(name);
          },
        },
        'Create case',
      ),
    ),
  );
  return picker;
}

function renderConflict(): HTMLElement {
  return h(
    'div',
    { className: 'conflict-banner' },
    h('p', {}, 'Someone else changed this case. Your edits were not saved.'),
    h(
      'button',
      { onClick: () => void store.reloadAfterConflict() },
      'Reload server version (drop my edits)',
    ),
    h(
      'button',
      { onClick: () => void store.retryEditsAfterConflict() },
      'Reapply my edits on top',
    ),
  );
}

function render(): void {
  if (!root) return;
  root.innerHTML = '';
  const { catalog, view, evaluation, wizard, conflict, error, loading } = store.state;

  root.appendChild(h('h1', {}, 'Platform selection cockpit'));
  if (loading) root.appendChild(h('p', { className: 'loading' }, 'loading...'));
  if (error) root.appendChild(h('div', { className: 'error-banner' }, error));
  if (conflict) root.appendChild(renderConflict());

  if (!catalog) return;
  root.appendChild(
    h(
      'p',
      { className: 'kb-line' },
      `knowledge base ${catalog.version}: ${catalog.summary.platforms} platforms, ` +
        `${catalog.summary.booleanFeatures + catalog.summary.ordinalFeatures} features`,
    ),
  );
  root.appendChild(renderCasePicker());

  if (view) {
    root.appendChild(renderEditor(store, catalog, view));
  }
  if (wizard?.open) {
    root.appendChild(renderWizard(store, wizard, catalog.summary.platforms));
  }
  if (view && evaluation && !wizard?.open) {
    root.appendChild(renderRanking(catalog, evaluation, () => void store.openWizard()));
  }
}

store.subscribe(render);
void store.init();
