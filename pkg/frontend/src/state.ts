// App store: one mutable state object, a subscribe/notify loop, and the
// actions the views dispatch. The case view tracks the last server-acked
// revision separately from local edits so unsaved changes stay visible and
// a 409 can never be silently overwritten.

import { ApiError, DssClient } from './api.js';
import type {
  CaseDoc,
  EvaluationDoc,
  KbCatalog,
  LevelCode,
  PriorityValue,
  RelaxStepDoc,
  RequirementDoc,
} from './types.js';

export interface UiCaseView {
  caseId: string;
  name: string;
  revision: number; // last revision acknowledged by the server
  saved: RequirementDoc[]; // as stored server-side at `revision`
  edited: RequirementDoc[]; // local working copy
  dirty: boolean;
}

export interface ConflictInfo {
  message: string;
  serverRevision: number | null;
}

export interface WizardState {
  open: boolean;
  suggestions: RelaxStepDoc[]; // full plan, vulnerability order
  index: number; // which suggestion is being shown
  busy: boolean;
  finished: boolean;
  appliedSteps: RelaxStepDoc[];
}

export interface AppState {
  catalog: KbCatalog | null;
  cases: { id: string; name: string; revision: number }[];
  view: UiCaseView | null;
  evaluation: EvaluationDoc | null;
  wizard: WizardState | null;
  conflict: ConflictInfo | null;
  error: string | null;
  loading: boolean;
}

type Listener = () => void;

export class Store {
  state: AppState = {
    catalog: null,
    cases: [],
    view: null,
    evaluation: null,
    wizard: null,
    conflict: null,
    error: null,
    loading: false,
  };

  private listeners: Listener[] = [];

  constructor(public client: DssClient) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  private fail(err: unknown): void {
    this.state.error = err instanceof Error ? err.message : String(err);
    this.state.loading = false;
    this.notify();
  }

  // -- bootstrap ----------------------------------------------------------

  async init(): Promise<void> {
    this.state.loading = true;
    this.notify();
    try {
      this.state.catalog = await this.client.getKb();
      this.state.cases = (await this.client.listCases()).cases;
      this.state.loading = false;
      this.state.error = null;
      this.notify();
    } catch (err) {
      this.fail(err);
    }
  }

  async openCase(caseId: string): Promise<void> {
    try {
      const { case: doc, revision } = await this.client.getCase(caseId);
      this.state.view = viewFromCase(doc, revision);
      this.state.conflict = null;
      this.state.wizard = null;
      await this.refreshEvaluation();
    } catch (err) {
      this.fail(err);
    }
  }

  async createCase(name: string): Promise<void> {
    try {
      const { case: doc, revision } = await this.client.createCase({ name });
      this.state.cases = (await this.client.listCases()).cases;
      this.state.view = viewFromCase(doc, revision);
      await this.refreshEvaluation();
    } catch (err) {
      this.fail(err);
    }
  }

  // -- requirement editing (local until committed) --------------------------

  setPriority(featureId: string, priority: PriorityValue, requiredLevel?: LevelCode): void {
    const view = this.state.view;
    if (!view) return;
    view.edited = editRequirement(view.edited, featureId, priority, requiredLevel);
    view.dirty = !sameRequirements(view.edited, view.saved);
    this.notify();
  }

  discardEdits(): void {
    const view = this.state.view;
    if (!view) return;
    view.edited = view.saved.map((r) => ({ ...r }));
    view.dirty = false;
    this.state.conflict = null;
    this.notify();
  }

  /** Commit local edits; re-evaluates on success, raises a merge prompt on 409. */
  async save(): Promise<void> {
    const view = this.state.view;
    if (!view) return;
    try {
      const { case: doc, revision } = await this.client.putRequirements(
        view.caseId,
        view.revision,
        view.edited,
      );
      this.state.view = viewFromCase(doc, revision);
      this.state.conflict = null;
      await this.refreshEvaluation();
    } catch (err) {
      if (err instanceof ApiError && err.isConflict) {
        this.state.conflict = {
          message: err.envelope.message,
          serverRevision: null,
        };
        this.notify();
        return;
      }
      this.fail(err);
    }
  }

  /** Resolve a 409 by reloading the server version (edits are dropped). */
  async reloadAfterConflict(): Promise<void> {
    const view = this.state.view;
    if (!view) return;
    await this.openCase(view.caseId);
  }

  /** Resolve a 409 by reapplying local edits on top of the latest revision. */
  async retryEditsAfterConflict(): Promise<void> {
    const view = this.state.view;
    if (!view) return;
    try {
      const { revision } = await this.client.getCase(view.caseId);
      view.revision = revision;
      this.state.conflict = null;
      await this.save();
    } catch (err) {
      this.fail(err);
    }
  }

  async refreshEvaluation(): Promise<void> {
    const view = this.state.view;
    if (!view) return;
    try {
      this.state.evaluation = await this.client.evaluate(view.caseId);
      this.state.error = null;
      this.notify();
    } catch (err) {
      this.fail(err);
    }
  }

  // -- relaxation wizard -----------------------------------------------------

  async openWizard(): Promise<void> {
    const view = this.state.view;
    if (!view) return;
    try {
      const plan = await this.client.relax(view.caseId, 'suggest');
      this.state.wizard = {
        open: true,
        suggestions: plan.steps,
        index: 0,
        busy: false,
        finished: plan.steps.length === 0,
        appliedSteps: [],
      };
      this.notify();
    } catch (err) {
      this.fail(err);
    }
  }

  closeWizard(): void {
    this.state.wizard = null;
    this.notify();
  }

  /** Preview the next-most-vulnerable suggestion without applying anything. */
  skipSuggestion(): void {
    const wizard = this.state.wizard;
    if (!wizard) return;
    if (wizard.index + 1 < wizard.suggestions.length) {
      wizard.index += 1;
      this.notify();
    }
  }

  backToFirstSuggestion(): void {
    const wizard = this.state.wizard;
    if (!wizard) return;
    wizard.index = 0;
    this.notify();
  }

  /** Apply exactly one downgrade (the head of the plan) server-side. */
  async confirmSuggestion(): Promise<void> {
    const view = this.state.view;
    const wizard = this.state.wizard;
    if (!view || !wizard || wizard.busy) return;
    wizard.busy = true;
    this.notify();
    try {
      const result = await this.client.relax(view.caseId, 'apply', 1);
      wizard.appliedSteps.push(...result.steps);
      this.state.view = viewFromCase(result.finalCase, result.revision);
      this.state.evaluation = result.finalEvaluation;
      if (result.feasibleReached) {
        wizard.finished = true;
        wizard.suggestions = [];
      } else {
        const plan = await this.client.relax(view.caseId, 'suggest');
        wizard.suggestions = plan.steps;
        wizard.index = 0;
      }
      wizard.busy = false;
      this.notify();
    } catch (err) {
      // server-side application is atomic: on failure the case is untouched
      wizard.busy = false;
      this.fail(err);
    }
  }

  /** Apply the whole remaining plan in one request. */
  async autoRun(): Promise<RelaxStepDoc[]> {
    const view = this.state.view;
    const wizard = this.state.wizard;
    if (!view || !wizard || wizard.busy) return [];
    wizard.busy = true;
    this.notify();
    try {
      const result = await this.client.relax(view.caseId, 'apply');
      wizard.appliedSteps.push(...result.steps);
      wizard.suggestions = [];
      wizard.finished = true;
      wizard.busy = false;
      this.state.view = viewFromCase(result.finalCase, result.revision);
      this.state.evaluation = result.finalEvaluation;
      this.notify();
      return result.steps;
    } catch (err) {
      wizard.busy = false;
      this.fail(err);
      return [];
    }
  }
}

// -- pure helpers ------------------------------------------------------------

export function viewFromCase(doc: CaseDoc, revision: number): UiCaseView {
  return {
    caseId: doc.id,
    name: doc.name,
    revision,
    saved: doc.requirements.map((r) => ({ ...r })),
    edited: doc.requirements.map((r) => ({ ...r })),
    dirty: false,
  };
}

export function editRequirement(
  requirements: RequirementDoc[],
  featureId: string,
  priority: PriorityValue,
  requiredLevel?: LevelCode,
): RequirementDoc[] {
  const rest = requirements.filter((r) => r.featureId !== featureId);
  const existing = requirements.find((r) => r.featureId === featureId);
  if (priority === 'none') {
    // None means "not a requirement"; keep the document minimal
    return rest;
  }
  const next: RequirementDoc = { featureId, priority };
  const level = requiredLevel ?? existing?.requiredLevel;
  if (level !== undefined) next.requiredLevel = level;
  return [...rest, next];
}

export function sameRequirements(a: RequirementDoc[], b: RequirementDoc[]): boolean {
  const key = (r: RequirementDoc) => `${r.featureId}|${r.priority}|${r.requiredLevel ?? ''}`;
  const as = a.map(key).sort();
  const bs = b.map(key).sort();
  return as.length === bs.length && as.every((value, i) => value === bs[i]);
}
