// Relaxation wizard: shows one suggested downgrade at a time with its
// vulnerability count. Confirm applies exactly the plan head (k=1) on the
// server; Skip only previews the next-most-vulnerable suggestion, because
// the advisor is strictly greedy and applies downgrades in plan order.
// Auto-run applies the whole remaining plan in one atomic request.

import { h } from './dom.js';
import { LEVEL_LABELS, PRIORITY_LABELS } from './format.js';
import type { Store, WizardState } from './state.js';
import type { RelaxStepDoc } from './types.js';

export interface WizardCardView {
  featureId: string;
  headline: string; // e.g. "intellectual-property: Must -> Should"
  vulnerabilityText: string; // e.g. "admitted by 0 of 28 platforms"
  confirmEnabled: boolean;
  skipEnabled: boolean;
  position: string; // "suggestion 2 of 3"
}

export function describeStep(step: RelaxStepDoc): string {
  const level = step.requirement.requiredLevel
    ? ` (level ${LEVEL_LABELS[step.requirement.requiredLevel]})`
    : '';
  return (
    `${step.requirement.featureId}${level}: ` +
    `${PRIORITY_LABELS[step.fromPriority]} -> ${PRIORITY_LABELS[step.toPriority]}`
  );
}

export function wizardCard(wizard: WizardState, platformCount: number): WizardCardView | null {
  const step = wizard.suggestions[wizard.index];
  if (!step) return null;
  return {
    featureId: step.requirement.featureId,
    headline: describeStep(step),
    vulnerabilityText: `admitted by ${step.vulnerabilityAtStep.supportCount} of ${platformCount} platforms`,
    confirmEnabled: wizard.index === 0 && !wizard.busy,
    skipEnabled: wizard.index + 1 < wizard.suggestions.length && !wizard.busy,
    position: `suggestion ${wizard.index + 1} of ${wizard.suggestions.length}`,
  };
}

export function renderWizard(store: Store, wizard: WizardState, platformCount: number): HTMLElement {
  const section = h('section', { className: 'wizard' }, h('h3', {}, 'Relaxation wizard'));

  if (wizard.finished) {
    section.appendChild(
      h(
        'div',
        { className: 'wizard-done' },
        h('p', {}, `Feasibility restored after ${wizard.appliedSteps.length} downgrade(s).`),
        ...wizard.appliedSteps.map((step) =>
          h('div', { className: 'applied-step' }, describeStep(step)),
        ),
        h('button', { className: 'close-wizard', onClick: () => store.closeWizard() }, 'Close'),
      ),
    );
    return section;
  }

  const card = wizardCard(wizard, platformCount);
  if (!card) {
    section.appendChild(h('p', {}, 'Nothing to relax: the case is already feasible.'));
    return section;
  }

  section.appendChild(
    h(
      'div',
      { className: 'wizard-card', 'data-feature': card.featureId },
      h('p', { className: 'wizard-position' }, card.position),
      h('p', { className: 'wizard-headline' }, card.headline),
      h('p', { className: 'wizard-vulnerability' }, card.vulnerabilityText),
      h(
        'div',
        { className: 'wizard-buttons' },
        h(
          'button',
          {
            className: 'confirm-step',
            disabled: !card.confirmEnabled,
            title:
              card.confirmEnabled || wizard.busy
                ? ''
                : 'Downgrades apply in vulnerability order; go back to the first suggestion to confirm.',
            onClick: () => void store.confirmSuggestion(),
          },
          'Confirm this downgrade',
        ),
        h(
          'button',
          {
            className: 'skip-step',
            disabled: !card.skipEnabled,
            onClick: () => store.skipSuggestion(),
          },
          'Skip (preview next)',
        ),
        wizard.index > 0
          ? h(
              'button',
              { className: 'back-step', onClick: () => store.backToFirstSuggestion() },
              'Back to first',
            )
          : h('span', {}, ''),
        h(
          'button',
          {
            className: 'auto-run',
            disabled: wizard.busy,
            onClick: () => void store.autoRun(),
          },
          'Auto-run full plan',
        ),
        h('button', { className: 'close-wizard', onClick: () => store.closeWizard() }, 'Cancel'),
      ),
    ),
  );
  return section;
}
