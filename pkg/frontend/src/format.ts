// Display formatting for server-provided numbers. The server renders scores
// to one decimal before they reach the wire; these helpers only fix the
// textual form and never do scoring arithmetic.

export function scoreText(score: number): string {
  return score.toFixed(1);
}

export function coverageText(coverage: number): string {
  // catalog coverage arrives with two decimals; badges show whole percents
  return `${Math.round(coverage)}%`;
}

export const PRIORITY_LABELS: Record<string, string> = {
  none: 'None',
  must: 'Must',
  should: 'Should',
  could: 'Could',
  wont: "Won't",
};

export const LEVEL_LABELS: Record<string, string> = {
  L: 'Low',
  M: 'Medium',
  H: 'High',
};
