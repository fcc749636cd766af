// Wire types for the dss HTTP API. Field names mirror the JSON exactly.

export type PriorityValue = 'none' | 'must' | 'should' | 'could' | 'wont';
export type LevelCode = 'L' | 'M' | 'H';

export interface RequirementDoc {
  featureId: string;
  priority: PriorityValue;
  requiredLevel?: LevelCode;
}

export interface WeightsDoc {
  wShould: number;
  wCould: number;
}

export interface CaseDoc {
  id: string;
  name: string;
  organizationNotes: string;
  requirements: RequirementDoc[];
  weights: WeightsDoc;
  kbVersion: string;
}

export interface CaseResponse {
  case: CaseDoc;
  revision: number;
}

export interface BooleanFeatureDoc {
  id: string;
  name: string;
  category: string;
  description: string;
  coverage: number; // percentage, server-computed
}

export interface OrdinalFeatureDoc {
  id: string;
  name: string;
  parameters: string[];
  scale: string[];
}

export interface QualityDoc {
  id: string;
  name: string;
  definition: string;
  sourceModel: string;
}

export interface KbCatalog {
  version: string;
  summary: {
    platforms: number;
    booleanFeatures: number;
    ordinalFeatures: number;
    qualities: number;
    bfpDensity: number;
  };
  platforms: { id: string; name: string; links: string[]; notes: string }[];
  booleanFeatures: BooleanFeatureDoc[];
  ordinalFeatures: OrdinalFeatureDoc[];
  qualities: QualityDoc[];
  coverage: Record<string, number>;
}

export interface ViolationDoc {
  platformId: string;
  requirement: RequirementDoc;
  kind: 'MissingMust' | 'PresentWont' | 'LevelBelowMust';
}

export interface FeasibleEntryDoc {
  platformId: string;
  score: number; // already rendered to one decimal by the server
  supportedSoft: RequirementDoc[];
  missingSoft: RequirementDoc[];
  qualitySubscores: Record<string, number>;
}

export interface EvaluationDoc {
  feasible: FeasibleEntryDoc[];
  infeasible: Record<string, ViolationDoc[]>;
  weights: WeightsDoc;
  timestamp: string;
}

export interface VulnerabilityDoc {
  requirement: RequirementDoc;
  supportCount: number;
  coveragePct: number;
}

export interface RelaxStepDoc {
  requirement: RequirementDoc;
  fromPriority: PriorityValue;
  toPriority: PriorityValue;
  vulnerabilityAtStep: VulnerabilityDoc;
  feasibleCountAfter: number;
}

export interface RelaxResponse {
  mode: 'suggest' | 'apply';
  steps: RelaxStepDoc[];
  finalCase: CaseDoc;
  finalEvaluation: EvaluationDoc;
  feasibleReached: boolean;
  revision: number;
}

export interface ErrorEnvelope {
  code: string;
  message: string;
  diagnostics: { code: string; subject: string; message: string }[];
}
