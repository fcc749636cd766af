// Typed client for the dss service. Every number the UI shows comes from
// these responses; nothing is recomputed client-side.

import type {
  CaseResponse,
  EvaluationDoc,
  ErrorEnvelope,
  KbCatalog,
  RelaxResponse,
  RequirementDoc,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public status: number,
    public envelope: ErrorEnvelope,
  ) {
    super(`${envelope.code}: ${envelope.message}`);
  }

  get isConflict(): boolean {
    return this.status === 409;
  }
}

export class DssClient {
  constructor(public baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, payload as ErrorEnvelope);
    }
    return payload as T;
  }

  getKb(): Promise<KbCatalog> {
    return this.request('GET', '/kb');
  }

  listCases(): Promise<{ cases: { id: string; name: string; revision: number }[] }> {
    return this.request('GET', '/cases');
  }

  createCase(doc: { id?: string; name: string; requirements?: RequirementDoc[] }): Promise<CaseResponse> {
    return this.request('POST', '/cases', doc);
  }

  getCase(id: string): Promise<CaseResponse> {
    return this.request('GET', `/cases/${id}`);
  }

  putRequirements(id: string, revision: number, requirements: RequirementDoc[]): Promise<CaseResponse> {
    return this.request('PUT', `/cases/${id}/requirements`, { revision, requirements });
  }

  evaluate(id: string): Promise<EvaluationDoc> {
    return this.request('POST', `/cases/${id}/evaluate`);
  }

  relax(id: string, mode: 'suggest' | 'apply', k?: number): Promise<RelaxResponse> {
    const query = k === undefined ? `mode=${mode}` : `mode=${mode}&k=${k}`;
    return this.request('POST', `/cases/${id}/relax?${query}`);
  }
}
