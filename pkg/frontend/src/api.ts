/** Typed fetch client for the capsim service. */

import type {
  DeltaReport,
  Metrics,
  RunCreated,
  RunRequest,
  RunStatus,
  ScenarioDetail,
  ScenarioListEntry,
} from './types';

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: unknown
  ) {
    super(`service error ${status}: ${JSON.stringify(detail)}`);
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const res = await fetch(`${base}${path}`, init);
  let body: unknown = null;
  try {
    body = await res.json();
  } catch {
    body = null;
  }
  if (!res.ok) {
    throw new ApiError(res.status, (body as { detail?: unknown })?.detail ?? body);
  }
  return body as T;
}

export class CapsimClient {
  constructor(public baseUrl: string = 'http://localhost:8000') {}

  listScenarios(): Promise<ScenarioListEntry[]> {
    return request(this.baseUrl, '/scenarios');
  }

  getScenario(id: string): Promise<ScenarioDetail> {
    return request(this.baseUrl, `/scenarios/${id}`);
  }

  uploadScenario(text: string, name?: string): Promise<{ scenario_id: string; name: string }> {
    return request(this.baseUrl, '/scenarios', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ text, name }),
    });
  }

  startRun(body: RunRequest): Promise<RunCreated> {
    return request(this.baseUrl, '/runs', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  getRun(runId: string): Promise<RunStatus> {
    return request(this.baseUrl, `/runs/${runId}`);
  }

  getMetrics(runId: string): Promise<Metrics> {
    return request(this.baseUrl, `/runs/${runId}/metrics`);
  }

  compare(runA: string, runB: string): Promise<DeltaReport> {
    return request(this.baseUrl, '/compare', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ run_a: runA, run_b: runB }),
    });
  }

  /** Poll a run until it finishes; resolves with the final status payload. */
  async waitForRun(runId: string, intervalMs = 300, timeoutMs = 120_000): Promise<RunStatus> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const status = await this.getRun(runId);
      if (status.status === 'done' || status.status === 'error') return status;
      if (Date.now() > deadline) throw new Error(`run ${runId} timed out`);
      await new Promise((resolve) => setTimeout(resolve, intervalMs));
    }
  }
}
