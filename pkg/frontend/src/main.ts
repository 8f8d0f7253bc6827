/** App wiring: one scenario panel, two run slots (A baseline, B variant),
 * and a comparison view; state lives in the URL hash so links are shareable. */

import { CapsimClient } from './api';
import { readState, writeState } from './appState';
import { clear, el, errorBanner } from './charts';
import { renderCompareView } from './compareView';
import { renderDashboard } from './dashboard';
import { renderScenarioPanel } from './scenarioPanel';
import type { RunRequest, ScenarioDetail, ScenarioListEntry } from './types';

export interface AppOptions {
  client?: CapsimClient;
  root?: HTMLElement;
}

export class App {
  client: CapsimClient;
  root: HTMLElement;
  scenarios: ScenarioListEntry[] = [];
  detail: ScenarioDetail | null = null;
  runs: { A?: string; B?: string } = {};
  busy = false;

  private panelHost: HTMLElement;
  private errorHost: HTMLElement;
  private resultsHost: HTMLElement;
  private compareHost: HTMLElement;

  constructor(options: AppOptions = {}) {
    this.client = options.client ?? new CapsimClient();
    this.root = options.root ?? (document.getElementById('app') as HTMLElement);
    this.errorHost = el('div', 'errors');
    this.panelHost = el('div', 'panel-host');
    this.resultsHost = el('div', 'results-host');
    this.compareHost = el('div', 'compare-host');
    this.root.appendChild(this.errorHost);
    this.root.appendChild(this.panelHost);
    this.root.appendChild(this.resultsHost);
    this.root.appendChild(this.compareHost);
  }

  async start(): Promise<void> {
    try {
      this.scenarios = await this.client.listScenarios();
    } catch (err) {
      this.showError(`service unreachable: ${(err as Error).message}`);
      this.scenarios = [];
      this.renderPanel();
      return;
    }
    const state = readState();
    this.renderPanel();
    if (state.scenario) await this.selectScenario(state.scenario);
    if (state.runA) await this.showRun('A', state.runA);
    if (state.runB) await this.showRun('B', state.runB);
    if (state.runA && state.runB) await this.showComparison();
  }

  showError(message: string): void {
    clear(this.errorHost);
    this.errorHost.appendChild(errorBanner(message));
  }

  clearError(): void {
    clear(this.errorHost);
  }

  renderPanel(): void {
    clear(this.panelHost);
    this.panelHost.appendChild(
      renderScenarioPanel(
        { scenarios: this.scenarios, detail: this.detail, busy: this.busy },
        {
          onSelectScenario: (id) => void this.selectScenario(id),
          onLaunch: (slot, request) => void this.launch(slot, request),
        }
      )
    );
  }

  async selectScenario(id: string): Promise<void> {
    try {
      this.detail = await this.client.getScenario(id);
      this.clearError();
      writeState({ ...readState(), scenario: id });
    } catch (err) {
      this.showError(`failed to load scenario: ${(err as Error).message}`);
      return;
    }
    this.renderPanel();
  }

  async launch(slot: 'A' | 'B', request: RunRequest): Promise<void> {
    this.busy = true;
    this.renderPanel();
    try {
      const created = await this.client.startRun(request);
      const status = await this.client.waitForRun(created.run_id);
      if (status.status === 'error') {
        this.showError(`run failed: ${status.error}`);
        return;
      }
      this.clearError();
      await this.showRun(slot, created.run_id);
      const state = readState();
      writeState({ ...state, [slot === 'A' ? 'runA' : 'runB']: created.run_id });
      if (this.runs.A && this.runs.B) await this.showComparison();
    } catch (err) {
      this.showError(`run request failed: ${(err as Error).message}`);
    } finally {
      this.busy = false;
      this.renderPanel();
    }
  }

  async showRun(slot: 'A' | 'B', runId: string): Promise<void> {
    try {
      const metrics = await this.client.getMetrics(runId);
      this.runs[slot] = runId;
      const existing = this.resultsHost.querySelector(`[data-slot="${slot}"]`);
      const holder = el('div');
      holder.dataset.slot = slot;
      holder.appendChild(renderDashboard(slot, runId, metrics));
      if (existing) {
        this.resultsHost.replaceChild(holder, existing);
      } else {
        this.resultsHost.appendChild(holder);
      }
    } catch (err) {
      this.showError(`failed to load run ${runId}: ${(err as Error).message}`);
    }
  }

  async showComparison(): Promise<void> {
    if (!this.runs.A || !this.runs.B) return;
    try {
      const delta = await this.client.compare(this.runs.A, this.runs.B);
      clear(this.compareHost);
      this.compareHost.appendChild(renderCompareView(delta));
    } catch (err) {
      this.showError(`comparison failed: ${(err as Error).message}`);
    }
  }
}

export function mount(options: AppOptions = {}): App {
  const app = new App(options);
  void app.start();
  return app;
}

declare global {
  interface Window {
    capsimApp?: App;
  }
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  window.capsimApp = mount();
}
