/** Scenario panel: norm toggles with value badges, run parameters, launch buttons.
 *
 * Toggling a norm never edits the scenario; unchecked norms become
 * `norm_overrides[id] = false` on the next run request.
 */

import { el } from './charts';
import type { AggregationBody, RunRequest, ScenarioDetail, ScenarioListEntry } from './types';

export interface PanelHandlers {
  onSelectScenario(id: string): void;
  onLaunch(slot: 'A' | 'B', request: RunRequest): void;
}

export interface PanelState {
  scenarios: ScenarioListEntry[];
  detail: ScenarioDetail | null;
  busy: boolean;
}

function normRow(norm: ScenarioDetail['norms'][number]): HTMLElement {
  const row = el('label', 'norm-row');
  const box = el('input') as HTMLInputElement;
  box.type = 'checkbox';
  box.checked = norm.enabled;
  box.dataset.normId = norm.id;
  box.className = 'norm-toggle';
  row.appendChild(box);
  row.appendChild(el('span', 'norm-id', norm.id));
  row.appendChild(el('span', `norm-kind norm-kind-${norm.kind}`, norm.kind));
  row.appendChild(el('span', 'norm-effect', `${norm.effect} ${norm.applies_to}`));
  for (const value of norm.promotes) {
    row.appendChild(el('span', 'badge badge-promotes', `+${value}`));
  }
  for (const value of norm.demotes) {
    row.appendChild(el('span', 'badge badge-demotes', `−${value}`));
  }
  return row;
}

function collectOverrides(root: HTMLElement): Record<string, boolean> {
  const overrides: Record<string, boolean> = {};
  root.querySelectorAll<HTMLInputElement>('input.norm-toggle').forEach((box) => {
    if (!box.checked) overrides[box.dataset.normId as string] = false;
  });
  return overrides;
}

function readAggregation(root: HTMLElement): AggregationBody | undefined {
  const mode = (root.querySelector('#agg-mode') as HTMLSelectElement).value;
  if (mode === 'scenario-default') return undefined;
  if (mode === 'weighted') {
    const w = Number((root.querySelector('#agg-param') as HTMLInputElement).value);
    return { mode, w };
  }
  const epsilon = Number((root.querySelector('#agg-param') as HTMLInputElement).value);
  return { mode, epsilon };
}

export function renderScenarioPanel(state: PanelState, handlers: PanelHandlers): HTMLElement {
  const root = el('section', 'panel scenario-panel');
  root.appendChild(el('h2', undefined, 'Scenario'));

  const select = el('select') as HTMLSelectElement;
  select.id = 'scenario-select';
  const placeholder = el('option', undefined, 'pick a scenario…') as HTMLOptionElement;
  placeholder.value = '';
  select.appendChild(placeholder);
  for (const s of state.scenarios) {
    const option = el('option', undefined, s.name) as HTMLOptionElement;
    option.value = s.scenario_id;
    if (state.detail?.scenario_id === s.scenario_id) option.selected = true;
    select.appendChild(option);
  }
  select.addEventListener('change', () => {
    if (select.value) handlers.onSelectScenario(select.value);
  });
  root.appendChild(select);

  const detail = state.detail;
  if (!detail) return root;

  const meta = el('p', 'scenario-meta');
  meta.textContent =
    `${detail.n_agents} agents, horizon ${detail.horizon}, ` +
    `default aggregation ${detail.aggregation.mode}`;
  root.appendChild(meta);

  root.appendChild(el('h3', undefined, 'Norms'));
  const norms = el('div', 'norm-list');
  if (detail.norms.length === 0) norms.appendChild(el('p', 'muted', 'no norms declared'));
  for (const norm of detail.norms) norms.appendChild(normRow(norm));
  root.appendChild(norms);

  root.appendChild(el('h3', undefined, 'Run parameters'));
  const form = el('div', 'run-form');

  const seedLabel = el('label', undefined, 'seed ');
  const seed = el('input') as HTMLInputElement;
  seed.id = 'seed-input';
  seed.type = 'number';
  seed.value = '42';
  seedLabel.appendChild(seed);
  form.appendChild(seedLabel);

  const horizonLabel = el('label', undefined, 'horizon ');
  const horizon = el('input') as HTMLInputElement;
  horizon.id = 'horizon-input';
  horizon.type = 'number';
  horizon.value = String(detail.horizon);
  horizonLabel.appendChild(horizon);
  form.appendChild(horizonLabel);

  const aggLabel = el('label', undefined, 'aggregation ');
  const agg = el('select') as HTMLSelectElement;
  agg.id = 'agg-mode';
  for (const mode of ['scenario-default', 'lexicographic', 'weighted', 'need_constrained']) {
    const option = el('option', undefined, mode) as HTMLOptionElement;
    option.value = mode;
    agg.appendChild(option);
  }
  aggLabel.appendChild(agg);
  const aggParam = el('input') as HTMLInputElement;
  aggParam.id = 'agg-param';
  aggParam.type = 'number';
  aggParam.step = 'any';
  aggParam.value = '0';
  aggParam.title = 'epsilon (lexicographic/need_constrained) or w (weighted)';
  aggLabel.appendChild(aggParam);
  form.appendChild(aggLabel);

  const buildRequest = (): RunRequest => ({
    scenario_id: detail.scenario_id,
    seed: Number(seed.value),
    horizon: horizon.value === '' ? undefined : Number(horizon.value),
    norm_overrides: collectOverrides(root),
    aggregation: readAggregation(root),
  });

  for (const slot of ['A', 'B'] as const) {
    const button = el('button', 'launch', `Run as ${slot}`) as HTMLButtonElement;
    button.id = `launch-${slot}`;
    button.disabled = state.busy;
    button.addEventListener('click', () => handlers.onLaunch(slot, buildRequest()));
    form.appendChild(button);
  }
  root.appendChild(form);
  return root;
}
