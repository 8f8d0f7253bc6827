/** Results dashboard for one completed run: capability bars, distributions
 * over ticks, expenses. Every number shown is a verbatim metrics value. */

import { barChart, el, seriesTable } from './charts';
import type { Metrics } from './types';

export function renderDashboard(slot: 'A' | 'B', runId: string, metrics: Metrics): HTMLElement {
  const root = el('section', 'panel dashboard');
  root.dataset.runId = runId;
  root.appendChild(el('h2', undefined, `Run ${slot} — ${metrics.scenario_name}`));
  const meta = el('p', 'run-meta');
  meta.textContent =
    `run ${runId} · seed ${metrics.seed} · ${metrics.n_agents} agents · ` +
    `horizon ${metrics.horizon}`;
  root.appendChild(meta);

  const caps = Object.keys(metrics.capabilities).sort();
  root.appendChild(
    barChart(
      caps.map((cap) => ({
        label: cap,
        value: metrics.capabilities[cap].deprivation_ratio,
        cssClass: 'bar-deprivation',
      })),
      'Capability deprivation (final tick)'
    )
  );
  root.appendChild(
    barChart(
      caps.map((cap) => ({
        label: cap,
        value: metrics.capabilities[cap].functioning_rate,
        cssClass: 'bar-functioning',
      })),
      'Functioning rate (whole run)'
    )
  );
  if (metrics.not_modelled.length > 0) {
    root.appendChild(el('p', 'muted', `not modelled: ${metrics.not_modelled.join(', ')}`));
  }

  const expenses = el('div', 'expenses');
  expenses.appendChild(el('h4', 'chart-title', 'Expenses'));
  for (const [payer, amount] of Object.entries(metrics.expenses)) {
    const row = el('div', 'expense-row');
    row.appendChild(el('span', 'expense-payer', payer));
    row.appendChild(el('span', 'expense-amount', String(amount)));
    expenses.appendChild(row);
  }
  root.appendChild(expenses);

  for (const dim of ['health', 'housing', 'registration'] as const) {
    root.appendChild(
      seriesTable(
        dim,
        metrics.series.states.map((tick) => tick[dim])
      )
    );
  }

  const ledger = el('div', 'norm-ledger');
  ledger.appendChild(el('h4', 'chart-title', 'Norm ledger'));
  for (const [id, entry] of Object.entries(metrics.norm_ledger)) {
    const line = el('div', 'ledger-row');
    const overridden =
      entry.overridden === null || entry.overridden === undefined
        ? ''
        : entry.overridden
          ? ' (forced on)'
          : ' (disabled)';
    line.appendChild(el('span', 'ledger-id', `${id}${overridden}`));
    line.appendChild(el('span', 'ledger-activations', `activations: ${entry.activations}`));
    for (const value of entry.promotes) line.appendChild(el('span', 'badge badge-promotes', `+${value}`));
    for (const value of entry.demotes) line.appendChild(el('span', 'badge badge-demotes', `−${value}`));
    ledger.appendChild(line);
  }
  root.appendChild(ledger);
  return root;
}
