/** Two-run comparison: DeltaReport values rendered verbatim (b minus a). */

import { el } from './charts';
import type { DeltaReport } from './types';

export function renderCompareView(delta: DeltaReport): HTMLElement {
  const root = el('section', 'panel compare-view');
  root.appendChild(el('h2', undefined, 'Comparison (B − A)'));
  root.appendChild(el('p', 'run-meta', `${delta.a} → ${delta.b}`));

  const table = el('table', 'delta-table');
  const head = el('tr');
  for (const h of ['capability', 'deprivation Δ', 'functioning Δ', '']) {
    head.appendChild(el('th', undefined, h));
  }
  table.appendChild(head);
  for (const [cap, entry] of Object.entries(delta.capability_deltas)) {
    const tr = el('tr');
    tr.appendChild(el('td', 'delta-cap', cap));
    tr.appendChild(el('td', 'delta-deprivation', String(entry.deprivation_delta)));
    tr.appendChild(el('td', 'delta-functioning', String(entry.functioning_delta)));
    tr.appendChild(el('td', `delta-flag flag-${entry.flag}`, entry.flag));
    table.appendChild(tr);
  }
  root.appendChild(table);

  const expenses = el('div', 'expenses');
  expenses.appendChild(el('h4', 'chart-title', 'Expense deltas'));
  for (const [payer, amount] of Object.entries(delta.expense_deltas)) {
    const row = el('div', 'expense-row');
    row.appendChild(el('span', 'expense-payer', payer));
    row.appendChild(el('span', 'expense-amount', String(amount)));
    expenses.appendChild(row);
  }
  root.appendChild(expenses);

  const dists = el('div', 'dist-deltas');
  dists.appendChild(el('h4', 'chart-title', 'Final distribution deltas'));
  for (const [dim, entries] of Object.entries(delta.distribution_deltas)) {
    const line = el('div', 'dist-row');
    line.appendChild(el('span', 'dist-dim', dim));
    for (const [key, value] of Object.entries(entries)) {
      line.appendChild(el('span', 'dist-entry', `${key}: ${String(value)}`));
    }
    dists.appendChild(line);
  }
  root.appendChild(dists);
  return root;
}
