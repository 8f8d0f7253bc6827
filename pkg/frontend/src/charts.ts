/** Minimal SVG/DOM chart builders.
 *
 * Every label is the verbatim payload value via String(value): the UI renders
 * service numbers, it never derives its own. Bar widths are presentation only.
 */

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export interface BarDatum {
  label: string;
  value: number;
  /** bar fill fraction in [0,1]; defaults to |value| clamped to 1 */
  fraction?: number;
  cssClass?: string;
}

export function barChart(data: BarDatum[], title?: string): HTMLElement {
  const wrap = el('div', 'chart');
  if (title) wrap.appendChild(el('h4', 'chart-title', title));
  for (const d of data) {
    const row = el('div', 'bar-row');
    row.appendChild(el('span', 'bar-label', d.label));
    const track = el('div', 'bar-track');
    const fill = el('div', `bar-fill ${d.cssClass ?? ''}`.trim());
    const fraction = d.fraction ?? Math.min(1, Math.abs(d.value));
    fill.style.width = `${(fraction * 100).toFixed(1)}%`;
    track.appendChild(fill);
    row.appendChild(track);
    row.appendChild(el('span', 'bar-value', String(d.value)));
    wrap.appendChild(row);
  }
  return wrap;
}

/** One column per tick, one row per category; cells carry verbatim shares. */
export function seriesTable(
  title: string,
  series: Record<string, number>[],
  categories?: string[]
): HTMLElement {
  const wrap = el('div', 'series');
  wrap.appendChild(el('h4', 'chart-title', title));
  const keys =
    categories ?? Array.from(new Set(series.flatMap((tick) => Object.keys(tick)))).sort();
  const table = el('table', 'series-table');
  const head = el('tr');
  head.appendChild(el('th', undefined, title));
  series.forEach((_, i) => head.appendChild(el('th', undefined, `t${i}`)));
  table.appendChild(head);
  for (const key of keys) {
    const tr = el('tr');
    tr.appendChild(el('td', 'series-key', key));
    for (const tick of series) {
      tr.appendChild(el('td', 'series-cell', key in tick ? String(tick[key]) : '0'));
    }
    table.appendChild(tr);
  }
  wrap.appendChild(table);
  return wrap;
}

export function errorBanner(message: string): HTMLElement {
  return el('div', 'error-banner', message);
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}
