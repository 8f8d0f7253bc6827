/** Shareable UI state kept entirely in the URL hash: scenario id and run ids. */

export interface HashState {
  scenario?: string;
  runA?: string;
  runB?: string;
}

export function parseHash(hash: string): HashState {
  const out: HashState = {};
  const qs = new URLSearchParams(hash.replace(/^#/, ''));
  for (const key of ['scenario', 'runA', 'runB'] as const) {
    const value = qs.get(key);
    if (value) out[key] = value;
  }
  return out;
}

export function formatHash(state: HashState): string {
  const qs = new URLSearchParams();
  for (const key of ['scenario', 'runA', 'runB'] as const) {
    const value = state[key];
    if (value) qs.set(key, value);
  }
  const text = qs.toString();
  return text ? `#${text}` : '';
}

export function readState(): HashState {
  return parseHash(window.location.hash);
}

export function writeState(state: HashState): void {
  const next = formatHash(state);
  if (next !== window.location.hash) {
    window.location.hash = next;
  }
}
