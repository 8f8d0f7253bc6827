/** Payload types mirroring the capsim service JSON schemas. */

export interface ScenarioListEntry {
  scenario_id: string;
  name: string;
}

export interface NormSummary {
  id: string;
  kind: string;
  applies_to: string;
  effect: string;
  promotes: string[];
  demotes: string[];
  enabled: boolean;
}

export interface ActionSummary {
  name: string;
  enables: string[];
  base_short_reward: number;
  base_long_reward: number;
}

export interface ResourceSummary {
  name: string;
  capacity: number | null;
  unit_cost: number;
  payer: string;
}

export interface ScenarioDetail {
  scenario_id: string;
  name: string;
  format_version: number;
  horizon: number;
  n_agents: number;
  aggregation: AggregationBody;
  resources: ResourceSummary[];
  actions: ActionSummary[];
  norms: NormSummary[];
  text: string;
}

export interface AggregationBody {
  mode: string;
  epsilon?: number;
  w?: number;
}

export interface RunRequest {
  scenario_id: string;
  seed: number;
  horizon?: number;
  norm_overrides?: Record<string, boolean>;
  aggregation?: AggregationBody;
  schedule?: string;
}

export interface RunCreated {
  run_id: string;
  status: string;
}

export interface RunStatus {
  run_id: string;
  scenario_id: string;
  status: 'queued' | 'running' | 'done' | 'error';
  request: Record<string, unknown>;
  error?: string;
  summary?: {
    n_agents: number;
    horizon: number;
    n_events: number;
    expenses: Record<string, number>;
    state_series: StateDistribution[];
    capability_series: CapabilityTick[];
  };
}

export type StateDistribution = {
  health: Record<string, number>;
  housing: Record<string, number>;
  registration: Record<string, number>;
};

export type CapabilityTick = Record<string, { enabled: number; deprived: number }>;

export interface CapabilityMetric {
  deprivation_ratio: number;
  functioning_rate: number;
}

export interface Metrics {
  scenario_name: string;
  seed: number;
  horizon: number;
  n_agents: number;
  catalog: string[];
  capabilities: Record<string, CapabilityMetric>;
  not_modelled: string[];
  final_distributions: StateDistribution;
  expenses: Record<string, number>;
  norm_ledger: Record<
    string,
    {
      kind: string | null;
      promotes: string[];
      demotes: string[];
      activations: number;
      overridden: boolean | null;
    }
  >;
  group_deprivation: Record<string, Record<string, Record<string, number>>>;
  series: {
    states: StateDistribution[];
    capabilities: CapabilityTick[];
  };
}

export interface CapabilityDelta {
  deprivation_delta: number;
  functioning_delta: number;
  flag: 'improved' | 'regressed' | 'unchanged';
}

export interface DeltaReport {
  a: string;
  b: string;
  capability_deltas: Record<string, CapabilityDelta>;
  expense_deltas: Record<string, number>;
  distribution_deltas: Record<string, Record<string, number>>;
  notes: string[];
}
