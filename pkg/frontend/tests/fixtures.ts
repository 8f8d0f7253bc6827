/** Payloads captured from a real service run (health_inequity, seed 42,
 * baseline vs registration_gate disabled, plus a horizon-0 run). Values
 * are asserted verbatim in the rendered-value tests; regenerate against
 * `capsim serve` if the engine changes. */

import type { DeltaReport, Metrics, RunStatus, ScenarioDetail, ScenarioListEntry } from '../src/types';

export const scenarioList: ScenarioListEntry[] = [
  {
    "scenario_id": "6f7d1c07d7f8",
    "name": "health_inequity"
  },
  {
    "scenario_id": "eaa024be49e1",
    "name": "shelter_tradeoff"
  }
] as unknown as ScenarioListEntry[];

export const scenarioDetail: ScenarioDetail = {
  "scenario_id": "6f7d1c07d7f8",
  "name": "health_inequity",
  "format_version": 1,
  "horizon": 5,
  "n_agents": 1000,
  "aggregation": {
    "mode": "lexicographic",
    "epsilon": 1e-09
  },
  "resources": [
    {
      "name": "phc",
      "capacity": null,
      "unit_cost": 50.0,
      "payer": "healthcare"
    }
  ],
  "actions": [
    {
      "name": "receive_medical_attention",
      "enables": [
        "bodily_health"
      ],
      "base_short_reward": 0.0,
      "base_long_reward": 10.0
    },
    {
      "name": "keep_forward_without_medical_attention",
      "enables": [],
      "base_short_reward": 0.0,
      "base_long_reward": -10.0
    }
  ],
  "norms": [
    {
      "id": "registration_gate",
      "kind": "legal",
      "applies_to": "receive_medical_attention",
      "effect": "forbid",
      "promotes": [
        "conformity"
      ],
      "demotes": [
        "benevolence",
        "universalism"
      ],
      "enabled": true
    }
  ],
  "text": "# Primary-healthcare access under a registration-gated legal norm.\n#\n# A sick population splits into registered and non-registered citizens. The\n# registration_gate norm forbids non-registered agents ..."
} as unknown as ScenarioDetail;

export const runStatusA: RunStatus = {
  "run_id": "c17d55263ff7",
  "scenario_id": "6f7d1c07d7f8",
  "status": "done",
  "request": {
    "scenario_id": "6f7d1c07d7f8",
    "seed": 42,
    "horizon": null,
    "norm_overrides": {},
    "aggregation": null,
    "schedule": null
  },
  "summary": {
    "n_agents": 1000,
    "horizon": 5,
    "n_events": 5000,
    "expenses": {
      "healthcare": 151750.0,
      "social_services": 0.0
    },
    "state_series": [
      {
        "health": {
          "1": 1.0
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "0": 0.393,
          "2": 0.607
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "0": 0.393,
          "3": 0.607
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "0": 0.393,
          "4": 0.607
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "0": 0.393,
          "4": 0.607
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "0": 0.393,
          "4": 0.607
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      }
    ],
    "capability_series": [
      {
        "bodily_health": {
          "enabled": 607,
          "deprived": 393
        }
      },
      {
        "bodily_health": {
          "enabled": 607,
          "deprived": 393
        }
      },
      {
        "bodily_health": {
          "enabled": 607,
          "deprived": 393
        }
      },
      {
        "bodily_health": {
          "enabled": 607,
          "deprived": 393
        }
      },
      {
        "bodily_health": {
          "enabled": 607,
          "deprived": 393
        }
      }
    ]
  }
} as unknown as RunStatus;

export const runStatusB: RunStatus = {
  "run_id": "d9321a45bfd2",
  "scenario_id": "6f7d1c07d7f8",
  "status": "done",
  "request": {
    "scenario_id": "6f7d1c07d7f8",
    "seed": 42,
    "horizon": null,
    "norm_overrides": {
      "registration_gate": false
    },
    "aggregation": null,
    "schedule": null
  },
  "summary": {
    "n_agents": 1000,
    "horizon": 5,
    "n_events": 5000,
    "expenses": {
      "healthcare": 250000.0,
      "social_services": 0.0
    },
    "state_series": [
      {
        "health": {
          "1": 1.0
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "2": 1.0
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "3": 1.0
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "4": 1.0
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "4": 1.0
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "4": 1.0
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      }
    ],
    "capability_series": [
      {
        "bodily_health": {
          "enabled": 1000,
          "deprived": 0
        }
      },
      {
        "bodily_health": {
          "enabled": 1000,
          "deprived": 0
        }
      },
      {
        "bodily_health": {
          "enabled": 1000,
          "deprived": 0
        }
      },
      {
        "bodily_health": {
          "enabled": 1000,
          "deprived": 0
        }
      },
      {
        "bodily_health": {
          "enabled": 1000,
          "deprived": 0
        }
      }
    ]
  }
} as unknown as RunStatus;

export const runIdA = "c17d55263ff7";
export const runIdB = "d9321a45bfd2";

export const metricsBaseline: Metrics = {
  "scenario_name": "health_inequity",
  "seed": 42,
  "horizon": 5,
  "n_agents": 1000,
  "catalog": [
    "receive_medical_attention",
    "keep_forward_without_medical_attention"
  ],
  "capabilities": {
    "bodily_health": {
      "deprivation_ratio": 0.393,
      "functioning_rate": 0.607
    }
  },
  "not_modelled": [
    "life",
    "bodily_integrity",
    "senses_imagination_thought",
    "emotions",
    "practical_reason",
    "affiliation",
    "other_species",
    "play",
    "control_over_environment"
  ],
  "final_distributions": {
    "health": {
      "0": 0.393,
      "4": 0.607
    },
    "housing": {
      "roofless": 1.0
    },
    "registration": {
      "non_registered": 0.393,
      "registered": 0.607
    }
  },
  "expenses": {
    "healthcare": 151750.0,
    "social_services": 0.0
  },
  "norm_ledger": {
    "registration_gate": {
      "kind": "legal",
      "promotes": [
        "conformity"
      ],
      "demotes": [
        "benevolence",
        "universalism"
      ],
      "activations": 1965,
      "overridden": null
    }
  },
  "group_deprivation": {
    "bodily_health": {
      "by_registration": {
        "non_registered": 1.0,
        "registered": 0.0
      },
      "by_housing": {
        "roofless": 0.393
      }
    }
  },
  "series": {
    "states": [
      {
        "health": {
          "1": 1.0
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "0": 0.393,
          "2": 0.607
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "0": 0.393,
          "3": 0.607
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "0": 0.393,
          "4": 0.607
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "0": 0.393,
          "4": 0.607
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "0": 0.393,
          "4": 0.607
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      }
    ],
    "capabilities": [
      {
        "bodily_health": {
          "enabled": 607,
          "deprived": 393
        }
      },
      {
        "bodily_health": {
          "enabled": 607,
          "deprived": 393
        }
      },
      {
        "bodily_health": {
          "enabled": 607,
          "deprived": 393
        }
      },
      {
        "bodily_health": {
          "enabled": 607,
          "deprived": 393
        }
      },
      {
        "bodily_health": {
          "enabled": 607,
          "deprived": 393
        }
      }
    ]
  }
} as unknown as Metrics;

export const metricsReform: Metrics = {
  "scenario_name": "health_inequity",
  "seed": 42,
  "horizon": 5,
  "n_agents": 1000,
  "catalog": [
    "receive_medical_attention",
    "keep_forward_without_medical_attention"
  ],
  "capabilities": {
    "bodily_health": {
      "deprivation_ratio": 0.0,
      "functioning_rate": 1.0
    }
  },
  "not_modelled": [
    "life",
    "bodily_integrity",
    "senses_imagination_thought",
    "emotions",
    "practical_reason",
    "affiliation",
    "other_species",
    "play",
    "control_over_environment"
  ],
  "final_distributions": {
    "health": {
      "4": 1.0
    },
    "housing": {
      "roofless": 1.0
    },
    "registration": {
      "non_registered": 0.393,
      "registered": 0.607
    }
  },
  "expenses": {
    "healthcare": 250000.0,
    "social_services": 0.0
  },
  "norm_ledger": {
    "registration_gate": {
      "kind": "legal",
      "promotes": [
        "conformity"
      ],
      "demotes": [
        "benevolence",
        "universalism"
      ],
      "activations": 0,
      "overridden": false
    }
  },
  "group_deprivation": {
    "bodily_health": {
      "by_registration": {
        "non_registered": 0.0,
        "registered": 0.0
      },
      "by_housing": {
        "roofless": 0.0
      }
    }
  },
  "series": {
    "states": [
      {
        "health": {
          "1": 1.0
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "2": 1.0
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "3": 1.0
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "4": 1.0
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "4": 1.0
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      },
      {
        "health": {
          "4": 1.0
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      }
    ],
    "capabilities": [
      {
        "bodily_health": {
          "enabled": 1000,
          "deprived": 0
        }
      },
      {
        "bodily_health": {
          "enabled": 1000,
          "deprived": 0
        }
      },
      {
        "bodily_health": {
          "enabled": 1000,
          "deprived": 0
        }
      },
      {
        "bodily_health": {
          "enabled": 1000,
          "deprived": 0
        }
      },
      {
        "bodily_health": {
          "enabled": 1000,
          "deprived": 0
        }
      }
    ]
  }
} as unknown as Metrics;

export const metricsHorizonZero: Metrics = {
  "scenario_name": "health_inequity",
  "seed": 42,
  "horizon": 0,
  "n_agents": 1000,
  "catalog": [
    "receive_medical_attention",
    "keep_forward_without_medical_attention"
  ],
  "capabilities": {
    "bodily_health": {
      "deprivation_ratio": 0.393,
      "functioning_rate": 0.0
    }
  },
  "not_modelled": [
    "life",
    "bodily_integrity",
    "senses_imagination_thought",
    "emotions",
    "practical_reason",
    "affiliation",
    "other_species",
    "play",
    "control_over_environment"
  ],
  "final_distributions": {
    "health": {
      "1": 1.0
    },
    "housing": {
      "roofless": 1.0
    },
    "registration": {
      "non_registered": 0.393,
      "registered": 0.607
    }
  },
  "expenses": {
    "healthcare": 0.0,
    "social_services": 0.0
  },
  "norm_ledger": {
    "registration_gate": {
      "kind": "legal",
      "promotes": [
        "conformity"
      ],
      "demotes": [
        "benevolence",
        "universalism"
      ],
      "activations": 0,
      "overridden": null
    }
  },
  "group_deprivation": {
    "bodily_health": {
      "by_registration": {
        "non_registered": 1.0,
        "registered": 0.0
      },
      "by_housing": {
        "roofless": 0.393
      }
    }
  },
  "series": {
    "states": [
      {
        "health": {
          "1": 1.0
        },
        "housing": {
          "roofless": 1.0
        },
        "registration": {
          "non_registered": 0.393,
          "registered": 0.607
        }
      }
    ],
    "capabilities": []
  }
} as unknown as Metrics;

export const deltaReport: DeltaReport = {
  "a": "health_inequity@seed=42",
  "b": "health_inequity@seed=42",
  "capability_deltas": {
    "bodily_health": {
      "deprivation_delta": -0.393,
      "functioning_delta": 0.393,
      "flag": "improved"
    }
  },
  "expense_deltas": {
    "healthcare": 98250.0,
    "social_services": 0.0
  },
  "distribution_deltas": {
    "health": {
      "0": -0.393,
      "4": 0.393
    },
    "housing": {
      "roofless": 0.0
    },
    "registration": {
      "non_registered": 0.0,
      "registered": 0.0
    }
  },
  "notes": []
} as unknown as DeltaReport;
