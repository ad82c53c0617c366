"""Geometric Bergman kernel: two-route check against the spectral side and a sup scan over the standard domain."""
from dataclasses import asdict, dataclass

import numpy as np
from _common import emit, parse_config

from sklab.kernels import bergman_geometric, bergman_scan, bergman_spectral_delta


@dataclass(frozen=True)
class Config:
    k: int = 12
    N: int = 1
    points: int = 20
    seed: int = 0
    u_steps: int = 10
    v_steps: int = 10
    v_max: float = 3.0


def main() -> None:
    cfg = parse_config(Config, __doc__)
    rng = np.random.default_rng(cfg.seed)
    rows = []
    if (cfg.k, cfg.N) == (12, 1):
        while len(rows) < cfg.points:
            t = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, cfg.v_max))
            if abs(t) < 1:
                continue
            geo = bergman_geometric(12, 1, t)
            spectral = bergman_spectral_delta(t)
            rows.append({"tau": [t.real, t.imag], "geometric": geo.value, "spectral": spectral,
                         "rel_gap": abs(geo.value - spectral) / spectral})
    grid = {"u_range": [-0.5, 0.5], "v_range": [0.87, cfg.v_max], "steps": [cfg.u_steps, cfg.v_steps]}
    base = bergman_scan(cfg.k, cfg.N, grid)
    doubled = bergman_scan(cfg.k, cfg.N, grid, cutoff_scale=2.0)
    emit({
        "config": asdict(cfg),
        "two_route": rows,
        "two_route_max_gap": max((r["rel_gap"] for r in rows), default=None),
        "scan": base,
        "scan_doubled_cutoff_max": doubled["max_value"],
        "scan_drift": abs(base["max_value"] - doubled["max_value"]) / base["max_value"],
    })


if __name__ == "__main__":
    main()
