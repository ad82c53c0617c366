"""Scan of the Gaussian-weighted theta sum over the Jacobi domain, at two truncation tolerances."""
import math
from dataclasses import asdict, dataclass

from _common import emit, parse_config

from sklab.analytic import varth_scan


@dataclass(frozen=True)
class Config:
    u_steps: int = 50
    v_steps: int = 50
    z_steps: int = 10
    v_max: float = 3.0
    exponent_over_pi: float = 4.0


def main() -> None:
    cfg = parse_config(Config, __doc__)
    grid = {"u_range": [-0.5, 0.5], "v_range": [0.87, cfg.v_max], "steps": [cfg.u_steps, cfg.v_steps, cfg.z_steps]}
    w = cfg.exponent_over_pi * math.pi
    coarse = varth_scan(grid, weight_exponent=w, tol=1e-10)
    fine = varth_scan(grid, weight_exponent=w, tol=1e-15)
    emit({
        "config": asdict(cfg),
        "max_value": fine["max_value"],
        "argmax": fine.get("argmax"),
        "drift": abs(coarse["max_value"] - fine["max_value"]) / fine["max_value"],
    })


if __name__ == "__main__":
    main()
