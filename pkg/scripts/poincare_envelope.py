"""Deviation of the normalized Poincare first coefficient from 1 across levels, plus the level-one Petersson identity."""
from dataclasses import asdict, dataclass

from _common import emit, parse_config

from sklab.kernels import (
    delta_norm,
    envelope_decays,
    petersson_first_coefficient,
    poincare_coeff,
    poincare_envelope,
)


@dataclass(frozen=True)
class Config:
    k: int = 12
    n: int = 1
    n_min: int = 1
    n_max: int = 50


def main() -> None:
    cfg = parse_config(Config, __doc__)
    Ns = list(range(cfg.n_min, cfg.n_max + 1))
    env = poincare_envelope(cfg.k, Ns, cfg.n)
    out = {
        "config": asdict(cfg),
        "envelope": dict(zip(Ns, env)),
        "envelope_decays": envelope_decays(Ns, env),
    }
    if cfg.k == 12 and cfg.n == 1:
        p = poincare_coeff(12, 1, 1)["value"]
        q = petersson_first_coefficient(12, 1.0, delta_norm())
        out["level_one"] = {"poincare": p, "petersson": q, "rel_gap": abs(p - q) / q, "delta_norm": delta_norm()}
    emit(out)


if __name__ == "__main__":
    main()
