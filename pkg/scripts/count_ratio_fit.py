"""Fit the count_C / bound-shape ratio over the level, index, delta and height grid."""
from dataclasses import asdict, dataclass

from _common import emit, parse_config

from sklab.analytic import COUNT_RATIO_CONSTANT, CountGrid, count_ratio_scan


@dataclass(frozen=True)
class Config:
    levels: tuple = (1, 2, 3, 5)
    ms: tuple = (1, 2, 3, 4, 5, 6)
    deltas: tuple = (2.5, 4.0, 8.0, 16.0)
    u: float = 0.23


def main() -> None:
    cfg = parse_config(Config, __doc__)
    grid = CountGrid(tuple(cfg.levels), tuple(cfg.ms), tuple(float(d) for d in cfg.deltas), cfg.u)
    out = count_ratio_scan(grid)
    out["recorded_constant"] = COUNT_RATIO_CONSTANT
    out["within_constant"] = out["max_ratio"] <= COUNT_RATIO_CONSTANT
    out["config"] = asdict(cfg)
    emit(out)


if __name__ == "__main__":
    main()
