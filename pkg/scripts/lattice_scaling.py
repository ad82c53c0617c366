"""Lattice count for scaled identity matrices against the det^{-3/2} reference."""
from dataclasses import asdict, dataclass

from _common import emit, parse_config

from sklab.analytic import count_CY, count_CY_reference


@dataclass(frozen=True)
class Config:
    bound: float = 20.0
    scales: tuple = (1.0, 2.0, 4.0, 8.0)


def main() -> None:
    cfg = parse_config(Config, __doc__)
    base = count_CY([[1, 0], [0, 1]], cfg.bound)
    rows = []
    for c in cfg.scales:
        Y = [[c, 0], [0, c]]
        n = count_CY(Y, cfg.bound)
        rows.append({"scale": c, "count": n, "ratio": n / (base * count_CY_reference(Y, cfg.bound))})
    emit({"config": asdict(cfg), "rows": rows, "within_factor_4": all(0.25 <= r["ratio"] <= 4 for r in rows)})


if __name__ == "__main__":
    main()
