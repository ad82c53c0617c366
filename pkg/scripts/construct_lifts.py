"""Build the weight 10 and 12 lifts, run the Maass check and read off Hecke eigenvalues."""
import time
from dataclasses import asdict, dataclass

from _common import emit, parse_config

from sklab.jacobi import jacobi_cusp_basis, lift_hecke_eigenvalue, maass_check, sk_lift


@dataclass(frozen=True)
class Config:
    weights: tuple = (10, 12)
    dmax: int = 200
    primes: tuple = (2, 3)


def main() -> None:
    cfg = parse_config(Config, __doc__)
    out = {"config": asdict(cfg), "lifts": {}}
    for k in cfg.weights:
        t0 = time.perf_counter()
        phi = jacobi_cusp_basis(k, cfg.dmax)
        table = sk_lift(phi, cfg.dmax)
        rep = maass_check(table)
        out["lifts"][k] = {
            "entries": len(table.entries),
            "maass": rep.details,
            "eigenvalues": {p: lift_hecke_eigenvalue(phi, p) for p in cfg.primes},
            "seconds": round(time.perf_counter() - t0, 3),
        }
    emit(out)


if __name__ == "__main__":
    main()
