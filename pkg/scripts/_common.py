import argparse
import dataclasses
import json
import sys


def parse_config(cls, description: str):
    """Build a dataclass config from command-line flags named after its fields."""
    parser = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        default = f.default if f.default is not dataclasses.MISSING else f.default_factory()
        if isinstance(default, tuple):
            parser.add_argument(f"--{f.name}", type=type(default[0]), nargs="+", default=list(default))
        else:
            parser.add_argument(f"--{f.name}", type=type(default), default=default)
    ns = parser.parse_args()
    return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in vars(ns).items()})


def emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2, sort_keys=True, default=str)
    sys.stdout.write("\n")
