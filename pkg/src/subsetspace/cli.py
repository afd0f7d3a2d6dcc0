"""Command-line front end: build spaces, run computations, emit reports.

Exit codes: 0 success/pass, 1 verification failure, 2 parse error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass

from .simplicial import SimplicialError, load_simplicial_set
from .spaces import parse_space
from .expk import (DEFAULT_MAX_CELLS, ResourceCapError, build_expk,
                   colimit_level_oracle)
from .homology import space_homology
from . import verify as V
from .spaces import WedgeSpec

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_CAP = 3

# curated homotopy-equivalent partners for the invariance check
_INVARIANCE_PAIRS = {
    "s1": ["circle:3", "circle:4"],
}


@dataclass
class RunConfig:
    space: str
    k: int
    reduced: bool = False
    max_cells: int = DEFAULT_MAX_CELLS
    fmt: str = "json"
    seed: int | None = None
    jobs: int = 1
    level: int | None = None
    file: str | None = None


def default_max_cells() -> int:
    env = os.environ.get("SUBSETSPACE_MAX_CELLS")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SimplicialError(
                f"bad SUBSETSPACE_MAX_CELLS value {env!r}")
    return DEFAULT_MAX_CELLS


def _resolve_space(cfg: RunConfig):
    if cfg.file:
        return os.path.basename(cfg.file), load_simplicial_set(cfg.file)
    return parse_space(cfg.space)


def _payload(space: str, cfg: RunConfig, h=None, verdict=None,
             cells: int = 0, elapsed_ms: int = 0) -> dict:
    return {
        "space": space,
        "k": cfg.k,
        "f_vector": h.f_vector if h else None,
        "betti": h.betti if h else None,
        "torsion": h.torsion if h else None,
        "euler": h.euler if h else None,
        "reduced": h.reduced if h else cfg.reduced,
        "verdict": verdict,
        "elapsed_ms": 0 if cfg.seed is not None else elapsed_ms,
        "cells_enumerated": cells,
    }


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload))
    elif fmt == "csv":
        betti = payload["betti"] or []
        fvec = payload["f_vector"] or []
        tors = payload["torsion"] or []
        print("degree,f,betti,torsion")
        for n in range(max(len(betti), len(fvec))):
            t = ";".join(str(d) for d in (tors[n] if n < len(tors) else []))
            print(f"{n},{fvec[n] if n < len(fvec) else 0},"
                  f"{betti[n] if n < len(betti) else 0},{t}")
        if payload["verdict"] is not None:
            print(f"verdict,,{payload['verdict']},")
    else:
        print(f"space: {payload['space']}  k: {payload['k']}")
        if payload["f_vector"] is not None:
            print(f"f-vector: {payload['f_vector']}")
            print(f"betti:    {payload['betti']}")
            print(f"torsion:  {payload['torsion']}")
            print(f"euler:    {payload['euler']}")
        if payload["verdict"] is not None:
            print(f"verdict:  {payload['verdict']}")
        print(f"elapsed:  {payload['elapsed_ms']} ms  "
              f"cells: {payload['cells_enumerated']}")


def cmd_homology(cfg: RunConfig) -> int:
    name, S = _resolve_space(cfg)
    t0 = time.monotonic()
    space = build_expk(S, cfg.k, max_cells=cfg.max_cells)
    h = space_homology(space.result, reduced=cfg.reduced, jobs=cfg.jobs)
    elapsed = int((time.monotonic() - t0) * 1000)
    _emit(_payload(name, cfg, h=h, cells=space.cells_enumerated,
                   elapsed_ms=elapsed), cfg.fmt)
    return EXIT_OK


def _wedge_spec_from_descriptor(name: str) -> WedgeSpec:
    if name.startswith("wedge:"):
        return WedgeSpec(tuple(int(t) for t in name[len("wedge:"):].split(",")))
    if name.startswith("s") and name[1:].isdigit():
        return WedgeSpec((int(name[1:]),))
    raise SimplicialError(
        f"descriptor {name!r} is not a wedge of spheres")


def cmd_verify(which: str, cfg: RunConfig) -> int:
    t0 = time.monotonic()
    name = cfg.space.strip().lower() if not cfg.file else os.path.basename(cfg.file)
    h = None
    cells = 0
    if which == "theorem1":
        claim = V.theorem1_check(_wedge_spec_from_descriptor(name), cfg.k,
                                 max_cells=cfg.max_cells)
        verdict, h = claim.verdict, claim.homology
    elif which == "tuffley":
        res = V.tuffley_check(_wedge_spec_from_descriptor(name), cfg.k,
                              max_cells=cfg.max_cells)
        verdict, h = res.verdict, res.homology
    elif which == "oracle":
        if cfg.level is None:
            raise SimplicialError("--level is required for the oracle check")
        _, S = _resolve_space(cfg)
        summary = colimit_level_oracle(S, cfg.k, cfg.level,
                                       max_cells=cfg.max_cells,
                                       seed=cfg.seed or 0)
        verdict = V.PASS if summary.ok else V.FAIL
        cells = summary.class_count
    elif which == "invariance":
        _, A = _resolve_space(cfg)
        partners = _INVARIANCE_PAIRS.get(name)
        if name.startswith("circle:"):
            partners = ["s1"]
        if not partners:
            raise SimplicialError(
                f"no curated invariance partner for {name!r}")
        verdict = V.PASS
        for p in partners:
            _, B = parse_space(p)
            res = V.invariance_check(A, B, cfg.k, max_cells=cfg.max_cells)
            if res.verdict != V.PASS:
                verdict = V.FAIL
        h = space_homology(build_expk(A, cfg.k, max_cells=cfg.max_cells).result)
    elif which == "lemma1":
        _, S = _resolve_space(cfg)
        rng = random.Random(cfg.seed or 0)
        verdict = V.PASS
        for _ in range(50):
            inst = V.random_lemma1_instance(S, rng)
            if V.lemma1_check(inst).verdict == V.FAIL:
                verdict = V.FAIL
                break
    else:
        raise SimplicialError(f"unknown check {which!r}")
    elapsed = int((time.monotonic() - t0) * 1000)
    _emit(_payload(name, cfg, h=h, verdict=verdict, cells=cells,
                   elapsed_ms=elapsed), cfg.fmt)
    return EXIT_OK if verdict == V.PASS else EXIT_FAIL


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--space", default=None, help="space descriptor, e.g. "
                   "s1, s2, wedge:1,1, circle:4")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--max-cells", type=int, default=None)
    p.add_argument("--format", choices=["json", "csv", "text"],
                   default="json")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--file", default=None,
                   help="path to a custom simplicial set (JSON)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subsetspace",
        description="Finite subset spaces of simplicial sets: homology and "
                    "connectivity verification")
    sub = parser.add_subparsers(dest="command", required=True)
    ph = sub.add_parser("homology", help="homology of exp_k of a space")
    _add_common(ph)
    pv = sub.add_parser("verify", help="run a verification check")
    pv.add_argument("which", choices=["theorem1", "tuffley", "lemma1",
                                      "invariance", "oracle"])
    _add_common(pv)
    pv.add_argument("--level", type=int, default=None,
                    help="level for the colimit oracle")
    return parser


def _config_from_args(args) -> RunConfig:
    if args.space is None and args.file is None:
        raise SimplicialError("one of --space or --file is required")
    if args.k < 1:
        raise SimplicialError("k must be >= 1")
    max_cells = args.max_cells if args.max_cells is not None \
        else default_max_cells()
    if max_cells < 1:
        raise SimplicialError("cell cap must be >= 1")
    return RunConfig(space=args.space or "", k=args.k, reduced=args.reduced,
                     max_cells=max_cells, fmt=args.format, seed=args.seed,
                     jobs=args.jobs, level=getattr(args, "level", None),
                     file=args.file)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.command == "homology":
            return cmd_homology(cfg)
        return cmd_verify(args.which, cfg)
    except ResourceCapError as exc:
        print(json.dumps({"error": "resource-cap",
                          **exc.sizing_report()}), file=sys.stderr)
        return EXIT_CAP
    except (SimplicialError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
