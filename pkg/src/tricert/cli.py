"""Command-line interface.

Subcommands:

* ``certify all``  - run the whole certificate, print text or JSON
* ``exact-check``  - decide exactness of a candidate triangle from JSON
* ``toda``         - compute a triple bracket from three matrix JSON files
* ``cohomology``   - degree-3 cohomology of the bracket category

Exit codes: 0 on success / all checks pass, 1 on a failed check or a
non-exact triangle or a zero... see each command, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bimodule import hom_bimodule, toda_rank_functor
from .category import build_toda_category
from .catcoh import CohomologyGroup
from .certify import (DEFAULT_CONFIG, load_config, render_json, render_text,
                      run_certificate)
from .errors import DimensionError, TricertError
from .toda import TodaInput, toda_bracket
from .triangles import CandidateTriangle, is_exact
from .zmod import ZModMatrix


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="tricert",
                                     description="exact certificates for the "
                                     "triangulated structure on free Z/4-modules")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cert = sub.add_parser("certify", help="run the certificate suite")
    p_cert.add_argument("what", choices=["all"], help="which checks to run")
    p_cert.add_argument("--config", help="path to a key = value config file")
    p_cert.add_argument("--format", choices=["text", "json"], default="text")
    p_cert.add_argument("--seed", type=int, help="override the RNG seed")

    p_exact = sub.add_parser("exact-check", help="decide exactness of a triangle")
    p_exact.add_argument("triangle", help="path to a triangle JSON file")

    p_toda = sub.add_parser("toda", help="compute a triple bracket")
    p_toda.add_argument("--f", required=True, help="matrix JSON for f: W -> X")
    p_toda.add_argument("--g", required=True, help="matrix JSON for g: X -> Y")
    p_toda.add_argument("--h", required=True, help="matrix JSON for h: Y -> Z")

    p_coh = sub.add_parser("cohomology",
                           help="cohomology of the bracket-classifying category")
    p_coh.add_argument("category", choices=["toda"])
    p_coh.add_argument("--coeff", choices=["hom", "hom2"], default="hom")
    p_coh.add_argument("--degree", type=int, default=3)

    args = parser.parse_args(argv)
    try:
        if args.command == "certify":
            return _cmd_certify(args)
        if args.command == "exact-check":
            return _cmd_exact_check(args)
        if args.command == "toda":
            return _cmd_toda(args)
        if args.command == "cohomology":
            return _cmd_cohomology(args)
    except (DimensionError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except TricertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


def _cmd_certify(args) -> int:
    config = dict(DEFAULT_CONFIG)
    if args.config:
        config.update(load_config(args.config))
    if args.seed is not None:
        config["seed"] = args.seed
    report = run_certificate(config)
    if args.format == "json":
        sys.stdout.write(render_json(report))
    else:
        sys.stdout.write(render_text(report))
    return 0 if report.overall == "pass" else 1


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _cmd_exact_check(args) -> int:
    t = CandidateTriangle.from_json_obj(_load_json(args.triangle))
    res = is_exact(t)
    if res.exact:
        print("exact")
        print(f"fill-in against the standard cone: {res.fill_in.np.tolist()}")
        return 0
    print("not exact")
    print(f"witness: {res.reason}")
    return 1


def _cmd_toda(args) -> int:
    f = ZModMatrix.from_json_obj(_load_json(args.f))
    g = ZModMatrix.from_json_obj(_load_json(args.g))
    h = ZModMatrix.from_json_obj(_load_json(args.h))
    br = toda_bracket(TodaInput(f, g, h))
    rep = br.representative
    print(f"representative: {rep.np.tolist()}")
    factors = br.value.subgroup_factors()
    print(f"indeterminacy invariant factors: {list(factors) if factors else '0'}")
    print("zero" if br.is_zero() else "nonzero")
    return 0


def _cmd_cohomology(args) -> int:
    toda = build_toda_category()
    phi = toda_rank_functor(toda, ZModMatrix.from_rows(4, [[2]]))
    coeff = (4,) if args.coeff == "hom" else (2,)
    bim = hom_bimodule(phi, coeff=coeff)
    h = CohomologyGroup(toda, bim, args.degree)
    print(f"H^{args.degree}(toda, {args.coeff}) invariant factors: "
          f"{list(h.group.factors) if h.group.factors else '0'}")
    for j, _ in enumerate(h.group.factors):
        cls = np.zeros(len(h.group.factors), dtype=np.int64)
        cls[j] = 1
        rep = h.representative(cls)
        shown = {"/".join(str(m) for m in key) if isinstance(key, tuple) else str(key):
                 v.tolist() for key, v in list(rep.values.items())[:8]}
        print(f"generator {j}: representative values on up to 8 strings: {shown}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
