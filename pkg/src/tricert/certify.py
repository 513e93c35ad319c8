"""The certificate: an ordered battery of checks with a serializable report.

Each check produces a pass/fail/skip status and a witness payload (coset
values, invariant factors, counterexamples).  The two headline checks are
linked: ``bracket_nonzero`` certifies that the triple bracket of (2, 2, 2)
is a nonzero coset, and ``cohomological_brackets_vanish`` certifies that
every bracket induced by a degree-3 class in the image of the mod-2
pushforward vanishes on the same diagram.  Passing both at once is the
finite-level contradiction that rules out homotopy-theoretic models.

Steps that rest on published results rather than on computations done
here are reported with status "skip" and an "assumed (cited)" label.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

import numpy as np

from .abgroup import Coset
from .bimodule import (hom_bimodule, inclusion_pushforward, toda_rank_functor,
                       truncation_self_functor)
from .category import build_toda_category, truncated_proj_category
from .catcoh import (Chain, Cochain, CohomologyClass, CohomologyGroup,
                     ComplexBasis, bw_differential, chain_differential_matrix,
                     cochain_differential_matrix, dualize_chain_complex,
                     h3_quotient_class, h3_toda_quotient, homology,
                     identity_endomorphisms, pushforward_on_cohomology,
                     pw_differential, trace_duality, zeta_toda_bracket)
from .errors import TricertError
from .toda import TodaInput, bracket_of_triangle, toda_bracket
from .triangles import (BlockSystem, CandidateTriangle, TriangleMorphism,
                        cone_of_map, decompose_exact, direct_sum, is_contractible,
                        is_exact, mapping_cone, octahedron_modify,
                        random_exact_triangle, random_morphism, solve_homotopy,
                        x2_triangle)
from .zmod import ZModMatrix, smith_normal_form

SCHEMA = "tricert-report/1"

DEFAULT_CONFIG = {
    "seed": 0,
    "samples": 100,
    "max_rank": 2,
    "tamper_toda": "",
}


def load_config(path: str) -> dict:
    """Parse a key = value config file; unknown keys are rejected."""
    config = dict(DEFAULT_CONFIG)
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key not in DEFAULT_CONFIG:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            if isinstance(DEFAULT_CONFIG[key], int):
                config[key] = int(value)
            else:
                config[key] = value
    return config


@dataclass
class CheckResult:
    check: str
    description: str
    status: str           # pass | fail | skip
    witness: dict = field(default_factory=dict)
    seconds: float = 0.0  # wall time; kept out of the JSON report


@dataclass
class CertificateReport:
    config: dict
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def overall(self) -> str:
        return "pass" if all(c.status != "fail" for c in self.checks) else "fail"

    def by_name(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.check == name:
                return c
        raise KeyError(name)


class _Runner:
    def __init__(self, report: CertificateReport):
        self.report = report

    def run(self, check: str, description: str, fn) -> CheckResult:
        t0 = time.perf_counter()
        try:
            ok, witness = fn()
            status = "pass" if ok else "fail"
        except TricertError as exc:
            status, witness = "fail", {"error": str(exc)}
        result = CheckResult(check, description, status, witness,
                             time.perf_counter() - t0)
        self.report.checks.append(result)
        return result

    def skip(self, check: str, description: str, witness: dict | None = None) -> None:
        self.report.checks.append(CheckResult(check, description, "skip",
                                              witness or {}))


def run_certificate(config: dict | None = None) -> CertificateReport:
    """Execute every check in order and return the report."""
    cfg = dict(DEFAULT_CONFIG)
    if config:
        cfg.update(config)
    seed = int(cfg["seed"])
    samples = int(cfg["samples"])
    max_rank = int(cfg["max_rank"])
    report = CertificateReport(config={k: cfg[k] for k in sorted(cfg)})
    r = _Runner(report)
    rng = random.Random(seed)

    # -- category axioms -------------------------------------------------
    tamper = cfg.get("tamper_toda") or None
    toda = build_toda_category(tamper=tamper)

    def check_axioms():
        problems = toda.check_axioms()
        return not problems, {"violations": problems[:5],
                              "morphisms": len(toda.morphisms)}
    axioms = r.run("toda_category_axioms",
                   "composition table of the bracket-classifying category "
                   "is a category with zero object", check_axioms)
    if axioms.status == "fail":
        # downstream cohomology on a broken table is meaningless
        _append_assumed(r)
        return report
    run_triangles = max_rank >= 1

    # -- triangle axioms (spot checks) -----------------------------------
    if run_triangles:
        def check_tr():
            for n in range(4):
                if not is_exact(x2_triangle(n)):
                    return False, {"counterexample": f"x2({n})"}
            for t in range(samples // 4):
                f = ZModMatrix.random(4, rng.randint(0, max_rank),
                                      rng.randint(0, max_rank), rng)
                if not is_exact(cone_of_map(f)):
                    return False, {"counterexample": f.np.tolist(), "axiom": "extension"}
                T = random_exact_triangle(rng, max_rank, 2)
                if not is_exact(T.rotate()):
                    return False, {"counterexample": T.to_json_obj(), "axiom": "rotation"}
                T2 = random_exact_triangle(rng, max_rank, 2)
                if not _fill_in_exists(T, T2, rng):
                    return False, {"counterexample": [T.to_json_obj(), T2.to_json_obj()],
                                   "axiom": "fill-in"}
            return True, {"extension_rotation_fillin_samples": samples // 4}
        r.run("triangle_axiom_samples",
              "extension, rotation and fill-in hold on random samples",
              check_tr)
    else:
        r.skip("triangle_axiom_samples", "triangle checks need max_rank >= 1")

    # -- decomposition of exact triangles --------------------------------
    if run_triangles:
        def check_lose():
            bad = CandidateTriangle(ZModMatrix.from_rows(4, [[2]]),
                                    ZModMatrix.from_rows(4, [[2]]),
                                    ZModMatrix.from_rows(4, [[0]]))
            res = is_exact(bad)
            if res.exact:
                return False, {"counterexample": "the 2,2,0 triangle passed"}
            for t in range(samples):
                s = rng.randint(0, max_rank)
                T = random_exact_triangle(rng, max_core_rank=s)
                dec = decompose_exact(T)
                if not (dec.iso.is_isomorphism() and dec.iso.target == T
                        and is_contractible(dec.contractible_part)):
                    return False, {"counterexample": T.to_json_obj()}
            return True, {"roundtrips": samples,
                          "non_exact_witness": res.reason}
        r.run("prop_lose_roundtrip",
              "every exact triangle splits as a multiplication-by-2 core "
              "plus a contractible, and back", check_lose)
    else:
        r.skip("prop_lose_roundtrip", "triangle checks need max_rank >= 1")

    # -- the nonzero bracket ---------------------------------------------
    def check_bracket():
        two = ZModMatrix.from_rows(4, [[2]])
        br = toda_bracket(TodaInput(two, two, two))
        ok = (not br.is_zero()) and br.value.index() == 2 \
            and br.representative.entries == (1,)
        return ok, {"text": "⟨2,2,2⟩ = 1 + 2Z/4 (nonzero)",
                    "representative": br.representative.np.tolist(),
                    "indeterminacy_index": br.value.index(),
                    "indeterminacy_factors": list(br.value.subgroup_factors())}
    r.run("bracket_nonzero",
          "the triple bracket of (2,2,2) is the nonzero coset 1 + 2Z/4",
          check_bracket)

    # -- degree-3 cohomology three ways ----------------------------------
    phi = toda_rank_functor(toda, ZModMatrix.from_rows(4, [[2]]))
    hom = hom_bimodule(phi, coeff=(4,))
    hom2 = hom_bimodule(phi, coeff=(2,))
    state: dict = {}

    def check_h3():
        h3 = CohomologyGroup(toda, hom, 3)
        norm, comp = h3.normalized_comparison()
        quot = h3_toda_quotient(hom)
        state["h3"] = h3
        groups = [h3.group.factors, norm.group.factors, quot.group.factors]
        if not all(g == (2,) for g in groups):
            return False, {"groups": [list(g) for g in groups]}
        gen = norm.representative(np.array([1]))
        full_cls = h3.class_of(Cochain(toda, hom, 3, gen.values))
        quot_cls = h3_quotient_class(hom, quot, gen)
        ok = int(full_cls[0]) == 1 and int(quot_cls[0]) == 1
        # round trip: a full-complex representative lands in the same class
        rep_full = h3.representative(np.array([1]))
        ok = ok and int(h3.class_of(rep_full)[0]) == 1
        return ok, {"full": list(h3.group.factors),
                    "normalized": list(norm.group.factors),
                    "quotient_formula": list(quot.group.factors),
                    "class_maps_agree": bool(ok)}
    r.run("h3_three_ways",
          "degree-3 cohomology of the bracket category with Hom "
          "coefficients is Z/2 by full, normalized and closed-form routes",
          check_h3)

    def check_push():
        h3 = state.get("h3") or CohomologyGroup(toda, hom, 3)
        h3_2 = CohomologyGroup(toda, hom2, 3)
        state["h3_2"] = h3_2
        push = inclusion_pushforward(phi, src=hom2, dst=hom)
        pmap = pushforward_on_cohomology(push, h3_2, h3)
        state["pushforward"] = pmap
        ok = h3_2.group.factors == (2,) and pmap.is_zero_map()
        return ok, {"result": "zero_map" if pmap.is_zero_map() else "nonzero_map",
                    "mod2_group": list(h3_2.group.factors),
                    "matrix": pmap.matrix.np.tolist()}
    r.run("pushforward_H3",
          "the mod-2 to mod-4 pushforward induces the zero map on "
          "degree-3 cohomology", check_push)

    def check_zeta():
        h3 = state["h3"]
        j1, j2, j3 = ("j", 1), ("j", 2), ("j", 3)
        pmap = state["pushforward"]
        h3_2 = state["h3_2"]
        image_classes = set()
        for src_cls in h3_2.group.elements():
            img = pmap.apply(src_cls)
            image_classes.add(tuple(int(x) for x in img))
        swept = []
        for cls in sorted(image_classes):
            br = zeta_toda_bracket(CohomologyClass(h3, cls), toda, j1, j2, j3)
            swept.append({"class": list(cls), "bracket_zero": br.is_zero()})
            if not br.is_zero():
                return False, {"violating_class": list(cls)}
        nz = zeta_toda_bracket(CohomologyClass(h3, (1,)), toda, j1, j2, j3)
        ok = (not nz.is_zero()) and nz.rep.entries == (1,)
        return ok, {"image_classes_swept": swept,
                    "nonzero_class_bracket": nz.rep.np.reshape(-1).tolist(),
                    "matches_direct_bracket": bool(ok)}
    r.run("cohomological_brackets_vanish",
          "brackets induced by classes in the pushforward image vanish on "
          "(j3, j2, j1); the nonzero class reproduces 1 + 2Z/4", check_zeta)

    # -- octahedral suite --------------------------------------------------
    if run_triangles:
        def check_octa():
            t1 = x2_triangle(1)
            count = 0
            for k0 in range(4):
                for k1 in (k0 % 2, k0 % 2 + 2):
                    for k2 in (k0 % 2, k0 % 2 + 2):
                        k = TriangleMorphism(t1, t1,
                                             ZModMatrix.from_rows(4, [[k0]]),
                                             ZModMatrix.from_rows(4, [[k1]]),
                                             ZModMatrix.from_rows(4, [[k2]]))
                        kp = octahedron_modify(k)
                        if not is_exact(mapping_cone(kp)):
                            return False, {"counterexample": [k0, k1, k2]}
                        count += 1
                        if (k0, k1, k2) == (2, 2, 2) and kp.k2.entries != (0,):
                            return False, {"counterexample": "2,2,2 instance",
                                           "k2_prime": kp.k2.np.tolist()}
            for _ in range(samples):
                T = random_exact_triangle(rng, max_rank, 2)
                T2 = random_exact_triangle(rng, max_rank, 2)
                k = random_morphism(T, T2, rng)
                kp = octahedron_modify(k)
                if not is_exact(mapping_cone(kp)):
                    return False, {"counterexample": [T.to_json_obj(), T2.to_json_obj()]}
                count += 1
            return True, {"instances": count, "exhaustive_rank1": 16}
        r.run("octahedral_suite",
              "the modified third component always yields an exact mapping "
              "cone (exhaustive at rank 1, sampled above)", check_octa)
    else:
        r.skip("octahedral_suite", "triangle checks need max_rank >= 1")

    # -- identity membership ----------------------------------------------
    if run_triangles:
        def check_identity_membership():
            for _ in range(samples // 2):
                T = random_exact_triangle(rng, max_rank, 2)
                br = bracket_of_triangle(T)
                if not br.contains(ZModMatrix.identity(4, T.a)):
                    return False, {"counterexample": T.to_json_obj()}
            return True, {"triangles": samples // 2}
        r.run("bracket_contains_identity",
              "the bracket of the three maps of an exact triangle contains "
              "the identity", check_identity_membership)
    else:
        r.skip("bracket_contains_identity", "triangle checks need max_rank >= 1")

    # -- trace dualities ----------------------------------------------------
    def check_traces():
        coeffs = [(2,), (4,), (2, 4)]
        for p in range(4):
            for q in range(4):
                for m in coeffs:
                    td = trace_duality(p, q, m)
                    if not (td.alpha_bijective and td.beta_bijective):
                        return False, {"rank_pair": [p, q], "coeff": list(m)}
        p41 = truncated_proj_category(4, 1)
        cmp = dualize_chain_complex(p41, 4, (2,), max_degree=3)
        if not cmp.all_commute():
            return False, {"d_commutes": cmp.d_commutes}
        return True, {"rank_pairs": 16, "coeffs": [list(c) for c in coeffs],
                      "dualization_commutes_degrees": sorted(cmp.d_commutes)}
    r.run("trace_dualities",
          "both trace pairings are bijective for rank pairs up to 3 and "
          "the chain-to-cochain comparison commutes with differentials",
          check_traces)

    # -- endomorphism / degree-0 checks -------------------------------------
    def check_h0():
        p22 = truncated_proj_category(2, 2)
        fams = identity_endomorphisms(p22)
        h0 = CohomologyGroup(p22, hom_bimodule(truncation_self_functor(p22, 2),
                                               coeff=(2,)), 0)
        if not (len(fams) == 2 and h0.group.order == 2):
            return False, {"families": len(fams), "h0": list(h0.group.factors)}
        p41 = truncated_proj_category(4, 1)
        fams41 = identity_endomorphisms(p41)
        h0b = CohomologyGroup(p41, hom_bimodule(truncation_self_functor(p41, 4),
                                                coeff=(4,)), 0)
        ok = len(fams41) == 4 and h0b.group.order == 4
        return ok, {"mod2_truncation": {"families": len(fams),
                                        "h0": list(h0.group.factors)},
                    "mod4_truncation": {"families": len(fams41),
                                        "h0": list(h0b.group.factors)}}
    r.run("h0_endomorphisms",
          "natural endomorphisms of the identity functor match degree-0 "
          "cohomology on small truncations", check_h0)

    # -- homology anchor -----------------------------------------------------
    def check_homology():
        p42 = truncated_proj_category(4, 2)
        h0 = homology(p42, hom_bimodule(truncation_self_functor(p42, 4),
                                        coeff=(4,)), 0)
        if h0.factors != (4,):
            return False, {"h0": list(h0.factors)}
        p41 = truncated_proj_category(4, 1)
        hom41 = hom_bimodule(truncation_self_functor(p41, 4), coeff=(4,))
        exploratory = {f"H_{n}(rank<=1)": list(homology(p41, hom41, n).factors)
                       for n in (0, 1, 2)}
        return True, {"H_0(rank<=2)": list(h0.factors),
                      "exploratory_ungated": exploratory}
    r.run("homology_anchor",
          "degree-0 homology of the rank-2 truncation with Hom coefficients "
          "is Z/4; higher truncated groups are reported, not gated",
          check_homology)

    # -- the non-algebraicity witness ----------------------------------------
    def check_witness():
        t = x2_triangle(1)
        cone_obj_rank = t.c
        two_id = ZModMatrix.scalar(4, cone_obj_rank, 2)
        ok = not two_id.is_zero() and is_exact(t).exact
        return ok, {"cone_object_rank": cone_obj_rank,
                    "two_times_identity": two_id.np.tolist()}
    r.run("non_algebraicity_witness",
          "twice the identity of the cone object in the 2,2,2 triangle is "
          "nonzero, so the structure cannot come from a stable module "
          "category", check_witness)

    # -- property suites -------------------------------------------------------
    def check_dd():
        p41 = truncated_proj_category(4, 1)
        hom41 = hom_bimodule(truncation_self_functor(p41, 4), coeff=(4,))
        total = 0
        for cat, L, degrees in ((toda, hom, (0, 1, 2)), (p41, hom41, (0, 1, 2, 3, 4))):
            bases = {n: ComplexBasis(cat, L, n, "cochain")
                     for n in range(max(degrees) + 3)}
            cbases = {n: ComplexBasis(cat, L, n, "chain")
                      for n in range(max(degrees) + 3)}
            for n in degrees:
                d1 = cochain_differential_matrix(bases[n], bases[n + 1])
                d2 = cochain_differential_matrix(bases[n + 1], bases[n + 2])
                comp = d2.compose(d1)
                if not comp.is_zero_map():
                    return False, {"complex": "cochain", "degree": n}
                e1 = chain_differential_matrix(cbases[n + 2], cbases[n + 1])
                e2 = chain_differential_matrix(cbases[n + 1], cbases[n])
                if not e2.compose(e1).is_zero_map():
                    return False, {"complex": "chain", "degree": n}
                # random elements through the assembled maps
                per = max(1, (5 * samples) // (len(degrees) * 4))
                for _ in range(per):
                    v = np.array([rng.randrange(m) for m in bases[n].mods],
                                 dtype=np.int64)
                    if d2.apply(d1.apply(v)).any():
                        return False, {"complex": "cochain", "degree": n}
                    w = np.array([rng.randrange(m) for m in cbases[n + 2].mods],
                                 dtype=np.int64)
                    if e2.apply(e1.apply(w)).any():
                        return False, {"complex": "chain", "degree": n}
                    total += 2
        return True, {"random_elements": total}
    r.run("dd_zero_samples", "both differentials square to zero",
          check_dd)

    def check_snf():
        for _ in range(5 * samples):
            mod = rng.choice([2, 4])
            a = ZModMatrix.random(mod, rng.randint(0, 6), rng.randint(0, 6), rng)
            sf = smith_normal_form(a)
            if not sf.verify(a):
                return False, {"matrix": a.to_json_obj()}
            order = {1: 0, 2: 1, 0: 2}
            diag = sf.diagonal
            if any(order[x] > order[y] for x, y in zip(diag, diag[1:])):
                return False, {"matrix": a.to_json_obj(), "diagonal": list(diag)}
        return True, {"matrices": 5 * samples}
    r.run("snf_samples",
          "Smith forms verify (invertible transforms, ordered diagonal)",
          check_snf)

    if run_triangles:
        def check_homotopy_invariance():
            for _ in range(samples):
                T = random_exact_triangle(rng, min(max_rank, 2), 1)
                T2 = random_exact_triangle(rng, min(max_rank, 2), 1)
                k = random_morphism(T, T2, rng)
                k2 = _homotopy_shift(k, rng)
                if solve_homotopy(k, k2) is None:
                    return False, {"error": "constructed pair is not homotopic"}
                if is_exact(mapping_cone(k)).exact != is_exact(mapping_cone(k2)).exact:
                    return False, {"counterexample": [T.to_json_obj(), T2.to_json_obj()]}
            return True, {"homotopic_pairs": samples}
        r.run("homotopy_cone_invariance",
              "homotopic morphisms have mapping cones with the same "
              "exactness status", check_homotopy_invariance)
    else:
        r.skip("homotopy_cone_invariance", "triangle checks need max_rank >= 1")

    _append_assumed(r)
    return report


def _append_assumed(r: _Runner) -> None:
    r.skip("assumed_universal_bracket",
           "assumed (cited): homotopy categories of stable model categories "
           "carry a universal degree-3 bracket class determining their "
           "triple brackets and exact triangles")
    r.skip("assumed_cohomology_identification",
           "assumed (cited): the degree-3 cohomology of the full "
           "free-module category with Hom coefficients is Z/2, via the "
           "identification with the ring's stable cohomology and the "
           "published low-degree homology table")


def _homotopy_shift(k: TriangleMorphism, rng) -> TriangleMorphism:
    """A morphism homotopic to k, built from random homotopy data."""
    s, t = k.source, k.target
    a1 = ZModMatrix.random(4, t.a, s.b, rng)
    a2 = ZModMatrix.random(4, t.b, s.c, rng)
    a0 = ZModMatrix.random(4, t.c, s.a, rng)
    return TriangleMorphism(s, t,
                            k.k0 + t.q @ a0 + a1 @ s.f,
                            k.k1 + t.f @ a1 + a2 @ s.i,
                            k.k2 + t.i @ a2 + a0 @ s.q)


def _fill_in_exists(T, T2, rng) -> bool:
    """Given a commuting square (k0, k1) between exact triangles, a third
    component always completes it to a morphism."""
    sys0 = BlockSystem()
    u0 = sys0.add_unknown(T2.a, T.a)
    u1 = sys0.add_unknown(T2.b, T.b)
    zb = ZModMatrix.zeros(4, T2.b, T.a)
    sys0.add_equation([(None, u1, T.f), (-T2.f, u0, None)], zb)
    part, ker = sys0.solve_with_kernel()
    pick = {u: part[u] for u in (u0, u1)}
    for ks in ker:
        if rng.random() < 0.5:
            for u in pick:
                pick[u] = pick[u] + ks[u]
    k0, k1 = pick[u0], pick[u1]
    sys1 = BlockSystem()
    u2 = sys1.add_unknown(T2.c, T.c)
    sys1.add_equation([(None, u2, T.i)], T2.i @ k1)
    sys1.add_equation([(T2.q, u2, None)], k0 @ T.q)
    return sys1.solve() is not None


# ----------------------------------------------------------------------
# Rendering


def report_to_json_obj(report: CertificateReport) -> dict:
    return {
        "schema": SCHEMA,
        "config": report.config,
        "overall": report.overall,
        "counts": {
            "pass": sum(1 for c in report.checks if c.status == "pass"),
            "fail": sum(1 for c in report.checks if c.status == "fail"),
            "skip": sum(1 for c in report.checks if c.status == "skip"),
        },
        "headline": _headline(report),
        "checks": [{"check": c.check, "description": c.description,
                    "status": c.status, **_witness_fields(c)}
                   for c in report.checks],
    }


def _witness_fields(c: CheckResult) -> dict:
    return {"witness": c.witness} if c.witness else {}


def _headline(report: CertificateReport) -> dict:
    def status(name):
        try:
            return report.by_name(name).status
        except KeyError:
            return "missing"
    both = (status("bracket_nonzero") == "pass"
            and status("cohomological_brackets_vanish") == "pass")
    return {"bracket_nonzero": status("bracket_nonzero"),
            "cohomological_brackets_vanish": status("cohomological_brackets_vanish"),
            "jointly_witnessed_contradiction": both}


def render_json(report: CertificateReport) -> str:
    """Deterministic JSON: sorted keys, no volatile fields (timings live
    only in the text rendering)."""
    return json.dumps(report_to_json_obj(report), sort_keys=True, indent=2) + "\n"


def render_text(report: CertificateReport) -> str:
    lines = ["certificate report (tricert-report/1)",
             f"config: {report.config}", ""]
    for c in report.checks:
        mark = {"pass": "PASS", "fail": "FAIL", "skip": "skip"}[c.status]
        lines.append(f"[{mark}] {c.check}: {c.description} ({c.seconds:.2f}s)")
        if c.check == "bracket_nonzero" and c.status == "pass":
            lines.append("       ⟨2,2,2⟩ = 1 + 2Z/4 (nonzero)")
        if c.status == "fail" and c.witness:
            lines.append(f"       witness: {c.witness}")
    head = _headline(report)
    lines.append("")
    lines.append(f"headline: bracket_nonzero={head['bracket_nonzero']}, "
                 f"cohomological_brackets_vanish={head['cohomological_brackets_vanish']}")
    if head["jointly_witnessed_contradiction"]:
        lines.append("the two headline checks jointly witness the contradiction "
                     "ruling out homotopy-theoretic models")
    lines.append(f"overall: {report.overall}")
    return "\n".join(lines) + "\n"
