"""Finite categories as composition tables, plus the two families used here.

A :class:`FinCategory` stores objects, morphisms with sources and targets,
identities, and a full composition table.  An optional zero object makes
"zero morphism" meaningful: the zero map X -> Y is the composite through
the zero object.

The two builders: the five-object bracket-classifying category with three
composable arrows whose consecutive composites vanish, and finite
truncations of the category of free modules over Z/m (objects are ranks,
morphisms are matrices).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import DimensionError, SizeLimitError
from .zmod import ZModMatrix

MAX_TRUNCATION_MORPHISMS = 4096


class FinCategory:
    """A finite category given by an explicit composition table.

    ``objects`` and ``morphisms`` are tuples of hashable ids in canonical
    order (all enumeration in the cohomology machinery follows this
    order).  ``compose[(g, f)]`` is g after f, defined for tgt(f) = src(g).
    """

    def __init__(self, objects, morphisms, src, tgt, identity, compose,
                 zero_object=None):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.src = dict(src)
        self.tgt = dict(tgt)
        self.identity = dict(identity)
        self.compose_table = dict(compose)
        self.zero_object = zero_object
        self._mor_index = {m: i for i, m in enumerate(self.morphisms)}
        self._hom: dict[tuple, tuple] = {}
        for m in self.morphisms:
            key = (self.src[m], self.tgt[m])
            self._hom.setdefault(key, [])
            self._hom[key].append(m)
        self._hom = {k: tuple(v) for k, v in self._hom.items()}
        self._zero_mor: dict[tuple, object] = {}
        if zero_object is not None:
            for x in self.objects:
                for y in self.objects:
                    into = self.hom(x, zero_object)
                    outof = self.hom(zero_object, y)
                    if len(into) != 1 or len(outof) != 1:
                        raise DimensionError(
                            "zero object must have singleton hom-sets")
                    self._zero_mor[(x, y)] = self.compose(outof[0], into[0])

    def hom(self, x, y) -> tuple:
        return self._hom.get((x, y), ())

    def compose(self, g, f):
        """g after f."""
        if self.tgt[f] != self.src[g]:
            raise DimensionError(f"morphisms do not compose: {f} then {g}")
        return self.compose_table[(g, f)]

    def zero_morphism(self, x, y):
        if self.zero_object is None:
            raise DimensionError("category has no zero object")
        return self._zero_mor[(x, y)]

    def is_zero_morphism(self, m) -> bool:
        if self.zero_object is None:
            return False
        return m == self._zero_mor[(self.src[m], self.tgt[m])]

    def is_identity(self, m) -> bool:
        return m == self.identity[self.src[m]]

    def mor_index(self, m) -> int:
        return self._mor_index[m]

    # ------------------------------------------------------------------

    def check_axioms(self, max_triples: int | None = None, rng=None) -> list[str]:
        """Validate the category axioms; returns a list of violations.

        Checks typing of the composition table, identity laws, and
        associativity.  Associativity is exhaustive when the number of
        composable triples stays under ``max_triples`` (always exhaustive
        when that is None); otherwise a seeded random sample of triples is
        tested.
        """
        problems = []
        for m in self.morphisms:
            if self.src[m] not in self.objects or self.tgt[m] not in self.objects:
                problems.append(f"morphism {m} has unknown endpoints")
        for x in self.objects:
            i = self.identity.get(x)
            if i is None or self.src.get(i) != x or self.tgt.get(i) != x:
                problems.append(f"identity of {x} is missing or mistyped")
        for (g, f), gf in self.compose_table.items():
            if self.tgt[f] != self.src[g]:
                problems.append(f"table entry ({g}, {f}) is not composable")
                continue
            if gf not in self._mor_index:
                problems.append(f"composite of ({g}, {f}) is not a morphism")
                continue
            if self.src[gf] != self.src[f] or self.tgt[gf] != self.tgt[g]:
                problems.append(f"composite of ({g}, {f}) has wrong endpoints")
        if problems:
            return problems
        for f in self.morphisms:
            if self.compose(self.identity[self.tgt[f]], f) != f:
                problems.append(f"left identity law fails at {f}")
            if self.compose(f, self.identity[self.src[f]]) != f:
                problems.append(f"right identity law fails at {f}")
        n_triples = 0
        for f in self.morphisms:
            for g in self.hom_from(self.tgt[f]):
                n_triples += len(self.hom_from(self.tgt[g]))
        if max_triples is None or n_triples <= max_triples:
            for f in self.morphisms:
                for g in self.hom_from(self.tgt[f]):
                    gf = self.compose(g, f)
                    for h in self.hom_from(self.tgt[g]):
                        if self.compose(h, gf) != self.compose(self.compose(h, g), f):
                            problems.append(f"associativity fails on ({h}, {g}, {f})")
        else:
            if rng is None:
                raise SizeLimitError(f"{n_triples} composable triples exceed the "
                                     f"bound {max_triples}; pass an rng to sample")
            for _ in range(max_triples):
                f = self.morphisms[rng.randrange(len(self.morphisms))]
                gs = self.hom_from(self.tgt[f])
                g = gs[rng.randrange(len(gs))]
                hs = self.hom_from(self.tgt[g])
                h = hs[rng.randrange(len(hs))]
                if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                    problems.append(f"associativity fails on ({h}, {g}, {f})")
        return problems

    def hom_from(self, x) -> tuple:
        cached = getattr(self, "_hom_from", None)
        if cached is None:
            cached = {}
            for m in self.morphisms:
                cached.setdefault(self.src[m], []).append(m)
            cached = {k: tuple(v) for k, v in cached.items()}
            self._hom_from = cached
        return cached.get(x, ())

    # ------------------------------------------------------------------

    def composable_sequences(self, n: int) -> list[tuple]:
        """All (sigma_1, ..., sigma_n) with X0 <-s1- X1 <-s2- ... <-sn- Xn.

        Morphism i runs X_i -> X_{i-1}; enumeration is depth-first in the
        canonical morphism order, so bases are reproducible.
        """
        if n == 0:
            return [()]
        hom_to = getattr(self, "_hom_to", None)
        if hom_to is None:
            hom_to = {}
            for m in self.morphisms:
                hom_to.setdefault(self.tgt[m], []).append(m)
            hom_to = {k: tuple(v) for k, v in hom_to.items()}
            self._hom_to = hom_to
        seqs: list[tuple] = []
        def extend(prefix: tuple, depth: int):
            if depth == n:
                seqs.append(prefix)
                return
            for m in hom_to.get(self.src[prefix[-1]], ()):
                extend(prefix + (m,), depth + 1)
        for m in self.morphisms:
            extend((m,), 1)
        return seqs

    def sequence_endpoints(self, seq: tuple) -> tuple:
        """(X0, Xn) for a composable sequence (identity convention at n = 0)."""
        if not seq:
            raise DimensionError("empty sequence has no intrinsic endpoints")
        return (self.tgt[seq[0]], self.src[seq[-1]])

    def to_json_obj(self) -> dict:
        return {
            "objects": [repr(x) for x in self.objects],
            "morphisms": [{"id": repr(m), "src": repr(self.src[m]),
                           "tgt": repr(self.tgt[m])} for m in self.morphisms],
            "identities": {repr(x): repr(m) for x, m in self.identity.items()},
            "composition": [[repr(g), repr(f), repr(gf)]
                            for (g, f), gf in sorted(self.compose_table.items(),
                                                     key=lambda kv: repr(kv[0]))],
            "zero_object": repr(self.zero_object) if self.zero_object is not None else None,
        }


@dataclass(frozen=True)
class Functor:
    """A functor between finite categories, validated on construction."""

    source: FinCategory
    target: FinCategory
    obj_map: dict = field(hash=False)
    mor_map: dict = field(hash=False)

    def __post_init__(self):
        c, d = self.source, self.target
        for x in c.objects:
            if self.obj_map[x] not in d.objects:
                raise DimensionError(f"object image of {x} is not in the target")
        for m in c.morphisms:
            fm = self.mor_map[m]
            if d.src[fm] != self.obj_map[c.src[m]] or d.tgt[fm] != self.obj_map[c.tgt[m]]:
                raise DimensionError(f"morphism image of {m} is mistyped")
        for x in c.objects:
            if self.mor_map[c.identity[x]] != d.identity[self.obj_map[x]]:
                raise DimensionError(f"functor does not preserve the identity of {x}")
        for (g, f), gf in c.compose_table.items():
            if d.compose(self.mor_map[g], self.mor_map[f]) != self.mor_map[gf]:
                raise DimensionError(f"functor does not preserve the composite ({g}, {f})")

    def on_obj(self, x):
        return self.obj_map[x]

    def on_mor(self, m):
        return self.mor_map[m]

    def compose(self, first: "Functor") -> "Functor":
        """self after first."""
        if first.target is not self.source:
            raise DimensionError("functors do not compose")
        return Functor(first.source, self.target,
                       {x: self.obj_map[first.obj_map[x]] for x in first.source.objects},
                       {m: self.mor_map[first.mor_map[m]] for m in first.source.morphisms})

    @classmethod
    def identity(cls, c: FinCategory) -> "Functor":
        return cls(c, c, {x: x for x in c.objects}, {m: m for m in c.morphisms})


# ----------------------------------------------------------------------
# The bracket-classifying category


def build_toda_category(tamper: str | None = None) -> FinCategory:
    """Five objects *, 1, 2, 3, 4; arrows j1: 1->2, j2: 2->3, j3: 3->4.

    The only morphisms besides identities and zero morphisms are the three
    j's, and the consecutive composites j2 j1 and j3 j2 vanish.  With
    ``tamper`` set the composition table is deliberately broken (used to
    demonstrate that the axiom check catches faults).
    """
    objs = ("*", "1", "2", "3", "4")
    idmor = {x: ("id", x) for x in objs if x != "*"}
    idmor["*"] = ("zero", "*", "*")  # the identity of the zero object is its zero map
    zero = {(x, y): ("zero", x, y) for x in objs for y in objs}
    zero[("*", "*")] = idmor["*"]
    js = {1: ("j", 1), 2: ("j", 2), 3: ("j", 3)}

    morphisms = []
    src, tgt = {}, {}
    for x in objs:
        m = idmor[x]
        morphisms.append(m)
        src[m], tgt[m] = x, x
    for n, m in js.items():
        morphisms.append(m)
        src[m], tgt[m] = str(n), str(n + 1)
    for (x, y), m in sorted(zero.items()):
        if m not in src:
            morphisms.append(m)
            src[m], tgt[m] = x, y

    compose = {}
    for f in morphisms:
        for g in morphisms:
            if tgt[f] != src[g]:
                continue
            if f == idmor[src[f]]:
                compose[(g, f)] = g
            elif g == idmor[tgt[g]]:
                compose[(g, f)] = f
            else:
                # any composite involving a zero morphism, and both
                # j-composites, vanish
                compose[(g, f)] = zero[(src[f], tgt[g])]
    if tamper == "j2j1":
        compose[(js[2], js[1])] = js[1]  # ill-typed on purpose
    return FinCategory(objs, morphisms, src, tgt, idmor, compose, zero_object="*")


# ----------------------------------------------------------------------
# Truncations of the free-module category


def truncated_proj_category(modulus: int, max_rank: int,
                            max_morphisms: int = MAX_TRUNCATION_MORPHISMS) -> FinCategory:
    """Objects 0..max_rank; Hom(r, s) = all s x r matrices over Z/modulus.

    Rank 0 is the zero object.  Raises SizeLimitError when the morphism
    count would exceed ``max_morphisms``.
    """
    count = sum(modulus ** (r * s) for r in range(max_rank + 1)
                for s in range(max_rank + 1))
    if count > max_morphisms:
        raise SizeLimitError(f"truncation would have {count} morphisms "
                             f"(bound {max_morphisms})")
    objects = tuple(range(max_rank + 1))
    morphisms = []
    src, tgt = {}, {}
    for r in objects:
        for s in objects:
            for entries in product(range(modulus), repeat=r * s):
                m = ("mat", r, s, entries)
                morphisms.append(m)
                src[m], tgt[m] = r, s
    identity = {r: ("mat", r, r, tuple(ZModMatrix.identity(modulus, r).entries))
                for r in objects}
    compose = {}
    for f in morphisms:
        fr, fs = f[1], f[2]
        fmat = ZModMatrix(modulus, fs, fr, list(f[3]))
        for g in morphisms:
            if g[1] != fs:
                continue
            gmat = ZModMatrix(modulus, g[2], g[1], list(g[3]))
            comp = gmat @ fmat
            compose[(g, f)] = ("mat", fr, g[2], tuple(comp.entries))
    return FinCategory(objects, morphisms, src, tgt, identity, compose, zero_object=0)


def matrix_of(cat_morphism, modulus: int) -> ZModMatrix:
    """The matrix payload of a truncation morphism."""
    _, r, s, entries = cat_morphism
    return ZModMatrix(modulus, s, r, list(entries))


def morphism_of(mat: ZModMatrix) -> tuple:
    """The truncation morphism id of a matrix."""
    return ("mat", mat.cols, mat.rows, tuple(mat.entries))


def diagram_functor(cat: FinCategory, target: FinCategory, f, g, h) -> Functor:
    """The functor from the bracket-classifying category picking out (f, g, h).

    ``f, g, h`` are target morphisms with matching endpoints, composable
    as f then g then h, with both consecutive composites equal to the
    designated zero morphisms.  The classifying category is ``cat`` (built
    by :func:`build_toda_category`).
    """
    if target.zero_object is None:
        raise DimensionError("the target category needs a zero object")
    w, x = target.src[f], target.tgt[f]
    if target.src[g] != x or target.src[h] != target.tgt[g]:
        raise DimensionError("diagram maps are not composable")
    y, z = target.tgt[g], target.tgt[h]
    if target.compose(g, f) != target.zero_morphism(w, y):
        raise DimensionError("g f must be the zero morphism")
    if target.compose(h, g) != target.zero_morphism(x, z):
        raise DimensionError("h g must be the zero morphism")
    obj_map = {"*": target.zero_object, "1": w, "2": x, "3": y, "4": z}
    mor_map = {}
    for m in cat.morphisms:
        if cat.is_identity(m):
            mor_map[m] = target.identity[obj_map[cat.src[m]]]
        elif m == ("j", 1):
            mor_map[m] = f
        elif m == ("j", 2):
            mor_map[m] = g
        elif m == ("j", 3):
            mor_map[m] = h
        else:
            mor_map[m] = target.zero_morphism(obj_map[cat.src[m]], obj_map[cat.tgt[m]])
    return Functor(cat, target, obj_map, mor_map)
