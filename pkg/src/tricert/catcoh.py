"""Cohomology and homology of finite categories with bimodule coefficients.

The cochain complex in degree n is the product, over composable strings
X0 <- X1 <- ... <- Xn of n morphisms, of the groups L(Xn, X0); a string of
length 0 is an object (identified with its identity).  The differential
pushes along the first arrow, alternates over composing adjacent arrows,
and pulls along the last arrow.  The chain complex is the dual shape with
coefficients L(X0, Xn).

On top of the two complexes: (co)homology groups via the subquotient
machinery, the normalized subcomplex (for coefficients vanishing on the
zero object), the closed-form degree-3 quotient for the bracket-classifying
category, pullbacks along functors, pushforwards along bimodule morphisms,
cohomologically induced triple brackets, the trace dualities relating
chains to cochains, and the enumeration of natural endomorphisms of the
identity functor.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .abgroup import (AMBIENT, Coset, FinAbGroup, GroupHom, Subquotient,
                      group_of_product, hom_is_bijective, hom_solve)
from .bimodule import (Bimodule, BimoduleMorphism, RankFunctor, hom_bimodule,
                       restrict_bimodule)
from .category import FinCategory, Functor, diagram_functor
from .errors import (CoeffsNotReducedError, DimensionError, SizeLimitError)
from .zmod import ZModMatrix, columns

MAX_SEQUENCES = 200_000


# ----------------------------------------------------------------------
# Bases


class ComplexBasis:
    """Coordinates of F^n (or F_n): one block per composable string.

    Keys are morphism tuples for n >= 1 and objects for n = 0.  ``variance``
    selects the coefficient group: "cochain" uses L(Xn, X0), "chain" uses
    L(X0, Xn).  Strings whose coefficient group is trivial occupy no
    coordinates but remain addressable.
    """

    def __init__(self, cat: FinCategory, L: Bimodule, degree: int, variance: str,
                 normalized: bool = False):
        self.cat = cat
        self.L = L
        self.degree = degree
        self.variance = variance
        self.normalized = normalized
        if degree == 0:
            keys = list(cat.objects)
        else:
            keys = cat.composable_sequences(degree)
            if normalized:
                keys = [s for s in keys
                        if not any(cat.is_identity(m) or cat.is_zero_morphism(m)
                                   for m in s)]
        if len(keys) > MAX_SEQUENCES:
            raise SizeLimitError(f"{len(keys)} strings in degree {degree} exceed "
                                 f"the bound {MAX_SEQUENCES}")
        self.keys = keys
        self.offsets: dict = {}
        self.factors: dict = {}
        self.mods: list[int] = []
        pos = 0
        for key in keys:
            x0, xn = self._endpoints(key)
            fac = L.factors(xn, x0) if variance == "cochain" else L.factors(x0, xn)
            self.offsets[key] = pos
            self.factors[key] = fac
            self.mods.extend(fac)
            pos += len(fac)
        self.dim = pos

    def _endpoints(self, key):
        if self.degree == 0:
            return key, key
        return self.cat.sequence_endpoints(key)

    def block(self, key) -> slice:
        off = self.offsets[key]
        return slice(off, off + len(self.factors[key]))

    def vector_of(self, values: dict) -> np.ndarray:
        """Assemble a coordinate vector from a sparse {key: value} mapping."""
        v = np.zeros(self.dim, dtype=np.int64)
        for key, val in values.items():
            if key not in self.offsets:
                raise DimensionError(f"unknown string {key}")
            val = np.asarray(val, dtype=np.int64).reshape(-1)
            if len(val) != len(self.factors[key]):
                raise DimensionError(f"value for {key} has wrong length")
            v[self.block(key)] = val
        return v % np.array(self.mods, dtype=np.int64) if self.dim else v

    def values_of(self, v: np.ndarray) -> dict:
        out = {}
        for key in self.keys:
            blk = v[self.block(key)]
            if blk.size and blk.any():
                out[key] = blk.copy()
        return out


# ----------------------------------------------------------------------
# Sparse (co)chains and the pointwise differentials


@dataclass
class Cochain:
    """Sparse cochain: {string: value vector} with values in L(Xn, X0)."""

    cat: FinCategory
    L: Bimodule
    degree: int
    values: dict

    def value(self, key) -> np.ndarray:
        if key in self.values:
            return np.asarray(self.values[key], dtype=np.int64)
        x0, xn = (key, key) if self.degree == 0 else self.cat.sequence_endpoints(key)
        return np.zeros(len(self.L.factors(xn, x0)), dtype=np.int64)

    def is_zero(self) -> bool:
        return all(not np.asarray(v).any() for v in self.values.values())


@dataclass
class Chain:
    """Sparse chain: finite sum of c * string with c in L(X0, Xn)."""

    cat: FinCategory
    L: Bimodule
    degree: int
    values: dict

    def value(self, key) -> np.ndarray:
        if key in self.values:
            return np.asarray(self.values[key], dtype=np.int64)
        x0, xn = (key, key) if self.degree == 0 else self.cat.sequence_endpoints(key)
        return np.zeros(len(self.L.factors(x0, xn)), dtype=np.int64)

    def is_zero(self) -> bool:
        return all(not np.asarray(v).any() for v in self.values.values())


def _coface_terms(cat: FinCategory, tau: tuple):
    """Terms of the cochain differential evaluated on the string tau.

    Yields (sign, action_kind, action_morphism, face_key) where
    action_kind is "post", "pre", or None (coordinate inclusion).
    """
    k = len(tau)
    first = tau[0]
    last = tau[-1]
    face = tau[1:] if k > 1 else cat.src[first]
    yield (1, "post", first, face)
    for i in range(1, k):
        comp = cat.compose(tau[i - 1], tau[i])
        yield ((-1) ** i, None, None, tau[:i - 1] + (comp,) + tau[i + 1:])
    face = tau[:-1] if k > 1 else cat.tgt[first]
    yield ((-1) ** k, "pre", last, face)


def _chain_face_terms(cat: FinCategory, tau: tuple):
    """Terms of the chain differential of a chain supported on tau."""
    k = len(tau)
    first = tau[0]
    last = tau[-1]
    face = tau[1:] if k > 1 else cat.src[first]
    yield (1, "pre", first, face)
    for i in range(1, k):
        comp = cat.compose(tau[i - 1], tau[i])
        yield ((-1) ** i, None, None, tau[:i - 1] + (comp,) + tau[i + 1:])
    face = tau[:-1] if k > 1 else cat.tgt[first]
    yield ((-1) ** k, "post", last, face)


def _cochain_action(L: Bimodule, cat: FinCategory, kind: str, sigma, tau_key) -> GroupHom:
    """The coefficient action for a cochain coface term at string tau."""
    if len(tau_key) == 0:
        raise DimensionError("cofaces are evaluated on strings of positive length")
    x0, xn = cat.sequence_endpoints(tau_key)
    if kind == "post":
        return L.post_action(sigma, xn)
    return L.pre_action(sigma, x0)


def bw_differential(c: Cochain) -> Cochain:
    """Pointwise cochain differential; the result has degree one higher."""
    cat, L, n = c.cat, c.L, c.degree
    out: dict = {}
    for tau in cat.composable_sequences(n + 1):
        x0, xn1 = cat.sequence_endpoints(tau)
        fac = L.factors(xn1, x0)
        if not fac:
            continue
        acc = np.zeros(len(fac), dtype=np.int64)
        for sign, kind, sigma, face in _coface_terms(cat, tau):
            if kind is None:
                acc += sign * c.value(face)
            else:
                hom = _cochain_action(L, cat, kind, sigma, tau)
                acc += sign * hom.apply(c.value(face))
        acc %= np.array(fac, dtype=np.int64)
        if acc.any():
            out[tau] = acc
    return Cochain(cat, L, n + 1, out)


def pw_differential(z: Chain) -> Chain:
    """Pointwise chain differential; the result has degree one lower."""
    cat, L, n = z.cat, z.L, z.degree
    if n < 1:
        raise DimensionError("the chain differential needs degree at least 1")
    out: dict = {}
    def add(key, val, fac):
        if not len(fac):
            return
        cur = out.get(key)
        out[key] = (val if cur is None else cur + val) % np.array(fac, dtype=np.int64)
    for tau, val in z.values.items():
        val = np.asarray(val, dtype=np.int64)
        if not val.any():
            continue
        x0, xn = cat.sequence_endpoints(tau)
        for sign, kind, sigma, face in _chain_face_terms(cat, tau):
            if kind == "pre":
                hom = L.pre_action(sigma, xn)
            elif kind == "post":
                hom = L.post_action(sigma, x0)
            else:
                hom = None
            fx0, fxn = cat.sequence_endpoints(face) if isinstance(face, tuple) \
                else (face, face)
            fac = L.factors(fx0, fxn)
            add(face, sign * (hom.apply(val) if hom else val), fac)
    out = {k: v for k, v in out.items() if np.asarray(v).any()}
    return Chain(cat, L, n - 1, out)


# ----------------------------------------------------------------------
# Assembled differentials and (co)homology groups


def cochain_differential_matrix(b_n: ComplexBasis, b_n1: ComplexBasis) -> GroupHom:
    """The matrix of d: F^n -> F^(n+1) between assembled bases."""
    cat, L = b_n.cat, b_n.L
    mat = np.zeros((b_n1.dim, b_n.dim), dtype=np.int64)
    for tau in b_n1.keys:
        rfac = b_n1.factors[tau]
        if not rfac:
            continue
        rblk = b_n1.block(tau)
        for sign, kind, sigma, face in _coface_terms(cat, tau):
            if face not in b_n.offsets:
                continue  # face fell outside a normalized basis
            cfac = b_n.factors[face]
            if not cfac:
                continue
            cblk = b_n.block(face)
            if kind is None:
                mat[rblk, cblk] += sign * np.eye(len(rfac), dtype=np.int64)
            else:
                hom = _cochain_action(L, cat, kind, sigma, tau)
                mat[rblk, cblk] += sign * hom.matrix.np
    return GroupHom(tuple(b_n.mods), tuple(b_n1.mods),
                    ZModMatrix.from_numpy(AMBIENT, mat % AMBIENT))


def chain_differential_matrix(b_n: ComplexBasis, b_n1: ComplexBasis) -> GroupHom:
    """The matrix of d: F_n -> F_(n-1); b_n1 is the basis one degree down."""
    cat, L = b_n.cat, b_n.L
    mat = np.zeros((b_n1.dim, b_n.dim), dtype=np.int64)
    for tau in b_n.keys:
        cfac = b_n.factors[tau]
        if not cfac:
            continue
        cblk = b_n.block(tau)
        x0, xn = cat.sequence_endpoints(tau)
        for sign, kind, sigma, face in _chain_face_terms(cat, tau):
            if face not in b_n1.offsets:
                continue
            rfac = b_n1.factors[face]
            if not rfac:
                continue
            rblk = b_n1.block(face)
            if kind is None:
                mat[rblk, cblk] += sign * np.eye(len(rfac), dtype=np.int64)
            elif kind == "pre":
                mat[rblk, cblk] += sign * L.pre_action(sigma, xn).matrix.np
            else:
                mat[rblk, cblk] += sign * L.post_action(sigma, x0).matrix.np
    return GroupHom(tuple(b_n.mods), tuple(b_n1.mods),
                    ZModMatrix.from_numpy(AMBIENT, mat % AMBIENT))


class CohomologyGroup:
    """H^n with a class map for cocycles and representative extraction."""

    def __init__(self, cat: FinCategory, L: Bimodule, degree: int,
                 normalized: bool = False):
        self.cat, self.L, self.degree = cat, L, degree
        self.normalized = normalized
        if normalized and not L.is_reduced():
            raise CoeffsNotReducedError(
                "normalized cochains need coefficients vanishing on the zero object")
        self.basis = ComplexBasis(cat, L, degree, "cochain", normalized)
        self.basis_up = ComplexBasis(cat, L, degree + 1, "cochain", normalized)
        self.d_out = cochain_differential_matrix(self.basis, self.basis_up)
        ker = self.d_out.kernel_gens()
        ims = [self.d_out.coordinate_relations("src")]
        if degree >= 1:
            self.basis_down = ComplexBasis(cat, L, degree - 1, "cochain", normalized)
            self.d_in = cochain_differential_matrix(self.basis_down, self.basis)
            ims.append(self.d_in.image_gens())
        else:
            self.basis_down = None
            self.d_in = None
        im = ims[0]
        for extra in ims[1:]:
            im = im.hstack(extra)
        self.subquotient = Subquotient(ker, im)
        self.group = self.subquotient.group

    def class_of(self, c: Cochain) -> np.ndarray:
        """Class vector of a cocycle (raises if the element is not a cocycle)."""
        v = self.basis.vector_of(c.values)
        img = self.d_out.apply(v)
        if img.any():
            raise DimensionError("cochain is not a cocycle")
        return self.subquotient.class_of(_as_column(v, self.basis.dim))

    def representative(self, cls_vec) -> Cochain:
        v = self.subquotient.rep_of(cls_vec).np.reshape(-1)
        v = v % np.array(self.basis.mods, dtype=np.int64) if self.basis.dim else v
        return Cochain(self.cat, self.L, self.degree, self.basis.values_of(v))

    def zero_class(self) -> np.ndarray:
        return np.zeros(len(self.group.factors), dtype=np.int64)

    def classes(self):
        """All class vectors of the group (small groups only)."""
        return list(self.group.elements())

    def normalized_comparison(self) -> tuple["CohomologyGroup", GroupHom]:
        """The normalized cohomology and its comparison map into this group.

        Computed lazily and cached on the instance; only meaningful on a
        full (non-normalized) cohomology group with reduced coefficients.
        """
        if self.normalized:
            raise DimensionError("already a normalized cohomology group")
        cached = getattr(self, "_norm_pair", None)
        if cached is None:
            norm = CohomologyGroup(self.cat, self.L, self.degree, normalized=True)
            comp = comparison_map(norm, self)
            if not hom_is_bijective(comp):
                raise DimensionError("normalization comparison is not an isomorphism "
                                     f"in degree {self.degree}")
            cached = (norm, comp)
            self._norm_pair = cached
        return cached


def _as_column(v: np.ndarray, n: int) -> ZModMatrix:
    return ZModMatrix.from_numpy(AMBIENT, np.asarray(v, dtype=np.int64).reshape(n, 1))


def cohomology(cat: FinCategory, L: Bimodule, degree: int) -> CohomologyGroup:
    """H^degree of the full cochain complex."""
    return CohomologyGroup(cat, L, degree, normalized=False)


def normalized_cohomology(cat: FinCategory, L: Bimodule, degree: int,
                          full: CohomologyGroup | None = None
                          ) -> tuple[CohomologyGroup, GroupHom]:
    """H^degree of the normalized subcomplex plus the comparison map.

    Normalized cochains vanish on strings containing an identity or a zero
    morphism; for reduced coefficients they form a subcomplex computing
    the same cohomology.  The returned GroupHom is induced by inclusion
    into the full complex and is verified to be bijective.  Pass ``full``
    to reuse an already computed full cohomology group.
    """
    if full is None:
        full = CohomologyGroup(cat, L, degree, normalized=False)
    return full.normalized_comparison()


def comparison_map(norm: CohomologyGroup, full: CohomologyGroup) -> GroupHom:
    """The map on cohomology induced by including normalized cochains."""
    cols = []
    for cls in _generator_classes(norm.group):
        rep = norm.representative(cls)
        cols.append(full.class_of(Cochain(full.cat, full.L, norm.degree, rep.values)))
    mat = columns(cols, AMBIENT, len(full.group.factors))
    return GroupHom(norm.group.factors, full.group.factors, mat)


def _generator_classes(g: FinAbGroup):
    for j in range(len(g.factors)):
        e = np.zeros(len(g.factors), dtype=np.int64)
        e[j] = 1
        yield e


def homology(cat: FinCategory, L: Bimodule, degree: int) -> FinAbGroup:
    """H_degree of the chain complex."""
    b_n = ComplexBasis(cat, L, degree, "chain")
    ims = []
    if degree >= 1:
        b_dn = ComplexBasis(cat, L, degree - 1, "chain")
        d_out = chain_differential_matrix(b_n, b_dn)
        ker = d_out.kernel_gens()
        ims.append(d_out.coordinate_relations("src"))
    else:
        ker = ZModMatrix.identity(AMBIENT, b_n.dim)
        ims.append(columns([m * np.eye(b_n.dim, dtype=np.int64)[:, i]
                            for i, m in enumerate(b_n.mods) if m != AMBIENT],
                           AMBIENT, b_n.dim))
    b_up = ComplexBasis(cat, L, degree + 1, "chain")
    d_in = chain_differential_matrix(b_up, b_n)
    ims.append(d_in.image_gens())
    im = ims[0]
    for extra in ims[1:]:
        im = im.hstack(extra)
    return Subquotient(ker, im).group


# ----------------------------------------------------------------------
# The degree-3 closed form on the bracket-classifying category


def h3_toda_quotient(M: Bimodule) -> Subquotient:
    """M(1,4) / (M(1,j3) M(1,3) + M(j1,4) M(2,4)) with its class map.

    M must be reduced (vanish on the zero object).  A normalized 3-cocycle
    c maps to the class of c(j3, j2, j1).
    """
    if not M.is_reduced():
        raise CoeffsNotReducedError("the degree-3 quotient needs reduced coefficients")
    j1, j3 = ("j", 1), ("j", 3)
    mods = M.factors("1", "4")
    n = len(mods)
    ker = ZModMatrix.identity(AMBIENT, n)
    push = M.post_action(j3, "1")    # M(1,3) -> M(1,4)
    pull = M.pre_action(j1, "4")     # M(2,4) -> M(1,4)
    rel = columns([m * np.eye(n, dtype=np.int64)[:, i]
                   for i, m in enumerate(mods) if m != AMBIENT], AMBIENT, n)
    im = push.image_gens().hstack(pull.image_gens()).hstack(rel)
    return Subquotient(ker, im)


def h3_quotient_class(M: Bimodule, sq: Subquotient, c: Cochain) -> np.ndarray:
    """Class of a normalized 3-cocycle under the closed-form quotient."""
    key = (("j", 3), ("j", 2), ("j", 1))
    val = c.value(key)
    return sq.class_of(_as_column(val, len(M.factors("1", "4"))))


# ----------------------------------------------------------------------
# Functoriality


def pullback_cochain(f: Functor, c: Cochain) -> Cochain:
    """(F* c)(s1, ..., sn) = c(F s1, ..., F sn), with restricted coefficients."""
    restricted = restrict_bimodule(c.L, f)
    if c.degree == 0:
        values = {x: c.value(f.on_obj(x)) for x in f.source.objects}
    else:
        values = {}
        for seq in f.source.composable_sequences(c.degree):
            img = tuple(f.on_mor(m) for m in seq)
            val = c.value(img)
            if val.size and val.any():
                values[seq] = val
    return Cochain(f.source, restricted, c.degree, values)


def pullback_on_cohomology(f: Functor, h_src: CohomologyGroup,
                           h_dst: CohomologyGroup) -> GroupHom:
    """Induced map H^n(target cat) -> H^n(source cat) along a functor.

    ``h_src`` is cohomology on the functor's target category; ``h_dst`` on
    its source with the restricted bimodule.
    """
    cols = []
    for cls in _generator_classes(h_src.group):
        rep = h_src.representative(cls)
        cols.append(h_dst.class_of(pullback_cochain(f, rep)))
    return GroupHom(h_src.group.factors, h_dst.group.factors,
                    columns(cols, AMBIENT, len(h_dst.group.factors)))


def pushforward_cochain(t: BimoduleMorphism, c: Cochain) -> Cochain:
    """Valuewise application of a bimodule morphism."""
    if any(c.L.factors(x, y) != t.src.factors(x, y)
           for x in c.cat.objects for y in c.cat.objects):
        raise DimensionError("cochain coefficients do not match the morphism source")
    cat = c.cat
    values = {}
    for key, val in c.values.items():
        x0, xn = (key, key) if c.degree == 0 else cat.sequence_endpoints(key)
        out = t.component(xn, x0).apply(np.asarray(val, dtype=np.int64))
        if out.size and out.any():
            values[key] = out
    return Cochain(cat, t.dst, c.degree, values)


def pushforward_on_cohomology(t: BimoduleMorphism, h_src: CohomologyGroup,
                              h_dst: CohomologyGroup) -> GroupHom:
    cols = []
    for cls in _generator_classes(h_src.group):
        rep = h_src.representative(cls)
        cols.append(h_dst.class_of(pushforward_cochain(t, rep)))
    return GroupHom(h_src.group.factors, h_dst.group.factors,
                    columns(cols, AMBIENT, len(h_dst.group.factors)))


# ----------------------------------------------------------------------
# Cohomologically induced brackets


@dataclass(frozen=True)
class CohomologyClass:
    """A degree-n class: the group it lives in plus a representative cocycle."""

    h: CohomologyGroup
    cls_vec: tuple

    def representative(self) -> Cochain:
        return self.h.representative(np.array(self.cls_vec, dtype=np.int64))

    def is_zero(self) -> bool:
        return not any(self.cls_vec)


def zeta_toda_bracket(zeta: CohomologyClass, toda_cat: FinCategory,
                      f, g, h) -> Coset:
    """The bracket of (f, g, h) induced by a degree-3 class zeta.

    zeta lives in H^3 of a category C with reduced coefficients L; the
    diagram (f, g, h) in C (with vanishing consecutive composites)
    classifies a functor from the five-object bracket category into C, and
    the bracket is the class of c(h, g, f) for a normalized representative
    c of zeta, inside L(W, Z) modulo L(W, h) L(W, Y) + L(f, Z) L(X, Z).
    """
    hgrp = zeta.h
    cat, L = hgrp.cat, hgrp.L
    if hgrp.degree != 3:
        raise DimensionError("bracket classes live in degree 3")
    if not L.is_reduced():
        raise CoeffsNotReducedError("bracket coefficients must be reduced")
    phi = diagram_functor(toda_cat, cat, f, g, h)
    # find a normalized representative of zeta through the comparison map
    norm, comp = hgrp.normalized_comparison()
    pre = hom_solve(comp, np.array(zeta.cls_vec, dtype=np.int64))
    if pre is None:
        raise DimensionError("class has no normalized representative")
    c_norm = norm.representative(pre)
    w, x = cat.src[f], cat.tgt[f]
    y, z = cat.tgt[g], cat.tgt[h]
    val = c_norm.value((h, g, f))
    mods = L.factors(w, z)
    post_h = L.post_action(h, w)     # L(w, y) -> L(w, z)
    pre_f = L.pre_action(f, z)       # L(x, z) -> L(w, z)
    gens = post_h.image_gens().hstack(pre_f.image_gens())
    return Coset(mods, gens, _as_column(val, len(mods)))


# ----------------------------------------------------------------------
# Trace dualities and the chain-to-cochain comparison


@dataclass
class TraceDuality:
    """alpha and beta on M tensor Hom(P, Q), as explicit group maps."""

    p_rank: int
    q_rank: int
    coeff: tuple[int, ...]
    alpha: GroupHom   # M x Hom(P, Q) -> Hom(Hom(Q, P), M)
    beta: GroupHom    # M x Hom(P, Q) -> Hom(P, M x Q)
    alpha_bijective: bool
    beta_bijective: bool


def trace_duality(p_rank: int, q_rank: int, coeff: tuple[int, ...]) -> TraceDuality:
    """Assemble alpha(m x f)(g) = m * trace(f g) and beta(m x f)(x) = m x f(x).

    Domain coordinates: pairs (cell of f in Hom(P, Q), factor of M),
    cell-major.  The alpha target Hom(Hom(Q, P), M) is coordinatized by
    (cell of g, factor of M); since Hom(Z/4, M) is the 4-torsion of M and
    every factor here divides 4, that group is again a product of the
    factors of M, one per cell.  Bijectivity is decided by Smith normal
    form over the ambient ring.
    """
    nf = len(coeff)
    p, q = p_rank, q_rank
    dom = tuple(coeff) * (q * p)      # f cells are q x p, row-major
    a_dst = tuple(coeff) * (p * q)    # g cells are p x q
    b_dst = tuple(coeff) * (q * p)    # Hom(P, M x Q): cells q x p
    a_mat = np.zeros((len(a_dst), len(dom)), dtype=np.int64)
    b_mat = np.zeros((len(b_dst), len(dom)), dtype=np.int64)
    for a in range(q):
        for b in range(p):
            for k in range(nf):
                col = (a * p + b) * nf + k
                # alpha: value on g = E_{cd} is m * trace(E_{ab} E_{cd})
                #      = m * delta_{b c} delta_{a d}; nonzero only at g-cell (b, a)
                a_mat[(b * q + a) * nf + k, col] = 1
                # beta: x = basis vector e_b of P goes to m x e_a
                b_mat[(a * p + b) * nf + k, col] = 1
    alpha = GroupHom(dom, a_dst, ZModMatrix.from_numpy(AMBIENT, a_mat))
    beta = GroupHom(dom, b_dst, ZModMatrix.from_numpy(AMBIENT, b_mat))
    return TraceDuality(p, q, tuple(coeff), alpha, beta,
                        hom_is_bijective(alpha), hom_is_bijective(beta))


@dataclass
class DualizedComplexComparison:
    """Degreewise comparison Hom(F_*(C, Hom), M) vs F^*(C, Hom(-, M x -))."""

    degrees: list[int]
    iso_by_degree: dict[int, GroupHom]
    d_commutes: dict[int, bool]

    def all_commute(self) -> bool:
        return all(self.d_commutes.values())


def dualize_chain_complex(trunc: FinCategory, modulus: int,
                          coeff: tuple[int, ...], max_degree: int = 3
                          ) -> DualizedComplexComparison:
    """Build both complexes on a free-module truncation and compare them.

    The left side is the M-dual of the chain complex with Hom coefficients;
    the right side is the cochain complex with coefficients
    Hom(-, M tensor -).  The degreewise identification is beta after
    alpha^{-1}, assembled per composable string, and commutation with the
    differentials is checked exhaustively on basis vectors.
    """
    from .bimodule import truncation_self_functor
    if any(modulus % c != 0 for c in coeff):
        raise DimensionError("coefficient factors must divide the ring modulus")
    phi = truncation_self_functor(trunc, modulus)
    hom_l = hom_bimodule(phi, coeff=(modulus,))
    hom_m = hom_bimodule(phi, coeff=coeff)

    chain_bases = {n: ComplexBasis(trunc, hom_l, n, "chain")
                   for n in range(max_degree + 2)}
    cochain_bases = {n: ComplexBasis(trunc, hom_m, n, "cochain")
                     for n in range(max_degree + 2)}

    # Per string X0 <- ... <- Xn the chain coefficient is Hom(X0, Xn); with
    # P = Xn and Q = X0 its M-dual is the alpha target and the cochain
    # coefficient Hom(Xn, M x X0) is the beta target, so the degreewise
    # identification is beta after alpha^{-1}, blockwise.
    duality_cache: dict[tuple[int, int], tuple] = {}
    isos: dict[int, GroupHom] = {}
    for n in range(max_degree + 2):
        blocks = []
        src_mods: list[int] = []
        dst_mods: list[int] = []
        for key in chain_bases[n].keys:
            x0, xn = (key, key) if n == 0 else trunc.sequence_endpoints(key)
            pq = (int(xn), int(x0))
            if pq not in duality_cache:
                td = trace_duality(*pq, coeff)
                blk = (td.beta.matrix.np @ _hom_inverse(td.alpha).matrix.np) % AMBIENT
                duality_cache[pq] = (td, blk)
            td, blk = duality_cache[pq]
            blocks.append((blk, td.alpha.dst_mods, td.beta.dst_mods))
            src_mods.extend(td.alpha.dst_mods)
            dst_mods.extend(td.beta.dst_mods)
        mat = np.zeros((len(dst_mods), len(src_mods)), dtype=np.int64)
        rpos = cpos = 0
        for blk, smods, dmods in blocks:
            mat[rpos:rpos + len(dmods), cpos:cpos + len(smods)] = blk
            rpos += len(dmods)
            cpos += len(smods)
        isos[n] = GroupHom(tuple(src_mods), tuple(dst_mods),
                           ZModMatrix.from_numpy(AMBIENT, mat))

    commutes: dict[int, bool] = {}
    for n in range(max_degree + 1):
        d_chain = chain_differential_matrix(chain_bases[n + 1], chain_bases[n])
        delta = _dual_hom(d_chain, chain_bases, n, coeff)
        d_cochain = cochain_differential_matrix(cochain_bases[n], cochain_bases[n + 1])
        lhs = isos[n + 1].compose(delta)
        rhs = d_cochain.compose(isos[n])
        diff = (lhs.matrix.np - rhs.matrix.np)
        mods = np.array(lhs.dst_mods, dtype=np.int64).reshape(-1, 1)
        commutes[n] = not (diff % mods).any() if diff.size else True
    return DualizedComplexComparison(list(range(max_degree + 1)), isos, commutes)


def _hom_inverse(h: GroupHom) -> GroupHom:
    """Inverse of a bijective GroupHom, column by column."""
    n = len(h.src_mods)
    cols = []
    for j in range(len(h.dst_mods)):
        e = np.zeros(len(h.dst_mods), dtype=np.int64)
        e[j] = 1
        x = hom_solve(h, e)
        if x is None:
            raise DimensionError("hom is not invertible")
        cols.append(x)
    return GroupHom(h.dst_mods, h.src_mods, columns(cols, AMBIENT, n))


def _dual_hom(d: GroupHom, chain_bases, n: int, coeff: tuple[int, ...]) -> GroupHom:
    """Hom(-, M) applied to the chain differential F_{n+1} -> F_n.

    For cyclic factors the dual of an integer matrix is its transpose,
    acting factor-diagonally on the M-components.
    """
    nf = len(coeff)
    a = d.matrix.np
    big = np.kron(a.T, np.eye(nf, dtype=np.int64)) % AMBIENT
    src_mods = tuple(m for _ in d.dst_mods for m in coeff)
    dst_mods = tuple(m for _ in d.src_mods for m in coeff)
    return GroupHom(src_mods, dst_mods, ZModMatrix.from_numpy(AMBIENT, big))


# ----------------------------------------------------------------------
# Natural endomorphisms of the identity functor


def identity_endomorphisms(trunc: FinCategory) -> list[dict]:
    """All families phi_X in End(X) with phi_Y s = s phi_X for every s: X -> Y.

    Exhaustive over the product of endomorphism sets; intended for small
    truncations of the free-module category.
    """
    end_sets = {x: trunc.hom(x, x) for x in trunc.objects}
    total = 1
    for x in trunc.objects:
        total *= len(end_sets[x])
    if total > 100_000:
        raise SizeLimitError(f"{total} candidate families exceed the search bound")
    families = []
    for combo in product(*(end_sets[x] for x in trunc.objects)):
        fam = dict(zip(trunc.objects, combo))
        ok = True
        for s in trunc.morphisms:
            x, y = trunc.src[s], trunc.tgt[s]
            if trunc.compose(fam[y], s) != trunc.compose(s, fam[x]):
                ok = False
                break
        if ok:
            families.append(fam)
    return families
