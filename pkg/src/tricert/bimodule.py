"""Bimodules on finite categories: functors C^op x C -> finite abelian groups.

A bimodule assigns to each ordered pair of objects a product of cyclic
2-groups (its "factors": a tuple of moduli from {2, 4}) and to each
morphism a pair of actions: postcomposition L(X, sigma) in the covariant
slot and precomposition L(sigma, Y) in the contravariant slot.  Actions
are integer matrices reduced modulo the target factors (see
:mod:`tricert.abgroup`).

The workhorse constructor is :func:`hom_bimodule`: for a rank functor
phi into free Z/m-modules and a coefficient module M, it realizes
L(X, Y) = Hom(phi X, M tensor phi Y) with entries laid out cell-major
(matrix cell first, M-factor second).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .abgroup import GroupHom, identity_hom
from .category import FinCategory, Functor, matrix_of
from .errors import CoeffsNotReducedError, DimensionError, NotNaturalError
from .zmod import ZModMatrix


class Bimodule:
    """Pair groups plus left/right actions over a finite category."""

    def __init__(self, cat: FinCategory, factors: Callable, post: Callable, pre: Callable):
        """``factors(x, y)`` gives the moduli tuple of L(x, y);
        ``post(sigma, x)`` the action L(x, sigma): L(x, src) -> L(x, tgt);
        ``pre(sigma, y)`` the action L(sigma, y): L(tgt, y) -> L(src, y)."""
        self.cat = cat
        self._factors = factors
        self._post = post
        self._pre = pre
        self._cache_f: dict = {}
        self._cache_post: dict = {}
        self._cache_pre: dict = {}

    def factors(self, x, y) -> tuple[int, ...]:
        key = (x, y)
        if key not in self._cache_f:
            self._cache_f[key] = tuple(self._factors(x, y))
        return self._cache_f[key]

    def dim(self, x, y) -> int:
        return len(self.factors(x, y))

    def post_action(self, sigma, x) -> GroupHom:
        """L(x, sigma) for sigma: s -> t, mapping L(x, s) -> L(x, t)."""
        key = (sigma, x)
        if key not in self._cache_post:
            self._cache_post[key] = self._post(sigma, x)
        return self._cache_post[key]

    def pre_action(self, sigma, y) -> GroupHom:
        """L(sigma, y) for sigma: s -> t, mapping L(t, y) -> L(s, y)."""
        key = (sigma, y)
        if key not in self._cache_pre:
            self._cache_pre[key] = self._pre(sigma, y)
        return self._cache_pre[key]

    # ------------------------------------------------------------------

    def is_reduced(self) -> bool:
        """Vanishing on the zero object, in both slots."""
        z = self.cat.zero_object
        if z is None:
            return False
        return all(not self.factors(z, y) and not self.factors(x, z)
                   for x in self.cat.objects for y in self.cat.objects)

    def check_functoriality(self) -> list[str]:
        """Exhaustive check that actions respect identities, composition,
        and that the two slots commute."""
        problems = []
        cat = self.cat
        for x in cat.objects:
            for y in cat.objects:
                i = cat.identity[y]
                if not _is_identity_hom(self.post_action(i, x)):
                    problems.append(f"post action of id_{y} on L({x}, -) is not the identity")
                i = cat.identity[x]
                if not _is_identity_hom(self.pre_action(i, y)):
                    problems.append(f"pre action of id_{x} on L(-, {y}) is not the identity")
        for (g, f), gf in cat.compose_table.items():
            for x in cat.objects:
                lhs = self.post_action(g, x).compose(self.post_action(f, x))
                rhs = self.post_action(gf, x)
                if not _same_hom(lhs, rhs):
                    problems.append(f"post action not functorial on ({g}, {f}) at {x}")
                    break
            for y in cat.objects:
                lhs = self.pre_action(f, y).compose(self.pre_action(g, y))
                rhs = self.pre_action(gf, y)
                if not _same_hom(lhs, rhs):
                    problems.append(f"pre action not functorial on ({g}, {f}) at {y}")
                    break
        for f in cat.morphisms:
            for g in cat.morphisms:
                # L(f, tgt g) then L(src f, g) versus the other order
                a = self.post_action(g, cat.src[f]).compose(self.pre_action(f, cat.src[g]))
                b = self.pre_action(f, cat.tgt[g]).compose(self.post_action(g, cat.tgt[f]))
                if not _same_hom(a, b):
                    problems.append(f"left and right actions do not commute on ({f}, {g})")
        return problems


def _is_identity_hom(h: GroupHom) -> bool:
    return _same_hom(h, identity_hom(h.src_mods))


def _same_hom(a: GroupHom, b: GroupHom) -> bool:
    if a.src_mods != b.src_mods or a.dst_mods != b.dst_mods:
        return False
    diff = (a.matrix.np - b.matrix.np)
    for i, c in enumerate(a.dst_mods):
        if (diff[i, :] % c).any():
            return False
    return True


# ----------------------------------------------------------------------


@dataclass(frozen=True)
class RankFunctor:
    """A functor from a finite category to free Z/m-modules.

    ``rank`` maps objects to ranks; ``matrix`` maps morphisms to matrices
    over Z/m (shape rank(tgt) x rank(src)).
    """

    cat: FinCategory
    modulus: int
    rank: Callable
    matrix: Callable

    def validate(self) -> list[str]:
        problems = []
        cat = self.cat
        for x in cat.objects:
            m = self.matrix(cat.identity[x])
            if m != ZModMatrix.identity(self.modulus, self.rank(x)):
                problems.append(f"identity of {x} is not sent to an identity matrix")
        for (g, f), gf in cat.compose_table.items():
            if self.matrix(g) @ self.matrix(f) != self.matrix(gf):
                problems.append(f"matrices are not functorial on ({g}, {f})")
        return problems


def truncation_self_functor(cat: FinCategory, modulus: int) -> RankFunctor:
    """The tautological functor of a truncated free-module category."""
    return RankFunctor(cat, modulus, rank=lambda x: int(x),
                       matrix=lambda m: matrix_of(m, modulus))


def toda_rank_functor(cat: FinCategory, image_of_j: ZModMatrix, modulus: int = 4,
                      rank: int = 1) -> RankFunctor:
    """The bracket-classifying diagram with all three arrows equal to one matrix."""
    def rk(x):
        return 0 if x == "*" else rank
    def mat(m):
        if m[0] == "j":
            return image_of_j
        if cat.is_identity(m):
            return ZModMatrix.identity(modulus, rk(cat.src[m]))
        return ZModMatrix.zeros(modulus, rk(cat.tgt[m]), rk(cat.src[m]))
    return RankFunctor(cat, modulus, rank=rk, matrix=mat)


def hom_bimodule(phi: RankFunctor, coeff: tuple[int, ...] = (4,)) -> Bimodule:
    """L(X, Y) = Hom(phi X, M tensor phi Y) with M = prod Z/coeff[k].

    An element is an M-valued rank(Y) x rank(X) matrix; the coordinate
    layout is cell-major, factor-minor.  Postcomposition acts through
    1_M tensor phi(sigma); precomposition through phi(sigma) on the right.
    For the plain Hom bimodule over Z/2 pass coeff=(2,).
    """
    nf = len(coeff)
    def factors(x, y):
        return tuple(coeff) * (phi.rank(x) * phi.rank(y))
    def post(sigma, x):
        a = phi.matrix(sigma).np  # rank(tgt) x rank(src)
        rx = phi.rank(x)
        block = np.kron(np.kron(a, np.eye(rx, dtype=np.int64)),
                        np.eye(nf, dtype=np.int64))
        src_mods = tuple(coeff) * (rx * a.shape[1])
        dst_mods = tuple(coeff) * (rx * a.shape[0])
        return GroupHom(src_mods, dst_mods, ZModMatrix.from_numpy(4, block % 4))
    def pre(sigma, y):
        a = phi.matrix(sigma).np
        ry = phi.rank(y)
        block = np.kron(np.kron(np.eye(ry, dtype=np.int64), a.T),
                        np.eye(nf, dtype=np.int64))
        src_mods = tuple(coeff) * (ry * a.shape[0])
        dst_mods = tuple(coeff) * (ry * a.shape[1])
        return GroupHom(src_mods, dst_mods, ZModMatrix.from_numpy(4, block % 4))
    return Bimodule(phi.cat, factors, post, pre)


def zero_bimodule(cat: FinCategory) -> Bimodule:
    def factors(x, y):
        return ()
    def act(sigma, _):
        return GroupHom((), (), ZModMatrix.zeros(4, 0, 0))
    return Bimodule(cat, factors, act, act)


def restrict_bimodule(l: Bimodule, f: Functor) -> Bimodule:
    """The pullback bimodule L(F-, F-) on the source of the functor."""
    return Bimodule(f.source,
                    lambda x, y: l.factors(f.on_obj(x), f.on_obj(y)),
                    lambda sigma, x: l.post_action(f.on_mor(sigma), f.on_obj(x)),
                    lambda sigma, y: l.pre_action(f.on_mor(sigma), f.on_obj(y)))


class BimoduleMorphism:
    """A family t_{x,y}: L(x, y) -> L'(x, y), natural in both slots."""

    def __init__(self, src: Bimodule, dst: Bimodule, component: Callable,
                 check: bool = True):
        if src.cat is not dst.cat:
            raise DimensionError("bimodule morphism requires a common category")
        self.src = src
        self.dst = dst
        self._component = component
        self._cache: dict = {}
        if check:
            problems = self.check_naturality()
            if problems:
                raise NotNaturalError("; ".join(problems[:3]))

    def component(self, x, y) -> GroupHom:
        key = (x, y)
        if key not in self._cache:
            self._cache[key] = self._component(x, y)
        return self._cache[key]

    def check_naturality(self) -> list[str]:
        problems = []
        cat = self.src.cat
        for sigma in cat.morphisms:
            s, t = cat.src[sigma], cat.tgt[sigma]
            for x in cat.objects:
                lhs = self.component(x, t).compose(self.src.post_action(sigma, x))
                rhs = self.dst.post_action(sigma, x).compose(self.component(x, s))
                if not _same_hom(lhs, rhs):
                    problems.append(f"not natural in the covariant slot at ({sigma}, {x})")
                    break
            for y in cat.objects:
                lhs = self.component(s, y).compose(self.src.pre_action(sigma, y))
                rhs = self.dst.pre_action(sigma, y).compose(self.component(t, y))
                if not _same_hom(lhs, rhs):
                    problems.append(f"not natural in the contravariant slot at ({sigma}, {y})")
                    break
        return problems


def scalar_pushforward(src: Bimodule, dst: Bimodule, scalar_map: Callable) -> BimoduleMorphism:
    """Coordinatewise pushforward given a per-pair GroupHom factory."""
    return BimoduleMorphism(src, dst, scalar_map)


def inclusion_pushforward(phi: RankFunctor, src: Bimodule | None = None,
                          dst: Bimodule | None = None) -> BimoduleMorphism:
    """Hom(phi, Z/2 tensor phi) -> Hom(phi, phi) induced by Z/2 -> Z/4, 1 -> 2.

    Pass ``src`` and ``dst`` to reuse existing bimodule instances (they
    must be the coeff-(2,) and coeff-(4,) hom bimodules of the functor).
    """
    if src is None:
        src = hom_bimodule(phi, coeff=(2,))
    if dst is None:
        dst = hom_bimodule(phi, coeff=(4,))
    def comp(x, y):
        n = phi.rank(x) * phi.rank(y)
        return GroupHom((2,) * n, (4,) * n,
                        ZModMatrix.from_numpy(4, 2 * np.eye(n, dtype=np.int64)))
    return BimoduleMorphism(src, dst, comp)
