"""Finitely generated Z/4-modules in split normal form.

Every finitely generated Z/4-module is a direct sum of copies of Z/2 and
Z/4, so an object here is just a pair of multiplicities (a, b) standing
for (Z/2)^a + (Z/4)^b.  A morphism carries four blocks, one per summand
type, with the hom-groups

    Hom(Z/2, Z/2) = Z/2        Hom(Z/4, Z/2) = Z/2   (reduce mod 2)
    Hom(Z/2, Z/4) = {0, 2}     Hom(Z/4, Z/4) = Z/4

Injectives and projectives coincide (the sums of Z/4s), which makes this
category Frobenius; choosing the injective hull as the cone of each object
pins down a suspension on the stable category that is the identity on
Z/2-vector spaces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .zmod import ZModMatrix


@dataclass(frozen=True)
class FgModule:
    """(Z/2)^a + (Z/4)^b."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise DimensionError("negative multiplicities")

    def __str__(self) -> str:
        return f"(Z/2)^{self.a} + (Z/4)^{self.b}"

    def is_injective(self) -> bool:
        return self.a == 0

    def to_json_obj(self) -> dict:
        return {"a": self.a, "b": self.b}


class FgMorphism:
    """Morphism between split modules, stored as its four hom-blocks.

    Block names give target then source summand type: ``b22`` maps the Z/2
    part to the Z/2 part (entries mod 2), ``b24`` the Z/4 part to the Z/2
    part (mod 2), ``b42`` the Z/2 part to the Z/4 part (entries in {0, 2}
    inside Z/4), ``b44`` the Z/4 part to the Z/4 part (mod 4).
    """

    __slots__ = ("source", "target", "b22", "b24", "b42", "b44")

    def __init__(self, source: FgModule, target: FgModule,
                 b22: ZModMatrix, b24: ZModMatrix, b42: ZModMatrix, b44: ZModMatrix):
        shapes = [(b22, 2, target.a, source.a), (b24, 2, target.a, source.b),
                  (b42, 4, target.b, source.a), (b44, 4, target.b, source.b)]
        for blk, mod, r, c in shapes:
            if blk.modulus != mod or blk.rows != r or blk.cols != c:
                raise DimensionError(f"block has shape {blk.rows}x{blk.cols} mod "
                                     f"{blk.modulus}, expected {r}x{c} mod {mod}")
        if not b42.is_even():
            raise DimensionError("a map Z/2 -> Z/4 must take values in {0, 2}")
        self.source = source
        self.target = target
        self.b22, self.b24, self.b42, self.b44 = b22, b24, b42, b44

    @classmethod
    def zero(cls, source: FgModule, target: FgModule) -> "FgMorphism":
        return cls(source, target,
                   ZModMatrix.zeros(2, target.a, source.a),
                   ZModMatrix.zeros(2, target.a, source.b),
                   ZModMatrix.zeros(4, target.b, source.a),
                   ZModMatrix.zeros(4, target.b, source.b))

    @classmethod
    def identity(cls, x: FgModule) -> "FgMorphism":
        return cls(x, x, ZModMatrix.identity(2, x.a), ZModMatrix.zeros(2, x.a, x.b),
                   ZModMatrix.zeros(4, x.b, x.a), ZModMatrix.identity(4, x.b))

    def compose(self, first: "FgMorphism") -> "FgMorphism":
        """self after first.

        A composite through a Z/4 middle kills the Z/2 -> Z/2 route (any
        hom Z/4 -> Z/2 annihilates {0, 2}), which is what the b22 formula
        below reflects.
        """
        if first.target != self.source:
            raise DimensionError("morphisms do not compose")
        g, f = self, first
        b22 = g.b22 @ f.b22
        b24 = g.b22 @ f.b24 + g.b24 @ f.b44.reduce_mod2()
        b42 = g.b42 @ _lift4(f.b22) + g.b44 @ f.b42
        b44 = g.b44 @ f.b44 + g.b42 @ _lift4(f.b24)
        return FgMorphism(f.source, g.target, b22, b24, b42, b44)

    def __add__(self, other: "FgMorphism") -> "FgMorphism":
        if (self.source, self.target) != (other.source, other.target):
            raise DimensionError("cannot add morphisms with different endpoints")
        return FgMorphism(self.source, self.target, self.b22 + other.b22,
                          self.b24 + other.b24, self.b42 + other.b42,
                          self.b44 + other.b44)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FgMorphism)
                and self.source == other.source and self.target == other.target
                and self.b22 == other.b22 and self.b24 == other.b24
                and self.b42 == other.b42 and self.b44 == other.b44)

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.b22, self.b24, self.b42, self.b44))

    def __repr__(self) -> str:
        return (f"FgMorphism({self.source} -> {self.target}, b22={self.b22.np.tolist()}, "
                f"b24={self.b24.np.tolist()}, b42={self.b42.np.tolist()}, "
                f"b44={self.b44.np.tolist()})")

    def is_zero(self) -> bool:
        return (self.b22.is_zero() and self.b24.is_zero()
                and self.b42.is_zero() and self.b44.is_zero())

    def to_json_obj(self) -> dict:
        return {"source": self.source.to_json_obj(), "target": self.target.to_json_obj(),
                "b22": self.b22.to_json_obj(), "b24": self.b24.to_json_obj(),
                "b42": self.b42.to_json_obj(), "b44": self.b44.to_json_obj()}


def _lift4(m2: ZModMatrix) -> ZModMatrix:
    """Lift a mod-2 matrix to mod 4 with entries in {0, 1}."""
    return ZModMatrix.from_numpy(4, m2.np)


def injective_hull(x: FgModule) -> tuple[FgModule, FgMorphism]:
    """The hull CX = (Z/4)^(a+b) and the canonical monomorphism j: X -> CX.

    Each Z/2 summand embeds by multiplication by 2 into its own Z/4; the
    Z/4 summands map by the identity.
    """
    cx = FgModule(0, x.a + x.b)
    j42 = ZModMatrix.from_numpy(4, np.vstack([2 * np.eye(x.a, dtype=np.int64),
                                              np.zeros((x.b, x.a), dtype=np.int64)]))
    j44 = ZModMatrix.from_numpy(4, np.vstack([np.zeros((x.a, x.b), dtype=np.int64),
                                              np.eye(x.b, dtype=np.int64)]))
    j = FgMorphism(x, cx, ZModMatrix.zeros(2, 0, x.a), ZModMatrix.zeros(2, 0, x.b),
                   j42, j44)
    return cx, j


def suspension(x: FgModule) -> tuple[FgModule, FgMorphism]:
    """SX = (Z/2)^a with the cokernel projection r: CX -> SX.

    The Z/4 summands of X are injective and suspend to zero; on a
    Z/2-vector space X the round trip j compose r is multiplication by 2
    on CX.
    """
    cx, _ = injective_hull(x)
    sx = FgModule(x.a, 0)
    r24 = ZModMatrix.from_numpy(2, np.hstack([np.eye(x.a, dtype=np.int64),
                                              np.zeros((x.a, x.b), dtype=np.int64)]))
    r = FgMorphism(cx, sx, ZModMatrix.zeros(2, x.a, 0), r24,
                   ZModMatrix.zeros(4, 0, 0), ZModMatrix.zeros(4, 0, cx.b))
    return sx, r


def suspend_morphism(f: FgMorphism) -> FgMorphism:
    """Suspension of a morphism between Z/2-vector spaces (b = 0 on both ends).

    With the hull choices above the suspension of such a morphism is the
    morphism itself, i.e. the stable suspension restricts to the identity
    functor on the subcategory of Z/2-vector spaces.
    """
    if f.source.b or f.target.b:
        raise DimensionError("suspend_morphism expects Z/2-vector spaces")
    sx = FgModule(f.source.a, 0)
    sy = FgModule(f.target.a, 0)
    return FgMorphism(sx, sy, f.b22, ZModMatrix.zeros(2, sy.a, 0),
                      ZModMatrix.zeros(4, 0, sx.a), ZModMatrix.zeros(4, 0, 0))


def factor_through_hull(f: FgMorphism) -> FgMorphism | None:
    """Find h with h after j = f where j: X -> CX is the hull inclusion.

    Writing out h after j block by block shows every block of f except the
    Z/2 -> Z/2 one is freely realizable, while the b22 block of any such
    composite vanishes (maps out of Z/4 into Z/2 kill the image of 2).
    The candidate below therefore solves the factorization problem
    whenever it is solvable at all.
    """
    x, y = f.source, f.target
    cx, j = injective_hull(x)
    h24 = ZModMatrix.from_numpy(2, np.hstack([np.zeros((y.a, x.a), dtype=np.int64),
                                              f.b24.np]))
    h44 = ZModMatrix.from_numpy(4, np.hstack([f.b42.np // 2, f.b44.np]))
    h = FgMorphism(cx, y, ZModMatrix.zeros(2, y.a, 0), h24,
                   ZModMatrix.zeros(4, y.b, 0), h44)
    if h.compose(j) == f:
        return h
    return None


def is_stably_zero(f: FgMorphism) -> bool:
    """Does f factor through an injective object?

    Factoring through some injective is equivalent to factoring through
    the injective hull of the source (the hull inclusion is a monomorphism
    into an injective), which is a linear solvability question.
    """
    return factor_through_hull(f) is not None
