"""Triple (Toda) brackets in the triangulated structure on free Z/4-modules.

For composable maps W --f--> X --g--> Y --h--> Z with gf = 0 and hg = 0,
the bracket <h, g, f> is the coset of fill-in maps b: W -> Z obtained by
extending f to its exact cone triangle and completing the ladder down to
(g, h); the denominator is h.Hom(W, Y) + Hom(X, Z).f.  Since the
translation functor is the identity, brackets live in Hom(W, Z) itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .abgroup import Coset
from .errors import DimensionError, NoFillInError
from .zmod import ZModMatrix, columns, howell_form
from .triangles import MOD, BlockSystem, cone_of_map


@dataclass(frozen=True)
class TodaInput:
    """Composable triple with vanishing consecutive composites."""

    f: ZModMatrix  # W -> X
    g: ZModMatrix  # X -> Y
    h: ZModMatrix  # Y -> Z

    def __post_init__(self):
        if not (self.f.modulus == self.g.modulus == self.h.modulus == MOD):
            raise DimensionError("bracket inputs must be matrices over Z/4")
        if self.g.cols != self.f.rows or self.h.cols != self.g.rows:
            raise DimensionError("maps are not composable")
        if not (self.g @ self.f).is_zero():
            raise DimensionError("g f must vanish for the bracket to be defined")
        if not (self.h @ self.g).is_zero():
            raise DimensionError("h g must vanish for the bracket to be defined")

    @property
    def w(self) -> int:
        return self.f.cols

    @property
    def z(self) -> int:
        return self.h.rows


@dataclass(frozen=True)
class TodaBracket:
    """The bracket as a canonical coset in Hom(W, Z)."""

    input: TodaInput
    value: Coset

    def is_zero(self) -> bool:
        return self.value.is_zero()

    @property
    def representative(self) -> ZModMatrix:
        """Canonical representative reshaped back to a z x w matrix."""
        return ZModMatrix.from_numpy(
            MOD, self.value.rep.np.reshape(self.input.z, self.input.w))

    def contains(self, b: ZModMatrix) -> bool:
        return self.value.contains(
            ZModMatrix.from_numpy(MOD, b.np.reshape(-1, 1)))


def indeterminacy(inp: TodaInput) -> ZModMatrix:
    """Generators (columns) of h.Hom(W, Y) + Hom(X, Z).f inside Hom(W, Z).

    Hom(W, Z) is identified with row-major coordinate vectors of length
    z * w; the generators are h composed with the elementary maps W -> Y
    and the elementary maps X -> Z composed with f.
    """
    w, x = inp.f.cols, inp.f.rows
    y, z = inp.h.cols, inp.h.rows
    gens = []
    for r in range(y):
        for c in range(w):
            e = np.zeros((y, w), dtype=np.int64)
            e[r, c] = 1
            gens.append((inp.h.np @ e).reshape(-1) % MOD)
    for r in range(z):
        for c in range(x):
            e = np.zeros((z, x), dtype=np.int64)
            e[r, c] = 1
            gens.append((e @ inp.f.np).reshape(-1) % MOD)
    return columns(gens, MOD, z * w)


def toda_bracket(inp: TodaInput) -> TodaBracket:
    """Compute <h, g, f> with its full indeterminacy coset.

    The fill-in pair (a: C_f -> Y, b: W -> Z) is found as one joint linear
    system (a i = g and b q = h a); solving sequentially could pick an `a`
    that admits no `b` even when a joint solution exists.  Different joint
    solutions differ by the indeterminacy, so the reduced coset is
    well-defined.
    """
    cone = cone_of_map(inp.f)
    sys = BlockSystem()
    ua = sys.add_unknown(inp.g.rows, cone.c)
    ub = sys.add_unknown(inp.z, inp.w)
    sys.add_equation([(None, ua, cone.i)], inp.g)
    # b q - h a = 0
    sys.add_equation([(None, ub, cone.q), (-inp.h, ua, None)],
                     ZModMatrix.zeros(MOD, inp.z, cone.q.cols))
    sol = sys.solve()
    if sol is None:
        raise NoFillInError("no fill-in for the bracket diagram; the cone triangle "
                            "should always admit one: " + str(sys.last_inconsistency))
    b = sol[ub]
    rep = ZModMatrix.from_numpy(MOD, b.np.reshape(-1, 1))
    value = Coset.free(inp.z * inp.w, indeterminacy(inp), rep)
    return TodaBracket(inp, value)


def bracket_of_triangle(t) -> TodaBracket:
    """<q, i, f> for a candidate triangle; contains the identity iff exactness holds."""
    return toda_bracket(TodaInput(t.f, t.i, t.q))
