"""Finite abelian groups of exponent dividing 4, presented concretely.

Three layers of structure, all built on the Z/4 linear algebra in
:mod:`tricert.zmod`:

* :class:`FinAbGroup` records invariant factors (with optional generator
  witnesses in an ambient residue module).
* :class:`Coset` is an element of Hom-group-modulo-subgroup with a
  canonical representative, so coset equality is literal equality.
* :func:`subquotient` computes ker/im inside (Z/4)^n together with the
  projection map, which is how every (co)homology group here is produced.

Mixed products like Z/2 + Z/4 are handled by tracking a per-coordinate
modulus vector ("mods") while doing all arithmetic in the ambient ring
Z/4; a coordinate of modulus d embeds its relation d*e_j into whatever
subgroup is being quotiented by.  A homomorphism between such products is
an integer matrix A with A[i, j] * d_j = 0 modulo the target modulus c_i,
and the kernel of A is computed by scaling row i by 4 / c_i and solving
over Z/4.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionError, ImNotInKerError
from .zmod import (ZModMatrix, columns, howell_form, kernel, matmul_mod,
                   reduce_vector, smith_normal_form, solve, subgroup_order)

AMBIENT = 4  # every group in this package has exponent dividing 4


@dataclass(frozen=True)
class FinAbGroup:
    """A finite abelian group as a chain of invariant factors.

    ``factors`` is a tuple of integers > 1, each dividing the next.  When
    the group arose as a subquotient of an ambient residue module,
    ``witnesses`` holds one ambient generator per factor (as columns).
    """

    factors: tuple[int, ...]
    witnesses: ZModMatrix | None = None

    def __post_init__(self):
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise DimensionError(f"invariant factors {self.factors} do not form "
                                     "a divisibility chain")
        if any(f <= 1 for f in self.factors):
            raise DimensionError("invariant factors must exceed 1")

    @property
    def order(self) -> int:
        n = 1
        for f in self.factors:
            n *= f
        return n

    def is_trivial(self) -> bool:
        return not self.factors

    def __eq__(self, other) -> bool:
        return isinstance(other, FinAbGroup) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        return " + ".join(f"Z/{f}" for f in self.factors)

    def elements(self):
        """All class vectors, in lexicographic order (use only on small groups)."""
        if not self.factors:
            yield np.zeros(0, dtype=np.int64)
            return
        idx = np.zeros(len(self.factors), dtype=np.int64)
        while True:
            yield idx.copy()
            j = len(self.factors) - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < self.factors[j]:
                    break
                idx[j] = 0
                j -= 1
            if j < 0:
                return


class Coset:
    """representative + subgroup inside a product of cyclic groups.

    The ambient group is prod Z/mods[i], embedded in (Z/4)^n.  The
    subgroup is stored as a canonical Howell basis that always includes
    the coordinate relations mods[i] * e_i, and the representative is kept
    reduced against it, so two cosets are equal iff their fields coincide.
    """

    __slots__ = ("mods", "subgroup", "rep")

    def __init__(self, mods: Sequence[int], subgroup_gens: ZModMatrix,
                 representative: ZModMatrix):
        n = len(mods)
        if subgroup_gens.rows != n or representative.rows != n or representative.cols != 1:
            raise DimensionError("coset pieces have mismatched ambient dimension")
        self.mods = tuple(int(m) for m in mods)
        relations = columns([m * np.eye(n, dtype=np.int64)[:, i]
                             for i, m in enumerate(self.mods) if m != AMBIENT],
                            AMBIENT, n)
        self.subgroup = howell_form(subgroup_gens.hstack(relations))
        self.rep = reduce_vector(self.subgroup, representative)

    @classmethod
    def free(cls, n: int, subgroup_gens: ZModMatrix, representative: ZModMatrix) -> "Coset":
        """Coset in a free module (Z/4)^n."""
        return cls((AMBIENT,) * n, subgroup_gens, representative)

    def reduced(self) -> "Coset":
        """Already-canonical copy; reduction happens at construction time."""
        return self

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def contains(self, v: ZModMatrix) -> bool:
        return reduce_vector(self.subgroup, v) == self.rep

    def __eq__(self, other) -> bool:
        return (isinstance(other, Coset) and self.mods == other.mods
                and self.rep == other.rep and self.subgroup == other.subgroup)

    def __hash__(self) -> int:
        return hash((self.mods, self.rep, self.subgroup))

    def subgroup_factors(self) -> tuple[int, ...]:
        """Invariant factors of the denominator subgroup inside the ambient group.

        The stored Howell basis lives in (Z/4)^n and contains the coordinate
        relations, so the honest subgroup is its span modulo those relations.
        """
        n = len(self.mods)
        rel = columns([m * np.eye(n, dtype=np.int64)[:, i]
                       for i, m in enumerate(self.mods) if m != AMBIENT], AMBIENT, n)
        span = columns(list(self.subgroup.np), AMBIENT, n)
        return Subquotient(span, rel).group.factors

    def ambient_order(self) -> int:
        n = 1
        for m in self.mods:
            n *= m
        return n

    def index(self) -> int:
        """Index of the denominator subgroup in the ambient group."""
        extra = subgroup_order(self.subgroup)
        full = 1
        for _ in self.mods:
            full *= AMBIENT
        # subgroup order was computed inside (Z/4)^n; remove the relation part
        rel = full // self.ambient_order()
        return self.ambient_order() // (extra // rel)

    def __repr__(self) -> str:
        return f"Coset(rep={self.rep.np.reshape(-1).tolist()}, mods={self.mods})"


def _span_factors(hwl: ZModMatrix) -> tuple[int, ...]:
    if hwl.rows == 0:
        return ()
    sf = smith_normal_form(hwl)
    facs = sorted(AMBIENT // d for d in sf.diagonal if d != 0 and AMBIENT // d > 1)
    # diagonal entry d spans a cyclic subgroup of order 4/d inside Z/4
    return tuple(facs)


def coset_reduce(c: Coset) -> Coset:
    """Canonical form of a coset (identity here: cosets canonicalize on construction)."""
    return c.reduced()


class Subquotient:
    """ker/im inside (Z/4)^n, with projection and representative maps."""

    def __init__(self, ker_gens: ZModMatrix, im_gens: ZModMatrix):
        if ker_gens.rows != im_gens.rows:
            raise DimensionError("kernel and image generators live in different modules")
        self.n = ker_gens.rows
        self.K = ker_gens
        self._ksnf = smith_normal_form(ker_gens)
        self._check_contained(im_gens)
        # relations: coefficient vectors x with K x inside the image span
        stacked = ker_gens.hstack(im_gens)
        full_kernel = kernel(stacked)
        relations = full_kernel.submatrix(0, ker_gens.cols, 0, full_kernel.cols)
        sf = smith_normal_form(relations)
        self._P = sf.P
        self._Pinv = sf.P.inverse()
        k = ker_gens.cols
        diag = list(sf.diagonal) + [0] * (k - len(sf.diagonal))
        self._positions = [j for j in range(k) if diag[j] != 1]
        self._position_mods = [AMBIENT if diag[j] == 0 else AMBIENT // diag[j]
                               for j in self._positions]
        facs = sorted(m for m in self._position_mods if m > 1)
        # witnesses: ambient elements mapping to each factor generator
        wits = []
        fac_positions = sorted(zip(self._position_mods, self._positions))
        self._ordered_positions = [pos for _, pos in fac_positions]
        for _, pos in fac_positions:
            e = np.zeros(k, dtype=np.int64)
            e[pos] = 1
            wits.append((self.K.np @ (self._Pinv.np @ e)) % AMBIENT)
        self.group = FinAbGroup(tuple(facs), columns(wits, AMBIENT, self.n))
        self._ordered_mods = [m for m, _ in fac_positions]

    def _check_contained(self, im_gens: ZModMatrix) -> None:
        """im is in the kernel span iff D y = P b is solvable for every column b."""
        if im_gens.cols == 0:
            return
        sf = self._ksnf
        pb = matmul_mod(sf.P.np, im_gens.np, AMBIENT)
        diag = list(sf.diagonal)
        for i in range(self.n):
            d = diag[i] if i < len(diag) else 0
            row = pb[i, :]
            bad = (row % d).any() if d else row.any()
            if bad:
                raise ImNotInKerError(
                    "an image generator is not in the kernel span "
                    f"(row {i}, divisor {d})")

    def _solve_kernel_coords(self, v: ZModMatrix) -> np.ndarray:
        """x with K x = v, using the stored Smith form of K."""
        sf = self._ksnf
        rhs = (sf.P.np @ v.np.reshape(-1)) % AMBIENT
        y = np.zeros(self.K.cols, dtype=np.int64)
        diag = list(sf.diagonal)
        for i in range(self.n):
            d = diag[i] if i < len(diag) else 0
            if d == 0:
                if rhs[i] % AMBIENT:
                    raise ImNotInKerError("element is not in the kernel span")
                continue
            if rhs[i] % d:
                raise ImNotInKerError("element is not in the kernel span")
            if i < self.K.cols:
                y[i] = rhs[i] // d
        return (sf.Q.np @ y) % AMBIENT

    def class_of(self, v: ZModMatrix) -> np.ndarray:
        """Class vector of an ambient element lying in the kernel span."""
        x = self._solve_kernel_coords(v)
        y = (self._P.np @ x) % AMBIENT
        return np.array([int(y[pos]) % m for m, pos in
                         zip(self._ordered_mods, self._ordered_positions)],
                        dtype=np.int64)

    def rep_of(self, cls_vec: Sequence[int]) -> ZModMatrix:
        """An ambient representative of a class vector."""
        k = self.K.cols
        y = np.zeros(k, dtype=np.int64)
        for c, m, pos in zip(cls_vec, self._ordered_mods, self._ordered_positions):
            y[pos] = int(c) % m
        x = (self._Pinv.np @ y) % AMBIENT
        return ZModMatrix.from_numpy(AMBIENT, (self.K.np @ x % AMBIENT).reshape(-1, 1))

    def is_zero_class(self, v: ZModMatrix) -> bool:
        return not self.class_of(v).any()


def subquotient(ker_gens: ZModMatrix, im_gens: ZModMatrix) -> Subquotient:
    """Compute ker/im with its projection map; raises ImNotInKerError if im is not in ker."""
    return Subquotient(ker_gens, im_gens)


# ----------------------------------------------------------------------
# Homomorphisms between products of cyclic 2-groups


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism prod Z/src_mods[j] -> prod Z/dst_mods[i] as an integer matrix."""

    src_mods: tuple[int, ...]
    dst_mods: tuple[int, ...]
    matrix: ZModMatrix  # entries over Z/4; rows reduce mod dst_mods

    def __post_init__(self):
        a = self.matrix
        if a.rows != len(self.dst_mods) or a.cols != len(self.src_mods):
            raise DimensionError("hom matrix shape does not match factor lists")
        if a.rows and a.cols:
            src = np.array(self.src_mods, dtype=np.int64)
            dst = np.array(self.dst_mods, dtype=np.int64)
            bad = (a.np * src[None, :]) % dst[:, None]
            if bad.any():
                i, j = map(int, np.argwhere(bad)[0])
                raise DimensionError(
                    f"entry ({i},{j})={a[i, j]} does not define a map "
                    f"Z/{self.src_mods[j]} -> Z/{self.dst_mods[i]}")

    def apply(self, v: np.ndarray) -> np.ndarray:
        out = self.matrix.np @ np.asarray(v, dtype=np.int64).reshape(-1)
        return out % np.array(self.dst_mods, dtype=np.int64) if self.dst_mods else out

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        if other.dst_mods != self.src_mods:
            raise DimensionError("homs do not compose")
        return GroupHom(other.src_mods, self.dst_mods, self.matrix @ other.matrix)

    def kernel_gens(self) -> ZModMatrix:
        """Generators of the kernel, as columns over the ambient (Z/4)^src.

        Scaling the i-th row by 4 / dst_mods[i] turns "zero mod dst_mods"
        into "zero mod 4"; the solutions mod 4 surject onto the kernel and
        automatically include the coordinate relations src_mods[j] * e_j.
        """
        scale = np.array([AMBIENT // c for c in self.dst_mods], dtype=np.int64)
        scaled = (self.matrix.np * scale.reshape(-1, 1)) % AMBIENT
        base = ZModMatrix.from_numpy(AMBIENT, scaled) if self.dst_mods else \
            ZModMatrix.zeros(AMBIENT, 0, len(self.src_mods))
        return kernel(base)

    def image_gens(self) -> ZModMatrix:
        """Generators of the image inside the ambient (Z/4)^dst."""
        return ZModMatrix.from_numpy(AMBIENT, self.matrix.np % AMBIENT)

    def coordinate_relations(self, side: str) -> ZModMatrix:
        mods = self.src_mods if side == "src" else self.dst_mods
        n = len(mods)
        return columns([m * np.eye(n, dtype=np.int64)[:, i]
                        for i, m in enumerate(mods) if m != AMBIENT], AMBIENT, n)

    def is_zero_map(self) -> bool:
        """Zero as a map of groups (entries vanish modulo the target factors)."""
        a = self.matrix.np
        for i, c in enumerate(self.dst_mods):
            if (a[i, :] % c).any():
                return False
        return True


def identity_hom(mods: Sequence[int]) -> GroupHom:
    mods = tuple(mods)
    return GroupHom(mods, mods, ZModMatrix.identity(AMBIENT, len(mods)))


def group_of_product(mods: Sequence[int]) -> FinAbGroup:
    """The product group itself as a FinAbGroup (drops nothing; factors sorted)."""
    return FinAbGroup(tuple(sorted(m for m in mods if m > 1)))


def hom_is_bijective(h: GroupHom) -> bool:
    """Decide bijectivity by comparing orders and testing kernel triviality via SNF."""
    src = group_of_product(h.src_mods)
    dst = group_of_product(h.dst_mods)
    if src.order != dst.order:
        return False
    ker_gens = h.kernel_gens()
    # kernel subgroup of the source group: quotient ambient kernel by relations
    rel = h.coordinate_relations("src")
    ker_order = subgroup_order(howell_form(ker_gens.hstack(rel)))
    rel_order = subgroup_order(howell_form(rel))
    return ker_order == rel_order


def hom_solve(h: GroupHom, y: np.ndarray) -> np.ndarray | None:
    """One x with h(x) = y in the target group, or None.

    Works over the ambient Z/4 after scaling each equation row by
    4 / dst_mods[i] (solvability in the group is equivalent).
    """
    scale = np.array([AMBIENT // c for c in h.dst_mods], dtype=np.int64)
    scaled = (h.matrix.np * scale.reshape(-1, 1)) % AMBIENT
    rhs = (np.asarray(y, dtype=np.int64).reshape(-1) * scale) % AMBIENT
    res = solve(ZModMatrix.from_numpy(AMBIENT, scaled),
                ZModMatrix.from_numpy(AMBIENT, rhs.reshape(-1, 1)))
    if res.x is None:
        return None
    x = res.x.np.reshape(-1)
    return x % np.array(h.src_mods, dtype=np.int64) if h.src_mods else x


def hom_from_action(src_mods, dst_mods, images: Callable[[int], np.ndarray]) -> GroupHom:
    """Build a GroupHom from images of the source factor generators."""
    cols = [np.asarray(images(j), dtype=np.int64) for j in range(len(src_mods))]
    mat = columns(cols, AMBIENT, len(dst_mods))
    return GroupHom(tuple(src_mods), tuple(dst_mods), mat)
