"""Candidate triangles over Z/4 with identity translation.

A candidate triangle is a 3-periodic diagram of free Z/4-modules

    A --f--> B --i--> C --q--> A

whose consecutive composites vanish.  The translation functor is the
identity throughout this package, so rotating a triangle literally cycles
the three maps (with a sign on the wrap-around map).

The calculus implemented here: homotopies between triangle morphisms and
contractibility (one joint linear solve over Z/4), mapping cones, a cone
construction extending any map to an exact triangle, the exactness
decision procedure (fill-in against the standard cone plus a mod-2
invertibility test), the decomposition of an exact triangle into a
multiplication-by-2 core plus a contractible complement, and the
octahedral modification that repairs the third component of a morphism of
exact triangles so that its mapping cone is exact again.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NotExactError
from .zmod import ZModMatrix, smith_normal_form, solve

MOD = 4


class CandidateTriangle:
    """Ranks (a, b, c) and maps f: A->B, i: B->C, q: C->A with if = qi = fq = 0."""

    __slots__ = ("a", "b", "c", "f", "i", "q")

    def __init__(self, f: ZModMatrix, i: ZModMatrix, q: ZModMatrix):
        if not (f.modulus == i.modulus == q.modulus == MOD):
            raise DimensionError("triangle maps must be matrices over Z/4")
        a, b, c = f.cols, f.rows, i.rows
        if i.cols != b or q.rows != a or q.cols != c:
            raise DimensionError(
                f"inconsistent shapes: f {b}x{a}, i {i.rows}x{i.cols}, q {q.rows}x{q.cols}")
        for name, comp in (("i*f", i @ f), ("q*i", q @ i), ("f*q", f @ q)):
            if not comp.is_zero():
                raise DimensionError(f"composite {name} is nonzero: not a candidate triangle")
        self.a, self.b, self.c = a, b, c
        self.f, self.i, self.q = f, i, q

    @property
    def ranks(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __eq__(self, other) -> bool:
        return (isinstance(other, CandidateTriangle)
                and (self.f, self.i, self.q) == (other.f, other.i, other.q))

    def __hash__(self) -> int:
        return hash((self.f, self.i, self.q))

    def __repr__(self) -> str:
        return f"CandidateTriangle(ranks={self.ranks})"

    def rotate(self) -> "CandidateTriangle":
        """B --i--> C --q--> A --(-f)--> B."""
        return CandidateTriangle(self.i, self.q, -self.f)

    def to_json_obj(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c,
                "f": self.f.to_json_obj(), "i": self.i.to_json_obj(),
                "q": self.q.to_json_obj()}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "CandidateTriangle":
        try:
            f = ZModMatrix.from_json_obj(obj["f"])
            i = ZModMatrix.from_json_obj(obj["i"])
            q = ZModMatrix.from_json_obj(obj["q"])
        except KeyError as exc:
            raise DimensionError(f"triangle object missing field {exc}") from exc
        return cls(f, i, q)


def x2_triangle(n: int) -> CandidateTriangle:
    """The triangle with all three maps equal to 2 * identity of rank n."""
    two = ZModMatrix.scalar(MOD, n, 2)
    return CandidateTriangle(two, two, two)


def direct_sum(t1: CandidateTriangle, t2: CandidateTriangle) -> CandidateTriangle:
    def blk(x, y):
        z_tl = ZModMatrix.zeros(MOD, x.rows, y.cols)
        z_br = ZModMatrix.zeros(MOD, y.rows, x.cols)
        return ZModMatrix.block([[x, z_tl], [z_br, y]])
    return CandidateTriangle(blk(t1.f, t2.f), blk(t1.i, t2.i), blk(t1.q, t2.q))


class TriangleMorphism:
    """Commuting triple (k0, k1, k2) between candidate triangles."""

    __slots__ = ("source", "target", "k0", "k1", "k2")

    def __init__(self, source: CandidateTriangle, target: CandidateTriangle,
                 k0: ZModMatrix, k1: ZModMatrix, k2: ZModMatrix):
        s, t = source, target
        if (k0.rows, k0.cols) != (t.a, s.a) or (k1.rows, k1.cols) != (t.b, s.b) \
                or (k2.rows, k2.cols) != (t.c, s.c):
            raise DimensionError("component shapes do not match the triangles")
        if k1 @ s.f != t.f @ k0:
            raise DimensionError("square k1 f = f' k0 does not commute")
        if k2 @ s.i != t.i @ k1:
            raise DimensionError("square k2 i = i' k1 does not commute")
        if k0 @ s.q != t.q @ k2:
            raise DimensionError("square k0 q = q' k2 does not commute")
        self.source, self.target = source, target
        self.k0, self.k1, self.k2 = k0, k1, k2

    @classmethod
    def identity(cls, t: CandidateTriangle) -> "TriangleMorphism":
        return cls(t, t, ZModMatrix.identity(MOD, t.a), ZModMatrix.identity(MOD, t.b),
                   ZModMatrix.identity(MOD, t.c))

    @classmethod
    def zero(cls, source: CandidateTriangle, target: CandidateTriangle) -> "TriangleMorphism":
        return cls(source, target, ZModMatrix.zeros(MOD, target.a, source.a),
                   ZModMatrix.zeros(MOD, target.b, source.b),
                   ZModMatrix.zeros(MOD, target.c, source.c))

    def compose(self, first: "TriangleMorphism") -> "TriangleMorphism":
        """self after first."""
        if first.target is not self.source and first.target != self.source:
            raise DimensionError("triangle morphisms do not compose")
        return TriangleMorphism(first.source, self.target, self.k0 @ first.k0,
                                self.k1 @ first.k1, self.k2 @ first.k2)

    def is_isomorphism(self) -> bool:
        return all(k.is_invertible() for k in (self.k0, self.k1, self.k2))

    def inverse(self) -> "TriangleMorphism":
        return TriangleMorphism(self.target, self.source, self.k0.inverse(),
                                self.k1.inverse(), self.k2.inverse())

    def __eq__(self, other) -> bool:
        return (isinstance(other, TriangleMorphism)
                and (self.k0, self.k1, self.k2) == (other.k0, other.k1, other.k2)
                and self.source == other.source and self.target == other.target)

    def __hash__(self) -> int:
        return hash((self.k0, self.k1, self.k2))

    def __repr__(self) -> str:
        return (f"TriangleMorphism(k0={self.k0.np.tolist()}, k1={self.k1.np.tolist()}, "
                f"k2={self.k2.np.tolist()})")


class Homotopy:
    """Maps (alpha1: B->A', alpha2: C->B', alpha0: A->C') connecting k to k'.

    The defining identities (translation = identity):

        -k1 + k1' = f' alpha1 + alpha2 i
        -k2 + k2' = i' alpha2 + alpha0 q
        -k0 + k0' = q' alpha0 + alpha1 f
    """

    __slots__ = ("k", "kp", "alpha1", "alpha2", "alpha0")

    def __init__(self, k: TriangleMorphism, kp: TriangleMorphism,
                 alpha1: ZModMatrix, alpha2: ZModMatrix, alpha0: ZModMatrix):
        if k.source != kp.source or k.target != kp.target:
            raise DimensionError("homotopy endpoints must share source and target")
        s, t = k.source, k.target
        self.k, self.kp = k, kp
        self.alpha1, self.alpha2, self.alpha0 = alpha1, alpha2, alpha0
        eqs = [(-k.k1 + kp.k1, t.f @ alpha1 + alpha2 @ s.i),
               (-k.k2 + kp.k2, t.i @ alpha2 + alpha0 @ s.q),
               (-k.k0 + kp.k0, t.q @ alpha0 + alpha1 @ s.f)]
        for lhs, rhs in eqs:
            if lhs != rhs:
                raise DimensionError("maps do not satisfy the homotopy identities")


def solve_homotopy(k: TriangleMorphism, kp: TriangleMorphism) -> Homotopy | None:
    """Find a homotopy from k to k' as one joint linear system over Z/4."""
    if k.source != kp.source or k.target != kp.target:
        raise DimensionError("morphisms must share source and target")
    s, t = k.source, k.target
    # unknowns: alpha1 (t.a x s.b), alpha2 (t.b x s.c), alpha0 (t.c x s.a)
    sys = BlockSystem()
    u1 = sys.add_unknown(t.a, s.b)
    u2 = sys.add_unknown(t.b, s.c)
    u0 = sys.add_unknown(t.c, s.a)
    sys.add_equation([(t.f, u1, None), (None, u2, s.i)], -k.k1 + kp.k1)
    sys.add_equation([(t.i, u2, None), (None, u0, s.q)], -k.k2 + kp.k2)
    sys.add_equation([(t.q, u0, None), (None, u1, s.f)], -k.k0 + kp.k0)
    sol = sys.solve()
    if sol is None:
        return None
    return Homotopy(k, kp, sol[u1], sol[u2], sol[u0])


class BlockSystem:
    """Joint linear system sum_k L_k X_k R_k = RHS over Z/4, solved by vectorization.

    Unknowns are matrices; a term (L, u, R) contributes L @ X_u @ R, where a
    None factor means the identity.  Row-major vectorization turns a term
    into kron(L, R^T).
    """

    def __init__(self):
        self.shapes: list[tuple[int, int]] = []
        self.equations: list[tuple[list, ZModMatrix]] = []
        self.last_inconsistency: str | None = None

    def add_unknown(self, rows: int, cols: int) -> int:
        self.shapes.append((rows, cols))
        return len(self.shapes) - 1

    def add_equation(self, terms: list, rhs: ZModMatrix) -> None:
        self.equations.append((terms, rhs))

    def _assemble(self) -> tuple[ZModMatrix, ZModMatrix]:
        col_offsets = []
        total = 0
        for r, c in self.shapes:
            col_offsets.append(total)
            total += r * c
        rows_blocks = []
        rhs_blocks = []
        for terms, rhs in self.equations:
            m = rhs.rows * rhs.cols
            block = np.zeros((m, total), dtype=np.int64)
            for L, u, R in terms:
                r, c = self.shapes[u]
                ll = L.np if L is not None else np.eye(rhs.rows, dtype=np.int64)
                rr = R.np if R is not None else np.eye(rhs.cols, dtype=np.int64)
                block[:, col_offsets[u]:col_offsets[u] + r * c] += np.kron(ll, rr.T)
            rows_blocks.append(block % MOD)
            rhs_blocks.append(rhs.np.reshape(-1))
        big = np.vstack(rows_blocks) if rows_blocks else np.zeros((0, total), dtype=np.int64)
        rhs = np.concatenate(rhs_blocks) if rhs_blocks else np.zeros(0, dtype=np.int64)
        return (ZModMatrix.from_numpy(MOD, big),
                ZModMatrix.from_numpy(MOD, rhs.reshape(-1, 1)))

    def solve(self) -> dict[int, ZModMatrix] | None:
        sol = self.solve_with_kernel()
        return None if sol is None else sol[0]

    def solve_with_kernel(self):
        """Returns ((particular solutions), kernel columns as dicts) or None."""
        big, rhs = self._assemble()
        res = solve(big, rhs)
        if res.x is None:
            self.last_inconsistency = res.inconsistency
            return None
        def unflatten(vec: np.ndarray) -> dict[int, ZModMatrix]:
            out = {}
            pos = 0
            for u, (r, c) in enumerate(self.shapes):
                out[u] = ZModMatrix.from_numpy(MOD, vec[pos:pos + r * c].reshape(r, c))
                pos += r * c
            return out
        particular = unflatten(res.x.np.reshape(-1))
        kernel_sols = [unflatten(res.kernel.np[:, j]) for j in range(res.kernel.cols)]
        return particular, kernel_sols


@dataclass
class Contractibility:
    contractible: bool
    homotopy: Homotopy | None

    def __bool__(self) -> bool:
        return self.contractible


def is_contractible(t: CandidateTriangle) -> Contractibility:
    """A triangle is contractible when its identity morphism is homotopic to zero."""
    h = solve_homotopy(TriangleMorphism.identity(t), TriangleMorphism.zero(t, t))
    return Contractibility(h is not None, h)


def mapping_cone(k: TriangleMorphism) -> CandidateTriangle:
    """The block-matrix candidate triangle on B + A', C + B', A + C'."""
    s, t = k.source, k.target
    def blk(tl: ZModMatrix, bl: ZModMatrix, br: ZModMatrix) -> ZModMatrix:
        tr = ZModMatrix.zeros(MOD, tl.rows, br.cols)
        return ZModMatrix.block([[tl, tr], [bl, br]])
    f_c = blk(-s.i, k.k1, t.f)
    i_c = blk(-s.q, k.k2, t.i)
    q_c = blk(-s.f, k.k0, t.q)
    return CandidateTriangle(f_c, i_c, q_c)


def cone_isomorphism(h: Homotopy) -> TriangleMorphism:
    """Explicit isomorphism mapping_cone(k) -> mapping_cone(k') from a homotopy.

    Block-unitriangular in each component, hence always invertible.
    """
    k, kp = h.k, h.kp
    src = mapping_cone(k)
    dst = mapping_cone(kp)
    def comp(n_top: int, alpha: ZModMatrix) -> ZModMatrix:
        top = ZModMatrix.identity(MOD, n_top).hstack(ZModMatrix.zeros(MOD, n_top, alpha.rows))
        bot = (-alpha).hstack(ZModMatrix.identity(MOD, alpha.rows))
        return top.vstack(bot)
    return TriangleMorphism(src, dst,
                            comp(k.source.b, h.alpha1),
                            comp(k.source.c, h.alpha2),
                            comp(k.source.a, h.alpha0))


def cone_of_map(f: ZModMatrix) -> CandidateTriangle:
    """Extend f: A -> B to an exact triangle A -> B -> C -> A.

    Diagonalize f as P f Q = D and build the cone of D blockwise: a unit
    diagonal entry contributes a contractible identity cone (no C
    coordinate), an entry 2 contributes a multiplication-by-2 strand, and
    the unmatched coordinates contribute split strands.  Conjugating back
    along P and Q yields the cone of f itself.
    """
    if f.modulus != MOD:
        raise DimensionError("cone_of_map expects a matrix over Z/4")
    a, b = f.cols, f.rows
    sf = smith_normal_form(f)
    diag = list(sf.diagonal)
    twos = [j for j, d in enumerate(diag) if d == 2]
    tgt_zero = [i for i in range(b) if i >= len(diag) or diag[i] == 0]
    src_zero = [j for j in range(a) if j >= len(diag) or diag[j] == 0]
    c = len(twos) + len(tgt_zero) + len(src_zero)
    i_d = np.zeros((c, b), dtype=np.int64)
    q_d = np.zeros((a, c), dtype=np.int64)
    for r, j in enumerate(twos):
        i_d[r, j] = 2
        q_d[j, r] = 2
    for r, i in enumerate(tgt_zero):
        i_d[len(twos) + r, i] = 1
    for r, j in enumerate(src_zero):
        q_d[j, len(twos) + len(tgt_zero) + r] = 1
    i_mat = ZModMatrix.from_numpy(MOD, i_d) @ sf.P
    q_mat = sf.Q @ ZModMatrix.from_numpy(MOD, q_d)
    return CandidateTriangle(f, i_mat, q_mat)


@dataclass
class ExactnessResult:
    exact: bool
    reason: str
    fill_in: ZModMatrix | None = None
    standard_cone: CandidateTriangle | None = None

    def __bool__(self) -> bool:
        return self.exact


def is_exact(t: CandidateTriangle) -> ExactnessResult:
    """Decide exactness by solving for a fill-in against the standard cone of f.

    Build E = cone_of_map(t.f), which is exact, and solve the joint system

        c i_E = i      and      q c = q_E

    for c: C_E -> C.  If the system is inconsistent the triangle is not
    exact.  If a solution exists, t is exact precisely when the solution is
    invertible: an invertible fill-in exhibits t as isomorphic to E, while
    between two exact triangles any fill-in extending the identities is
    automatically an isomorphism, so a singular solution rules exactness out.
    """
    cone = cone_of_map(t.f)
    sys = BlockSystem()
    u = sys.add_unknown(t.c, cone.c)
    sys.add_equation([(None, u, cone.i)], t.i)
    sys.add_equation([(t.q, u, None)], cone.q)
    sol = sys.solve()
    if sol is None:
        return ExactnessResult(False, f"no fill-in: {sys.last_inconsistency}",
                               standard_cone=cone)
    c = sol[u]
    if not c.is_invertible():
        return ExactnessResult(False, "fill-in exists but is singular mod 2",
                               fill_in=c, standard_cone=cone)
    return ExactnessResult(True, "invertible fill-in against standard cone",
                           fill_in=c, standard_cone=cone)


@dataclass
class ExactDecomposition:
    """t = x2_triangle(s) + contractible, realized by an explicit isomorphism."""

    s: int
    normal_form: CandidateTriangle
    iso: TriangleMorphism            # normal_form -> t
    contractible_part: CandidateTriangle


def _unit_cone_triangle() -> CandidateTriangle:
    one = ZModMatrix.identity(MOD, 1)
    return CandidateTriangle(one, ZModMatrix.zeros(MOD, 0, 1), ZModMatrix.zeros(MOD, 1, 0))


def _split_i_triangle() -> CandidateTriangle:
    # 0 -> Z/4 --1--> Z/4 -> 0
    one = ZModMatrix.identity(MOD, 1)
    return CandidateTriangle(ZModMatrix.zeros(MOD, 1, 0), one, ZModMatrix.zeros(MOD, 0, 1))


def _split_q_triangle() -> CandidateTriangle:
    # Z/4 -> 0 -> Z/4 --1--> Z/4
    one = ZModMatrix.identity(MOD, 1)
    return CandidateTriangle(ZModMatrix.zeros(MOD, 0, 1), ZModMatrix.zeros(MOD, 1, 0), one)


def decompose_exact(t: CandidateTriangle) -> ExactDecomposition:
    """Split an exact triangle as x2(s) + contractible with an explicit isomorphism.

    The core rank s counts the Z/2 invariant factors of ker(f), i.e. the
    diagonal entries equal to 2 in the Smith form of f.  The isomorphism is
    assembled from the fill-in against the standard cone and the
    coordinate permutation that groups the Smith strands by type.
    """
    res = is_exact(t)
    if not res.exact:
        raise NotExactError(f"triangle is not exact: {res.reason}")
    sf = smith_normal_form(t.f)
    diag = list(sf.diagonal)
    units = [j for j, d in enumerate(diag) if d == 1]
    twos = [j for j, d in enumerate(diag) if d == 2]
    tgt_zero = [i for i in range(t.b) if i >= len(diag) or diag[i] == 0]
    src_zero = [j for j in range(t.a) if j >= len(diag) or diag[j] == 0]
    s = len(twos)

    contractible = None
    for _ in units:
        piece = _unit_cone_triangle()
        contractible = piece if contractible is None else direct_sum(contractible, piece)
    for _ in tgt_zero:
        piece = _split_i_triangle()
        contractible = piece if contractible is None else direct_sum(contractible, piece)
    for _ in src_zero:
        piece = _split_q_triangle()
        contractible = piece if contractible is None else direct_sum(contractible, piece)
    if contractible is None:
        contractible = CandidateTriangle(ZModMatrix.zeros(MOD, 0, 0),
                                         ZModMatrix.zeros(MOD, 0, 0),
                                         ZModMatrix.zeros(MOD, 0, 0))
    normal = direct_sum(x2_triangle(s), contractible)

    # Permutations carrying the normal form's coordinates onto the Smith
    # strand coordinates of the standard cone of D.
    def perm_matrix(order: list[int], n: int) -> ZModMatrix:
        p = np.zeros((n, n), dtype=np.int64)
        for col, row in enumerate(order):
            p[row, col] = 1
        return ZModMatrix.from_numpy(MOD, p)

    # source object: x2 core uses the "two" strands, then unit strands, then
    # source-zero strands (the split-q pieces); analogous for B and C.
    pa = perm_matrix(twos + units + src_zero, t.a)
    pb = perm_matrix(twos + units + tgt_zero, t.b)
    # C coordinates of cone_of_map(D) are ordered: twos, target zeros, source zeros
    pc = perm_matrix(list(range(len(twos) + len(tgt_zero) + len(src_zero))),
                     len(twos) + len(tgt_zero) + len(src_zero))

    # normal -> cone_of_map(t.f): the standard cone equals the conjugated
    # cone of D, and (Q, P^{-1}, 1) carries the D-cone onto it.
    cone = res.standard_cone
    k0 = sf.Q @ pa
    k1 = sf.P.inverse() @ pb
    k2 = ZModMatrix.identity(MOD, cone.c) @ pc
    to_cone = TriangleMorphism(normal, cone, k0, k1, k2)
    # cone_of_map(t.f) -> t via the fill-in
    fill = TriangleMorphism(cone, t, ZModMatrix.identity(MOD, t.a),
                            ZModMatrix.identity(MOD, t.b), res.fill_in)
    iso = fill.compose(to_cone)
    return ExactDecomposition(s, normal, iso, contractible)


def octahedron_modify(k: TriangleMorphism) -> TriangleMorphism:
    """Replace k2 so that the mapping cone of the morphism becomes exact.

    Both endpoints are reduced to their multiplication-by-2 cores, the k0
    component of the core block is diagonalized, and on the strands where
    the diagonal is exactly 2 the third component picks up an extra 2; the
    new third component is k1 + (conjugated 2-pattern) on the core and is
    left untouched elsewhere.
    """
    src_dec = decompose_exact(k.source)
    dst_dec = decompose_exact(k.target)
    m = dst_dec.iso.inverse().compose(k).compose(src_dec.iso)
    s_src, s_dst = src_dec.s, dst_dec.s
    m0_core = m.k0.submatrix(0, s_dst, 0, s_src)
    m1_core = m.k1.submatrix(0, s_dst, 0, s_src)
    sf = smith_normal_form(m0_core)
    pattern = np.zeros((s_dst, s_src), dtype=np.int64)
    for j, d in enumerate(sf.diagonal):
        if d == 2:
            pattern[j, j] = 2
    correction = sf.P.inverse() @ ZModMatrix.from_numpy(MOD, pattern) @ sf.Q.inverse()
    new_core = m1_core + correction
    k2_new = m.k2.np.copy()
    k2_new[:s_dst, :s_src] = new_core.np
    m2_prime = ZModMatrix.from_numpy(MOD, k2_new)
    k2_prime = dst_dec.iso.k2 @ m2_prime @ src_dec.iso.k2.inverse()
    return TriangleMorphism(k.source, k.target, k.k0, k.k1, k2_prime)


# ----------------------------------------------------------------------
# helpers used by tests and the certificate


def random_invertible(n: int, rng) -> ZModMatrix:
    while True:
        m = ZModMatrix.random(MOD, n, n, rng)
        if m.is_invertible():
            return m


def conjugate(t: CandidateTriangle, g0: ZModMatrix, g1: ZModMatrix,
              g2: ZModMatrix) -> tuple[CandidateTriangle, TriangleMorphism]:
    """Transport t along invertible maps of its three objects.

    Returns the new triangle t' and the isomorphism t -> t'.
    """
    f2 = g1 @ t.f @ g0.inverse()
    i2 = g2 @ t.i @ g1.inverse()
    q2 = g0 @ t.q @ g2.inverse()
    t2 = CandidateTriangle(f2, i2, q2)
    return t2, TriangleMorphism(t, t2, g0, g1, g2)


def random_contractible(rng, pieces: int = 2) -> CandidateTriangle:
    t = None
    for _ in range(pieces):
        piece = rng.choice([_unit_cone_triangle, _split_i_triangle, _split_q_triangle])()
        t = piece if t is None else direct_sum(t, piece)
    if t is None:
        t = CandidateTriangle(ZModMatrix.zeros(MOD, 0, 0), ZModMatrix.zeros(MOD, 0, 0),
                              ZModMatrix.zeros(MOD, 0, 0))
    return t


def random_exact_triangle(rng, max_core_rank: int = 2,
                          max_contractible_pieces: int = 2) -> CandidateTriangle:
    """x2(s) + contractible pieces, hidden behind a random change of basis."""
    s = rng.randint(0, max_core_rank)
    t = direct_sum(x2_triangle(s),
                   random_contractible(rng, rng.randint(0, max_contractible_pieces)))
    g0 = random_invertible(t.a, rng)
    g1 = random_invertible(t.b, rng)
    g2 = random_invertible(t.c, rng)
    t2, _ = conjugate(t, g0, g1, g2)
    return t2


def random_morphism(source: CandidateTriangle, target: CandidateTriangle,
                    rng) -> TriangleMorphism:
    """A random element of the affine space of morphisms source -> target."""
    sys = BlockSystem()
    u0 = sys.add_unknown(target.a, source.a)
    u1 = sys.add_unknown(target.b, source.b)
    u2 = sys.add_unknown(target.c, source.c)
    zb = ZModMatrix.zeros(MOD, target.b, source.a)
    zc = ZModMatrix.zeros(MOD, target.c, source.b)
    za = ZModMatrix.zeros(MOD, target.a, source.c)
    sys.add_equation([(None, u1, source.f), (-target.f, u0, None)], zb)
    sys.add_equation([(None, u2, source.i), (-target.i, u1, None)], zc)
    sys.add_equation([(None, u0, source.q), (-target.q, u2, None)], za)
    particular, kernel_sols = sys.solve_with_kernel()
    pick = {u: particular[u] for u in (u0, u1, u2)}
    for ksol in kernel_sols:
        if rng.random() < 0.5:
            for u in pick:
                pick[u] = pick[u] + ksol[u]
    return TriangleMorphism(source, target, pick[u0], pick[u1], pick[u2])
