"""Exact linear algebra over the residue rings Z/2 and Z/4.

Everything in this package is a matrix over Z/m for m in {2, 4}, so this
module is the computational core: immutable matrices, a Smith normal form
by local-ring pivoting, exact linear solvers with kernel generators, and
canonical (Howell) bases for subgroups of (Z/m)^n.

Z/4 is local with maximal ideal (2), hence a square matrix is invertible
iff its reduction mod 2 is invertible over the field Z/2, and every matrix
diagonalizes to diag(1,...,1, 2,...,2, 0,...,0) by invertible row and
column operations.  The same code handles Z/2 (no entries of valuation 1)
and, incidentally, any modulus 2^k.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError

# 2-adic valuation used for pivot selection; modulus entries get this "infinity".
_VAL_INF = 64


def _val2(x: int, modulus: int) -> int:
    """2-adic valuation of x as an element of Z/modulus (0 maps to _VAL_INF)."""
    x = x % modulus
    if x == 0:
        return _VAL_INF
    v = 0
    while x % 2 == 0:
        x //= 2
        v += 1
    return v


def _inv_unit(u: int, modulus: int) -> int:
    """Inverse of a unit in Z/modulus."""
    u %= modulus
    return pow(u, -1, modulus)


class ZModMatrix:
    """An immutable rows x cols matrix with entries in Z/modulus.

    Entries are stored reduced into [0, modulus).  Empty shapes (0 x n and
    n x 0) are first class: rank-zero objects occur throughout the triangle
    calculus.
    """

    __slots__ = ("modulus", "rows", "cols", "_a", "_hash")

    def __init__(self, modulus: int, rows: int, cols: int, entries) -> None:
        if modulus < 2:
            raise DimensionError(f"modulus must be >= 2, got {modulus}")
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative shape {rows}x{cols}")
        a = np.asarray(entries, dtype=np.int64).reshape(rows, cols) % modulus
        a.setflags(write=False)
        self.modulus = modulus
        self.rows = rows
        self.cols = cols
        self._a = a
        self._hash = None

    # ------------------------------------------------------------------
    # construction helpers

    @classmethod
    def from_rows(cls, modulus: int, rows: Sequence[Sequence[int]]) -> "ZModMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = [x for row in rows for x in row]
        return cls(modulus, r, c, flat)

    @classmethod
    def zeros(cls, modulus: int, rows: int, cols: int) -> "ZModMatrix":
        return cls(modulus, rows, cols, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, modulus: int, n: int) -> "ZModMatrix":
        return cls(modulus, n, n, np.eye(n, dtype=np.int64))

    @classmethod
    def scalar(cls, modulus: int, n: int, value: int) -> "ZModMatrix":
        return cls(modulus, n, n, value * np.eye(n, dtype=np.int64))

    @classmethod
    def diag(cls, modulus: int, values: Sequence[int], rows: int | None = None,
             cols: int | None = None) -> "ZModMatrix":
        k = len(values)
        r = k if rows is None else rows
        c = k if cols is None else cols
        a = np.zeros((r, c), dtype=np.int64)
        for j, v in enumerate(values):
            a[j, j] = v
        return cls(modulus, r, c, a)

    @classmethod
    def from_numpy(cls, modulus: int, a: np.ndarray) -> "ZModMatrix":
        a = np.asarray(a, dtype=np.int64)
        if a.ndim != 2:
            raise DimensionError(f"expected 2-d array, got ndim={a.ndim}")
        return cls(modulus, a.shape[0], a.shape[1], a)

    @classmethod
    def column(cls, modulus: int, entries: Sequence[int]) -> "ZModMatrix":
        return cls(modulus, len(entries), 1, list(entries))

    @classmethod
    def block(cls, grid: Sequence[Sequence["ZModMatrix"]]) -> "ZModMatrix":
        """Assemble a block matrix from a grid of compatible blocks."""
        modulus = grid[0][0].modulus
        rows = [np.hstack([b.np for b in row]) if row else np.zeros((0, 0), dtype=np.int64)
                for row in grid]
        return cls.from_numpy(modulus, np.vstack(rows))

    @classmethod
    def random(cls, modulus: int, rows: int, cols: int, rng) -> "ZModMatrix":
        a = np.array([[rng.randrange(modulus) for _ in range(cols)] for _ in range(rows)],
                     dtype=np.int64).reshape(rows, cols)
        return cls(modulus, rows, cols, a)

    # ------------------------------------------------------------------
    # views

    @property
    def np(self) -> np.ndarray:
        """Read-only numpy view of the entries."""
        return self._a

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._a.reshape(-1))

    def __getitem__(self, ij) -> int:
        return int(self._a[ij])

    # ------------------------------------------------------------------
    # arithmetic

    def _check_same_ring(self, other: "ZModMatrix") -> None:
        if self.modulus != other.modulus:
            raise DimensionError(f"modulus mismatch {self.modulus} vs {other.modulus}")

    def __matmul__(self, other: "ZModMatrix") -> "ZModMatrix":
        self._check_same_ring(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by "
                                 f"{other.rows}x{other.cols}")
        return ZModMatrix.from_numpy(self.modulus,
                                     matmul_mod(self._a, other._a, self.modulus))

    def __add__(self, other: "ZModMatrix") -> "ZModMatrix":
        self._check_same_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in addition")
        return ZModMatrix.from_numpy(self.modulus, self._a + other._a)

    def __sub__(self, other: "ZModMatrix") -> "ZModMatrix":
        return self + (-other)

    def __neg__(self) -> "ZModMatrix":
        return ZModMatrix.from_numpy(self.modulus, -self._a)

    def scale(self, k: int) -> "ZModMatrix":
        return ZModMatrix.from_numpy(self.modulus, k * self._a)

    def transpose(self) -> "ZModMatrix":
        return ZModMatrix.from_numpy(self.modulus, self._a.T)

    def kron(self, other: "ZModMatrix") -> "ZModMatrix":
        self._check_same_ring(other)
        return ZModMatrix.from_numpy(self.modulus, np.kron(self._a, other._a))

    def hstack(self, other: "ZModMatrix") -> "ZModMatrix":
        return ZModMatrix.from_numpy(self.modulus, np.hstack([self._a, other._a]))

    def vstack(self, other: "ZModMatrix") -> "ZModMatrix":
        return ZModMatrix.from_numpy(self.modulus, np.vstack([self._a, other._a]))

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "ZModMatrix":
        return ZModMatrix.from_numpy(self.modulus, self._a[r0:r1, c0:c1])

    def reduce_mod2(self) -> "ZModMatrix":
        return ZModMatrix.from_numpy(2, self._a % 2)

    def is_zero(self) -> bool:
        return not self._a.any()

    def is_even(self) -> bool:
        return not (self._a % 2).any()

    # ------------------------------------------------------------------
    # equality / hashing / repr

    def __eq__(self, other) -> bool:
        return (isinstance(other, ZModMatrix)
                and self.modulus == other.modulus
                and self.rows == other.rows and self.cols == other.cols
                and np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.modulus, self.rows, self.cols, self._a.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"ZModMatrix({self.modulus}, {self.rows}x{self.cols}, {self._a.tolist()})"

    # ------------------------------------------------------------------
    # ring-theoretic predicates

    def is_invertible(self) -> bool:
        """Invertibility over Z/4 is detected mod 2 because Z/4 is local."""
        if self.rows != self.cols:
            return False
        return rank_mod2(self._a) == self.rows

    def inverse(self) -> "ZModMatrix":
        if self.rows != self.cols:
            raise DimensionError("only square matrices can be inverted")
        sol, _ = solve_matrix(self, ZModMatrix.identity(self.modulus, self.rows))
        if sol is None or not sol.is_invertible():
            raise DimensionError("matrix is not invertible")
        return sol

    # ------------------------------------------------------------------
    # JSON interchange: the CLI format used by every command

    def to_json_obj(self) -> dict:
        return {"modulus": self.modulus, "rows": self.rows, "cols": self.cols,
                "entries": [int(x) for x in self._a.reshape(-1)]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ZModMatrix":
        try:
            m = int(obj["modulus"])
            r = int(obj["rows"])
            c = int(obj["cols"])
            entries = [int(x) for x in obj["entries"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise DimensionError(f"malformed matrix object: {exc}") from exc
        if len(entries) != r * c:
            raise DimensionError(f"expected {r * c} entries, got {len(entries)}")
        return cls(m, r, c, entries)


def matmul_mod(a: np.ndarray, b: np.ndarray, modulus: int) -> np.ndarray:
    """Exact modular product; large inputs go through BLAS in float64.

    Entries are reduced below the modulus (< 4), so inner products stay
    far below 2**53 and the float path is exact.
    """
    if a.size * b.shape[1] > 1 << 18 and a.shape[1]:
        return (np.rint(a.astype(np.float64) @ b.astype(np.float64))
                .astype(np.int64) % modulus)
    return (a @ b) % modulus


def rank_mod2(a: np.ndarray) -> int:
    """Rank of an integer matrix reduced mod 2 (Gaussian elimination over F2)."""
    b = (np.asarray(a, dtype=np.int64) % 2).astype(np.uint8).copy()
    m, n = b.shape
    rank = 0
    for c in range(n):
        rows = np.nonzero(b[rank:, c])[0]
        if rows.size == 0:
            continue
        p = rank + int(rows[0])
        if p != rank:
            b[[rank, p]] = b[[p, rank]]
        hits = np.nonzero(b[:, c])[0]
        for r in hits:
            if r != rank:
                b[r, :] ^= b[rank, :]
        rank += 1
        if rank == m:
            break
    return rank


@dataclass(frozen=True)
class SmithForm:
    """Invertible P, Q and diagonal D with P @ M @ Q = D.

    Over Z/4 the diagonal entries are drawn from {1, 2, 0} and appear in
    that order (units, then twos, then zeros); over Z/2 from {1, 0}.
    """

    P: ZModMatrix
    D: ZModMatrix
    Q: ZModMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        d = self.D
        return tuple(d[j, j] for j in range(min(d.rows, d.cols)))

    def num_units(self) -> int:
        return sum(1 for x in self.diagonal if x == 1)

    def verify(self, M: ZModMatrix) -> bool:
        return (self.P @ M @ self.Q == self.D
                and self.P.is_invertible() and self.Q.is_invertible())


def _snf_arrays(a: np.ndarray, modulus: int, need_p: bool, need_q: bool):
    """Core pivoting loop; returns (P, D, Q) as numpy arrays (P/Q may be None).

    Pivot rule: among the entries of the remaining submatrix pick the ones
    of minimal 2-adic valuation and take the first in row-major order.
    Valuations never drop below the pivot's during elimination, so the
    diagonal comes out ordered by divisibility.  Deterministic by design
    so that golden tests can freeze the transforms.
    """
    # int8 keeps every intermediate exact (products stay below 10) while
    # minimizing memory traffic; reduction mod a power of two is a mask,
    # which is valid on two's-complement negatives
    mask = modulus - 1
    d = (np.array(a, dtype=np.int64) & mask).astype(np.int8)
    m, n = d.shape
    p = np.eye(m, dtype=np.int8) if need_p else None
    q = np.eye(n, dtype=np.int8) if need_q else None
    max_val = modulus.bit_length() - 1  # modulus is 2 or 4 here
    phase = 0  # current pivot valuation; elimination never lowers valuations

    for k in range(min(m, n)):
        sub = d[k:, k:]
        loc = None
        while phase <= max_val:
            bits = (sub >> phase) & 1
            idx = int(np.argmax(bits))
            if bits.flat[idx]:
                loc = idx
                break
            phase += 1
        if loc is None:
            break
        ii, jj = divmod(loc, sub.shape[1])
        pi, pj = k + ii, k + jj
        if pi != k:
            d[[k, pi]] = d[[pi, k]]
            if need_p:
                p[[k, pi]] = p[[pi, k]]
        if pj != k:
            d[:, [k, pj]] = d[:, [pj, k]]
            if need_q:
                q[:, [k, pj]] = q[:, [pj, k]]
        # normalize the pivot to exactly 2^v by scaling with its unit part
        piv = int(d[k, k])
        v = _val2(piv, modulus)
        unit = (piv >> v) & mask
        if unit != 1:
            inv = _inv_unit(unit, modulus)
            d[k, k:] *= inv
            d[k, k:] &= mask
            if need_p:
                p[k, :] *= inv
                p[k, :] &= mask
        # clear the rest of column k; every remaining entry is divisible by
        # the pivot, and the window left of column k is already zero
        col = d[k + 1:, k]
        if col.any():
            mult = (col >> v) & mask
            blk = d[k + 1:, k:]
            blk -= np.outer(mult, d[k, k:])
            blk &= mask
            if need_p:
                pb = p[k + 1:, :]
                pb -= np.outer(mult, p[k, :])
                pb &= mask
        # clear the rest of row k; the column below the pivot is already
        # zero, so only row k itself changes on the matrix side
        row = d[k, k + 1:]
        if row.any():
            mult = (row >> v) & mask
            d[k, k + 1:] = (row - mult * int(d[k, k])) & mask
            if need_q:
                qb = q[:, k + 1:]
                qb -= np.outer(q[:, k], mult)
                qb &= mask
    return (p.astype(np.int64) if need_p else None, d.astype(np.int64),
            q.astype(np.int64) if need_q else None)


def smith_normal_form(M: ZModMatrix) -> SmithForm:
    """Smith normal form P @ M @ Q = D over Z/m by local-ring pivoting.

    Pivots on units first and then on entries of valuation 1 (the twos when
    m = 4), staying inside the residue ring throughout; no lifting to Z.
    """
    p, d, q = _snf_arrays(M.np, M.modulus, need_p=True, need_q=True)
    return SmithForm(P=ZModMatrix.from_numpy(M.modulus, p),
                     D=ZModMatrix.from_numpy(M.modulus, d),
                     Q=ZModMatrix.from_numpy(M.modulus, q))


def _kernel_from_snf(d: np.ndarray, q: np.ndarray, modulus: int,
                     rows: int, cols: int) -> ZModMatrix:
    gens = []
    for j in range(cols):
        dj = int(d[j, j]) if j < min(rows, cols) else 0
        if dj == 1:
            continue
        mult = 1 if dj == 0 else modulus // dj
        gens.append((mult * q[:, j]) % modulus)
    if not gens:
        return ZModMatrix.zeros(modulus, cols, 0)
    return ZModMatrix.from_numpy(modulus, np.array(gens, dtype=np.int64).T)


def kernel(M: ZModMatrix) -> ZModMatrix:
    """Generators (as columns) of {x : M x = 0} over Z/m.

    From P M Q = D: the kernel of D is spanned coordinatewise by
    (m / d_j) e_j for nonzero d_j and by e_j for zero diagonal entries,
    and Q carries that span back.  Rows of M are constraints, so duplicate
    and zero rows are dropped first (after scaling each row to make its
    leading entry a power of two, which changes no solution set).
    """
    a = M.np
    if M.rows > 64:
        a = _dedup_constraint_rows(a, M.modulus)
    _, d, q = _snf_arrays(a, M.modulus, need_p=False, need_q=True)
    return _kernel_from_snf(d, q, M.modulus, a.shape[0], M.cols)


def _dedup_constraint_rows(a: np.ndarray, modulus: int) -> np.ndarray:
    rows = []
    seen = set()
    for r in a:
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            continue
        lead = int(r[nz[0]])
        v = _val2(lead, modulus)
        unit = (lead >> v) % modulus
        if unit != 1:
            r = (r * _inv_unit(unit, modulus)) % modulus
        key = r.tobytes()
        if key not in seen:
            seen.add(key)
            rows.append(r)
    if not rows:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


@dataclass(frozen=True)
class SolveResult:
    """One solution of A x = b (or None) plus kernel generators of A."""

    x: ZModMatrix | None
    kernel: ZModMatrix
    # human-readable reason when inconsistent, e.g. "reduced equation 0 = 2"
    inconsistency: str | None = None

    @property
    def solvable(self) -> bool:
        return self.x is not None


def solve(A: ZModMatrix, b: ZModMatrix) -> SolveResult:
    """Solve A x = b over Z/m and report the kernel of A.

    Decided by Smith normal form: with P A Q = D the system becomes
    D y = P b, which is solvable iff every reduced right-hand side entry is
    divisible by the matching diagonal entry.
    """
    if b.rows != A.rows or b.cols != 1:
        raise DimensionError(f"rhs must be {A.rows}x1, got {b.rows}x{b.cols}")
    m = A.modulus
    p, d, q = _snf_arrays(A.np, m, need_p=True, need_q=True)
    rhs = (p @ b.np.reshape(-1)) % m
    y = np.zeros(A.cols, dtype=np.int64)
    ker = _kernel_from_snf(d, q, m, A.rows, A.cols)
    for i in range(A.rows):
        di = int(d[i, i]) if i < min(A.rows, A.cols) else 0
        ri = int(rhs[i])
        if di == 0:
            if ri != 0:
                return SolveResult(None, ker, f"reduced equation 0 = {ri}")
            continue
        if ri % di != 0:
            return SolveResult(None, ker, f"reduced equation {di}*y = {ri}")
        y[i] = ri // di
    x = (q @ y) % m
    return SolveResult(ZModMatrix.from_numpy(m, x.reshape(-1, 1)), ker)


def solve_matrix(A: ZModMatrix, B: ZModMatrix) -> tuple[ZModMatrix | None, ZModMatrix]:
    """Solve A X = B for all columns at once; returns (X or None, kernel of A).

    One Smith form of A serves every column: with P A Q = D the systems
    become D Y = P B, solved diagonally."""
    if B.rows != A.rows:
        raise DimensionError("shape mismatch in solve_matrix")
    m = A.modulus
    p, d, q = _snf_arrays(A.np, m, need_p=True, need_q=True)
    ker = _kernel_from_snf(d, q, m, A.rows, A.cols)
    rhs = matmul_mod(p, B.np, m)
    y = np.zeros((A.cols, B.cols), dtype=np.int64)
    for i in range(A.rows):
        di = int(d[i, i]) if i < min(A.rows, A.cols) else 0
        row = rhs[i, :]
        if di == 0:
            if row.any():
                return None, ker
            continue
        if (row % di).any():
            return None, ker
        y[i, :] = row // di
    x = matmul_mod(q, y, m)
    return ZModMatrix.from_numpy(m, x), ker


# ----------------------------------------------------------------------
# Canonical subgroup bases (Howell form)


def howell_form(gens: ZModMatrix) -> ZModMatrix:
    """Canonical basis of the subgroup of (Z/m)^n spanned by the columns.

    Returns a matrix whose rows are the canonical (Howell) basis: pivots
    are powers of two dividing m, entries above a pivot are reduced modulo
    it, and for every coordinate j the elements of the span supported in
    coordinates >= j are generated by the rows with pivot >= j.  Two
    generating sets span the same subgroup iff they produce identical
    output, and reduction against the rows (see :func:`reduce_vector`)
    yields canonical coset representatives.
    """
    m = gens.modulus
    n = gens.rows
    basis: list[np.ndarray] = []  # kept sorted by pivot column, one per column
    queue = [row.copy() % m for row in gens.np.T]
    while queue:
        v = queue.pop()
        # reduce against the basis in pivot order; a basis row only touches
        # coordinates at or after its pivot, so one left-to-right pass settles v
        for row in basis:
            j = _first_nonzero(row)
            piv = int(row[j])
            if v[j] % piv == 0:
                v = (v - (v[j] // piv) * row) % m
        j = _first_nonzero(v)
        if j is None:
            continue
        piv = int(v[j])
        vv = _val2(piv, m)
        unit = (piv >> vv) % m
        if unit != 1:
            v = (v * _inv_unit(unit, m)) % m
        piv = int(v[j])
        # a surviving clash means v's pivot strictly divides the old one
        # (otherwise the reduction pass would have cleared v[j]); swap them
        for idx, r in enumerate(basis):
            if _first_nonzero(r) == j:
                queue.append(basis.pop(idx))
                break
        basis.append(v)
        basis.sort(key=_first_nonzero)
        # Howell augmentation: the annihilator multiple of a non-unit pivot
        # is an element of the span supported strictly to the right
        if piv != 1:
            ann = ((m // piv) * v) % m
            if ann.any():
                queue.append(ann)
    # reduce entries above each pivot, sweeping pivot columns left to right
    # so that later reductions never disturb already-reduced columns
    for idx in range(len(basis)):
        row = basis[idx]
        j = _first_nonzero(row)
        piv = int(row[j])
        for other in basis[:idx]:
            c = int(other[j])
            c -= c % piv
            if c:
                other -= (c // piv) * row
                other %= m
    if not basis:
        return ZModMatrix.zeros(m, 0, n)
    return ZModMatrix.from_numpy(m, np.array(basis, dtype=np.int64))


def _first_nonzero(v: np.ndarray) -> int | None:
    nz = np.nonzero(v)[0]
    return int(nz[0]) if nz.size else None


def reduce_vector(howell: ZModMatrix, v: ZModMatrix) -> ZModMatrix:
    """Canonical representative of v modulo the subgroup with the given Howell basis."""
    m = howell.modulus
    x = v.np.reshape(-1).copy() % m
    for row in howell.np:
        j = _first_nonzero(row)
        piv = int(row[j])
        c = int(x[j])
        c -= c % piv
        if c:
            x = (x - (c // piv) * row) % m
    return ZModMatrix.from_numpy(m, x.reshape(-1, 1))


def subgroup_order(howell: ZModMatrix) -> int:
    """Order of the subgroup from its Howell basis (product of m / pivot)."""
    m = howell.modulus
    order = 1
    for row in howell.np:
        j = _first_nonzero(row)
        order *= m // int(row[j])
    return order


def span_contains(howell: ZModMatrix, v: ZModMatrix) -> bool:
    return reduce_vector(howell, v).is_zero()


def columns(vectors: Iterable[np.ndarray], modulus: int, dim: int) -> ZModMatrix:
    """Stack 1-d arrays as the columns of a ZModMatrix of height dim."""
    vecs = [np.asarray(v, dtype=np.int64).reshape(-1) for v in vectors]
    if not vecs:
        return ZModMatrix.zeros(modulus, dim, 0)
    return ZModMatrix.from_numpy(modulus, np.array(vecs).T)
