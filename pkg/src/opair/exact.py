"""Exact rational linear algebra.

Everything here works over ``fractions.Fraction``; nothing is ever rounded.

Coordinate convention (shared by every module): an n x n matrix M is
identified with the vector of length n*n obtained by stacking its columns,
so entry ``M[i][j]`` sits at coordinate ``j*n + i``.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Sequence

from .errors import DimensionError, PreconditionError

Vector = tuple[Fraction, ...]


def to_fraction(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_fraction(x: Fraction) -> str:
    return str(x)


class Mat:
    """Immutable square matrix with Fraction entries."""

    __slots__ = ("n", "rows", "_hash", "_scaled")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(to_fraction(x) for x in r) for r in rows)
        n = len(rows)
        if n < 1:
            raise DimensionError("matrix must be at least 1x1")
        if any(len(r) != n for r in rows):
            raise DimensionError("matrix must be square")
        self.n = n
        self.rows = rows
        self._hash = None
        self._scaled = None

    @classmethod
    def _raw(cls, rows: tuple[tuple[Fraction, ...], ...]) -> "Mat":
        m = object.__new__(cls)
        m.n = len(rows)
        m.rows = rows
        m._hash = None
        m._scaled = None
        return m

    @classmethod
    def zeros(cls, n: int) -> "Mat":
        z = Fraction(0)
        return cls._raw(tuple((z,) * n for _ in range(n)))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values: Sequence) -> "Mat":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "Mat":
        """Matrix unit E_ij (zero-based indices)."""
        return cls([[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)])

    @classmethod
    def basis_element(cls, n: int, k: int) -> "Mat":
        """The k-th coordinate basis matrix under column stacking."""
        j, i = divmod(k, n)
        return cls.unit(n, i, j)

    @classmethod
    def from_vec(cls, n: int, v: Sequence) -> "Mat":
        if len(v) != n * n:
            raise DimensionError(f"expected {n * n} coordinates, got {len(v)}")
        return cls._raw(tuple(tuple(to_fraction(v[j * n + i]) for j in range(n)) for i in range(n)))

    def vec(self) -> Vector:
        n = self.n
        return tuple(self.rows[i][j] for j in range(n) for i in range(n))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _check(self, other: "Mat") -> None:
        if not isinstance(other, Mat):
            raise TypeError(f"expected Mat, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "Mat":
        return Mat._raw(tuple(tuple(-a for a in r) for r in self.rows))

    def __mul__(self, c) -> "Mat":
        c = to_fraction(c)
        return Mat._raw(tuple(tuple(c * a for a in r) for r in self.rows))

    __rmul__ = __mul__

    def _integer_form(self) -> tuple[tuple[tuple[int, ...], ...], int]:
        """(N, d) with self = N / d and N integral; products then run on ints."""
        if self._scaled is None:
            d = 1
            for r in self.rows:
                for x in r:
                    d = lcm(d, x.denominator)
            ints = tuple(tuple(x.numerator * (d // x.denominator) for x in r) for r in self.rows)
            self._scaled = (ints, d)
        return self._scaled

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        N1, d1 = self._integer_form()
        N2, d2 = other._integer_form()
        d = d1 * d2
        cols = tuple(zip(*N2))
        return Mat._raw(
            tuple(tuple(Fraction(sum(a * b for a, b in zip(r, c)), d) for c in cols) for r in N1)
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Mat({body})"

    @property
    def T(self) -> "Mat":
        return Mat._raw(tuple(zip(*self.rows)))

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.n)), Fraction(0))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def det(self) -> Fraction:
        _, rank, _, det = _eliminate([list(r) for r in self.rows], track_det=True)
        return det if rank == self.n else Fraction(0)

    def is_invertible(self) -> bool:
        return matrix_rank(self.rows) == self.n

    def inverse(self) -> "Mat":
        n = self.n
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        R, _, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise PreconditionError("matrix is singular")
        return Mat._raw(tuple(tuple(R[i][n:]) for i in range(n)))

    def to_json(self) -> list[list[str]]:
        return [[format_fraction(x) for x in r] for r in self.rows]


def _eliminate(M: list[list[Fraction]], track_det: bool = False):
    """In-place Gauss-Jordan elimination. Returns (M, rank, pivots, det-of-leading-block)."""
    m = len(M)
    k = len(M[0]) if m else 0
    pivots: list[int] = []
    det = Fraction(1)
    r = 0
    for c in range(k):
        if r == m:
            break
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
            det = -det
        piv = M[r][c]
        if track_det:
            det *= piv
        if piv != 1:
            inv = 1 / piv
            M[r] = [x * inv if x else x for x in M[r]]
        row = M[r]
        for i in range(m):
            if i != r:
                f = M[i][c]
                if f:
                    M[i] = [a - f * b if b else a for a, b in zip(M[i], row)]
        pivots.append(c)
        r += 1
    return M, r, pivots, det


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], int, list[int]]:
    """Reduced row-echelon form of a rectangular matrix.

    Returns ``(R, rank, pivots)``; R has the same shape as the input with the
    zero rows last.
    """
    M = [[to_fraction(x) for x in r] for r in rows]
    if M and any(len(r) != len(M[0]) for r in M):
        raise DimensionError("ragged matrix")
    R, rank, pivots, _ = _eliminate(M)
    return R, rank, pivots


def matrix_rank(rows: Sequence[Sequence]) -> int:
    return rref(rows)[1] if rows else 0


def mat_vec(L: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return tuple(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in L)


def mat_mul(P: Sequence[Sequence[Fraction]], Q: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    cols = list(zip(*Q))
    return [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols] for r in P]


def transpose(P: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*P)]


def identity_rows(k: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]


def invert_rows(P: Sequence[Sequence]) -> list[list[Fraction]]:
    k = len(P)
    aug = [[to_fraction(x) for x in r] + e for r, e in zip(P, identity_rows(k))]
    R, _, pivots = rref(aug)
    if pivots[:k] != list(range(k)):
        raise PreconditionError("matrix is singular")
    return [r[k:] for r in R]


def linear_map_matrix(f: Callable[[Mat], Mat], n: int) -> list[list[Fraction]]:
    """Matrix (n^2 x n^2, acting on column-stacked coordinates) of a linear map on Mat_n."""
    cols = [f(Mat.basis_element(n, k)).vec() for k in range(n * n)]
    return transpose(cols)


class Subspace:
    """A linear subspace of Q^d stored by its canonical RREF basis.

    Two subspaces are equal exactly when their canonical bases are equal.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: tuple[Vector, ...], pivots: tuple[int, ...]):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if not vecs:
            return cls.zero(ambient_dim)
        R, rank, pivots = rref(vecs)
        return cls(ambient_dim, tuple(tuple(r) for r in R[:rank]), tuple(pivots))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(identity_rows(ambient_dim), ambient_dim)

    @classmethod
    def span_mats(cls, mats: Iterable[Mat], n: int) -> "Subspace":
        return cls.span((m.vec() for m in mats), n * n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_mats(self) -> list[Mat]:
        n = _sqrt_dim(self.ambient_dim)
        return [Mat.from_vec(n, b) for b in self.basis]

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coordinates of v in the canonical basis, or None when v is not in the subspace."""
        if len(v) != self.ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        coords = tuple(to_fraction(v[p]) for p in self.pivots)
        if self.residual(v, coords) is not None:
            return None
        return coords

    def residual(self, v: Sequence, coords: Sequence | None = None) -> Vector | None:
        """v minus its pivot-coordinate projection; None when that difference vanishes."""
        if coords is None:
            coords = tuple(to_fraction(v[p]) for p in self.pivots)
        r = [to_fraction(x) for x in v]
        for c, b in zip(coords, self.basis):
            if c:
                r = [x - c * y if y else x for x, y in zip(r, b)]
        return tuple(r) if any(r) else None

    def __contains__(self, v) -> bool:
        if isinstance(v, Mat):
            v = v.vec()
        return self.coordinates(v) is not None

    def __le__(self, other: "Subspace") -> bool:
        _check_ambient([self, other])
        return all(b in other for b in self.basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum([self, other])[0]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def to_json(self) -> list[list[str]]:
        return [[format_fraction(x) for x in b] for b in self.basis]


def _sqrt_dim(d: int) -> int:
    n = int(round(d ** 0.5))
    if n * n != d:
        raise DimensionError(f"ambient dimension {d} is not a square")
    return n


def _check_ambient(parts: Sequence[Subspace]) -> int:
    dims = {p.ambient_dim for p in parts}
    if len(dims) > 1:
        raise DimensionError(f"ambient dimension mismatch: {sorted(dims)}")
    return dims.pop()


def null_space(L: Sequence[Sequence], ncols: int | None = None) -> Subspace:
    """Kernel {v : L v = 0} as a canonical subspace of Q^ncols."""
    if ncols is None:
        if not L:
            raise DimensionError("column count needed for an empty matrix")
        ncols = len(L[0])
    if not L:
        return Subspace.full(ncols)
    R, rank, pivots = rref(L)
    free = [c for c in range(ncols) if c not in set(pivots)]
    vecs = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        vecs.append(v)
    return Subspace.span(vecs, ncols)


def subspace_sum(parts: Sequence[Subspace]) -> tuple[Subspace, bool]:
    """Sum of subspaces and whether the sum is direct."""
    if not parts:
        raise DimensionError("need at least one subspace")
    d = _check_ambient(parts)
    total = Subspace.span([b for p in parts for b in p.basis], d)
    return total, total.dim == sum(p.dim for p in parts)


def subspace_membership(S: Subspace, v: Sequence) -> Vector | None:
    return S.coordinates(v)


def solve(L: Sequence[Sequence], rhs: Sequence) -> Vector | None:
    """One particular solution of L x = rhs (free variables set to zero), or None."""
    k = len(L[0])
    aug = [list(r) + [b] for r, b in zip(L, rhs)]
    R, rank, pivots = rref(aug)
    if pivots and pivots[-1] == k:
        return None
    x = [Fraction(0)] * k
    for i, p in enumerate(pivots):
        x[p] = R[i][k]
    return tuple(x)
