"""Lie hybrids: a space carrying two compatible Lie brackets.

Hybrids are stored as structure constants over a basis, ``c[i][j][k]``
being the coefficient of e_k in [e_i, e_j].  The basis may be a list of
matrices (when the hybrid came from matrices) or just abstract labels.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import PreconditionError, PropertyViolation
from .exact import Mat, Subspace, linear_map_matrix, matrix_rank, null_space, solve
from .isotopic import MatrixPair, bracket_v1, compute_annihilator
from .report import CheckReport
from .rng import SplitMix64

Tensor = tuple[tuple[tuple[Fraction, ...], ...], ...]


@dataclass(frozen=True)
class LieHybrid:
    dim: int
    c_prime: Tensor
    c_double_prime: Tensor
    basis: tuple[Mat, ...] | None = None

    def bracket_prime(self, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
        return bracket_coords(self.c_prime, x, y)

    def bracket_double_prime(self, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
        return bracket_coords(self.c_double_prime, x, y)


@dataclass(frozen=True)
class DoubleAlgebra:
    """The Lie algebra on V + V built from a hybrid V."""

    dim: int
    c: Tensor


def bracket_coords(c: Tensor, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
    d = len(c)
    out = [Fraction(0)] * d
    for i in range(d):
        if not x[i]:
            continue
        for j in range(d):
            if not y[j]:
                continue
            w = x[i] * y[j]
            for k, v in enumerate(c[i][j]):
                if v:
                    out[k] += w * v
    return tuple(out)


def zero_tensor(d: int) -> Tensor:
    z = Fraction(0)
    return tuple(tuple((z,) * d for _ in range(d)) for _ in range(d))


def structure_constants(sub: Subspace, br: Callable[[Mat, Mat], Mat]) -> Tensor:
    """Structure constants of ``br`` restricted to ``sub``; raises if ``sub`` is not closed."""
    basis = sub.basis_mats()
    rows = []
    for x in basis:
        row = []
        for y in basis:
            coords = sub.coordinates(br(x, y).vec())
            if coords is None:
                raise PropertyViolation(f"bracket leaves the subspace: [{x}, {y}]")
            row.append(coords)
        rows.append(tuple(row))
    return tuple(rows)


def hybrid_from_pair(p: MatrixPair) -> LieHybrid:
    """The hybrid on the annihilator, with ``[X,Y]' = [X,Y]_A`` and ``[X,Y]'' = [X,Y]_B``.

    The pair is ordered: swapping A and B swaps the two brackets.
    """
    ann = compute_annihilator(p)
    c1 = structure_constants(ann, lambda X, Y: bracket_v1(X, Y, p.A))
    c2 = structure_constants(ann, lambda X, Y: bracket_v1(X, Y, p.B))
    return LieHybrid(ann.dim, c1, c2, tuple(ann.basis_mats()))


def centralizer(F: Mat) -> Subspace:
    return null_space(linear_map_matrix(lambda X: X @ F - F @ X, F.n), F.n * F.n)


def centralizer_hybrid(F: Mat) -> LieHybrid:
    """Centralizer of F with the commutator and the F-twisted bracket ``XFY - YFX``."""
    cen = centralizer(F)
    c1 = structure_constants(cen, lambda X, Y: X @ Y - Y @ X)
    c2 = structure_constants(cen, lambda X, Y: X @ F @ Y - Y @ F @ X)
    return LieHybrid(cen.dim, c1, c2, tuple(cen.basis_mats()))


def combine(c1: Tensor, c2: Tensor, lam: Fraction, mu: Fraction) -> Tensor:
    return tuple(
        tuple(tuple(lam * a + mu * b for a, b in zip(r1, r2)) for r1, r2 in zip(p1, p2))
        for p1, p2 in zip(c1, c2)
    )


def _unit(d: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(k == i)) for k in range(d))


def _add(*vs):
    return tuple(sum(t, Fraction(0)) for t in zip(*vs))


def _neg(v):
    return tuple(-x for x in v)


def antisymmetry_violation(c: Tensor):
    d = len(c)
    for i in range(d):
        if any(c[i][i]):
            return (i, i)
        for j in range(i + 1, d):
            if any(a + b for a, b in zip(c[i][j], c[j][i])):
                return (i, j)
    return None


def jacobi_violation(c: Tensor):
    d = len(c)
    e = [_unit(d, i) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(j + 1, d):
                s = _add(
                    bracket_coords(c, c[i][j], e[k]),
                    bracket_coords(c, c[j][k], e[i]),
                    bracket_coords(c, c[k][i], e[j]),
                )
                if any(s):
                    return (i, j, k)
    return None


def compatibility_violation(c1: Tensor, c2: Tensor):
    """First basis triple where the six-term mixed identity fails, or None.

    The identity: [[X,Z]',Y]'' + [[X,Y]',Z]'' + [[Z,Y]',X]''
                = [[X,Z]'',Y]' + [[X,Y]'',Z]' + [[Z,Y]'',X]'.
    """
    d = len(c1)
    e = [_unit(d, i) for i in range(d)]

    def side(ca, cb, x, y, z):
        return _add(
            bracket_coords(cb, bracket_coords(ca, e[x], e[z]), e[y]),
            bracket_coords(cb, bracket_coords(ca, e[x], e[y]), e[z]),
            bracket_coords(cb, bracket_coords(ca, e[z], e[y]), e[x]),
        )

    for x in range(d):
        for y in range(d):
            for z in range(d):
                if side(c1, c2, x, y, z) != side(c2, c1, x, y, z):
                    return (x, y, z)
    return None


def verify_hybrid(h: LieHybrid, seed: int = 0, combinations: int = 5) -> CheckReport:
    rep = CheckReport("hybrid", details={"dim": h.dim})
    for label, c in (("prime", h.c_prime), ("double_prime", h.c_double_prime)):
        bad = antisymmetry_violation(c)
        rep.record(bad is None, check=f"antisymmetry_{label}", indices=bad)
        bad = jacobi_violation(c)
        rep.record(bad is None, check=f"jacobi_{label}", indices=bad)
    g = SplitMix64(seed)
    for _ in range(combinations):
        lam, mu = g.rational(), g.rational()
        bad = jacobi_violation(combine(h.c_prime, h.c_double_prime, lam, mu))
        rep.record(bad is None, check="jacobi_combination", lam=lam, mu=mu, indices=bad)
    bad = compatibility_violation(h.c_prime, h.c_double_prime)
    rep.record(bad is None, check="six_term_compatibility", indices=bad)
    return rep


def triviality_report(h: LieHybrid) -> tuple[bool, bool]:
    """(both brackets vanish, the two tensors are linearly dependent)."""
    flat1 = [x for p in h.c_prime for r in p for x in r]
    flat2 = [x for p in h.c_double_prime for r in p for x in r]
    trivial = not any(flat1) and not any(flat2)
    proportional = matrix_rank([flat1, flat2]) < 2 if flat1 else True
    return trivial, proportional


def double_kv(h: LieHybrid) -> DoubleAlgebra:
    """Structure constants of the bracket on V + V:

    [(X1,Y1),(X2,Y2)] = ([X1,X2]'' + 1/2([X1,Y2]' - [X2,Y1]'),
                         [Y1,Y2]' + 1/2([Y1,X2]'' - [Y2,X1]'')).
    Basis index i < d is (e_i, 0), index d + i is (0, e_i).
    """
    d = h.dim
    half = Fraction(1, 2)
    zero = (Fraction(0),) * d

    def split(k):
        return (_unit(d, k), zero) if k < d else (zero, _unit(d, k - d))

    c1, c2 = h.c_prime, h.c_double_prime
    rows = []
    for u in range(2 * d):
        x1, y1 = split(u)
        row = []
        for v in range(2 * d):
            x2, y2 = split(v)
            first = _add(
                bracket_coords(c2, x1, x2),
                tuple(half * (a - b) for a, b in zip(bracket_coords(c1, x1, y2), bracket_coords(c1, x2, y1))),
            )
            second = _add(
                bracket_coords(c1, y1, y2),
                tuple(half * (a - b) for a, b in zip(bracket_coords(c2, y1, x2), bracket_coords(c2, y2, x1))),
            )
            row.append(first + second)
        rows.append(tuple(row))
    return DoubleAlgebra(2 * d, tuple(rows))


def verify_lie(c: Tensor, name: str = "lie") -> CheckReport:
    rep = CheckReport(name, details={"dim": len(c)})
    bad = antisymmetry_violation(c)
    rep.record(bad is None, check="antisymmetry", indices=bad)
    bad = jacobi_violation(c)
    rep.record(bad is None, check="jacobi", indices=bad)
    return rep


def map_matrix(src: Sequence[Mat], dst: Subspace, phi: Callable[[Mat], Mat]) -> list[tuple[Fraction, ...]] | None:
    """Columns: coordinates in ``dst`` of phi(basis element); None if some image leaves ``dst``."""
    cols = []
    for X in src:
        coords = dst.coordinates(phi(X).vec())
        if coords is None:
            return None
        cols.append(coords)
    return cols


def isomorphism_violation(src: LieHybrid, dst: LieHybrid, cols: Sequence[Sequence[Fraction]]):
    """Check that the linear map with the given image columns is a bijective hybrid morphism."""
    if src.dim != dst.dim:
        return "dimension mismatch"
    if src.dim and matrix_rank(cols) != src.dim:
        return "not bijective"

    def image(x):
        return _add(*[tuple(xi * v for v in col) for xi, col in zip(x, cols)])

    for cs, cd, label in ((src.c_prime, dst.c_prime, "prime"), (src.c_double_prime, dst.c_double_prime, "double_prime")):
        for i in range(src.dim):
            for j in range(src.dim):
                if image(cs[i][j]) != bracket_coords(cd, cols[i], cols[j]):
                    return (label, i, j)
    return None


def _bracket_residuals(p: MatrixPair, phi, F: Mat, basis: Sequence[Mat]) -> tuple[int, int]:
    """Count of basis pairs where phi fails to carry [,]_A to the commutator and [,]_B to the F-twisted bracket."""
    bad_a = bad_b = 0
    for X in basis:
        for Y in basis:
            u, v = phi(X), phi(Y)
            if phi(bracket_v1(X, Y, p.A)) != u @ v - v @ u:
                bad_a += 1
            if phi(bracket_v1(X, Y, p.B)) != u @ F @ v - v @ F @ u:
                bad_b += 1
    return bad_a, bad_b


def morphism_verify(p: MatrixPair) -> CheckReport:
    """Right/left multiplication by A as hybrid maps from the annihilator onto centralizer hybrids.

    With A invertible both maps must be bracket-preserving bijections (a hard
    check).  With A singular, F is any particular solution of AF = B (right
    branch) or FA = B (left branch); the claimed epimorphism is recorded as
    a verdict, since it is not implied by the algebra.
    """
    ann = compute_annihilator(p)
    basis = ann.basis_mats()
    n = p.n
    invertible = p.A.is_invertible()
    rep = CheckReport("morphism", kind="check" if invertible else "verdict")
    rep.details["a_invertible"] = invertible
    if invertible:
        Ai = p.A.inverse()
        branches = [("right", lambda X: X @ p.A, Ai @ p.B), ("left", lambda X: p.A @ X, p.B @ Ai)]
    else:
        branches = []
        right = solve(linear_map_matrix(lambda F: p.A @ F, n), p.B.vec())
        if right is not None:
            branches.append(("right", lambda X: X @ p.A, Mat.from_vec(n, right)))
        left = solve(linear_map_matrix(lambda F: F @ p.A, n), p.B.vec())
        if left is not None:
            branches.append(("left", lambda X: p.A @ X, Mat.from_vec(n, left)))
        if not branches:
            raise PreconditionError("A is singular and neither AF = B nor FA = B is solvable")
    for name, phi, F in branches:
        target = centralizer(F)
        image = Subspace.span_mats([phi(X) for X in basis], n)
        contained = image <= target
        onto = contained and image == target
        injective = image.dim == ann.dim
        bad_a, bad_b = _bracket_residuals(p, phi, F, basis)
        rep.details[name] = {
            "F": F,
            "image_dim": image.dim,
            "target_dim": target.dim,
            "contained": contained,
            "surjective": onto,
            "injective": injective,
            "bracket_prime_residuals": bad_a,
            "bracket_double_prime_residuals": bad_b,
        }
        ok = contained and onto and bad_a == 0 and bad_b == 0 and (injective or not invertible)
        rep.record(ok, branch=name)
    return rep
