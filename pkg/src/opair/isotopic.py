"""The matrix isotopic pair.

Both spaces are Mat_n.  Matrices X, Y, Z play the role of the first space
and act through ``[A, B]_X = AXB - BXA``; matrices A, B, C play the role of
the second space and act through ``[X, Y]_A = XAY - YAX``.

For a pair (A, B) spanning a plane of Mat_n, the annihilator is the set of
X with ``[A', B']_X = 0`` for every A', B' in the span, and the normalizer is
the set of X with ``[A', B']_X`` back in the span.  Because the bracket is
bilinear and antisymmetric in (A', B'), ``[A', B']_X`` is a scalar multiple
(the 2x2 determinant of the coefficients) of ``[A, B]_X``, so both
conditions only need testing on the generating pair itself.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError, PreconditionError, PropertyViolation
from .exact import Mat, Subspace, linear_map_matrix, matrix_rank, null_space
from .report import CheckReport
from .rng import DEFAULT_RANGE, substream


def bracket_v1(X: Mat, Y: Mat, A: Mat) -> Mat:
    """``[X, Y]_A = XAY - YAX``."""
    return X @ A @ Y - Y @ A @ X


def bracket_v2(A: Mat, B: Mat, X: Mat) -> Mat:
    """``[A, B]_X = AXB - BXA``."""
    return A @ X @ B - B @ X @ A


@dataclass(frozen=True)
class MatrixPair:
    A: Mat
    B: Mat

    def __post_init__(self):
        if self.A.n != self.B.n:
            raise DimensionError(f"pair of unequal sizes {self.A.n} and {self.B.n}")

    @property
    def n(self) -> int:
        return self.A.n

    @classmethod
    def of(cls, A, B) -> "MatrixPair":
        return cls(A if isinstance(A, Mat) else Mat(A), B if isinstance(B, Mat) else Mat(B))

    def span(self) -> Subspace:
        return Subspace.span_mats([self.A, self.B], self.n)

    def is_proportional(self) -> bool:
        return matrix_rank([self.A.vec(), self.B.vec()]) < 2


class Classification(str, enum.Enum):
    ZERO_QUOTIENT = "zero_quotient"
    AFF_LINE = "aff_line"
    OKUBO = "okubo"


@dataclass(frozen=True)
class PairInvariants:
    a: int
    a0: int
    classification: Classification


def annihilator_map(p: MatrixPair) -> list[list[Fraction]]:
    return linear_map_matrix(lambda X: bracket_v2(p.A, p.B, X), p.n)


def compute_annihilator(p: MatrixPair) -> Subspace:
    return null_space(annihilator_map(p), p.n * p.n)


def compute_normalizer(p: MatrixPair) -> Subspace:
    span = p.span()
    d = p.n * p.n

    def reduced(X: Mat) -> Mat:
        r = span.residual(bracket_v2(p.A, p.B, X).vec())
        return Mat.from_vec(p.n, r) if r is not None else Mat.zeros(p.n)

    return null_space(linear_map_matrix(reduced, p.n), d)


def classify_a0(a0: int) -> Classification:
    try:
        return [Classification.ZERO_QUOTIENT, Classification.AFF_LINE, Classification.OKUBO][a0]
    except IndexError:
        raise PropertyViolation(f"quotient dimension a0 = {a0} outside {{0, 1, 2}}") from None


def invariants_and_classify(p: MatrixPair) -> PairInvariants:
    ann = compute_annihilator(p)
    nor = compute_normalizer(p)
    a0 = nor.dim - ann.dim
    return PairInvariants(a=ann.dim, a0=a0, classification=classify_a0(a0))


def example1_generators(p: MatrixPair) -> tuple[Mat, Mat]:
    """Closed-form annihilator generators for 2x2 pairs."""
    if p.n != 2:
        raise PreconditionError("closed-form generators exist only for n = 2")
    (a, b), (c, d) = p.A.rows
    (e, f), (g, h) = p.B.rows
    m1 = Mat([[d * e - a * h, a * f - b * e], [a * g - c * e, 0]])
    m2 = Mat([[d * g - c * h, c * f - b * g], [0, a * g - c * e]])
    return m1, m2


def gl_transform(p: MatrixPair, C: Mat, D: Mat) -> MatrixPair:
    """``(A, B) -> (CAD, CBD)``."""
    if not C.is_invertible() or not D.is_invertible():
        raise PreconditionError("C and D must be invertible")
    return MatrixPair(C @ p.A @ D, C @ p.B @ D)


def gl_companion_map(C: Mat, D: Mat):
    """``X -> D^-1 X C^-1``, carrying the annihilator of (A, B) to that of (CAD, CBD)."""
    Di, Ci = D.inverse(), C.inverse()
    return lambda X: Di @ X @ Ci


def _jacobi(br, x, y, z) -> Mat:
    return br(br(x, y), z) + br(br(y, z), x) + br(br(z, x), y)


def mixed_identity_v1(X: Mat, Y: Mat, Z: Mat, A: Mat, B: Mat) -> tuple[Mat, Mat]:
    """Both sides of ``[X,Y]_{[A,B]_Z} = 1/2(...)``."""
    b = bracket_v1
    lhs = b(X, Y, bracket_v2(A, B, Z))
    rhs = (
        b(b(X, Z, A), Y, B) + b(b(X, Y, A), Z, B) + b(b(Z, Y, A), X, B)
        - b(b(X, Z, B), Y, A) - b(b(X, Y, B), Z, A) - b(b(Z, Y, B), X, A)
    ) * Fraction(1, 2)
    return lhs, rhs


def mixed_identity_v2(A: Mat, B: Mat, C: Mat, X: Mat, Y: Mat) -> tuple[Mat, Mat]:
    """Both sides of ``[A,B]_{[X,Y]_C} = 1/2(...)``."""
    b = bracket_v2
    lhs = b(A, B, bracket_v1(X, Y, C))
    rhs = (
        b(b(A, C, X), B, Y) + b(b(A, B, X), C, Y) + b(b(C, B, X), A, Y)
        - b(b(A, C, Y), B, X) - b(b(A, B, Y), C, X) - b(b(C, B, Y), A, X)
    ) * Fraction(1, 2)
    return lhs, rhs


def verify_pair_axioms(n: int, samples: int, seed: int, r: int = DEFAULT_RANGE) -> CheckReport:
    """Antisymmetry, Jacobi of every combined bracket, and both mixed identities."""
    if n < 1:
        raise PreconditionError("n must be positive")
    rep = CheckReport("pair_axioms", details={"n": n, "samples": samples, "seed": seed})
    for idx in range(samples):
        g = substream(seed, idx)
        X, Y, Z, A, B, C = (g.matrix(n, r) for _ in range(6))
        alpha, beta = g.rational(r), g.rational(r)
        comb2 = A * alpha + B * beta
        comb1 = X * alpha + Y * beta
        rep.record(bracket_v1(X, Y, comb2) == -bracket_v1(Y, X, comb2), sample=idx, check="antisymmetry_v1")
        rep.record(bracket_v2(A, B, comb1) == -bracket_v2(B, A, comb1), sample=idx, check="antisymmetry_v2")
        rep.record(
            _jacobi(lambda u, v: bracket_v1(u, v, comb2), X, Y, Z).is_zero(), sample=idx, check="jacobi_v1"
        )
        rep.record(
            _jacobi(lambda u, v: bracket_v2(u, v, comb1), A, B, C).is_zero(), sample=idx, check="jacobi_v2"
        )
        lhs, rhs = mixed_identity_v1(X, Y, Z, A, B)
        rep.record(lhs == rhs, sample=idx, check="mixed_v1", X=X, Y=Y, Z=Z, A=A, B=B)
        lhs, rhs = mixed_identity_v2(A, B, C, X, Y)
        rep.record(lhs == rhs, sample=idx, check="mixed_v2", A=A, B=B, C=C, X=X, Y=Y)
    return rep


def substructure_check(p: MatrixPair) -> CheckReport:
    """Closure of normalizer and annihilator under the brackets of the span."""
    rep = CheckReport("substructure")
    ann = compute_annihilator(p)
    nor = compute_normalizer(p)
    span = p.span()
    rep.record(ann <= nor, check="annihilator_in_normalizer")
    gens = [p.A, p.B]
    nor_b, ann_b = nor.basis_mats(), ann.basis_mats()
    for X in nor_b:
        rep.record(bracket_v2(p.A, p.B, X) in span, check="normalizer_acts_on_span", X=X)
    for label, sub, basis in (("normalizer", nor, nor_b), ("annihilator", ann, ann_b)):
        for i, X in enumerate(basis):
            for Y in basis[i + 1:]:
                for C in gens:
                    rep.record(bracket_v1(X, Y, C) in sub, check=f"{label}_closed", X=X, Y=Y, C=C)
    # annihilator is an ideal of the normalizer, so the quotient inherits the brackets
    for X in ann_b:
        for Y in nor_b:
            for C in gens:
                rep.record(bracket_v1(X, Y, C) in ann, check="annihilator_ideal", X=X, Y=Y, C=C)
    rep.details.update(a=ann.dim, normalizer_dim=nor.dim, a0=nor.dim - ann.dim)
    return rep
