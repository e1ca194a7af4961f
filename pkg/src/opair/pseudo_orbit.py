"""The first space acting on pairs W2 = {(A, B)} through point-dependent brackets.

All vector fields on W2 used here are polynomial (bilinear or quadratic in
the point), so their directional derivatives are written out exactly and
vector-field commutators are exact.  Orbits are handled through their
tangent spaces only.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError, PreconditionError
from .exact import Mat, Subspace, subspace_sum
from .isotopic import MatrixPair, bracket_v1, bracket_v2, compute_annihilator
from .report import CheckReport
from .rng import DEFAULT_RANGE, SplitMix64, substream

W2Point = MatrixPair


@dataclass(frozen=True)
class TangentVector:
    dA: Mat
    dB: Mat

    def __add__(self, other: "TangentVector") -> "TangentVector":
        return TangentVector(self.dA + other.dA, self.dB + other.dB)

    def __sub__(self, other: "TangentVector") -> "TangentVector":
        return TangentVector(self.dA - other.dA, self.dB - other.dB)

    def __neg__(self) -> "TangentVector":
        return TangentVector(-self.dA, -self.dB)

    def __mul__(self, c) -> "TangentVector":
        return TangentVector(self.dA * c, self.dB * c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.dA.is_zero() and self.dB.is_zero()

    def vec(self) -> tuple[Fraction, ...]:
        return self.dA.vec() + self.dB.vec()

    @classmethod
    def zero(cls, n: int) -> "TangentVector":
        return cls(Mat.zeros(n), Mat.zeros(n))

    def to_json(self):
        return {"dA": self.dA.to_json(), "dB": self.dB.to_json()}


class TauField:
    """``(A, B) -> (lam [A,B]_X, mu [A,B]_X)``; (1, 0) is tau', (0, 1) is tau''."""

    def __init__(self, X: Mat, lam=1, mu=0):
        self.X = X
        self.lam = Fraction(lam)
        self.mu = Fraction(mu)

    def __call__(self, p: W2Point) -> TangentVector:
        P = bracket_v2(p.A, p.B, self.X)
        return TangentVector(P * self.lam, P * self.mu)

    def derivative(self, p: W2Point, w: TangentVector) -> TangentVector:
        X = self.X
        dP = w.dA @ X @ p.B + p.A @ X @ w.dB - w.dB @ X @ p.A - p.B @ X @ w.dA
        return TangentVector(dP * self.lam, dP * self.mu)


class EquihybridField:
    """``(A, B) -> (AXA + AXB, AXB + BXB)`` with X frozen."""

    def __init__(self, X: Mat):
        self.X = X

    def __call__(self, p: W2Point) -> TangentVector:
        A, B, X = p.A, p.B, self.X
        AXB = A @ X @ B
        return TangentVector(A @ X @ A + AXB, AXB + B @ X @ B)

    def derivative(self, p: W2Point, w: TangentVector) -> TangentVector:
        A, B, X, a, b = p.A, p.B, self.X, w.dA, w.dB
        dAXB = a @ X @ B + A @ X @ b
        return TangentVector(a @ X @ A + A @ X @ a + dAXB, dAXB + b @ X @ B + B @ X @ b)


def field_commutator(u, v, p: W2Point, sign: int = 1) -> TangentVector:
    """``sign * (Dv(p)[u(p)] - Du(p)[v(p)])``."""
    c = v.derivative(p, u(p)) - u.derivative(p, v(p))
    return c if sign == 1 else -c


def detect_commutator_sign() -> int:
    """Sign making [tau'(X), tau'(Y)] = tau'([X, Y]_B), read off a fixed 2x2 fixture."""
    p = W2Point(Mat([[1, 2], [0, 1]]), Mat([[0, 1], [3, 2]]))
    X, Y = Mat([[1, 0], [2, -1]]), Mat([[0, 3], [1, 1]])
    raw = field_commutator(TauField(X), TauField(Y), p)
    target = TauField(bracket_v1(X, Y, p.B))(p)
    if raw == target:
        return 1
    if raw == -target:
        return -1
    raise AssertionError("commutator matches neither sign on the fixture")


COMMUTATOR_SIGN = detect_commutator_sign()


def tau_fields(X: Mat, pt: W2Point, lam=1, mu=1) -> tuple[TangentVector, TangentVector, TangentVector]:
    if X.n != pt.n:
        raise DimensionError("X and the point differ in size")
    t1 = TauField(X, 1, 0)(pt)
    t2 = TauField(X, 0, 1)(pt)
    return t1, t2, t1 * Fraction(lam) + t2 * Fraction(mu)


def bracket_prime_at(X: Mat, Y: Mat, p: W2Point) -> Mat:
    """Bracket matched to tau' at (A, B): ``[X, Y]_B``."""
    return bracket_v1(X, Y, p.B)


def bracket_double_prime_at(X: Mat, Y: Mat, p: W2Point) -> Mat:
    """Bracket matched to tau'' at (A, B): ``[Y, X]_A``.

    Swapping A and B turns tau''(X) into tau'(-X), so tau'' is a homomorphism
    for ``[Y, X]_A`` and an anti-homomorphism for ``[X, Y]_A``.
    """
    return bracket_v1(Y, X, p.A)


def pointwise_bracket(X: Mat, Y: Mat, p: W2Point, lam, mu) -> Mat:
    """``lam [X,Y]' + mu [X,Y]''`` at (A, B): the bracket matched to tau_{lam,mu}."""
    return bracket_prime_at(X, Y, p) * Fraction(lam) + bracket_double_prime_at(X, Y, p) * Fraction(mu)


def _random_point(g: SplitMix64, n: int, r: int, invertible: bool = False) -> W2Point:
    if invertible:
        return W2Point(g.invertible_matrix(n, r), g.invertible_matrix(n, r))
    return W2Point(g.matrix(n, r), g.matrix(n, r))


def verify_pseudoalgebra(n: int, samples: int, seed: int, combos: int = 5, r: int = DEFAULT_RANGE) -> CheckReport:
    """``[tau(X), tau(Y)](a) = tau([X, Y]_a)`` for tau', tau'' and random tau_{lam,mu}.

    ``details["literal_double_prime_agrees"]`` counts samples where tau''
    also matches the unswapped ``[X, Y]_A`` (zero unless [X, Y]_A vanishes).
    """
    rep = CheckReport(
        "pseudoalgebra", details={"n": n, "samples": samples, "seed": seed, "commutator_sign": COMMUTATOR_SIGN}
    )
    literal_agrees = 0
    for idx in range(samples):
        g = substream(seed, idx)
        p = _random_point(g, n, r)
        X, Y = g.matrix(n, r), g.matrix(n, r)
        coeffs = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
        coeffs += [(g.rational(r), g.rational(r)) for _ in range(combos)]
        for lam, mu in coeffs:
            lhs = field_commutator(TauField(X, lam, mu), TauField(Y, lam, mu), p, COMMUTATOR_SIGN)
            rhs = TauField(pointwise_bracket(X, Y, p, lam, mu), lam, mu)(p)
            rep.record(lhs == rhs, sample=idx, lam=lam, mu=mu)
        lhs = field_commutator(TauField(X, 0, 1), TauField(Y, 0, 1), p, COMMUTATOR_SIGN)
        literal_agrees += lhs == TauField(bracket_v1(X, Y, p.A), 0, 1)(p)
    rep.details["literal_double_prime_agrees"] = literal_agrees
    return rep


def verify_pseudohybrid_compat(n: int, samples: int, seed: int, r: int = DEFAULT_RANGE) -> CheckReport:
    """``[tau'X, tau''Y] + [tau''X, tau'Y] = tau'([X,Y]'') + tau''([X,Y]')``."""
    rep = CheckReport("pseudohybrid_compat", details={"n": n, "samples": samples, "seed": seed})
    for idx in range(samples):
        g = substream(seed, idx)
        p = _random_point(g, n, r)
        X, Y = g.matrix(n, r), g.matrix(n, r)
        s = COMMUTATOR_SIGN
        lhs = field_commutator(TauField(X, 1, 0), TauField(Y, 0, 1), p, s) + field_commutator(
            TauField(X, 0, 1), TauField(Y, 1, 0), p, s
        )
        rhs = TauField(bracket_double_prime_at(X, Y, p), 1, 0)(p) + TauField(bracket_prime_at(X, Y, p), 0, 1)(p)
        rep.record(lhs == rhs, sample=idx)
    return rep


def _span_tangents(vectors, n: int) -> Subspace:
    return Subspace.span([v.vec() for v in vectors], 2 * n * n)


def gl2_tangent(pt: W2Point) -> Subspace:
    """Tangent space at (A, B) to the orbit of (A, B) -> (CAD, CBD)."""
    n = pt.n
    units = [Mat.basis_element(n, k) for k in range(n * n)]
    vecs = [TangentVector(u @ pt.A, u @ pt.B) for u in units]
    vecs += [TangentVector(pt.A @ v, pt.B @ v) for v in units]
    return _span_tangents(vecs, n)


def _require_annihilator(pt: W2Point, *mats: Mat) -> None:
    for X in mats:
        if X.n != pt.n:
            raise DimensionError("matrix and point differ in size")
        if not bracket_v2(pt.A, pt.B, X).is_zero():
            raise PreconditionError(f"{X} is not in the annihilator of the point")


def equihybrid_variation(X: Mat, pt: W2Point) -> TangentVector:
    _require_annihilator(pt, X)
    return EquihybridField(X)(pt)


@dataclass(frozen=True)
class OrbitDecomposition:
    T_prime: Subspace
    T_double_prime: Subspace
    E_equihybrid: Subspace
    gl2_tangent: Subspace
    total: Subspace
    direct: bool
    equal: bool

    @property
    def dims(self) -> list[int]:
        return [self.T_prime.dim, self.T_double_prime.dim, self.E_equihybrid.dim]


def decomposition_check(pt: W2Point) -> OrbitDecomposition:
    n = pt.n
    units = [Mat.basis_element(n, k) for k in range(n * n)]
    zero = Mat.zeros(n)
    images = [bracket_v2(pt.A, pt.B, X) for X in units]
    t1 = _span_tangents([TangentVector(P, zero) for P in images], n)
    t2 = _span_tangents([TangentVector(zero, P) for P in images], n)
    ann = compute_annihilator(pt).basis_mats()
    e = _span_tangents([EquihybridField(X)(pt) for X in ann], n)
    total, direct = subspace_sum([t1, t2, e])
    gl = gl2_tangent(pt)
    return OrbitDecomposition(t1, t2, e, gl, total, direct, total == gl)


def leaf_preservation_check(pt: W2Point, X: Mat) -> CheckReport:
    """First-order constancy of the annihilator along the equihybrid variation of X."""
    _require_annihilator(pt, X)
    v = EquihybridField(X)(pt)
    rep = CheckReport("leaf_preservation")
    for Xp in compute_annihilator(pt).basis_mats():
        res = v.dA @ Xp @ pt.B + pt.A @ Xp @ v.dB - v.dB @ Xp @ pt.A - pt.B @ Xp @ v.dA
        rep.record(res.is_zero(), X=X, X_prime=Xp, residual=res)
    return rep


def coadjoint_vector(C: Mat, F: Mat, X: Mat) -> Mat:
    """ad*_X F for the Lie algebra (Mat_n, [.,.]_C), identified with Mat_n by the trace pairing.

    Built from its defining functional Z -> -trace(F [X, Z]_C): the matrix M
    with trace(M E_ij) = M[j][i] equal to that functional at E_ij.
    """
    n = C.n
    rows = [[-(F @ bracket_v1(X, Mat.unit(n, i, j), C)).trace() for i in range(n)] for j in range(n)]
    return Mat(rows)


def conservation_and_coadjoint_check(pt: W2Point, lam, mu, X: Mat, coadjoint: bool = True) -> CheckReport:
    """mu A - lam B is constant along tau_{lam,mu}(X); the tau' tangent is the coadjoint span.

    The coadjoint part does not depend on (lam, mu, X); pass ``coadjoint=False``
    to skip it when sweeping those.
    """
    lam, mu = Fraction(lam), Fraction(mu)
    if not lam and not mu:
        raise PreconditionError("(lam, mu) must not both vanish")
    rep = CheckReport("conservation_coadjoint")
    v = TauField(X, lam, mu)(pt)
    conserved = v.dA * mu - v.dB * lam
    rep.record(conserved.is_zero(), check="mu_A_minus_lam_B_conserved", residual=conserved)
    projected = v.dA * lam + v.dB * mu
    rep.details["projection_velocity_zero"] = projected.is_zero()
    if not coadjoint:
        return rep
    n = pt.n
    units = [Mat.basis_element(n, k) for k in range(n * n)]
    tangent = Subspace.span_mats([bracket_v2(pt.A, pt.B, Y) for Y in units], n)
    coadj = [coadjoint_vector(pt.B, pt.A, Y) for Y in units]
    rep.record(
        all(M == pt.B @ Y @ pt.A - pt.A @ Y @ pt.B for M, Y in zip(coadj, units)),
        check="coadjoint_closed_form",
    )
    rep.record(Subspace.span_mats(coadj, n) == tangent, check="tau_prime_tangent_is_coadjoint_span")
    return rep


def connection_term(pt: W2Point, Z1: Mat, Z2: Mat, X: Mat) -> Mat:
    """``[Z1, X]' + [Z2, X]'' = [Z1, X]_B + [X, Z2]_A``: the term added to dX."""
    return bracket_prime_at(Z1, X, pt) + bracket_double_prime_at(Z2, X, pt)


def literal_connection_term(pt: W2Point, Z1: Mat, Z2: Mat, X: Mat) -> Mat:
    """``[Z1, X]_B + [Z2, X]_A``, the transcribed formula (does not preserve the fibre)."""
    return bracket_v1(Z1, X, pt.B) + bracket_v1(Z2, X, pt.A)


def covariant_derivative(
    pt: W2Point, Z1: Mat, Z2: Mat, Z0: Mat, X: Mat, dX: Mat
) -> tuple[TangentVector, Mat]:
    """Direction tau'(Z1) + tau''(Z2) + delta(Z0) at pt, and nabla = dX + [Z1,X]' + [Z2,X]''.

    In matrix terms nabla = dX + [Z1,X]_B - [Z2,X]_A; a section is parallel
    when nabla vanishes.  The equihybrid direction contributes no term.
    """
    _require_annihilator(pt, Z0, X)
    direction = TauField(Z1, 1, 0)(pt) + TauField(Z2, 0, 1)(pt) + EquihybridField(Z0)(pt)
    return direction, dX + connection_term(pt, Z1, Z2, X)


def fibre_drift(pt: W2Point, direction: TangentVector, X: Mat, dX: Mat) -> Mat:
    """d/dt (AXB - BXA) along (A', B', X') = (direction, dX)."""
    a, b = direction.dA, direction.dB
    A, B = pt.A, pt.B
    return a @ X @ B + A @ dX @ B + A @ X @ b - b @ X @ A - B @ dX @ A - B @ X @ a


def parallel_transport_residual(pt: W2Point, Z1: Mat, Z2: Mat, Z0: Mat, X: Mat, literal: bool = False) -> Mat:
    direction, _ = covariant_derivative(pt, Z1, Z2, Z0, X, Mat.zeros(pt.n))
    term = literal_connection_term if literal else connection_term
    return fibre_drift(pt, direction, X, -term(pt, Z1, Z2, X))


def random_annihilator_element(g: SplitMix64, pt: W2Point, r: int = DEFAULT_RANGE) -> Mat:
    basis = compute_annihilator(pt).basis_mats()
    X = Mat.zeros(pt.n)
    for b in basis:
        X = X + b * g.integer(-r, r)
    return X


def verify_connection(n: int, samples: int, seed: int, r: int = DEFAULT_RANGE) -> CheckReport:
    """Parallel transport keeps X in the annihilator to first order; leaf preservation likewise."""
    rep = CheckReport("connection", details={"n": n, "samples": samples, "seed": seed})
    literal_failures = 0
    for idx in range(samples):
        g = substream(seed, idx)
        pt = _random_point(g, n, r)
        Z1, Z2 = g.matrix(n, r), g.matrix(n, r)
        Z0, X = random_annihilator_element(g, pt, r), random_annihilator_element(g, pt, r)
        res = parallel_transport_residual(pt, Z1, Z2, Z0, X)
        rep.record(res.is_zero(), sample=idx, check="parallel_transport", residual=res)
        if not parallel_transport_residual(pt, Z1, Z2, Z0, X, literal=True).is_zero():
            literal_failures += 1
        leaf = leaf_preservation_check(pt, Z0)
        rep.record(leaf.passed, sample=idx, check="leaf_preservation")
    rep.details["literal_formula_failures"] = literal_failures
    return rep


def verify_decomposition(n: int, samples: int, seed: int, invertible: bool = True, r: int = DEFAULT_RANGE) -> CheckReport:
    rep = CheckReport("decomposition", details={"n": n, "samples": samples, "seed": seed, "invertible": invertible})
    dims = {}
    for idx in range(samples):
        g = substream(seed, idx)
        pt = _random_point(g, n, r, invertible)
        dec = decomposition_check(pt)
        key = "+".join(map(str, dec.dims)) + f"={dec.gl2_tangent.dim}"
        dims[key] = dims.get(key, 0) + 1
        rep.record(dec.direct and dec.equal, sample=idx, A=pt.A, B=pt.B, dims=dec.dims)
    rep.details["dims_histogram"] = dict(sorted(dims.items()))
    return rep


def variation_commutator_report(pt: W2Point, X: Mat, Y: Mat) -> CheckReport:
    """Commutator of two equihybrid variations, each extended off the leaf with its matrix frozen."""
    _require_annihilator(pt, X, Y)
    c = field_commutator(EquihybridField(X), EquihybridField(Y), pt, COMMUTATOR_SIGN)
    rep = CheckReport("variation_commutativity", kind="verdict")
    rep.record(c.is_zero(), X=X, Y=Y)
    rep.details["residual"] = c
    dec = decomposition_check(pt)
    rep.details["residual_in_equihybrid_span"] = c.vec() in dec.E_equihybrid
    rep.details["residual_in_orbit_tangent"] = c.vec() in dec.gl2_tangent
    return rep


@dataclass(frozen=True)
class GriffinReport:
    dim_W1: int
    dim_Ac: int
    dim_griffin: int
    spanned_orbit_dim: int


def griffin_report(pt: W2Point) -> GriffinReport:
    n = pt.n
    a = compute_annihilator(pt).dim
    dec = decomposition_check(pt)
    return GriffinReport(2 * n * n, a, 2 * n * n + a, dec.total.dim)
