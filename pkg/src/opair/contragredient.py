"""Trace pairing, the 4-form Omega, and the operators it induces on exterior squares.

``omega(A, B, X, Y) = trace([X, Y]_B A)``.  Under the trace pairing this one
number has four equal expressions, and for fixed (A, B) it is an
antisymmetric bilinear form in (X, Y) whose kernel is the annihilator.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DimensionError, PreconditionError
from .exact import Mat, Subspace, invert_rows, mat_mul, matrix_rank, null_space, transpose
from .isotopic import MatrixPair, bracket_v1, bracket_v2, compute_annihilator
from .report import CheckReport
from .rng import DEFAULT_RANGE, substream


def pairing(X: Mat, A: Mat) -> Fraction:
    return (X @ A).trace()


def omega(A: Mat, B: Mat, X: Mat, Y: Mat) -> Fraction:
    if len({A.n, B.n, X.n, Y.n}) != 1:
        raise DimensionError("omega needs four matrices of one size")
    return pairing(bracket_v1(X, Y, B), A)


def omega_chain(A: Mat, B: Mat, X: Mat, Y: Mat) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """<[X,Y]_B, A>, -<[X,Y]_A, B>, <[A,B]_X, Y>, -<[A,B]_Y, X>."""
    return (
        pairing(bracket_v1(X, Y, B), A),
        -pairing(bracket_v1(X, Y, A), B),
        pairing(bracket_v2(A, B, X), Y),
        -pairing(bracket_v2(A, B, Y), X),
    )


def verify_contragredience(n: int, samples: int, seed: int, r: int = DEFAULT_RANGE) -> CheckReport:
    rep = CheckReport("contragredience", details={"n": n, "samples": samples, "seed": seed})
    for idx in range(samples):
        g = substream(seed, idx)
        A, B, X, Y = (g.matrix(n, r) for _ in range(4))
        values = omega_chain(A, B, X, Y)
        rep.record(len(set(values)) == 1, sample=idx, values=list(values))
    return rep


@dataclass(frozen=True)
class OmegaData:
    pair: MatrixPair
    form_matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return matrix_rank(self.form_matrix)


def omega_form(p: MatrixPair) -> OmegaData:
    """Gram matrix of (X, Y) -> omega(A, B, X, Y) on column-stacked coordinates."""
    n = p.n
    units = [Mat.basis_element(n, k) for k in range(n * n)]
    # <[A,B]_X, Y> is linear in Y, so one bracket per row suffices
    rows = []
    for X in units:
        W = bracket_v2(p.A, p.B, X)
        rows.append(tuple(pairing(W, Y) for Y in units))
    return OmegaData(p, tuple(rows))


def omega_kernel_crosscheck(p: MatrixPair) -> CheckReport:
    rep = CheckReport("omega_kernel")
    data = omega_form(p)
    M = data.form_matrix
    d = len(M)
    antisym = all(M[i][j] == -M[j][i] for i in range(d) for j in range(d))
    rep.record(antisym, check="antisymmetric")
    kernel = null_space(M, d)
    ann = compute_annihilator(p)
    rep.record(kernel == ann, check="kernel_equals_annihilator", kernel=kernel, annihilator=ann)
    codim = data.rank
    rep.record(codim % 2 == 0, check="even_codimension", codim=codim)
    rep.details.update(codim=codim, kernel_dim=kernel.dim, a=ann.dim)
    return rep


class PairingConvention(str, enum.Enum):
    DETERMINANT = "determinant"
    HALF_DETERMINANT = "half_determinant"
    TRANSPOSE_DETERMINANT = "transpose_determinant"


@dataclass(frozen=True)
class ROperator:
    side: int
    matrix: tuple[tuple[Fraction, ...], ...]
    convention: PairingConvention
    basis: tuple[tuple[int, int], ...]

    def apply(self, coords):
        return tuple(sum((a * b for a, b in zip(row, coords)), Fraction(0)) for row in self.matrix)


def wedge_basis(N: int) -> list[tuple[int, int]]:
    return list(combinations(range(N), 2))


def _unit_index(n: int, k: int) -> tuple[int, int]:
    j, i = divmod(k, n)
    return i, j


def _trace_units(n: int, ks: tuple[int, ...]) -> int:
    """trace(E_k1 E_k2 ... E_km) for column-stacked basis indices."""
    idx = [_unit_index(n, k) for k in ks]
    for (i1, j1), (i2, j2) in zip(idx, idx[1:] + idx[:1]):
        if j1 != i2:
            return 0
    return 1


def base_gram(n: int, convention: PairingConvention) -> list[list[int]]:
    N = n * n
    if convention is PairingConvention.TRANSPOSE_DETERMINANT:
        return [[int(k == a) for a in range(N)] for k in range(N)]
    return [[_trace_units(n, (k, a)) for a in range(N)] for k in range(N)]


def wedge_gram(n: int, convention: PairingConvention) -> list[list[Fraction]]:
    """G[p][q] = <u_p, a_q> for the chosen pairing of exterior squares."""
    g = base_gram(n, convention)
    scale = Fraction(1, 2) if convention is PairingConvention.HALF_DETERMINANT else Fraction(1)
    basis = wedge_basis(n * n)
    return [[scale * (g[k][a] * g[l][b] - g[k][b] * g[l][a]) for (a, b) in basis] for (k, l) in basis]


def omega_wedge_matrix(n: int) -> list[list[Fraction]]:
    """W[q][p] = omega(a_q; u_p) with a_q = E_a ^ E_b, u_p = E_k ^ E_l, via traces of matrix units."""
    basis = wedge_basis(n * n)
    W = []
    for a, b in basis:
        row = []
        for k, l in basis:
            # trace((E_k E_b E_l - E_l E_b E_k) E_a)
            row.append(Fraction(_trace_units(n, (k, b, l, a)) - _trace_units(n, (l, b, k, a))))
        W.append(row)
    return W


def build_R(n: int, convention: PairingConvention = PairingConvention.DETERMINANT) -> tuple[ROperator, ROperator]:
    """Operators with <R1(X^Y), A^B> = omega(A,B;X,Y) = <X^Y, R2(A^B)>.

    With G the pairing Gram matrix and W[q][p] = omega(a_q; u_p):
    R1 = G^-T W and R2 = G^-1 W^T.
    """
    if n < 2:
        raise PreconditionError("exterior squares need n >= 2")
    convention = PairingConvention(convention)
    G = wedge_gram(n, convention)
    W = omega_wedge_matrix(n)
    Ginv = invert_rows(G)
    R1 = mat_mul(transpose(Ginv), W)
    R2 = mat_mul(Ginv, transpose(W))
    basis = tuple(wedge_basis(n * n))
    freeze = lambda M: tuple(tuple(r) for r in M)
    return ROperator(1, freeze(R1), convention, basis), ROperator(2, freeze(R2), convention, basis)


def adjointness_check(R1: ROperator, R2: ROperator, n: int) -> CheckReport:
    """R2 = R1* and R1 = R2* with respect to the pairing of exterior squares."""
    rep = CheckReport("r_adjoint", details={"convention": R1.convention.value, "n": n})
    G = wedge_gram(n, R1.convention)
    Ginv = invert_rows(G)
    r1, r2 = [list(r) for r in R1.matrix], [list(r) for r in R2.matrix]
    # <R1 u, a> = <u, R1* a>  gives  R1* = G^-1 R1^T G
    r1_star = mat_mul(mat_mul(Ginv, transpose(r1)), G)
    rep.record(r1_star == r2, check="R2_is_adjoint_of_R1")
    # <u, R2 a> = <R2* u, a>  gives  R2* = G^-T R2^T G^T
    r2_star = mat_mul(mat_mul(transpose(Ginv), transpose(r2)), transpose(G))
    rep.record(r2_star == r1, check="R1_is_adjoint_of_R2")
    return rep


def analyze_R(R1: ROperator) -> CheckReport:
    """Square R1 exactly and record whether it equals -id, a scalar, or neither."""
    M = [list(r) for r in R1.matrix]
    S = mat_mul(M, M)
    d = len(S)
    eye = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    minus_id = all(S[i][j] == -eye[i][j] for i in range(d) for j in range(d))
    c = S[0][0] if d else Fraction(0)
    scalar = all(S[i][j] == c * eye[i][j] for i in range(d) for j in range(d))
    plus_one = d - matrix_rank([[S[i][j] - eye[i][j] for j in range(d)] for i in range(d)])
    minus_one = d - matrix_rank([[S[i][j] + eye[i][j] for j in range(d)] for i in range(d)])
    rep = CheckReport("r_squared", kind="verdict")
    rep.record(minus_id, convention=R1.convention.value)
    rep.details.update(
        convention=R1.convention.value,
        wedge_dim=d,
        squared_is_minus_identity=minus_id,
        squared_scalar=str(c) if scalar else None,
        rank_R=matrix_rank(M),
        eigenspace_dim_plus_one=plus_one,
        eigenspace_dim_minus_one=minus_one,
    )
    return rep


def wedge_coords(n: int, k: int, l: int) -> tuple[Fraction, ...]:
    """Coordinates of E_k ^ E_l (column-stacked indices) in the wedge basis."""
    basis = wedge_basis(n * n)
    sign = 1
    if k > l:
        k, l, sign = l, k, -1
    v = [Fraction(0)] * len(basis)
    if k != l:
        v[basis.index((k, l))] = Fraction(sign)
    return tuple(v)


def detect_kirillov_sign() -> int:
    """Sign e with omega(A,B;X,Y) = e * trace(A^-1 B [XA, YA]), read off a fixture."""
    n = 2
    A, B = Mat.identity(n), Mat.unit(n, 0, 0)
    X, Y = Mat.unit(n, 0, 1), Mat.unit(n, 1, 0)
    F = A.inverse() @ B
    u, v = X @ A, Y @ A
    kir = (F @ (u @ v - v @ u)).trace()
    return int(omega(A, B, X, Y) / kir)


KIRILLOV_SIGN = detect_kirillov_sign()


def kirillov_crosscheck(p: MatrixPair, samples: int, seed: int, r: int = DEFAULT_RANGE) -> CheckReport:
    """Omega on the annihilator quotient against the Kirillov form at F, pulled back along X->XA and X->AX."""
    if not p.A.is_invertible():
        raise PreconditionError("A must be invertible")
    Ai = p.A.inverse()
    F_right, F_left = Ai @ p.B, p.B @ Ai
    eps = KIRILLOV_SIGN
    rep = CheckReport("kirillov", details={"sign": eps})
    for idx in range(samples):
        g = substream(seed, idx)
        X, Y = g.matrix(p.n, r), g.matrix(p.n, r)
        w = omega(p.A, p.B, X, Y)
        u, v = X @ p.A, Y @ p.A
        rep.record(w == eps * (F_right @ (u @ v - v @ u)).trace(), sample=idx, branch="right", X=X, Y=Y)
        u, v = p.A @ X, p.A @ Y
        rep.record(w == eps * (F_left @ (u @ v - v @ u)).trace(), sample=idx, branch="left", X=X, Y=Y)
    return rep


def wedge_of(X: Mat, Y: Mat) -> tuple[Fraction, ...]:
    """Coordinates of X ^ Y in the wedge basis."""
    x, y = X.vec(), Y.vec()
    return tuple(x[k] * y[l] - x[l] * y[k] for k, l in wedge_basis(len(x)))


def wedge_pairing(u, a, G) -> Fraction:
    return sum((u[p] * G[p][q] * a[q] for p in range(len(u)) for q in range(len(a)) if G[p][q]), Fraction(0))


def r_defining_check(R1: ROperator, R2: ROperator, n: int, samples: int, seed: int, r: int = DEFAULT_RANGE) -> CheckReport:
    """<R1(X^Y), A^B> = omega(A,B;X,Y) = <X^Y, R2(A^B)>, with omega evaluated directly."""
    G = wedge_gram(n, R1.convention)
    rep = CheckReport("r_defining", details={"convention": R1.convention.value, "n": n, "samples": samples})
    for idx in range(samples):
        g = substream(seed, idx)
        A, B, X, Y = (g.matrix(n, r) for _ in range(4))
        u, a = wedge_of(X, Y), wedge_of(A, B)
        w = omega(A, B, X, Y)
        rep.record(wedge_pairing(R1.apply(u), a, G) == w, sample=idx, side=1)
        rep.record(wedge_pairing(u, R2.apply(a), G) == w, sample=idx, side=2)
    return rep


def determinant_counter_instance() -> bool:
    """R1(E11 ^ E12) = -(E11 ^ E12) for n = 2 under the determinant pairing."""
    R1, _ = build_R(2, PairingConvention.DETERMINANT)
    u = wedge_of(Mat.unit(2, 0, 0), Mat.unit(2, 0, 1))
    return R1.apply(u) == tuple(-c for c in u)
