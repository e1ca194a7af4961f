"""The hybrid of the pair (d/dx, x) acting on polynomials in one variable.

Operators are truncated to the monomials 1, x, ..., x^D.  The hybrid is the
annihilator {P : dPx = xPd}.  Its basis e_n = x^n f_n(x d/dx) sends x^(2k)
to f_n(2k) x^(2k+n) with f_n(2k) = (2k-1)!!/(2k+n)!! and kills odd monomials.

A truncated matrix is exact in every column it keeps, but a product can pick
up garbage from terms that fell off the top, so every identity below is
compared only on the block of rows and columns where no dropped term can
reach.  That block is worked out separately for each identity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

from .errors import PreconditionError
from .exact import mat_mul, null_space
from .report import CheckReport

Rows = tuple[tuple[Fraction, ...], ...]


def double_factorial(m: int) -> int:
    """m!! with (-1)!! = 0!! = 1."""
    if m < -1:
        raise ValueError("double factorial is defined here for m >= -1")
    return prod(range(m, 0, -2)) if m > 0 else 1


def f_coefficient(n: int, j: int) -> Fraction:
    """f_n(j): zero for odd j, (j-1)!!/(j+n)!! for even j."""
    if j % 2:
        return Fraction(0)
    return Fraction(double_factorial(j - 1), double_factorial(j + n))


@dataclass(frozen=True)
class TruncatedOperator:
    """Column j holds the coefficients of the operator applied to x^j, cut at degree D."""

    D: int
    action: Rows

    @classmethod
    def from_columns(cls, D: int, columns) -> "TruncatedOperator":
        size = D + 1
        rows = [[Fraction(0)] * size for _ in range(size)]
        for j, col in enumerate(columns):
            for i, c in col.items():
                if i <= D:
                    rows[i][j] = Fraction(c)
        return cls(D, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, D: int) -> "TruncatedOperator":
        return cls.from_columns(D, [{j: 1} for j in range(D + 1)])

    @classmethod
    def zero(cls, D: int) -> "TruncatedOperator":
        return cls.from_columns(D, [{} for _ in range(D + 1)])

    @classmethod
    def multiply_by_x(cls, D: int) -> "TruncatedOperator":
        return cls.from_columns(D, [{j + 1: 1} for j in range(D + 1)])

    @classmethod
    def derivative(cls, D: int) -> "TruncatedOperator":
        return cls.from_columns(D, [{j - 1: j} if j else {} for j in range(D + 1)])

    def _same(self, other: "TruncatedOperator"):
        if self.D != other.D:
            raise PreconditionError(f"truncation degrees differ: {self.D} and {other.D}")

    def __matmul__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        self._same(other)
        return TruncatedOperator(self.D, tuple(tuple(r) for r in mat_mul(self.action, other.action)))

    def __add__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        self._same(other)
        return TruncatedOperator(
            self.D, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.action, other.action))
        )

    def __neg__(self) -> "TruncatedOperator":
        return TruncatedOperator(self.D, tuple(tuple(-a for a in r) for r in self.action))

    def __sub__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        return self + (-other)

    def __mul__(self, c) -> "TruncatedOperator":
        c = Fraction(c)
        return TruncatedOperator(self.D, tuple(tuple(a * c for a in r) for r in self.action))

    __rmul__ = __mul__

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.action)

    def block_is_zero(self, max_row: int, max_col: int) -> bool:
        return all(self.action[i][j] == 0 for i in range(max_row + 1) for j in range(max_col + 1))

    def to_json(self):
        return {"D": self.D, "action": [[str(a) for a in r] for r in self.action]}


def basis_element(n: int, D: int) -> TruncatedOperator:
    if n < 0:
        raise ValueError("basis index must be non-negative")
    if D < n:
        raise PreconditionError(f"truncation degree {D} below basis index {n}")
    return TruncatedOperator.from_columns(D, [{j + n: f_coefficient(n, j)} for j in range(D + 1)])


def membership_residual(P: TruncatedOperator) -> tuple[TruncatedOperator, int]:
    """dPx - xPd together with the largest degree on which it is exact.

    dPx on x^j needs P(x^(j+1)) in full and then lowers degree, so columns
    and rows up to D-1 are exact; xPd raises degree by one after an exact
    P(x^(j-1)), giving the same bound.
    """
    D = P.D
    x, d = TruncatedOperator.multiply_by_x(D), TruncatedOperator.derivative(D)
    return d @ P @ x - x @ P @ d, D - 1


def membership_check(P: TruncatedOperator) -> CheckReport:
    res, window = membership_residual(P)
    rep = CheckReport("membership", details={"D": P.D, "window": window})
    for j in range(window + 1):
        for i in range(window + 1):
            v = res.action[i][j]
            rep.record(v == 0, row=i, column=j, value=v)
    return rep


@dataclass(frozen=True)
class SymbolPolynomial:
    """P(x, xi) = sum of coeffs[(i, j)] x^i xi^j; zero coefficients are never stored."""

    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {(int(i), int(j)): Fraction(c) for (i, j), c in self.coeffs.items() if c != 0}
        object.__setattr__(self, "coeffs", clean)

    def __eq__(self, other):
        return isinstance(other, SymbolPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_json(self):
        return [[i, j, str(c)] for (i, j), c in sorted(self.coeffs.items())]


def pde_residual(P: SymbolPolynomial) -> SymbolPolynomial:
    """``P_{x xi} + x P_x + xi P_xi + P``."""
    out: dict[tuple[int, int], Fraction] = {}
    for (i, j), c in P.coeffs.items():
        out[(i, j)] = out.get((i, j), Fraction(0)) + c * (i + j + 1)
        if i and j:
            out[(i - 1, j - 1)] = out.get((i - 1, j - 1), Fraction(0)) + c * i * j
    return SymbolPolynomial(out)


def monomials_up_to(degree: int) -> list[tuple[int, int]]:
    return [(i, t - i) for t in range(degree + 1) for i in range(t + 1)]


def pde_kernel_dimension(degree: int) -> int:
    """Dimension of the polynomial solutions of total degree <= degree."""
    # the residual never raises total degree, so the map stays inside the space
    mons = monomials_up_to(degree)
    cols = [pde_residual(SymbolPolynomial({m: 1})).coeffs for m in mons]
    L = [[cols[k].get(m, Fraction(0)) for k in range(len(mons))] for m in mons]
    return null_space(L, len(mons)).dim


def symbol_to_operator(P: SymbolPolynomial, D: int) -> TruncatedOperator:
    """The operator sum c x^i d^j (x to the left) as a truncated matrix."""
    columns = []
    for k in range(D + 1):
        col: dict[int, Fraction] = {}
        for (i, j), c in P.coeffs.items():
            if j <= k:
                deg = k - j + i
                col[deg] = col.get(deg, Fraction(0)) + c * Fraction(factorial(k), factorial(k - j))
        columns.append(col)
    return TruncatedOperator.from_columns(D, columns)


def symbol_crosscheck(P: SymbolPolynomial, D: int) -> CheckReport:
    """The left symbol of dPx - xPd is pde_residual of the left symbol of P."""
    res, window = membership_residual(symbol_to_operator(P, D))
    expected = symbol_to_operator(pde_residual(P), D)
    diff = res - expected
    rep = CheckReport("symbol_crosscheck", details={"D": D, "window": window})
    rep.record(diff.block_is_zero(window, window), symbol=P)
    return rep


def operator_bracket(P: TruncatedOperator, Q: TruncatedOperator, mid: TruncatedOperator) -> TruncatedOperator:
    return P @ mid @ Q - Q @ mid @ P


def expand_in_basis(R: TruncatedOperator, max_col: int) -> tuple[dict[int, Fraction], bool]:
    """Coefficients c_k with R = sum c_k e_k, read off R(1), and whether that matches on columns <= max_col.

    e_k(1) = x^k / k!!, so c_k = k!! times the x^k coefficient of R(1).
    """
    D = R.D
    col0 = R.column(0)
    coeffs = {k: col0[k] * double_factorial(k) for k in range(D + 1) if col0[k] != 0}
    recon = TruncatedOperator.zero(D)
    for k, c in coeffs.items():
        recon = recon + basis_element(k, D) * c
    return coeffs, (R - recon).block_is_zero(D, max_col)


# Sign pattern of the claimed table: +e for m odd, n even; -e for m even, n odd.
CLAIMED_SIGN_ODD_EVEN = 1


@dataclass
class TableCell:
    m: int
    n: int
    x_bracket: dict[int, Fraction]
    d_bracket: dict[int, Fraction]
    consistent: bool

    def to_json(self):
        enc = lambda c: {str(k): str(v) for k, v in sorted(c.items())}
        return {"m": self.m, "n": self.n, "x": enc(self.x_bracket), "d": enc(self.d_bracket)}


@dataclass
class CommutationTable:
    M: int
    D: int
    cells: list[TableCell]
    report: CheckReport
    verdict: CheckReport

    def cell(self, m: int, n: int) -> TableCell:
        return self.cells[m * (self.M + 1) + n]

    def to_json(self):
        return {
            "max": self.M,
            "degree": self.D,
            "cells": [c.to_json() for c in self.cells],
            "checks": self.report.to_json(),
            "sign_verdict": self.verdict.to_json(),
        }


def _single_term(coeffs: dict[int, Fraction], k: int) -> int | None:
    """+1 or -1 if coeffs is exactly +-e_k, else None."""
    if set(coeffs) == {k} and coeffs[k] in (1, -1):
        return int(coeffs[k])
    return None


def commutation_table(M: int, D: int) -> CommutationTable:
    """Both hybrid brackets of e_m, e_n for m, n <= M, with the sign pattern against the claimed table."""
    if M < 0:
        raise ValueError("M must be non-negative")
    if D < 2 * M + 2:
        raise PreconditionError(f"degree {D} too small for max {M}; need D >= {2 * M + 2}")
    e = [basis_element(k, D) for k in range(M + 1)]
    x, d = TruncatedOperator.multiply_by_x(D), TruncatedOperator.derivative(D)
    rep = CheckReport("commutation_table", details={"max": M, "degree": D})
    cells: list[TableCell] = []
    signs: dict[str, set[int]] = {"x": set(), "d": set()}
    for m in range(M + 1):
        for n in range(M + 1):
            # e_m x e_n on x^j reaches degree j+m+n+1, so columns up to D-(m+n+1) are exact
            window = D - (m + n + 1)
            cx, okx = expand_in_basis(operator_bracket(e[m], e[n], x), window)
            cd, okd = expand_in_basis(operator_bracket(e[m], e[n], d), window)
            rep.record(okx and okd, m=m, n=n, check="expressible_in_basis")
            if (m + n) % 2 == 0:
                rep.record(not cx and not cd, m=m, n=n, check="zero_when_even")
            else:
                # orient every odd cell as (odd, even) so one sign describes the table
                orient = 1 if m % 2 else -1
                sx, sd = _single_term(cx, m + n + 1), _single_term(cd, m + n - 1)
                rep.record(sx is not None, m=m, n=n, check="x_bracket_unit_shift_plus_one", coeffs=cx)
                rep.record(sd is not None, m=m, n=n, check="d_bracket_unit_shift_minus_one", coeffs=cd)
                if sx is not None:
                    signs["x"].add(sx * orient)
                if sd is not None:
                    signs["d"].add(sd * orient)
            cells.append(TableCell(m, n, cx, cd, okx and okd))
    for c in cells:
        mirror = cells[c.n * (M + 1) + c.m]
        neg = lambda t: {k: -v for k, v in t.items()}
        rep.record(
            c.x_bracket == neg(mirror.x_bracket) and c.d_bracket == neg(mirror.d_bracket),
            m=c.m, n=c.n, check="antisymmetric",
        )
    shifts_ok = all(
        _single_term(c.x_bracket, c.m + c.n + 1) is not None and _single_term(c.d_bracket, c.m + c.n - 1) is not None
        for c in cells if (c.m + c.n) % 2
    )
    verdict = sign_verdict(signs, shifts_ok)
    return CommutationTable(M, D, cells, rep, verdict)


def sign_verdict(signs: dict[str, set[int]], shifts_ok: bool = True) -> CheckReport:
    """Compare the observed (odd, even) signs and index shifts with the claimed table.

    The claimed table attaches the +1 shift to the bracket taken at d/dx and
    the -1 shift to the one taken at x, with sign +1 on (odd, even) cells.
    """
    uniform = {k: (next(iter(v)) if len(v) == 1 else None) for k, v in signs.items()}
    rep = CheckReport("example2_signs", kind="verdict")
    sign_matches = uniform["x"] == CLAIMED_SIGN_ODD_EVEN and uniform["d"] == CLAIMED_SIGN_ODD_EVEN
    rep.record(sign_matches, observed=uniform)
    observed_shift = {"x_bracket": 1, "d_bracket": -1} if shifts_ok else None
    claimed_shift = {"x_bracket": -1, "d_bracket": 1}
    shift_matches = observed_shift == claimed_shift
    rep.record(shift_matches, check="shift_assignment", observed=observed_shift, claimed=claimed_shift)
    rep.details.update(
        observed_sign_odd_even={"x_bracket": uniform["x"], "d_bracket": uniform["d"]},
        claimed_sign_odd_even=CLAIMED_SIGN_ODD_EVEN,
        observed_shift=observed_shift,
        claimed_shift=claimed_shift,
        sign_matches_claimed=sign_matches,
        shift_matches_claimed=shift_matches,
    )
    return rep
