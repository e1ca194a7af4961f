from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opair.diffop import (
    SymbolPolynomial,
    TruncatedOperator,
    basis_element,
    commutation_table,
    double_factorial,
    f_coefficient,
    membership_check,
    membership_residual,
    pde_kernel_dimension,
    pde_residual,
    symbol_crosscheck,
    symbol_to_operator,
)
from opair.errors import PreconditionError


def test_double_factorial_conventions():
    assert double_factorial(-1) == double_factorial(0) == 1
    assert [double_factorial(m) for m in range(1, 8)] == [1, 2, 3, 8, 15, 48, 105]


def test_f_values():
    assert [f_coefficient(0, j) for j in (0, 2, 4, 6)] == [1, Fraction(1, 2), Fraction(3, 8), Fraction(5, 16)]
    assert f_coefficient(1, 0) == 1 and f_coefficient(1, 2) == Fraction(1, 3)
    assert all(f_coefficient(n, 2 * k + 1) == 0 for n in range(5) for k in range(5))


def test_basis_element_action():
    e1 = basis_element(1, 6)
    assert e1.column(0)[1] == 1
    assert e1.column(2)[3] == Fraction(1, 3)
    for j in (1, 3, 5):
        assert not any(e1.column(j))
    e0 = basis_element(0, 6)
    assert [e0.action[j][j] for j in range(7)] == [1, 0, Fraction(1, 2), 0, Fraction(3, 8), 0, Fraction(5, 16)]


def test_basis_element_errors():
    with pytest.raises(ValueError):
        basis_element(-1, 4)
    with pytest.raises(PreconditionError):
        basis_element(5, 4)


def test_membership_trivial_cases():
    assert membership_check(TruncatedOperator.zero(8)).passed
    res, window = membership_residual(TruncatedOperator.identity(8))
    # dx - xd = 1 on every monomial in the exact window
    assert all(res.action[i][j] == (1 if i == j else 0) for i in range(window + 1) for j in range(window + 1))
    assert not membership_check(TruncatedOperator.identity(8)).passed


@pytest.mark.parametrize("n", range(9))
def test_basis_elements_are_members(n):
    assert membership_check(basis_element(n, 24)).passed


def test_pde_residual_small_cases():
    assert pde_residual(SymbolPolynomial()).is_zero()
    assert pde_residual(SymbolPolynomial({(0, 0): 1})) == SymbolPolynomial({(0, 0): 1})
    # x xi -> 3 x xi + 1
    assert pde_residual(SymbolPolynomial({(1, 1): 1})) == SymbolPolynomial({(1, 1): 3, (0, 0): 1})


def test_pde_has_no_polynomial_solutions():
    assert pde_kernel_dimension(10) == 0


symbols = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-5, 5), max_size=5
).map(SymbolPolynomial)


@given(symbols)
@settings(max_examples=40, deadline=None)
def test_symbol_of_membership_residual_is_pde_residual(P):
    assert symbol_crosscheck(P, 10).passed


def test_symbol_to_operator_by_hand():
    # x d on x^3 is 3 x^3; d^2 on x^3 is 6 x
    op = symbol_to_operator(SymbolPolynomial({(1, 1): 1, (0, 2): 1}), 5)
    assert op.column(3)[3] == 3 and op.column(3)[1] == 6


def test_table_fixture_cells():
    t = commutation_table(2, 12)
    assert t.cell(1, 0).x_bracket == {2: -1}
    assert t.cell(1, 0).d_bracket == {0: -1}
    assert t.cell(0, 1).x_bracket == {2: 1}
    assert t.cell(0, 0).x_bracket == {} and t.cell(0, 0).d_bracket == {}
    assert t.report.passed


def test_table_pattern_to_six():
    t = commutation_table(6, 14)
    assert t.report.passed
    for c in t.cells:
        if (c.m + c.n) % 2 == 0:
            assert not c.x_bracket and not c.d_bracket
        else:
            assert set(c.x_bracket) == {c.m + c.n + 1}
            assert set(c.d_bracket) == {c.m + c.n - 1}


def test_sign_verdict_against_claimed_table():
    v = commutation_table(3, 8).verdict
    assert v.kind == "verdict"
    assert v.details["observed_sign_odd_even"] == {"x_bracket": -1, "d_bracket": -1}
    assert v.details["observed_shift"] == {"x_bracket": 1, "d_bracket": -1}
    assert not v.details["sign_matches_claimed"]
    assert not v.details["shift_matches_claimed"]


def test_table_precondition():
    with pytest.raises(PreconditionError):
        commutation_table(3, 7)
