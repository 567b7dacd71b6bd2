from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bettistab.errors import InputError
from bettistab.exact_arith import (
    RationalFunctionFit,
    binom,
    fit_polynomial,
    fit_rational_function,
    format_rational,
    matrix_rank,
    parse_rational,
    poly_eval,
    poly_gcd,
    poly_mul,
    solve_exact,
)

small_fractions = st.fractions(
    min_value=-20, max_value=20, max_denominator=12
)


def test_binom_examples():
    assert binom(5, 2) == 10
    assert binom(2, 4) == 0
    assert binom(-1, 0) == 1
    assert binom(6, 4) == 15
    assert binom(-3, 2) == 0
    assert binom(7, -1) == 0


@given(st.integers(min_value=1, max_value=60), st.integers(min_value=1, max_value=60))
def test_binom_pascal_identity(a, b):
    assert binom(a, b) == binom(a - 1, b) + binom(a - 1, b - 1)


def test_solve_identity():
    x, null = solve_exact([[1, 0], [0, 1]], [3, 4])
    assert x == [3, 4]
    assert null == []


def test_solve_underdetermined():
    x, null = solve_exact([[1, 1]], [1])
    assert x == [1, 0]
    assert len(null) == 1
    v = null[0]
    # spans {(1, -1)}
    assert v[0] * Fraction(-1) == v[1] * Fraction(1)
    assert v[0] + v[1] == 0 and v != [0, 0]


def test_solve_inconsistent():
    x, null = solve_exact([[1], [1]], [1, 2])
    assert x is None
    assert null == []


def _naive_rank(matrix):
    # plain Fraction elimination, independent of the fraction-free code path
    rows = [[Fraction(x) for x in row] for row in matrix]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda m: st.integers(min_value=1, max_value=4).flatmap(
        lambda n: st.lists(
            st.lists(small_fractions, min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
)


@given(matrices, st.data())
@settings(max_examples=120, deadline=None)
def test_solve_exactness_properties(matrix, data):
    m, n = len(matrix), len(matrix[0])
    rhs = data.draw(st.lists(small_fractions, min_size=m, max_size=m))
    x, null = solve_exact(matrix, rhs)
    rank = matrix_rank(matrix)
    assert rank == _naive_rank(matrix)
    assert len(null) == n - rank
    for v in null:
        assert all(
            sum(row[j] * v[j] for j in range(n)) == 0 for row in matrix
        )
    if x is not None:
        for row, b in zip(matrix, rhs):
            assert sum(Fraction(row[j]) * x[j] for j in range(n)) == Fraction(b)
    else:
        # inconsistency witnessed: augmented rank exceeds rank
        assert _naive_rank([list(r) + [b] for r, b in zip(matrix, rhs)]) == rank + 1


@given(small_fractions, small_fractions)
def test_field_operations_are_exact(a, b):
    assert (a + b) - b == a
    if b != 0:
        assert (a * b) / b == a


def test_fit_recovers_rational_coordinate():
    samples = [(k, Fraction(k + 2, 2 * k + 3)) for k in range(4, 10)]
    fit = fit_rational_function(samples, 1, 1)
    assert fit == RationalFunctionFit((2, 1), (3, 2))
    assert fit.evaluate(31) == Fraction(33, 65)


def test_fit_constant():
    samples = [(k, Fraction(1, 3)) for k in range(1, 5)]
    assert fit_rational_function(samples, 0, 0) == RationalFunctionFit((1,), (3,))


def test_fit_square():
    samples = [(k, Fraction(k * k)) for k in range(6)]
    assert fit_rational_function(samples, 2, 0) == RationalFunctionFit((0, 0, 1), (1,))


def test_fit_duplicate_abscissae():
    with pytest.raises(InputError):
        fit_rational_function([(1, Fraction(1)), (1, Fraction(2))], 0, 0)


def test_fit_too_few_samples():
    with pytest.raises(InputError):
        fit_rational_function([(1, Fraction(1))], 1, 1)


def test_fit_polynomial_linear():
    samples = [(k, Fraction(2 * k + 1)) for k in range(1, 5)]
    assert fit_polynomial(samples, 1) == RationalFunctionFit((1, 2), (1,))


def test_fit_polynomial_binomial_expansion():
    # C(k+4,4) = (k+1)(k+2)(k+3)(k+4)/24
    samples = [(k, Fraction(binom(k + 4, 4))) for k in range(4, 10)]
    fit = fit_polynomial(samples, 4)
    assert fit == RationalFunctionFit((24, 50, 35, 10, 1), (24,))
    expanded = (1,)
    for r in (1, 2, 3, 4):
        expanded = poly_mul(expanded, (r, 1))
    assert fit.numerator == expanded


def test_fit_polynomial_rejects_exponential():
    samples = [(k, Fraction(2**k)) for k in range(6)]
    assert fit_polynomial(samples, 3) is None


def test_fit_zero_function():
    samples = [(k, Fraction(0)) for k in range(5)]
    fit = fit_rational_function(samples, 2, 1)
    assert fit == RationalFunctionFit((), (1,))
    assert fit.is_zero()


def test_unattainable_point_returns_none():
    # data from (k-1)/(k-1) with a hole: value differs at the hole
    samples = [(k, Fraction(1)) for k in range(2, 6)] + [(1, Fraction(5))]
    assert fit_rational_function(samples, 1, 1) is None


polys = st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=3)


@given(polys, polys, st.integers(min_value=0, max_value=30))
@settings(max_examples=100, deadline=None)
def test_fit_round_trip(num, den, hold):
    if not any(den):
        den = [1]
    dn, dd = len(num) - 1, len(den) - 1
    ks = [k for k in range(dn + dd + 2) if poly_eval(den, k) != 0]
    if len(ks) < dn + dd + 2:
        ks += [k for k in range(dn + dd + 2, 3 * (dn + dd) + 20) if poly_eval(den, k) != 0]
        ks = ks[: dn + dd + 2]
    samples = [(k, poly_eval(num, k) / poly_eval(den, k)) for k in ks]
    fit = fit_rational_function(samples, dn, dd)
    assert fit is not None
    if poly_eval(den, hold) != 0:
        assert fit.evaluate(hold) == poly_eval(num, hold) / poly_eval(den, hold)


@given(polys, polys)
def test_poly_gcd_divides(p, q):
    g = poly_gcd(p, q)
    if g:
        from bettistab.exact_arith import poly_divmod

        for target in (p, q):
            quot, rem = poly_divmod(target, g)
            assert rem == ()


def test_rational_serialization():
    assert format_rational(Fraction(3, 4)) == "3/4"
    assert format_rational(Fraction(5)) == "5"
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-7") == Fraction(-7)
    with pytest.raises(InputError):
        parse_rational("1/0")
    with pytest.raises(InputError):
        parse_rational("abc")


def test_fit_canonical_form():
    # denominator leading coefficient forced positive, joint content 1
    fit = RationalFunctionFit.make([Fraction(2), Fraction(4)], [Fraction(-2)])
    assert fit == RationalFunctionFit((-1, -2), (1,))
