import pytest
from hypothesis import given, settings, strategies as st

from bettistab.errors import InputError
from bettistab.monomial_ideal import (
    MonomialIdeal,
    is_equigenerated,
    make_ideal,
    monomial_divides,
    monomial_to_str,
    parse_ideal,
    power,
)
from bettistab.path_formula import path_ideal


def test_parse_basic():
    ideal = parse_ideal("x1*x2, x2*x3", 3)
    assert ideal.generators == ((0, 1, 1), (1, 1, 0))


def test_parse_minimalizes():
    ideal = parse_ideal("x1^2, x1*x2, x1^3", 2)
    assert ideal.generators == ((1, 1), (2, 0))


def test_parse_path_family():
    assert parse_ideal("x1*x2, x2*x3, x3*x4, x4*x5, x5*x6", 6) == path_ideal(6)


def test_parse_errors():
    with pytest.raises(InputError):
        parse_ideal("x1*x4", 3)
    with pytest.raises(InputError):
        parse_ideal("", 3)
    with pytest.raises(InputError):
        parse_ideal("x1*y2", 3)
    with pytest.raises(InputError):
        parse_ideal("x1^0", 3)


def test_power_of_two_generator_path():
    squared = power(parse_ideal("x1*x2, x2*x3", 3), 2)
    assert squared.generators == ((0, 2, 2), (1, 2, 1), (2, 2, 0))


def test_power_identity():
    ideal = path_ideal(5)
    assert power(ideal, 1) is ideal


def test_power_p4_squared():
    squared = power(path_ideal(4), 2)
    expected = {
        (2, 2, 0, 0),
        (1, 2, 1, 0),
        (1, 1, 1, 1),
        (0, 2, 2, 0),
        (0, 1, 2, 1),
        (0, 0, 2, 2),
    }
    assert set(squared.generators) == expected
    assert len(squared.generators) == 6


def test_power_rejects_zero():
    with pytest.raises(InputError):
        power(path_ideal(3), 0)


def test_is_equigenerated():
    assert is_equigenerated(path_ideal(6)) == (True, 2)
    assert is_equigenerated(make_ideal(2, [(1, 0), (0, 2)])) == (False, None)
    assert is_equigenerated(make_ideal(2, [(2, 2)])) == (True, 4)


def test_invalid_ideals():
    with pytest.raises(InputError):
        make_ideal(2, [])
    with pytest.raises(InputError):
        make_ideal(2, [(0, 0)])
    with pytest.raises(InputError):
        make_ideal(2, [(1, 0, 0)])
    with pytest.raises(InputError):
        MonomialIdeal(2, ((1, 1), (1, 0)))  # not minimal/sorted


def test_json_round_trip():
    ideal = power(path_ideal(4), 2)
    assert MonomialIdeal.from_json_dict(ideal.to_json_dict()) == ideal


def test_monomial_to_str():
    assert monomial_to_str((2, 0, 1)) == "x1^2*x3"
    assert monomial_to_str((0, 0)) == "1"


small_ideals = st.builds(
    lambda nv, gens: make_ideal(nv, [g[:nv] for g in gens]),
    st.integers(min_value=2, max_value=4),
    st.lists(
        st.tuples(*(st.integers(min_value=0, max_value=3) for _ in range(4))).filter(
            lambda g: any(g)
        ),
        min_size=1,
        max_size=4,
    ).filter(lambda gens: all(any(g[:2]) for g in gens)),
)


@given(small_ideals)
@settings(max_examples=60, deadline=None)
def test_minimalization_canonical(ideal):
    rebuilt = make_ideal(ideal.num_vars, list(ideal.generators) + [ideal.generators[0]])
    assert rebuilt == ideal
    gens = ideal.generators
    assert list(gens) == sorted(gens)
    for g in gens:
        assert not any(h != g and monomial_divides(h, g) for h in gens)


@given(small_ideals, st.integers(min_value=1, max_value=2), st.integers(min_value=1, max_value=2))
@settings(max_examples=30, deadline=None)
def test_power_additivity_by_divisibility(ideal, a, b):
    pa, pb, pab = power(ideal, a), power(ideal, b), power(ideal, a + b)
    for g in pab.generators:
        assert any(
            monomial_divides(tuple(x + y for x, y in zip(g1, g2)), g)
            for g1 in pa.generators
            for g2 in pb.generators
        )


@given(st.integers(min_value=2, max_value=6), st.integers(min_value=1, max_value=3))
def test_equigenerated_power_degree(n, k):
    ideal = path_ideal(n)
    ok, degree = is_equigenerated(power(ideal, k))
    assert ok and degree == 2 * k
