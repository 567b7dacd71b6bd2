import pytest

from bettistab.diagram import column_sums, validate_cyclic
from bettistab.errors import InputError
from bettistab.exact_arith import binom
from bettistab.koszul_oracle import betti_oracle
from bettistab.path_formula import (
    path_betti,
    path_diagram,
    path_family_size,
    path_ideal,
)


def test_path_betti_values():
    assert path_betti(6, 2, 1, 4) == 15  # C(k+4,4) at k=2
    assert path_betti(6, 2, 2, 6) == 8  # k(k+2) at k=2
    assert path_betti(6, 4, 5, 12) == 1  # C(k,4) at k=4
    assert path_betti(4, 1, 2, 3) == 2
    assert path_betti(6, 1, 0, 0) == 1
    assert path_betti(6, 3, 0, 5) == 0


def test_path_betti_rejects_bad_parameters():
    with pytest.raises(InputError):
        path_betti(1, 1, 0, 0)
    with pytest.raises(InputError):
        path_betti(4, 0, 0, 0)
    with pytest.raises(InputError):
        path_betti(4, 1, -1, 0)


def test_path_diagram_small_cases():
    assert dict(path_diagram(4, 1).items()) == {(0, 0): 1, (1, 2): 3, (2, 3): 2}
    assert dict(path_diagram(2, 3).items()) == {(0, 0): 1, (1, 6): 1}


def test_path_diagram_matches_oracle_small():
    assert path_diagram(4, 1) == betti_oracle(path_ideal(4))


def test_six_variable_support_shape():
    # nonzero support lies in display rows {0, 2k-1, 2k} only
    for k in range(1, 7):
        diagram = path_diagram(6, k)
        rows = {j - i for (i, j) in diagram.support()}
        assert rows <= {0, 2 * k - 1, 2 * k}
        assert validate_cyclic(diagram)


def test_six_variable_closed_entries():
    for k in range(1, 7):
        diagram = path_diagram(6, k)
        expected = {(0, 0): 1}
        table = {
            (1, 2 * k): binom(k + 4, 4),
            (2, 2 * k + 1): 4 * binom(k + 3, 4),
            (3, 2 * k + 2): 6 * binom(k + 2, 4),
            (4, 2 * k + 3): 4 * binom(k + 1, 4),
            (5, 2 * k + 4): binom(k, 4),
            (2, 2 * k + 2): k * (k + 2),
            (3, 2 * k + 3): 2 * k * (k + 1),
            (4, 2 * k + 4): k * k,
        }
        expected.update({pos: v for pos, v in table.items() if v})
        assert dict(diagram.items()) == expected


def test_alternating_column_sums_vanish():
    for n, k in [(2, 1), (3, 2), (4, 1), (5, 1), (6, 1), (6, 4)]:
        sums = column_sums(path_diagram(n, k))
        assert sum((-1) ** i * s for i, s in enumerate(sums)) == 0


def test_path_family_detection():
    assert path_family_size(path_ideal(6)) == 6
    assert path_family_size(path_ideal(2)) == 2
    from bettistab.monomial_ideal import make_ideal

    assert path_family_size(make_ideal(2, [(1, 1), (2, 0)])) is None


def test_path_ideal_requires_two_vertices():
    with pytest.raises(InputError):
        path_ideal(1)
