import pytest

from supersymbols.coeff import MU, ZERO, Coefficient
from supersymbols.contact import K4_LABELS
from supersymbols.vspace import (
    BASIS_ORDER,
    M_INDEX,
    VVector,
    action_table,
    derived_matrix,
    field_action,
    matrix_action,
    rep_action,
    table_matrix,
)
from supersymbols.weyl import embed_I, embed_J

V = VVector.basis


def test_tabulated_examples():
    n, m = 2, 1
    assert rep_action("L", n, V(0, m), MU) == V(0, m + n).scale(n + m + MU)
    assert rep_action("G0", n, V(3, m), MU) == V(0, m + n).scale(-1)
    assert rep_action("R11", n, V(2, m), MU) == VVector()


def test_index_twelve_is_index_three():
    assert V(12, 4) == V(3, 4)
    assert rep_action("G0", 1, V("12", 0)) == V(0, 1).scale(-1)


@pytest.mark.parametrize("label", K4_LABELS)
def test_table_matches_operator_action_symbolically(label):
    for n in range(-3, 4):
        for s in BASIS_ORDER:
            got = action_table(label, n, s, M_INDEX, MU)
            want = field_action(label, n, s, M_INDEX + MU)
            for key in set(got) | set(want):
                assert got.get(key, ZERO) == want.get(key, ZERO), (label, n, s, key)


@pytest.mark.parametrize("label", K4_LABELS)
def test_matrices_from_both_routes(label):
    for n in range(-3, 4):
        assert table_matrix(label, n) == embed_I(label, n)
        assert derived_matrix(label, n, "i") == embed_I(label, n)
        assert derived_matrix(label, n, "j") == embed_J(label, n)


@pytest.mark.parametrize("label", K4_LABELS)
def test_matrix_action_on_a_window(label):
    for n in range(-3, 4):
        M = embed_I(label, n)
        for s in BASIS_ORDER:
            for m in range(-4, 5):
                got = rep_action(label, n, V(s, m))
                want = VVector({(t, m + k): c for (t, k), c in matrix_action(M, s, m).items()})
                assert got == want


def test_central_element_acts_as_identity():
    v = V(0, 2) + V(1, -1).scale(Coefficient(3)) + V(3, 0)
    assert rep_action("G3", 0, v) == v
