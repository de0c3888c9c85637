import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supersymbols.coeff import ALPHA, Coefficient
from supersymbols.contact import K4_LABELS, UnknownLabel, k4_family, k4_table
from supersymbols.weyl import (
    GAMMA_LABELS,
    ShapeViolation,
    W,
    WeylElement,
    WeylSuperMatrix,
    embed_I,
    embed_J,
    gamma_from_embedding,
    gamma_matrix,
    grading_component,
    supermatrix_bracket,
    weyl_mul,
)


def test_normal_ordering_examples():
    assert weyl_mul(W("d"), W("t")) == W("t d + t")
    assert str(weyl_mul(W("d"), W("t"))) == "t d + t"
    assert weyl_mul(W("d"), W("t^-1")) == W("t^-1 d - t^-1")
    assert weyl_mul(W("d^2"), W("t")) == W("t d^2 + 2 t d + t")


@pytest.mark.parametrize("n", range(-6, 7))
def test_commutation_with_powers_of_t(n):
    tn = WeylElement.monomial(1, t=n)
    d = WeylElement.monomial(1, d=1)
    assert weyl_mul(d, tn) - weyl_mul(tn, d) == tn.scale(n)


weyl_elements = st.dictionaries(
    st.tuples(st.integers(-3, 3), st.integers(0, 2)), st.integers(-3, 3), max_size=3
).map(lambda d: WeylElement({k: Coefficient(v) for k, v in d.items()}))


@settings(max_examples=80, deadline=None)
@given(weyl_elements, weyl_elements, weyl_elements)
def test_weyl_product_is_associative(x, y, z):
    assert weyl_mul(weyl_mul(x, y), z) == weyl_mul(x, weyl_mul(y, z))


def test_supermatrix_bracket_examples():
    r = supermatrix_bracket(embed_I("R12", 0), embed_I("R21", 0))
    assert r == embed_I("R11", 0) - embed_I("R22", 0)
    one = embed_I("G3", 0)
    for label in K4_LABELS:
        assert supermatrix_bracket(one, embed_I(label, 2)).is_zero()
    y = embed_I("Y1", 1)
    assert supermatrix_bracket(y, y) == (y @ y).scale(2)


def test_embedding_examples():
    n = 3
    assert embed_I("G3", n) == WeylSuperMatrix.diag(*[WeylElement.monomial(1, t=n)] * 4)
    tn_d = WeylElement.monomial(1, t=n, d=1)
    d_tn = weyl_mul(WeylElement.monomial(1, d=1), WeylElement.monomial(1, t=n))
    assert embed_I("L", n) == WeylSuperMatrix.diag(d_tn, tn_d, tn_d, tn_d)
    q = embed_I("Q", n)
    assert q.entries == {(1, 0): WeylElement.monomial(1, t=n)}
    with pytest.raises(UnknownLabel):
        embed_I("G7", 0)


def test_second_embedding_examples():
    n = 2
    assert embed_J("G0", n) == embed_I("Q", n)
    want = embed_I("L", n) - embed_I("G3", n).scale(n) + embed_I("R11", n).scale(n) + embed_I("R22", n).scale(n)
    assert embed_J("L", n) == want
    assert embed_J("G3", n) == embed_I("G3", n)


def test_first_embedding_with_central_term_small_range():
    fam, table = k4_family(), k4_table()
    one = WeylSuperMatrix.identity()
    for a in K4_LABELS:
        for b in K4_LABELS:
            for n in range(-1, 2):
                for k in range(-1, 2):
                    lhs = supermatrix_bracket(embed_I(a, n), embed_I(b, k))
                    if a in fam.labels_at(n) and b in fam.labels_at(k):
                        rhs = one.scale(table.value(a, n, b, k))
                        for lab, c in fam.bracket(a, n, b, k).items():
                            rhs = rhs + embed_I(lab, n + k).scale(c)
                    else:
                        rhs = WeylSuperMatrix()
                    assert lhs == rhs, (a, n, b, k)


def test_gamma_matrix_examples():
    d = WeylElement.monomial(1, d=1) + WeylElement.scalar((1 + ALPHA) / 2)
    assert gamma_matrix("H1") == WeylSuperMatrix.diag(d, d, d, d)
    assert gamma_matrix("T1") == embed_I("Y1", 1)
    assert gamma_matrix("F2") == embed_I("G0", 0)


@pytest.mark.parametrize("label", GAMMA_LABELS)
def test_gamma_matrices_match_embedding_combinations(label):
    assert gamma_matrix(label) == gamma_from_embedding(label)


def test_degree_zero_shape():
    assert grading_component(embed_I("R12", 0))
    v = grading_component(embed_I("Y1", 0))
    assert v.C and v.C_tilde
    assert grading_component(embed_I("L", 0)).kappa == Coefficient(1)
    bad = WeylSuperMatrix.diag(WeylElement.scalar(1), WeylElement.scalar(0),
                               WeylElement.scalar(0), WeylElement.scalar(0))
    with pytest.raises(ShapeViolation):
        grading_component(bad)
