import pytest

from supersymbols.coeff import ALPHA, H, ONE, Coefficient
from supersymbols.contact import (
    K4_LABELS,
    S2_LABELS,
    UndefinedMode,
    UnknownLabel,
    VectorField,
    apply,
    cocycle_verify,
    contact_bracket,
    contact_field,
    divergence,
    field_to_symbol,
    k4_basis,
    k4_family,
    k4_table,
    quotient_field,
    s2_basis,
    s2_family,
    s_alpha_basis,
    s_alpha_family,
    s_alpha_member,
    vf_bracket,
    virasoro_table,
)
from supersymbols.psymbols import PSymbol, circ_h, parse_symbol, poisson_bracket
from strategies import ODD_WORDS

T = PSymbol.term


def P1(text):
    return parse_symbol(text, 1)


def test_apply_examples():
    assert apply(VectorField.build(1, t="t"), "t^3") == P1("3 t^3")
    assert apply(VectorField.build(1, x1="x1"), "x1 y1") == P1("x1 y1")
    assert apply(VectorField.build(1, x1="1"), P1("y1 x1")) == P1("-y1")


def test_vector_field_brackets():
    d_x1 = VectorField.build(1, x1="1")
    assert vf_bracket(d_x1, VectorField.build(1, t="x1")) == VectorField.build(1, t="1")
    D = VectorField.build(1, t="t^2", y1="y1")
    assert vf_bracket(D, D).is_zero()


@pytest.mark.parametrize("n", range(-3, 4))
def test_witt_relations(n):
    for m in range(-3, 4):
        assert vf_bracket(s2_basis("L", n), s2_basis("L", m)) == s2_basis("L", n + m).scale(n - m)


def test_divergence_examples():
    assert divergence(VectorField.build(1, t="t")) == P1("1")
    assert divergence(VectorField.build(1, x1="x1")) == P1("-1")
    for n in range(-3, 4):
        assert divergence(s2_basis("L", n)).is_zero()


def test_divergence_free_family():
    for label in S2_LABELS:
        for n in range(-3, 4):
            assert s_alpha_member(s2_basis(label, n), 0)
    assert not s_alpha_member(VectorField.build(1, t="t"), 1)


def test_quotient_element():
    q = quotient_field(1)
    assert q == VectorField.build(1, t="x1 y1")
    # t^-alpha x1 y1 d_t lies in S(2, alpha) for formal alpha
    assert s_alpha_member(q, ALPHA, t_shift=-ALPHA)
    fam = s2_family()
    fam.check_closure(3)
    for n in range(-6, 7):
        assert not fam.span(n).contains(q.vector())


def test_contact_field_examples():
    assert contact_field("1") == VectorField.build(2, t="2")
    assert contact_field("x1") == VectorField.build(2, t="x1", y1="-1")
    assert contact_field("t") == VectorField.build(2, t="2 t", x1="x1", x2="x2", y1="y1", y2="y2")


def test_contact_bracket_examples():
    assert contact_bracket("t^2", "t") == parse_symbol("-2 t^2")
    assert contact_bracket("x1", "y1") == parse_symbol("-1")
    assert contact_bracket("t", "t").is_zero()


def test_contact_fields_form_a_representation():
    mons = [parse_symbol(f"t^{a} {w}".strip()) for a in range(-3, 4) for w in ODD_WORDS]
    fields = [contact_field(f) for f in mons]
    for f, Df in zip(mons, fields):
        for g, Dg in zip(mons, fields):
            assert vf_bracket(Df, Dg) == contact_field(contact_bracket(f, g))


def test_s2_basis_examples():
    for n in (-2, 0, 3):
        assert s2_basis("E", n) == VectorField.build(1, x1=T(1, t=n, odd="y1", n=1))
        assert s2_basis("p", n) == VectorField.build(1, y1=T(1, t=n + 1, n=1))
    assert s2_basis("h", 0) == VectorField.build(1, t="y1")
    with pytest.raises(UnknownLabel):
        s2_basis("Z", 0)


def test_symbol_map_of_first_order_fields_is_a_homomorphism():
    for a in S2_LABELS:
        for b in S2_LABELS:
            for n in range(-2, 3):
                for k in range(-2, 3):
                    A, B = s2_basis(a, n), s2_basis(b, k)
                    assert field_to_symbol(vf_bracket(A, B)) == poisson_bracket(field_to_symbol(A), field_to_symbol(B))


def test_s_alpha_examples():
    n = 2
    d1 = T(1, t=n, tau=1, odd="x1") + T(ALPHA + n, t=n - 1, odd="x1 x2 y2")
    assert s_alpha_basis(1, "D1", n) == d1
    h1 = T(1, t=n + 1, tau=1)
    h2 = T(1, t=n, odd="x1 y1") + T(1, t=n, odd="x2 y2")
    assert s_alpha_basis(1, "L", n) == h1 + h2.scale((ALPHA + n + 1) / 2)
    half = (ALPHA + n + 1) / 2
    deformed = h1 + T(half, t=n, odd="y1 x1", h=H) + T(half, t=n, odd="y2 x2", h=H)
    assert s_alpha_basis(2, "L", n, h_deformed=True) == deformed
    assert deformed.coefficient(t=n, tau=0, odd=0) == 2 * half * H


@pytest.mark.parametrize("copy", [1, 2])
def test_s_alpha_copies_close(copy):
    assert s_alpha_family(copy).check_closure(3) > 0


def test_deformed_second_copy_closes():
    assert s_alpha_family(2, h_deformed=True).check_closure(2) > 0


def test_k4_examples():
    for n in (-1, 0, 2):
        assert k4_basis("L", n) == T(1, t=n + 1, tau=1)
    n = 2
    inner = T(1, t=n - 1, odd="y1 y2 x1 x2", h=H)
    assert k4_basis("G3", n, "formal") == circ_h(T(1, tau=-1), inner).scale(n) + T(H, t=n)
    assert k4_basis("G3", 0, "formal") == PSymbol.scalar(H)
    with pytest.raises(UndefinedMode):
        k4_basis("G3", 0)
    with pytest.raises(UnknownLabel):
        k4_basis("G4", 1)


def test_k4_closure_small_range():
    assert k4_family().check_closure(2) == 16 * 16 * 25 - 2 * 16 * 5 + 1


def test_cocycle_tables():
    assert cocycle_verify(virasoro_table(), s2_family(), 3) == []
    assert cocycle_verify(k4_table(), k4_family(), 3) == []


def test_perturbed_cocycles_fail():
    assert cocycle_verify(virasoro_table(perturbed=True), s2_family(), 3)
    assert cocycle_verify(k4_table(perturbed=True), k4_family(), 3)


def test_cocycle_table_is_skew():
    table = k4_table()
    assert table.value("G3", -2, "L", 2) == -table.value("L", 2, "G3", -2)
    assert table.value("G2", -1, "X1", 1) == table.value("X1", 1, "G2", -1)
    assert table.value("L", 2, "G3", -2) == Coefficient(-2)
