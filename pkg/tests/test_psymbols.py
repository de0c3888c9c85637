import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supersymbols.coeff import ALPHA, H, ZERO
from supersymbols.psymbols import (
    MixedParity,
    PSymbol,
    TruncatedOperand,
    circ_h,
    contraction_first_order,
    normalized_bracket_h,
    parse_symbol,
    poisson_bracket,
    product,
    super_commutator_h,
)
from strategies import symbols

P = parse_symbol


def test_parity():
    assert P("t y1").parity() == "odd"
    assert P("tau^2").parity() == "even"
    assert P("t + x1").parity() == "mixed"


def test_poisson_examples():
    assert poisson_bracket(P("t y1"), P("t x1")) == P("t^2")
    assert poisson_bracket(P("t^2"), P("t^2")).is_zero()
    assert poisson_bracket(P("tau^2"), P("t^2")) == P("4 t tau")


def test_poisson_rejects_mixed_and_truncated():
    with pytest.raises(MixedParity):
        poisson_bracket(P("t + x1"), P("t"))
    truncated = circ_h(P("tau^-1"), P("t^-1"))
    assert not truncated.exact
    with pytest.raises(TruncatedOperand):
        poisson_bracket(truncated, P("t"))


def test_circ_h_examples():
    assert circ_h(P("tau"), P("t")) == P("t tau + h")
    assert circ_h(P("t"), P("tau")) == P("t tau")
    inv = circ_h(P("tau^-1"), P("t"))
    assert inv.exact
    assert inv == P("t tau^-1 - h tau^-2")


def test_truncated_series_marker():
    x = circ_h(P("tau^-1"), P("t^-1"), cutoff=-6)
    assert x.floor == -6
    assert str(x).endswith("+ O(tau^-7)")
    # tau^-1 o t^-1 = sum_k k! h^k t^(-1-k) tau^(-1-k)
    assert x.coefficient(t=-3, tau=-3) == 2 * H**2
    assert x.coefficient(t=-6, tau=-6) == 120 * H**5


def test_deformed_commutator_examples():
    assert super_commutator_h(P("tau"), P("t")) == P("h")
    assert super_commutator_h(P("x1"), P("y1")) == P("h")
    assert super_commutator_h(P("t"), P("t")).is_zero()


def test_contraction_examples():
    v = contraction_first_order(P("tau^2"), P("t^2"))
    assert v.passed
    assert v.bracket_h == PSymbol.term(4 * H, t=1, tau=1) + PSymbol.scalar(2 * H**2)
    assert contraction_first_order(P("t"), P("t^2")).passed
    w = contraction_first_order(P("t y1"), P("t x1"))
    assert w.passed and w.poisson == P("t^2")


def test_contraction_rejects_h_dependent_operands():
    with pytest.raises(ValueError):
        contraction_first_order(P("h t"), P("t"))


def test_printing_round_trips_through_the_grammar():
    for text in ["t y1", "-2 t^-3 tau^-1 x1 x2 y1 y2", "alpha t^2 + tau", "(1/2) w x1 y2"]:
        x = P(text)
        assert P(str(x)) == x


def test_print_order_is_lexicographic():
    assert str(P("tau + t + x1 y1")) == "x1 y1 + tau + t"


@settings(max_examples=60, deadline=None)
@given(symbols(), symbols())
def test_super_skew_symmetry(a, b):
    sign = -1 if a.p() and b.p() else 1
    assert poisson_bracket(a, b) == -poisson_bracket(b, a).scale(sign)


@settings(max_examples=40, deadline=None)
@given(symbols(max_terms=2), symbols(max_terms=2), symbols(max_terms=2))
def test_super_jacobi(a, b, c):
    pa, pb, pc = a.p(), b.p(), c.p()
    s = lambda x, y: -1 if x and y else 1
    total = (poisson_bracket(a, poisson_bracket(b, c)).scale(s(pa, pc))
             + poisson_bracket(b, poisson_bracket(c, a)).scale(s(pb, pa))
             + poisson_bracket(c, poisson_bracket(a, b)).scale(s(pc, pb)))
    assert total.is_zero()


@settings(max_examples=40, deadline=None)
@given(symbols(max_terms=2), symbols(max_terms=2), symbols(max_terms=2))
def test_super_leibniz(a, b, c):
    lhs = poisson_bracket(a, product(b, c))
    second = product(b, poisson_bracket(a, c))
    rhs = product(poisson_bracket(a, b), c) + second.scale(-1 if a.p() and b.p() else 1)
    assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(symbols(max_terms=2), symbols(max_terms=2), symbols(max_terms=2))
def test_deformed_product_is_associative_on_polynomial_operands(a, b, c):
    left = circ_h(circ_h(a, b), c)
    right = circ_h(a, circ_h(b, c))
    assert left.exact and right.exact
    assert left == right


@settings(max_examples=30, deadline=None)
@given(symbols(max_terms=2), symbols(max_terms=2))
def test_contraction_on_random_pairs(a, b):
    assert contraction_first_order(a, b).passed


@settings(max_examples=20, deadline=None)
@given(symbols(max_terms=2, tau_min=-1), symbols(max_terms=2, tau_min=-1))
def test_normalized_bracket_limits_to_poisson(a, b):
    lim = normalized_bracket_h(a, b).evaluate({"h": 0})
    pb = poisson_bracket(a, b)
    assert lim.agrees(pb)
