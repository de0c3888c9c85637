from hypothesis import given, settings
from hypothesis import strategies as st

from supersymbols.coeff import H, ZERO, Coefficient
from supersymbols.grassmann import LambdaElement, lambda_h_mul, monomial_mul, odd_derivative

GEN = LambdaElement.generator
X1, X2, Y1, Y2 = 0b0001, 0b0010, 0b0100, 0b1000


def lam(terms):
    return LambdaElement({m: Coefficient.coerce(c) for m, c in terms.items()})


def test_monomial_products():
    assert monomial_mul(X1, X2) == (1, X1 | X2)
    assert monomial_mul(X2, X1) == (-1, X1 | X2)
    assert monomial_mul(X1, X1) is None


def test_deformed_relation_same_index():
    assert lambda_h_mul(GEN("y1"), GEN("x1")) == lam({0: H, X1 | Y1: -1})


def test_deformed_relation_different_index():
    assert lambda_h_mul(GEN("y1"), GEN("x2")) == lam({X2 | Y1: -1})


def test_deformed_square_of_pair():
    p = lam({X1 | Y1: 1})
    assert lambda_h_mul(p, p) == lam({X1 | Y1: H})


def test_word_normal_form():
    assert LambdaElement.word("y1 y2 x1") == lam({X1 | Y1 | Y2: 1, Y2: -H})


def test_left_derivatives():
    x1x2 = lam({X1 | X2: 1})
    assert odd_derivative("x1", x1x2) == lam({X2: 1})
    assert odd_derivative("x2", x1x2) == lam({X1: -1})
    assert odd_derivative("y1", GEN("x1")).is_zero()


elements = st.dictionaries(st.integers(0, 15), st.integers(-3, 3), max_size=5).map(lam)


@st.composite
def homogeneous(draw):
    par = draw(st.integers(0, 1))
    masks = [m for m in range(16) if bin(m).count("1") % 2 == par]
    terms = draw(st.dictionaries(st.sampled_from(masks), st.integers(-3, 3), min_size=1, max_size=4))
    return lam(terms), par


@settings(max_examples=80, deadline=None)
@given(elements, elements, elements)
def test_deformed_product_is_associative(x, y, z):
    assert lambda_h_mul(lambda_h_mul(x, y), z) == lambda_h_mul(x, lambda_h_mul(y, z))


@settings(max_examples=80, deadline=None)
@given(homogeneous(), elements, st.sampled_from(["x1", "x2", "y1", "y2"]))
def test_super_leibniz(xp, y, v):
    x, p = xp
    lhs = odd_derivative(v, lambda_h_mul(x, y, ZERO))
    rhs = lambda_h_mul(odd_derivative(v, x), y, ZERO)
    second = lambda_h_mul(x, odd_derivative(v, y), ZERO)
    rhs = rhs - second if p else rhs + second
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(elements, st.sampled_from(["x1", "x2", "y1", "y2"]), st.sampled_from(["x1", "x2", "y1", "y2"]))
def test_odd_derivatives_anticommute(x, u, v):
    a = odd_derivative(u, odd_derivative(v, x))
    b = odd_derivative(v, odd_derivative(u, x))
    assert (a + b).is_zero()


def test_h_zero_recovers_grassmann_product():
    for m1 in range(16):
        for m2 in range(16):
            got = lambda_h_mul(lam({m1: 1}), lam({m2: 1}), ZERO)
            res = monomial_mul(m1, m2)
            want = lam({}) if res is None else lam({res[1]: res[0]})
            assert got == want
