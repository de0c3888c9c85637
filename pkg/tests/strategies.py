"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from supersymbols.coeff import ALPHA, H, OMEGA, Coefficient
from supersymbols.psymbols import PSymbol

small = st.integers(-4, 4)


@st.composite
def coefficients(draw, allow_denominator=True):
    c = Coefficient(0)
    for _ in range(draw(st.integers(1, 3))):
        k = draw(small)
        term = Coefficient(k) * ALPHA ** draw(st.integers(0, 2)) * H ** draw(st.integers(0, 1))
        if draw(st.booleans()):
            term = term * OMEGA
        c = c + term
    if allow_denominator and draw(st.booleans()):
        c = c / (ALPHA + draw(st.integers(1, 3)))
    return c


nonzero_coefficients = coefficients().filter(lambda c: not c.is_zero())

ODD_WORDS = ["", "x1", "x2", "y1", "y2", "x1 x2", "x1 y1", "x1 y2", "x2 y1", "x2 y2", "y1 y2",
             "x1 x2 y1", "x1 x2 y2", "x1 y1 y2", "x2 y1 y2", "x1 x2 y1 y2"]


@st.composite
def symbols(draw, parity=None, tau_min=0, max_terms=3, coeffs=None):
    """A homogeneous exact PSymbol with small exponents."""
    par = draw(st.sampled_from([0, 1])) if parity is None else parity
    words = [w for w in ODD_WORDS if len(w.split()) % 2 == par]
    out = PSymbol.zero()
    for _ in range(draw(st.integers(1, max_terms))):
        c = draw(coeffs) if coeffs is not None else draw(st.integers(-3, 3).filter(bool))
        out = out + PSymbol.term(c, t=draw(st.integers(-2, 3)), tau=draw(st.integers(tau_min, 2)),
                                 odd=draw(st.sampled_from(words)))
    return out
