from supersymbols.coeff import ALPHA, ONE, ZERO, Coefficient
from supersymbols.linalg import SpanBasis, combine, kernel, rank


def v(**kw):
    return {k: Coefficient.coerce(c) for k, c in kw.items()}


def test_membership_and_coordinates():
    span = SpanBasis()
    assert span.add(v(a=1, b=2), "p")
    assert span.add(v(b=1, c=ALPHA), "q")
    assert not span.add(v(a=1, b=3, c=ALPHA), "r")
    combo = span.express(v(a=2, b=5, c=ALPHA))
    assert combo == {"p": Coefficient(2), "q": ONE}
    assert span.express(v(c=1)) is None
    assert span.dim == 2


def test_kernel_and_rank():
    vecs = [v(a=1), v(b=ALPHA), v(a=2, b=ALPHA)]
    assert rank(vecs) == 2
    (rel,) = kernel(vecs)
    assert combine(vecs, rel) == {}
    assert rel[2] != ZERO
