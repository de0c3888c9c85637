"""Pseudodifferential symbols on S^{1|N}: the Poisson superalgebra P(2N) and
its associative deformation P_h(2N).

A :class:`PSymbol` is a finite sum of terms ``c * t^a * tau^b * (odd monomial)``
keyed by ``(a, b, mask)``.  Products that would produce an infinite tail in
negative powers of ``tau`` are cut off; such values carry a ``floor`` and are
only meaningful for terms with ``tau`` exponent ``>= floor``.
"""

from math import factorial

from gmpy2 import mpq

from . import grassmann as gm
from .coeff import H, ONE, ZERO, Coefficient
from .grammar import Algebra, parse

DEFAULT_CUTOFF = -12


class MixedParity(ValueError):
    pass


class TruncatedOperand(ValueError):
    pass


def _falling(x, k):
    out = 1
    for j in range(k):
        out *= x - j
    return out


class PSymbol:
    __slots__ = ("terms", "n", "floor")

    def __init__(self, terms=None, n=2, floor=None):
        self.n = n
        self.floor = floor
        items = terms.items() if terms else ()
        if floor is None:
            self.terms = {k: c for k, c in items if not c.is_zero()}
        else:
            self.terms = {k: c for k, c in items if k[1] >= floor and not c.is_zero()}

    # -- construction -----------------------------------------------------
    @classmethod
    def term(cls, c=1, t=0, tau=0, odd=(), n=2, h=ZERO):
        """``c * t^t * tau^tau * w`` where ``w`` is an odd word multiplied in Lambda_h."""
        c = Coefficient.coerce(c)
        lam = gm.LambdaElement.word(odd, n, h) if odd else gm.LambdaElement.scalar(1, n)
        return cls({(t, tau, m): c * v for m, v in lam.terms.items()}, n)

    @classmethod
    def scalar(cls, c, n=2):
        return cls({(0, 0, 0): Coefficient.coerce(c)}, n)

    @classmethod
    def zero(cls, n=2):
        return cls({}, n)

    # -- linear structure -------------------------------------------------
    def _combine_floor(self, other):
        if self.floor is None:
            return other.floor
        if other.floor is None:
            return self.floor
        return max(self.floor, other.floor)

    def __add__(self, other):
        if not isinstance(other, PSymbol):
            other = PSymbol.scalar(other, self.n)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return PSymbol(out, self.n, self._combine_floor(other))

    __radd__ = __add__

    def __neg__(self):
        return PSymbol({k: -c for k, c in self.terms.items()}, self.n, self.floor)

    def __sub__(self, other):
        if not isinstance(other, PSymbol):
            other = PSymbol.scalar(other, self.n)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Coefficient.coerce(c)
        if c.is_zero():
            return PSymbol({}, self.n, self.floor)
        return PSymbol({k: c * v for k, v in self.terms.items()}, self.n, self.floor)

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, PSymbol):
            return product(self, other)
        return self.scale(other)

    # -- inspection -------------------------------------------------------
    @property
    def exact(self):
        return self.floor is None

    def is_zero(self):
        return not self.terms

    def parity(self):
        ps = {gm.degree(k[2]) & 1 for k in self.terms}
        if len(ps) > 1:
            return "mixed"
        return "odd" if ps == {1} else "even"

    def p(self):
        """Parity as 0/1; raises MixedParity."""
        par = self.parity()
        if par == "mixed":
            raise MixedParity(f"{self} is not homogeneous")
        return 1 if par == "odd" else 0

    def max_tau(self):
        """Largest tau exponent that may be present (unknown tail included)."""
        cands = [k[1] for k in self.terms]
        if self.floor is not None:
            cands.append(self.floor - 1)
        return max(cands) if cands else None

    def min_tau(self):
        return min((k[1] for k in self.terms), default=None)

    def coefficient(self, t=0, tau=0, odd=0):
        return self.terms.get((t, tau, odd), ZERO)

    def vector(self):
        return dict(self.terms)

    def map_coefficients(self, fn):
        return PSymbol({k: fn(c) for k, c in self.terms.items()}, self.n, self.floor)

    def evaluate(self, assignment):
        return self.map_coefficients(lambda c: c.evaluate(assignment))

    def truncate(self, floor):
        if self.floor is not None:
            floor = max(floor, self.floor)
        return PSymbol(self.terms, self.n, floor)

    def exact_part(self):
        return PSymbol(self.terms, self.n)

    def __eq__(self, other):
        if not isinstance(other, PSymbol):
            try:
                other = PSymbol.scalar(other, self.n)
            except TypeError:
                return NotImplemented
        return self.floor == other.floor and (self.exact_part() - other.exact_part()).is_zero()

    def __hash__(self):
        return hash(str(self))

    def agrees(self, other):
        """Coefficientwise equality on the window where both are known."""
        return (self - other).is_zero()

    def window_residual(self, other):
        return self - other

    # -- derivatives ------------------------------------------------------
    def d_t(self):
        out = {}
        for (a, b, m), c in self.terms.items():
            if a:
                out[(a - 1, b, m)] = c * a
        return PSymbol(out, self.n, self.floor)

    def d_tau(self):
        out = {}
        for (a, b, m), c in self.terms.items():
            if b:
                out[(a, b - 1, m)] = c * b
        floor = None if self.floor is None else self.floor - 1
        return PSymbol(out, self.n, floor)

    def d_odd(self, g):
        if isinstance(g, str):
            g = gm.gen_index(g, self.n)
        out = {}
        for (a, b, m), c in self.terms.items():
            res = gm.left_derivative_mask(g, m)
            if res is not None:
                s, m2 = res
                key = (a, b, m2)
                out[key] = out.get(key, ZERO) + (c if s > 0 else -c)
        return PSymbol(out, self.n, self.floor)

    def swap_odd(self, h=ZERO):
        """Interchange xi_i <-> eta_i and renormalize in Lambda_h."""
        n = self.n
        out = {}
        for (a, b, m), c in self.terms.items():
            word = [(g + n) % (2 * n) for g in gm.mask_gens(m)]
            lam = gm.LambdaElement.word(word, n, h)
            for m2, v in lam.terms.items():
                key = (a, b, m2)
                out[key] = out.get(key, ZERO) + c * v
        return PSymbol(out, n, self.floor)

    # -- printing ---------------------------------------------------------
    def __str__(self):
        if not self.terms:
            body = "0"
        else:
            parts = []
            for (a, b, m) in sorted(self.terms, key=lambda k: (k[0], k[1], k[2])):
                factors = []
                if a:
                    factors.append("t" if a == 1 else f"t^{a}")
                if b:
                    factors.append("tau" if b == 1 else f"tau^{b}")
                factors.extend(gm.gen_name(g, self.n) for g in gm.mask_gens(m))
                parts.append(gm._join_coeff(self.terms[(a, b, m)], " ".join(factors)))
            body = gm._join_terms(parts)
        if self.floor is not None:
            body += f" + O(tau^{self.floor - 1})"
        return body

    def __repr__(self):
        return f"PSymbol({str(self)!r})"


def _hpowers(h, k):
    out = [ONE]
    for _ in range(k):
        out.append(out[-1] * h)
    return out


def product(A, B):
    """Supercommutative (h = 0) product in P(2N)."""
    out = {}
    for (a1, b1, m1), c1 in A.terms.items():
        for (a2, b2, m2), c2 in B.terms.items():
            res = gm.monomial_mul(m1, m2)
            if res is None:
                continue
            s, m = res
            key = (a1 + a2, b1 + b2, m)
            c = c1 * c2
            out[key] = out.get(key, ZERO) + (c if s > 0 else -c)
    return PSymbol(out, A.n, _product_floor(A, B, None))


def _product_floor(A, B, series_floor):
    floors = []
    if A.floor is not None:
        mb = B.max_tau()
        if mb is not None:
            floors.append(A.floor + mb)
    if B.floor is not None:
        ma = A.max_tau()
        if ma is not None:
            floors.append(B.floor + ma)
    if series_floor is not None:
        floors.append(series_floor)
    return max(floors) if floors else None


def parity(A):
    return A.parity()


def poisson_bracket(A, B):
    """Graded Poisson bracket on P(2N)."""
    if not A.exact or not B.exact:
        raise TruncatedOperand("poisson_bracket needs exact operands")
    pa = A.p()
    B.p()
    res = product(A.d_tau(), B.d_t()) - product(A.d_t(), B.d_tau())
    odd = PSymbol.zero(A.n)
    for i in range(A.n):
        x, y = i, A.n + i
        odd = odd + product(A.d_odd(x), B.d_odd(y)) + product(A.d_odd(y), B.d_odd(x))
    if pa == 0:
        odd = -odd
    return res + odd


def circ_h(A, B, cutoff=DEFAULT_CUTOFF, h=H):
    """The deformed product A o_h B, exact when the series terminates."""
    h = Coefficient.coerce(h)
    n_odd = A.n
    out = {}
    truncated = False
    hzero = h.is_zero()
    for (a1, b1, m1), c1 in A.terms.items():
        for (a2, b2, m2), c2 in B.terms.items():
            odd = gm.lambda_table(m1, m2, n_odd)
            if hzero:
                odd = tuple(x for x in odd if x[1] == 0)
                if not odd:
                    continue
            c12 = c1 * c2
            k = 0
            while True:
                if hzero and k > 0:
                    break
                if b1 >= 0 and k > b1:
                    break
                if a2 >= 0 and k > a2:
                    break
                tau_exp = b1 - k + b2
                if b1 < 0 and a2 < 0 and tau_exp < cutoff:
                    truncated = True
                    break
                num = _falling(b1, k) * _falling(a2, k)
                if num:
                    base = c12 * Coefficient(mpq(num, factorial(k)))
                    for sign, hp, m in odd:
                        p = k + hp
                        if p and hzero:
                            continue
                        c = base * sign
                        if p:
                            c = c * h**p
                        key = (a1 + a2 - k, tau_exp, m)
                        out[key] = out.get(key, ZERO) + c
                k += 1
    floor = _product_floor(A, B, cutoff if truncated else None)
    return PSymbol(out, n_odd, floor)


def super_commutator_h(A, B, cutoff=DEFAULT_CUTOFF, h=H):
    """[A, B]_h = A o_h B - (-1)^{p(A)p(B)} B o_h A."""
    pa, pb = A.p(), B.p()
    ab = circ_h(A, B, cutoff, h)
    ba = circ_h(B, A, cutoff, h)
    return ab + ba if pa and pb else ab - ba


def normalized_bracket_h(A, B, cutoff=DEFAULT_CUTOFF, h=H):
    """(1/h) [A, B]_h; the bracket whose h -> 0 limit is the Poisson bracket."""
    h = Coefficient.coerce(h)
    return super_commutator_h(A, B, cutoff, h).scale(h.inverse())


class ContractionVerdict:
    def __init__(self, passed, bracket_h, limit, poisson, residual, reason=""):
        self.passed = passed
        self.bracket_h = bracket_h
        self.limit = limit
        self.poisson = poisson
        self.residual = residual
        self.reason = reason

    def __bool__(self):
        return self.passed

    def __repr__(self):
        status = "pass" if self.passed else "fail"
        return f"ContractionVerdict({status}, residual={self.residual})"


def contraction_first_order(A, B, cutoff=DEFAULT_CUTOFF):
    """Check that [A, B]_h is divisible by h and (1/h)[A, B]_h -> {A, B} as h -> 0."""
    for X in (A, B):
        for c in X.terms.values():
            if "h" in c.free_parameters():
                raise ValueError("contraction check needs h-free operands")
    bh = super_commutator_h(A, B, cutoff, H)
    pb = poisson_bracket(A, B)
    limit = {}
    for key, c in bh.terms.items():
        at_zero = c.evaluate({"h": 0})
        if not at_zero.is_zero():
            res = PSymbol({key: at_zero}, A.n)
            return ContractionVerdict(False, bh, None, pb, res, "not divisible by h")
        limit[key] = (c / H).evaluate({"h": 0})
    lim = PSymbol(limit, A.n, bh.floor)
    residual = lim - pb
    return ContractionVerdict(residual.is_zero(), bh, lim, pb, residual)


# -- text grammar -------------------------------------------------------------


class SymbolAlgebra(Algebra):
    def __init__(self, n=2):
        self.n = n
        names = ["t", "tau"] + [gm.gen_name(g, n) for g in range(2 * n)]
        self.generators = tuple(names)

    def generator(self, name, power):
        if name == "t":
            return PSymbol.term(1, t=power, n=self.n)
        if name == "tau":
            return PSymbol.term(1, tau=power, n=self.n)
        if power < 0:
            raise ValueError("odd generators have no inverse")
        if power == 0:
            return PSymbol.scalar(1, self.n)
        if power > 1:
            return PSymbol.zero(self.n)
        return PSymbol.term(1, odd=name, n=self.n)

    def from_scalar(self, c):
        return PSymbol.scalar(c, self.n)

    def mul(self, x, y):
        return product(x, y)


def parse_symbol(text, n=2):
    value = parse(text, SymbolAlgebra(n))
    if isinstance(value, Coefficient):
        return PSymbol.scalar(value, n)
    return value
