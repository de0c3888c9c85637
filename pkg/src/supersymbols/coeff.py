"""Exact coefficients: rational functions in formal parameters over Q(w), w^2 = -2.

A :class:`Coefficient` is stored as a pair ``a + b*w`` with ``a`` and ``b`` in
the rational function field Q(alpha, h, mu, sigma1, sigma2, sigma3, ...).
Because the parameters are transcendental, ``x^2 + 2`` stays irreducible over
that field, so the pair representation is a field and equality reduces to
equality of the two canonical components.

Each component is either a ``gmpy2.mpq`` (the common, fast case) or a reduced
pair ``(numerator, denominator)`` of sympy sparse polynomials whose denominator
is monic in graded-lex order.
"""

from fractions import Fraction
from numbers import Integral, Rational

from gmpy2 import mpq
from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

DEFAULT_PARAMETERS = ("alpha", "h", "mu", "sigma1", "sigma2", "sigma3")
ALIASES = {
    "α": "alpha",
    "μ": "mu",
    "σ1": "sigma1",
    "σ2": "sigma2",
    "σ3": "sigma3",
    "s1": "sigma1",
    "s2": "sigma2",
    "s3": "sigma3",
}
OMEGA_NAME = "w"

_names = list(DEFAULT_PARAMETERS)
_ring = PolyRing(_names, QQ, grlex)


class DivisionByZero(ZeroDivisionError):
    pass


class EvaluationPole(ArithmeticError):
    pass


def parameter_names():
    return tuple(_names)


def declare_parameter(name):
    """Register a user parameter (appended after the default ones) and return it."""
    global _ring
    name = ALIASES.get(name, name)
    if name == OMEGA_NAME:
        raise ValueError("'w' is reserved for the square root of -2")
    if name not in _names:
        _names.append(name)
        _ring = PolyRing(_names, QQ, grlex)
    return param(name)


# -- component arithmetic ----------------------------------------------------
# A component is an mpq or a tuple (num, den) of PolyElements, never zero-as-tuple.


def _sync(x):
    num, den = x
    if num.ring is not _ring:
        num, den = num.set_ring(_ring), den.set_ring(_ring)
    return num, den


def _lift(x):
    if type(x) is tuple:
        return _sync(x)
    return _ring.ground_new(x), _ring.one


def _pack(num, den):
    """Return the canonical component for num/den assuming gcd(num, den) = 1."""
    if not num:
        return mpq(0)
    lc = den.LC
    if lc != 1:
        num, den = num.quo_ground(lc), den.quo_ground(lc)
    if den.is_one and num.is_ground:
        return mpq(num.LC)
    return (num, den)


def _reduce(num, den):
    if not num:
        return mpq(0)
    if not den.is_ground:
        g, num, den = num.cofactors(den)
    return _pack(num, den)


def _c_add(x, y):
    if type(x) is not tuple and type(y) is not tuple:
        return x + y
    n1, d1 = _lift(x)
    n2, d2 = _lift(y)
    if d1.is_one:
        return _pack(n1 * d2 + n2, d2)
    if d2.is_one:
        return _pack(n1 + n2 * d1, d1)
    if d1 == d2:
        return _reduce(n1 + n2, d1)
    return _reduce(n1 * d2 + n2 * d1, d1 * d2)


def _c_neg(x):
    if type(x) is not tuple:
        return -x
    return (-x[0], x[1])


def _c_mul(x, y):
    tx, ty = type(x) is tuple, type(y) is tuple
    if not tx and not ty:
        return x * y
    if not tx:
        x, y = y, x
        tx, ty = ty, tx
    if not ty:
        if y == 0:
            return mpq(0)
        num, den = _sync(x)
        return _pack(num.mul_ground(y), den)
    n1, d1 = _sync(x)
    n2, d2 = _sync(y)
    if d1.is_one and d2.is_one:
        return _pack(n1 * n2, d1)
    return _reduce(n1 * n2, d1 * d2)


def _c_inv(x):
    if type(x) is not tuple:
        if x == 0:
            raise DivisionByZero("division by the zero coefficient")
        return 1 / x
    num, den = _sync(x)
    return _pack(den, num)


def _c_is_zero(x):
    return type(x) is not tuple and x == 0


def _c_eq(x, y):
    if type(x) is tuple and type(y) is tuple:
        return _sync(x) == _sync(y)
    if type(x) is tuple or type(y) is tuple:
        return False
    return x == y


def _to_mpq(value):
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if type(value) is type(mpq(0)):
        return value
    if isinstance(value, Integral):
        return mpq(int(value))
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, Rational):
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {value!r} to a coefficient")


class Coefficient:
    """An immutable element ``a + b*w`` of Q(w)(parameters)."""

    __slots__ = ("_a", "_b")

    def __init__(self, a=0, b=0):
        self._a = a if type(a) is tuple else _to_mpq(a)
        self._b = b if type(b) is tuple else _to_mpq(b)

    @classmethod
    def _raw(cls, a, b):
        obj = object.__new__(cls)
        obj._a = a
        obj._b = b
        return obj

    # -- coercion ---------------------------------------------------------
    @staticmethod
    def coerce(value):
        if isinstance(value, Coefficient):
            return value
        return Coefficient._raw(_to_mpq(value), _ZERO_Q)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        return Coefficient._raw(_c_add(self._a, other._a), _c_add(self._b, other._b))

    __radd__ = __add__

    def __neg__(self):
        return Coefficient._raw(_c_neg(self._a), _c_neg(self._b))

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Coefficient.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self._a, self._b, other._a, other._b
        if _c_is_zero(b) and _c_is_zero(d):
            return Coefficient._raw(_c_mul(a, c), _ZERO_Q)
        real = _c_add(_c_mul(a, c), _c_mul(_c_mul(b, d), _MINUS_TWO))
        imag = _c_add(_c_mul(a, d), _c_mul(b, c))
        return Coefficient._raw(real, imag)

    __rmul__ = __mul__

    def inverse(self):
        a, b = self._a, self._b
        if _c_is_zero(b):
            return Coefficient._raw(_c_inv(a), _ZERO_Q)
        # (a - b w) / (a^2 + 2 b^2); the norm is nonzero whenever self is
        norm = _c_add(_c_mul(a, a), _c_mul(_c_mul(b, b), _TWO))
        inv = _c_inv(norm)
        return Coefficient._raw(_c_mul(a, inv), _c_neg(_c_mul(b, inv)))

    def __truediv__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by the zero coefficient")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Coefficient.coerce(other) / self

    def __pow__(self, k):
        if not isinstance(k, Integral):
            raise TypeError("only integer exponents are supported")
        k = int(k)
        base = self if k >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(k)):
            result = result * base
        return result

    # -- predicates -------------------------------------------------------
    def is_zero(self):
        return _c_is_zero(self._a) and _c_is_zero(self._b)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self):
        """True when the value is a plain rational number."""
        return type(self._a) is not tuple and _c_is_zero(self._b)

    def is_constant(self):
        return type(self._a) is not tuple and type(self._b) is not tuple

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        return Fraction(int(self._a.numerator), int(self._a.denominator))

    def __eq__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        return _c_eq(self._a, other._a) and _c_eq(self._b, other._b)

    def __hash__(self):
        if self.is_constant():
            return hash((self._a, self._b))
        return hash(str(self))

    def free_parameters(self):
        names = set()
        for comp in (self._a, self._b):
            if type(comp) is tuple:
                num, den = _sync(comp)
                for poly in (num, den):
                    for monom in poly.monoms():
                        names.update(_names[i] for i, e in enumerate(monom) if e)
        return names

    # -- substitution -----------------------------------------------------
    def evaluate(self, assignment):
        """Substitute parameters by values (partial assignments allowed).

        Raises EvaluationPole when a denominator vanishes.
        """
        values = {}
        for name, value in assignment.items():
            values[ALIASES.get(name, name)] = Coefficient.coerce(value)
        if not values or self.is_constant():
            return self
        gens = [values.get(name) for name in _names]
        if all(g is None for g in gens):
            return self
        gens = [g if g is not None else param(_names[i]) for i, g in enumerate(gens)]
        parts = []
        for comp in (self._a, self._b):
            if type(comp) is not tuple:
                parts.append(Coefficient._raw(comp, _ZERO_Q))
                continue
            num, den = _sync(comp)
            den_value = _eval_poly(den, gens)
            if den_value.is_zero():
                raise EvaluationPole(f"denominator of {self} vanishes at {assignment}")
            parts.append(_eval_poly(num, gens) / den_value)
        return parts[0] + parts[1] * OMEGA

    def coefficients_in(self, name):
        """Expand as a polynomial in one parameter: {power: Coefficient}.

        Raises ValueError if the parameter occurs in a denominator.
        """
        name = ALIASES.get(name, name)
        if name not in _names:
            return {0: self} if not self.is_zero() else {}
        idx = _names.index(name)
        out = {}
        for comp, unit in ((self._a, ONE), (self._b, OMEGA)):
            if type(comp) is not tuple:
                if comp != 0:
                    out[0] = out.get(0, ZERO) + unit * Coefficient._raw(comp, _ZERO_Q)
                continue
            num, den = _sync(comp)
            if den.degree(idx) > 0:
                raise ValueError(f"{name} occurs in the denominator of {self}")
            grouped = {}
            for monom, c in num.terms():
                k = monom[idx]
                rest = list(monom)
                rest[idx] = 0
                grouped.setdefault(k, []).append((tuple(rest), c))
            for k, terms in grouped.items():
                poly = _ring.from_dict(dict(terms))
                piece = Coefficient._raw(_reduce(poly, den), _ZERO_Q) * unit
                out[k] = out.get(k, ZERO) + piece
        return {k: v for k, v in out.items() if not v.is_zero()}

    # -- printing ---------------------------------------------------------
    def __str__(self):
        a, b = self._a, self._b
        if _c_is_zero(b):
            return _comp_str(a)
        if type(b) is tuple:
            b_str = f"({_comp_str(b)})*w"
        elif b == 1:
            b_str = "w"
        elif b == -1:
            b_str = "-w"
        else:
            b_str = f"{_comp_str(b)}*w"
        if _c_is_zero(a):
            return b_str
        if b_str.startswith("-"):
            return f"{_comp_str(a)} - {b_str[1:]}"
        return f"{_comp_str(a)} + {b_str}"

    def __repr__(self):
        return f"Coefficient({str(self)!r})"

    def needs_parens(self):
        """True if the printed form is not a single signed factor."""
        s = str(self)
        body = s[1:] if s.startswith("-") else s
        return any(ch in body for ch in "+-") or ("/" in body and not self.is_rational())


def _eval_poly(poly, gens):
    total = ZERO
    for monom, c in poly.terms():
        term = Coefficient._raw(c, _ZERO_Q)
        for g, e in zip(gens, monom):
            if e:
                term = term * g**e
        total = total + term
    return total


def _monom_str(monom):
    parts = []
    for name, e in zip(_names, monom):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _poly_str(poly):
    pieces = []
    for monom, c in poly.terms():
        mon = _monom_str(monom)
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if not mon:
            body = str(mag)
        elif mag == 1:
            body = mon
        else:
            body = f"{mag}*{mon}"
        pieces.append((sign, body))
    if not pieces:
        return "0"
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def _comp_str(comp):
    if type(comp) is not tuple:
        return str(comp)
    num, den = _sync(comp)
    if den.is_one:
        return _poly_str(num)
    num_s = _poly_str(num)
    if len(num.terms()) > 1:
        num_s = f"({num_s})"
    return f"{num_s}/({_poly_str(den)})"


_ZERO_Q = mpq(0)
_TWO = mpq(2)
_MINUS_TWO = mpq(-2)
ZERO = Coefficient._raw(mpq(0), _ZERO_Q)
ONE = Coefficient._raw(mpq(1), _ZERO_Q)
OMEGA = Coefficient._raw(mpq(0), mpq(1))


def param(name):
    name = ALIASES.get(name, name)
    if name not in _names:
        raise KeyError(f"unknown parameter {name!r}; declare it first")
    gen = _ring.gens[_names.index(name)]
    return Coefficient._raw((gen, _ring.one), _ZERO_Q)


def coeff(value):
    """Coerce int/Fraction/str/Coefficient to a Coefficient."""
    if isinstance(value, str):
        from .grammar import parse_coefficient

        return parse_coefficient(value)
    return Coefficient.coerce(value)


def field_arith(x, y, op):
    x, y = Coefficient.coerce(x), Coefficient.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def evaluate(x, assignment):
    return Coefficient.coerce(x).evaluate(assignment)


def is_zero(x):
    return Coefficient.coerce(x).is_zero()


ALPHA = param("alpha")
H = param("h")
MU = param("mu")
SIGMA1 = param("sigma1")
SIGMA2 = param("sigma2")
SIGMA3 = param("sigma3")
