"""Grassmann algebra Lambda(2N) and its deformation Lambda_h(2N).

Odd generators are indexed ``0 .. 2N-1`` in the canonical order
``x1 < ... < xN < y1 < ... < yN`` (``x`` for xi, ``y`` for eta).  A monomial is
an int bitmask; bit ``g`` set means generator ``g`` is a factor, and the
factors are read in increasing index order.  In Lambda_h the relation
``y_i x_j = h delta_ij - x_j y_i`` is used as a rewrite rule, so normal forms
always have every xi to the left of every eta.
"""

from functools import lru_cache

from .coeff import H, ONE, ZERO, Coefficient


def xi(i, n=2):
    return i - 1


def eta(i, n=2):
    return n + i - 1


def gen_name(g, n=2):
    return f"x{g + 1}" if g < n else f"y{g - n + 1}"


def gen_index(name, n=2):
    kind, num = name[0], int(name[1:])
    if kind not in "xy" or not 1 <= num <= n:
        raise KeyError(f"unknown odd generator {name!r} for N={n}")
    return xi(num, n) if kind == "x" else eta(num, n)


def popcount(mask):
    return bin(mask).count("1")


def degree(mask):
    return popcount(mask)


def mask_gens(mask):
    g = 0
    out = []
    while mask:
        if mask & 1:
            out.append(g)
        mask >>= 1
        g += 1
    return out


def monomial_mul(m1, m2):
    """Grassmann product of two monomials: (sign, mask) or None when zero."""
    if m1 & m2:
        return None
    swaps = 0
    for g in mask_gens(m2):
        swaps += popcount(m1 >> (g + 1))
    return (-1 if swaps & 1 else 1), m1 | m2


def _right_mul_gen(mask, g, n):
    """Lambda_h product ``mask * g`` as {(h_power, mask): int}."""
    bit = 1 << g
    if g >= n:
        if mask & bit:
            return {}
        sign = -1 if popcount(mask >> (g + 1)) & 1 else 1
        return {(0, mask | bit): sign}
    xs = mask & ((1 << n) - 1)
    ys = mask >> n << n
    partner = 1 << (n + g)
    out = {}
    if not ys & partner:
        if xs & bit:
            return {}
        sign = -1 if (popcount(ys) + popcount(xs >> (g + 1))) & 1 else 1
        return {(0, mask | bit): sign}
    right = popcount(ys >> (n + g + 1))
    left = popcount(ys & (partner - 1))
    # X P y_j R x_j = (-1)^|R| (h X P R - (-1)^|P| X x_j P y_j R)
    base = -1 if right & 1 else 1
    out[(1, mask ^ partner)] = base
    if not xs & bit:
        sign = -base * (-1 if left & 1 else 1)
        sign *= -1 if popcount(xs >> (g + 1)) & 1 else 1
        out[(0, mask | bit)] = sign
    return out


@lru_cache(maxsize=None)
def lambda_table(m1, m2, n):
    """Lambda_h product of normal monomials as a tuple of (sign, h_power, mask)."""
    acc = {(0, m1): 1}
    for g in mask_gens(m2):
        nxt = {}
        for (hp, mask), c in acc.items():
            for (dh, m), s in _right_mul_gen(mask, g, n).items():
                key = (hp + dh, m)
                nxt[key] = nxt.get(key, 0) + c * s
        acc = {k: v for k, v in nxt.items() if v}
    return tuple(sorted((c, hp, m) for (hp, m), c in acc.items()))


def word_normal_form(word, n=2):
    """Normal form of a product of generators, as {(h_power, mask): int}."""
    acc = {(0, 0): 1}
    for g in word:
        nxt = {}
        for (hp, mask), c in acc.items():
            for (dh, m), s in _right_mul_gen(mask, g, n).items():
                key = (hp + dh, m)
                nxt[key] = nxt.get(key, 0) + c * s
        acc = {k: v for k, v in nxt.items() if v}
    return acc


def left_derivative_mask(g, mask):
    """(sign, mask') for d/d(gen g) acting from the left, or None."""
    bit = 1 << g
    if not mask & bit:
        return None
    sign = -1 if popcount(mask & (bit - 1)) & 1 else 1
    return sign, mask ^ bit


class LambdaElement:
    """Element of Lambda(2N) / Lambda_h(2N): a map monomial mask -> Coefficient."""

    __slots__ = ("terms", "n")

    def __init__(self, terms=None, n=2):
        self.n = n
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def generator(cls, name, n=2):
        return cls({1 << gen_index(name, n): ONE}, n)

    @classmethod
    def scalar(cls, c, n=2):
        return cls({0: Coefficient.coerce(c)}, n)

    @classmethod
    def word(cls, names, n=2, h=H):
        """Normal-ordered Lambda_h product of the named generators."""
        gens = [gen_index(s, n) for s in names.split()] if isinstance(names, str) else list(names)
        terms = {}
        for (hp, m), c in word_normal_form(gens, n).items():
            terms[m] = terms.get(m, ZERO) + c * h**hp
        return cls(terms, n)

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return LambdaElement(out, self.n)

    def __neg__(self):
        return LambdaElement({m: -c for m, c in self.terms.items()}, self.n)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = Coefficient.coerce(c)
        return LambdaElement({m: c * v for m, v in self.terms.items()}, self.n)

    def __mul__(self, other):
        if isinstance(other, LambdaElement):
            return lambda_h_mul(self, other, ZERO)
        return self.__rmul__(other)

    def __eq__(self, other):
        if not isinstance(other, LambdaElement):
            return NotImplemented
        return (self - other).is_zero()

    def is_zero(self):
        return not self.terms

    def parity(self):
        ps = {degree(m) & 1 for m in self.terms}
        if len(ps) > 1:
            return "mixed"
        return "odd" if ps == {1} else "even"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            mon = " ".join(gen_name(g, self.n) for g in mask_gens(m))
            c = self.terms[m]
            parts.append(_join_coeff(c, mon))
        return _join_terms(parts)

    __repr__ = __str__


def monomial_mul_element(m1, m2, n=2):
    res = monomial_mul(m1, m2)
    if res is None:
        return LambdaElement({}, n)
    s, m = res
    return LambdaElement({m: Coefficient(s)}, n)


def lambda_h_mul(x, y, h=H):
    """Product in Lambda_h(2N); ``h=0`` gives the Grassmann product."""
    h = Coefficient.coerce(h)
    out = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            c12 = c1 * c2
            for sign, hp, m in lambda_table(m1, m2, x.n):
                if hp and h.is_zero():
                    continue
                c = c12 * sign if hp == 0 else c12 * sign * h**hp
                out[m] = out.get(m, ZERO) + c
    return LambdaElement(out, x.n)


def odd_derivative(g, x):
    """Left derivative d/d(gen g) of a LambdaElement."""
    if isinstance(g, str):
        g = gen_index(g, x.n)
    out = {}
    for m, c in x.terms.items():
        res = left_derivative_mask(g, m)
        if res is not None:
            s, m2 = res
            out[m2] = out.get(m2, ZERO) + (c if s > 0 else -c)
    return LambdaElement(out, x.n)


def _join_coeff(c, mon):
    if not mon:
        return str(c)
    if c == 1:
        return mon
    if c == -1:
        return "-" + mon
    if c.needs_parens():
        return f"({c}) {mon}"
    return f"{c} {mon}"


def _join_terms(parts):
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out
