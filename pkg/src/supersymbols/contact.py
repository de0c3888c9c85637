"""Superderivations of Lambda(1, 2N), contact Hamiltonians and field families.

Functions of ``t`` and the odd variables are tau-free :class:`PSymbol` values.
A :class:`VectorField` stores the coefficients of ``d_t, d_x1 .. d_xN,
d_y1 .. d_yN`` in that order; odd partials are left derivatives.

The second half of the module builds the labelled mode families used in the
closure and 2-cocycle checks: the N = 1 fields of S'(2, 0), the images of
two copies of S'(2, alpha) in P(4), and the sixteen fields spanning the
image of K'(4) in P(4) (and its h-deformation in P_h(4)).
"""

from functools import lru_cache
from itertools import product as cartesian

from . import grassmann as gm
from .coeff import ALPHA, H, ONE, ZERO, Coefficient
from .linalg import SpanBasis
from .psymbols import (
    DEFAULT_CUTOFF,
    MixedParity,
    PSymbol,
    circ_h,
    parse_symbol,
    poisson_bracket,
    product,
)


class UnknownLabel(KeyError):
    pass


class UndefinedMode(ValueError):
    pass


class ClosureFailure(ArithmeticError):
    pass


def _psym(x, n):
    if isinstance(x, PSymbol):
        return x
    if isinstance(x, str):
        return parse_symbol(x, n)
    return PSymbol.scalar(x, n)


def _check_function(f):
    if any(k[1] for k in f.terms):
        raise ValueError(f"{f} depends on tau; expected a function of t and odd variables")
    return f


# -- vector fields ------------------------------------------------------------


class VectorField:
    """D = f d_t + sum_i (f_i d_xi + g_i d_yi)."""

    __slots__ = ("comps", "n")

    def __init__(self, comps, n=2):
        if len(comps) != 2 * n + 1:
            raise ValueError("a vector field needs 2N + 1 components")
        self.n = n
        self.comps = tuple(_check_function(_psym(c, n)) for c in comps)

    @classmethod
    def build(cls, n=2, **parts):
        """Keyword form, e.g. ``VectorField.build(1, t="t", x1="-x1")``."""
        comps = [PSymbol.zero(n) for _ in range(2 * n + 1)]
        for name, value in parts.items():
            idx = 0 if name == "t" else 1 + gm.gen_index(name, n)
            comps[idx] = _psym(value, n)
        return cls(comps, n)

    @classmethod
    def zero(cls, n=2):
        return cls([PSymbol.zero(n)] * (2 * n + 1), n)

    def __add__(self, other):
        return VectorField([a + b for a, b in zip(self.comps, other.comps)], self.n)

    def __neg__(self):
        return VectorField([-a for a in self.comps], self.n)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return VectorField([a.scale(c) for a in self.comps], self.n)

    __rmul__ = scale

    def is_zero(self):
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(str(self))

    def parity(self):
        ps = set()
        for i, c in enumerate(self.comps):
            par = c.parity() if not c.is_zero() else None
            if par is None:
                continue
            if par == "mixed":
                return "mixed"
            p = 1 if par == "odd" else 0
            ps.add(p if i == 0 else 1 - p)
        if len(ps) > 1:
            return "mixed"
        return "odd" if ps == {1} else "even"

    def p(self):
        par = self.parity()
        if par == "mixed":
            raise MixedParity(f"{self} is not homogeneous")
        return 1 if par == "odd" else 0

    def vector(self):
        out = {}
        for i, c in enumerate(self.comps):
            for key, v in c.terms.items():
                out[(i,) + key] = v
        return out

    def evaluate(self, assignment):
        return VectorField([c.evaluate(assignment) for c in self.comps], self.n)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.comps):
            if c.is_zero():
                continue
            name = "d_t" if i == 0 else "d_" + gm.gen_name(i - 1, self.n)
            parts.append(f"({c}) {name}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"VectorField({str(self)!r})"


def apply(D, g):
    """D(g) for a vector field D and a function g."""
    g = _psym(g, D.n)
    out = product(D.comps[0], g.d_t())
    for idx in range(2 * D.n):
        c = D.comps[1 + idx]
        if not c.is_zero():
            out = out + product(c, g.d_odd(idx))
    return out


def vf_bracket(D1, D2):
    """Superbracket [D1, D2] = D1 D2 - (-1)^{p1 p2} D2 D1, in component form."""
    p1, p2 = D1.p(), D2.p()
    comps = []
    for a, b in zip(D1.comps, D2.comps):
        x = apply(D1, b)
        y = apply(D2, a)
        comps.append(x + y if p1 and p2 else x - y)
    return VectorField(comps, D1.n)


def divergence(D):
    """d_t(f) + sum (-1)^{p(f_i)} d_xi(f_i) + (-1)^{p(g_i)} d_yi(g_i)."""
    p = D.p()
    out = D.comps[0].d_t()
    for idx in range(2 * D.n):
        term = D.comps[1 + idx].d_odd(idx)
        # odd-variable components have parity opposite to the field
        out = out - term if p == 0 else out + term
    return out


def s_alpha_member(D, alpha, t_shift=ZERO):
    """Whether t^t_shift * D lies in S(2N, alpha), i.e. Div(t^(alpha + t_shift) D) = 0.

    For Laurent coefficients this reads (alpha + s) t^-1 f + Div(D) = 0; the
    shift lets fields such as t^-alpha x1 y1 d_t be tested with alpha formal.
    """
    alpha = Coefficient.coerce(alpha) + Coefficient.coerce(t_shift)
    lhs = product(PSymbol.term(alpha, t=-1, n=D.n), D.comps[0]) + divergence(D)
    return lhs.is_zero()


# -- contact correspondence ---------------------------------------------------


def euler(f):
    """E(f) = sum (x_i d_xi + y_i d_yi) f: odd degree times each term."""
    return PSymbol({k: c * gm.degree(k[2]) for k, c in f.terms.items()}, f.n)


def delta(f):
    """Delta(f) = 2f - E(f)."""
    return PSymbol({k: c * (2 - gm.degree(k[2])) for k, c in f.terms.items()}, f.n)


def odd_poisson(f, g):
    """(-1)^{p(f)+1} sum_i (d_xi f d_yi g + d_yi f d_xi g)."""
    n = f.n
    pf = f.p()
    out = PSymbol.zero(n)
    for i in range(n):
        x, y = i, n + i
        out = out + product(f.d_odd(x), g.d_odd(y)) + product(f.d_odd(y), g.d_odd(x))
    return out if pf else -out


def contact_field(f, n=2):
    """D_f = Delta(f) d_t + d_t(f) E - H_f."""
    f = _check_function(_psym(f, n))
    n = f.n
    pf = f.p()
    sign = ONE if pf else -ONE  # (-1)^{p(f)+1}
    ft = f.d_t()
    comps = [delta(f)]
    for idx in range(2 * n):
        gen = PSymbol.term(1, odd=[idx], n=n)
        partner = (idx + n) % (2 * n)
        # H_f contributes d_{partner} f to the d_{idx} component
        comps.append(product(ft, gen) - f.d_odd(partner).scale(sign))
    return VectorField(comps, n)


def contact_bracket(f, g, n=2):
    """{f, g}_K = Delta(f) d_t g - d_t f Delta(g) - {f, g}_P.b."""
    f, g = _psym(f, n), _psym(g, n)
    g.p()
    return product(delta(f), g.d_t()) - product(f.d_t(), delta(g)) - odd_poisson(f, g)


# -- W(2) inside P(4) ---------------------------------------------------------


def field_to_symbol(D):
    """Embed an N = 1 field into P(4): x1 -> x1, y1 -> x2, d_t -> tau, d_x1 -> y1, d_y1 -> y2.

    Masks of N = 1 functions (bit 0 = x1, bit 1 = y1) are read verbatim as
    N = 2 masks (bit 0 = x1, bit 1 = x2), which is exactly the relabelling.
    """
    if D.n != 1:
        raise ValueError("only N = 1 fields embed this way")
    f, f1, g1 = (PSymbol(c.terms, 2) for c in D.comps)
    out = product(f, PSymbol.term(1, tau=1))
    out = out + product(f1, PSymbol.term(1, odd="y1"))
    return out + product(g1, PSymbol.term(1, odd="y2"))


# -- labelled families ------------------------------------------------------------


S2_LABELS = ("L", "E", "H", "F", "h", "p", "x", "y")
S2_PARITY = {"L": 0, "E": 0, "H": 0, "F": 0, "h": 1, "p": 1, "x": 1, "y": 1}


def s2_basis(label, n):
    """The N = 1 basis fields of S'(2, 0)."""
    t = lambda k, odd=(): PSymbol.term(1, t=k, odd=odd, n=1)  # noqa: E731
    half = Coefficient(n + 1) / 2
    if label == "L":
        return VectorField([-t(n + 1), t(n, "x1").scale(-half), t(n, "y1").scale(-half)], 1)
    if label == "E":
        return VectorField.build(1, x1=t(n, "y1"))
    if label == "H":
        return VectorField.build(1, x1=-t(n, "x1"), y1=t(n, "y1"))
    if label == "F":
        return VectorField.build(1, y1=t(n, "x1"))
    if label == "h":
        return VectorField.build(1, t=t(n, "y1"), x1=t(n - 1, "x1 y1").scale(-n))
    if label == "p":
        return VectorField.build(1, y1=t(n + 1))
    if label == "x":
        return VectorField.build(1, x1=t(n + 1))
    if label == "y":
        return VectorField.build(1, t=t(n, "x1"), y1=t(n - 1, "x1 y1").scale(n))
    raise UnknownLabel(label)


SA_LABELS = {
    1: ("L", "E3", "F3", "H3", "T1", "T2", "D1", "D2"),
    2: ("L", "E3", "F3", "H3", "T3", "T4", "D3", "D4"),
}
SA_PARITY = {"L": 0, "E3": 0, "F3": 0, "H3": 0, "T1": 1, "T2": 1, "T3": 1, "T4": 1,
             "D1": 1, "D2": 1, "D3": 1, "D4": 1}


def _mode_field(label, n, alpha):
    """The mode fields H1, H2, E3, F3, H3, T1..T4, D1..D4 with formal alpha."""
    T = PSymbol.term
    an = Coefficient.coerce(alpha) + n
    table = {
        "H1": lambda: T(1, t=n + 1, tau=1),
        "H2": lambda: T(1, t=n, odd="x1 y1") + T(1, t=n, odd="x2 y2"),
        "E3": lambda: T(1, t=n, odd="x1 y2"),
        "F3": lambda: T(1, t=n, odd="x2 y1"),
        "H3": lambda: T(1, t=n, odd="x1 y1") - T(1, t=n, odd="x2 y2"),
        "T1": lambda: T(1, t=n + 1, odd="y1"),
        "T2": lambda: T(1, t=n + 1, odd="y2"),
        "T3": lambda: T(1, t=n + 1, odd="x1"),
        "T4": lambda: T(1, t=n + 1, odd="x2"),
        "D1": lambda: T(1, t=n, tau=1, odd="x1") + T(an, t=n - 1, odd="x1 x2 y2"),
        "D2": lambda: T(1, t=n, tau=1, odd="x2") - T(an, t=n - 1, odd="x1 x2 y1"),
        "D3": lambda: T(1, t=n, tau=1, odd="y1") + T(an, t=n - 1, odd="x2 y1 y2"),
        "D4": lambda: T(1, t=n, tau=1, odd="y2") - T(an, t=n - 1, odd="x1 y1 y2"),
    }
    if label not in table:
        raise UnknownLabel(label)
    return table[label]()


def s_alpha_basis(copy, label, n, alpha=ALPHA, h_deformed=False):
    """Fields spanning the two copies of S'(2, alpha) inside P(4) (or P_h(4))."""
    if copy not in SA_LABELS or label not in SA_LABELS[copy]:
        raise UnknownLabel(f"copy {copy}: {label}")
    T = PSymbol.term
    half = (Coefficient.coerce(alpha) + n + 1) / 2
    an = Coefficient.coerce(alpha) + n
    if label == "L":
        if copy == 2 and h_deformed:
            return T(1, t=n + 1, tau=1) + T(half, t=n, odd="y1 x1", h=H) + T(half, t=n, odd="y2 x2", h=H)
        h1, h2 = _mode_field("H1", n, alpha), _mode_field("H2", n, alpha)
        return h1 + h2.scale(half) if copy == 1 else h1 - h2.scale(half)
    if copy == 2 and h_deformed and label in ("D3", "D4"):
        if label == "D3":
            return T(1, t=n, tau=1, odd="y1") + T(an, t=n - 1, odd="y1 y2 x2", h=H)
        return T(1, t=n, tau=1, odd="y2") - T(an, t=n - 1, odd="y1 y2 x1", h=H)
    return _mode_field(label, n, alpha)


K4_LABELS = ("L", "Q", "X1", "X2", "Y1", "Y2", "R11", "R12", "R21", "R22",
             "Z1", "Z2", "G0", "G1", "G2", "G3")
K4_PARITY = {"L": 0, "Q": 0, "R11": 0, "R12": 0, "R21": 0, "R22": 0, "G0": 0, "G3": 0,
             "X1": 1, "X2": 1, "Y1": 1, "Y2": 1, "Z1": 1, "Z2": 1, "G1": 1, "G2": 1}


def k4_basis(label, n, h="zero", cutoff=DEFAULT_CUTOFF):
    """The sixteen fields spanning the image of K'(4) in P(4), or of its
    central extension in P_h(4) when ``h='formal'``."""
    T = PSymbol.term
    if label == "L":
        return T(1, t=n + 1, tau=1)
    if label == "Q":
        return T(1, t=n + 1, tau=1, odd="x1 x2")
    if label in ("X1", "X2"):
        return T(1, t=n + 1, tau=1, odd="x" + label[1])
    if label in ("Y1", "Y2"):
        return T(1, t=n, odd="y" + label[1])
    if label in ("R11", "R12", "R21", "R22"):
        return T(1, t=n, odd=f"x{label[1]} y{label[2]}")
    if label in ("Z1", "Z2"):
        return T(1, t=n, odd="x1 x2 y" + label[1])
    words = {"G0": "y1 y2", "G1": "y1 y2 x1", "G2": "y1 y2 x2", "G3": "y1 y2 x1 x2"}
    if label not in words:
        raise UnknownLabel(label)
    if h == "zero":
        if label == "G3" and n == 0:
            raise UndefinedMode("G3 is defined only for nonzero modes")
        scale = n if label == "G3" else 1
        return T(scale, t=n - 1, tau=-1, odd=words[label])
    if h != "formal":
        raise ValueError(f"h must be 'zero' or 'formal', not {h!r}")
    if label == "G3":
        central = T(H, t=n)
        if n == 0:
            return central
        inner = T(1, t=n - 1, odd=words[label], h=H)
        return circ_h(T(1, tau=-1), inner, cutoff).scale(n) + central
    inner = T(1, t=n - 1, odd=words[label], h=H)
    return circ_h(T(1, tau=-1), inner, cutoff)


def swap_xi_eta(A, h=ZERO):
    """Interchange x_i <-> y_i in a symbol, renormalizing in Lambda_h."""
    return A.swap_odd(h)


class LabeledFamily:
    """A family {a_n} of mode fields with a bracket, for closure and cocycle checks."""

    def __init__(self, name, labels, parity, element, bracket, defined=None):
        self.name = name
        self.labels = tuple(labels)
        self.parity = dict(parity)
        self._element = element
        self._bracket = bracket
        self._defined = defined or (lambda label, n: True)
        self._elements = {}
        self._spans = {}
        self._brackets = {}

    def element(self, label, n):
        key = (label, n)
        if key not in self._elements:
            self._elements[key] = self._element(label, n)
        return self._elements[key]

    def labels_at(self, n):
        return [l for l in self.labels if self._defined(l, n)]

    def span(self, n):
        if n not in self._spans:
            span = SpanBasis()
            for l in self.labels_at(n):
                if not span.add(self.element(l, n).vector(), l):
                    raise ClosureFailure(f"{self.name}: {l}[{n}] is linearly dependent")
            self._spans[n] = span
        return self._spans[n]

    def decompose(self, x, n):
        combo = self.span(n).express(x.vector())
        if combo is None:
            raise ClosureFailure(f"{self.name}: {x} is not in the span at mode {n}")
        return combo

    def bracket(self, a, n, b, k):
        """[a_n, b_k] as {label: coefficient} at mode n + k."""
        key = (a, n, b, k)
        if key not in self._brackets:
            x = self._bracket(self.element(a, n), self.element(b, k))
            self._brackets[key] = self.decompose(x, n + k)
        return self._brackets[key]

    def check_closure(self, rng):
        """Decompose every bracket with modes in [-rng, rng]; returns the number checked."""
        count = 0
        for n, k in cartesian(range(-rng, rng + 1), repeat=2):
            for a in self.labels_at(n):
                for b in self.labels_at(k):
                    self.bracket(a, n, b, k)
                    count += 1
        return count


def s2_family():
    return LabeledFamily("S'(2,0)", S2_LABELS, S2_PARITY, s2_basis, vf_bracket)


def s_alpha_family(copy=1, alpha=ALPHA, h_deformed=False):
    from .psymbols import normalized_bracket_h

    bracket = normalized_bracket_h if h_deformed else poisson_bracket
    return LabeledFamily(
        f"S^{copy}_alpha",
        SA_LABELS[copy],
        SA_PARITY,
        lambda l, n: s_alpha_basis(copy, l, n, alpha, h_deformed),
        bracket,
    )


def k4_family():
    return LabeledFamily(
        "K'(4)",
        K4_LABELS,
        K4_PARITY,
        lambda l, n: k4_basis(l, n, "zero"),
        poisson_bracket,
        defined=lambda l, n: not (l == "G3" and n == 0),
    )


# -- 2-cocycles -----------------------------------------------------------------


class CocycleTable:
    """A bilinear form on mode fields given by rules on label pairs.

    ``entries[(a, b)](n, k)`` gives c(a_n, b_k); the reversed pair follows
    from super skew-symmetry.  Unlisted pairs vanish.
    """

    def __init__(self, name, parity, entries):
        self.name = name
        self.parity = dict(parity)
        self.entries = dict(entries)

    def value(self, a, n, b, k):
        rule = self.entries.get((a, b))
        if rule is not None:
            return Coefficient.coerce(rule(n, k))
        rule = self.entries.get((b, a))
        if rule is not None:
            c = Coefficient.coerce(rule(k, n))
            return c if self.parity[a] and self.parity[b] else -c
        return ZERO

    def partners(self):
        out = {}
        for a, b in self.entries:
            out.setdefault(a, set()).add(b)
            out.setdefault(b, set()).add(a)
        return out


def _delta(n, k):
    return 1 if n + k == 0 else 0


def virasoro_table(perturbed=False):
    """c on S'(2, 0); ``perturbed`` replaces the Virasoro term by n^5 (not a cocycle)."""
    from fractions import Fraction as F

    vir = (lambda n, k: n**5 * _delta(n, k)) if perturbed else (lambda n, k: F(n**3 - n, 12) * _delta(n, k))
    return CocycleTable(
        "S'(2,0)" + (" perturbed" if perturbed else ""),
        S2_PARITY,
        {
            ("L", "L"): vir,
            ("E", "F"): lambda n, k: F(n, 6) * _delta(n, k),
            ("H", "H"): lambda n, k: F(n, 3) * _delta(n, k),
            ("h", "p"): lambda n, k: -F(n * n - n, 6) * _delta(n, k),
            ("x", "y"): lambda n, k: -F(n * n + n, 6) * _delta(n, k),
        },
    )


def k4_table(perturbed=False):
    """c on K'(4): the central extension realized by the h-deformation."""
    lg = (lambda n, k: n**5 * _delta(n, k)) if perturbed else (lambda n, k: -n * _delta(n, k))
    return CocycleTable(
        "K'(4)" + (" perturbed" if perturbed else ""),
        K4_PARITY,
        {
            ("L", "G3"): lg,
            ("X1", "G2"): lambda n, k: _delta(n, k),
            ("X2", "G1"): lambda n, k: -_delta(n, k),
            ("Q", "G0"): lambda n, k: _delta(n, k),
        },
    )


def cocycle_verify(table, family, rng=3):
    """Violations of the super 2-cocycle identity
    (-1)^{p(a)p(x)} c([a,b],x) + (-1)^{p(b)p(a)} c([b,x],a) + (-1)^{p(x)p(b)} c([x,a],b) = 0
    over homogeneous triples with modes in [-rng, rng].

    Every listed rule carries delta_{n+k,0}, so only triples with modes
    summing to zero can contribute; the others vanish identically.
    """
    par = family.parity

    def c_of(a, n, b, k, x, l):
        total = ZERO
        for lab, coeff in family.bracket(a, n, b, k).items():
            v = table.value(lab, n + k, x, l)
            if not v.is_zero():
                total = total + coeff * v
        return total

    violations = []
    modes = range(-rng, rng + 1)
    for n in modes:
        for k in modes:
            l = -n - k
            if abs(l) > rng:
                continue
            for a in family.labels_at(n):
                for b in family.labels_at(k):
                    for x in family.labels_at(l):
                        pa, pb, px = par[a], par[b], par[x]
                        s1 = -1 if pa & px else 1
                        s2 = -1 if pb & pa else 1
                        s3 = -1 if px & pb else 1
                        total = (c_of(a, n, b, k, x, l) * s1
                                 + c_of(b, k, x, l, a, n) * s2
                                 + c_of(x, l, a, n, b, k) * s3)
                        if not total.is_zero():
                            violations.append(((a, n), (b, k), (x, l), total))
    return violations


@lru_cache(maxsize=None)
def quotient_field(n_odd=1):
    """x1 ... yN d_t with the t^-alpha factor stripped."""
    word = [gm.xi(i, n_odd) for i in range(1, n_odd + 1)] + [gm.eta(i, n_odd) for i in range(1, n_odd + 1)]
    comps = [PSymbol.term(1, odd=word, n=n_odd)] + [PSymbol.zero(n_odd)] * (2 * n_odd)
    return VectorField(comps, n_odd)
