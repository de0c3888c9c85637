"""The exceptional family Gamma(sigma1, sigma2, sigma3) and its concrete realizations.

The abstract algebra has the nine even elements P_i(u, v) (three sp(2)
triples) and the eight odd tensors e_a f_b h_c.  Concrete realizations are
dicts ``label -> element`` for the labels E1 .. H3, T1 .. T4, D1 .. D4, in
Poisson symbols, deformed symbols, or Weyl supermatrices.  A
:class:`LinearMap` sends the abstract basis to one of them.
"""

from itertools import product as cartesian

from .coeff import ALPHA, H, ONE, OMEGA, ZERO, Coefficient
from .linalg import SpanBasis, kernel
from .psymbols import DEFAULT_CUTOFF, PSymbol, circ_h, normalized_bracket_h, poisson_bracket
from .weyl import GAMMA_LABELS, gamma_matrix, supermatrix_bracket


class UnknownVariant(KeyError):
    pass


class NoConvergence(RuntimeError):
    pass


# -- the abstract algebra ---------------------------------------------------------------

_SPACES = ("e", "f", "h")
_PAIRS = ((1, 1), (2, 2), (1, 2))


def even_label(i, a, b):
    a, b = min(a, b), max(a, b)
    u = _SPACES[i - 1]
    return f"P{i}({u}{a},{u}{b})"


def odd_label(a, b, c):
    return f"e{a}f{b}h{c}"


EVEN_LABELS = tuple(even_label(i, a, b) for i in (1, 2, 3) for a, b in _PAIRS)
ODD_LABELS = tuple(odd_label(a, b, c) for a, b, c in cartesian((1, 2), repeat=3))
ABSTRACT_LABELS = EVEN_LABELS + ODD_LABELS


def _psi(a, b):
    return (a == 1 and b == 2) - (a == 2 and b == 1)


def _sp_matrix(a, b):
    """Matrix of P(u_a, u_b) z = psi(u_b, z) u_a - psi(z, u_a) u_b in the basis u1, u2."""
    m = [[0, 0], [0, 0]]
    for z in (1, 2):
        m[a - 1][z - 1] += _psi(b, z)
        m[b - 1][z - 1] -= _psi(z, a)
    return m


def _sp_decompose(m, i):
    """[[x, y], [z, -x]] = y/2 P(u1,u1) - z/2 P(u2,u2) - x P(u1,u2)."""
    x, y, z = m[0][0], m[0][1], m[1][0]
    out = {
        even_label(i, 1, 1): Coefficient.coerce(y) / 2,
        even_label(i, 2, 2): -Coefficient.coerce(z) / 2,
        even_label(i, 1, 2): -Coefficient.coerce(x),
    }
    return {k: v for k, v in out.items() if not v.is_zero()}


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


class GammaElement:
    """A vector in the abstract algebra: label -> Coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: Coefficient.coerce(c) for k, c in (terms or {}).items()}
        self.terms = {k: c for k, c in self.terms.items() if not c.is_zero()}

    @classmethod
    def basis(cls, label):
        return cls({label: ONE})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return GammaElement(out)

    def __neg__(self):
        return GammaElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return GammaElement({k: Coefficient.coerce(c) * v for k, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def vector(self):
        return dict(self.terms)

    def __eq__(self, other):
        if not isinstance(other, GammaElement):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(str(self))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c}) {k}" for k, c in sorted(self.terms.items()))


class GammaAlgebra:
    """Structure constants of Gamma(sigma1, sigma2, sigma3) on the 17 abstract labels."""

    def __init__(self, sigma1, sigma2, sigma3):
        self.sigma = tuple(Coefficient.coerce(s) for s in (sigma1, sigma2, sigma3))
        self.labels = ABSTRACT_LABELS
        self.parity = {l: 0 for l in EVEN_LABELS}
        self.parity.update({l: 1 for l in ODD_LABELS})
        self.table = {}
        self._build()

    @property
    def dim(self):
        return len(self.labels)

    def _build(self):
        mats = {}
        for i in (1, 2, 3):
            for a, b in _PAIRS:
                mats[even_label(i, a, b)] = (i, _sp_matrix(a, b))
        for x, (i, mx) in mats.items():
            for y, (j, my) in mats.items():
                if i != j:
                    continue
                xy, yx = _matmul(mx, my), _matmul(my, mx)
                comm = [[xy[r][c] - yx[r][c] for c in range(2)] for r in range(2)]
                self.table[(x, y)] = _sp_decompose(comm, i)
        for x, (i, mx) in mats.items():
            for abc in cartesian((1, 2), repeat=3):
                out = {}
                for new in (1, 2):
                    c = mx[new - 1][abc[i - 1] - 1]
                    if c:
                        idx = list(abc)
                        idx[i - 1] = new
                        out[odd_label(*idx)] = Coefficient(c)
                y = odd_label(*abc)
                self.table[(x, y)] = out
                self.table[(y, x)] = {k: -v for k, v in out.items()}
        s1, s2, s3 = self.sigma
        for xa in cartesian((1, 2), repeat=3):
            for ya in cartesian((1, 2), repeat=3):
                out = {}
                p = [_psi(xa[k], ya[k]) for k in range(3)]
                for i, (coef, other) in enumerate(((s1, p[1] * p[2]), (s2, p[0] * p[2]), (s3, p[0] * p[1]))):
                    if other:
                        lab = even_label(i + 1, xa[i], ya[i])
                        out[lab] = out.get(lab, ZERO) + coef * other
                self.table[(odd_label(*xa), odd_label(*ya))] = {k: v for k, v in out.items() if not v.is_zero()}

    def bracket_labels(self, x, y):
        return self.table.get((x, y), {})

    def bracket(self, X, Y):
        out = {}
        for x, cx in X.terms.items():
            for y, cy in Y.terms.items():
                for z, c in self.bracket_labels(x, y).items():
                    out[z] = out.get(z, ZERO) + cx * cy * c
        return GammaElement(out)

    def element(self, label):
        return GammaElement.basis(label)

    def format_table(self):
        lines = []
        for x in self.labels:
            for y in self.labels:
                val = self.bracket_labels(x, y)
                if val:
                    lines.append(f"[{x}, {y}] = {GammaElement(val)}")
        return "\n".join(lines)


def build_gamma(sigma1, sigma2, sigma3):
    return GammaAlgebra(sigma1, sigma2, sigma3)


def gamma_alpha(alpha=ALPHA):
    """Gamma(2, -1 - alpha, alpha - 1)."""
    a = Coefficient.coerce(alpha)
    return GammaAlgebra(2, -1 - a, a - 1)


def jacobi_check(g):
    """Homogeneous basis triples violating the super Jacobi identity."""
    violations = []
    labels, par = g.labels, g.parity
    for a in labels:
        A = g.element(a)
        for b in labels:
            B = g.element(b)
            ab = g.bracket(A, B)
            for c in labels:
                C = g.element(c)
                pa, pb, pc = par[a], par[b], par[c]
                total = g.bracket(A, g.bracket(B, C)).scale(-1 if pa & pc else 1)
                total = total + g.bracket(B, g.bracket(C, A)).scale(-1 if pb & pa else 1)
                total = total + g.bracket(C, ab).scale(-1 if pc & pb else 1)
                if not total.is_zero():
                    violations.append((a, b, c, total))
    return violations


# -- concrete generators ------------------------------------------------------------------


def _T(c=1, t=0, tau=0, odd=(), h=ZERO):
    return PSymbol.term(c, t=t, tau=tau, odd=odd, h=h)


def _hsum():
    return _T(odd="x1 y1") + _T(odd="x2 y2")


def _common(a):
    """Elements shared by every symbol variant."""
    return {
        "E2": _T(odd="x1 x2"),
        "F2": _T(odd="y1 y2"),
        "E3": _T(odd="x1 y2"),
        "F3": _T(odd="x2 y1"),
        "H3": _T(odd="x1 y1") - _T(odd="x2 y2"),
        "T1": _T(t=1, odd="y1"),
        "T2": _T(t=1, odd="y2"),
        "T3": _T(t=1, odd="x1"),
        "T4": _T(t=1, odd="x2"),
        "D1": _T(tau=1, odd="x1") + _T(a, t=-1, odd="x1 x2 y2"),
        "D2": _T(tau=1, odd="x2") - _T(a, t=-1, odd="x1 x2 y1"),
    }


def _poisson(a):
    g = _common(a)
    g.update({
        "E1": _T(t=2),
        "F1": _T(tau=2) - _T(2 * a, t=-2, odd="x1 x2 y1 y2"),
        "H1": _T(t=1, tau=1),
        "H2": _hsum(),
        "D3": _T(tau=1, odd="y1") + _T(a, t=-1, odd="x2 y1 y2"),
        "D4": _T(tau=1, odd="y2") - _T(a, t=-1, odd="x1 y1 y2"),
    })
    return g


def _deformed(a):
    g = _common(a)
    g.update({
        "E1": _T(t=2),
        "H1": _T(t=1, tau=1) + _T((a + 1) * H / 2),
        "F1": _T(tau=2) - (_T(2, t=-2, odd="x1 x2 y1 y2") + _T(H, t=-2, odd="x1 y1")
                           + _T(H, t=-2, odd="x2 y2") - _T(H, t=-1, tau=1)).scale(a),
        "H2": _hsum() - _T(H),
        "D3": _T(tau=1, odd="y1") + _T(a, t=-1, odd="y1 y2 x2", h=H),
        "D4": _T(tau=1, odd="y2") - _T(a, t=-1, odd="y1 y2 x1", h=H),
    })
    return g


def _pseudo_shared(a):
    g = _common(a)
    g.update({
        "E1": _T(t=3, tau=1) + _T(t=2, odd="x1 y1") + _T(t=2, odd="x2 y2"),
        "E2": _T(t=1, tau=1, odd="x1 x2"),
        "T3": _T(t=2, tau=1, odd="x1") + _T(t=1, odd="x1 x2 y2"),
        "T4": _T(t=2, tau=1, odd="x2") - _T(t=1, odd="x1 x2 y1"),
    })
    return g


def _pseudo_h(a, cutoff):
    g = _pseudo_shared(a)
    inv = _T(tau=-1)

    def ih(t, word):
        return circ_h(inv, _T(t=t, odd=word, h=H), cutoff)

    hs = _T(t=-2, odd="x1 y1") + _T(t=-2, odd="x2 y2")
    g.update({
        "F1": _T(t=-1, tau=1) + (ih(-3, "y1 y2 x1 x2").scale(-2) + _T(H, t=-2)).scale(a + 1) - hs,
        "H1": _T(t=1, tau=1) + _T((a + 1) * H / 2),
        "F2": ih(-1, "y1 y2"),
        "H2": _hsum() - _T(H),
        "D3": _T(t=-1, odd="y1") + ih(-2, "y1 y2 x2").scale(a + 1),
        "D4": _T(t=-1, odd="y2") - ih(-2, "y1 y2 x1").scale(a + 1),
    })
    return g


def _pseudo_limit(a):
    g = _pseudo_shared(a)
    hs = _T(t=-2, odd="x1 y1") + _T(t=-2, odd="x2 y2")
    g.update({
        "F1": _T(t=-1, tau=1) - _T(2 * (a + 1), t=-3, tau=-1, odd="x1 x2 y1 y2") - hs,
        "H1": _T(t=1, tau=1),
        "F2": _T(t=-1, tau=-1, odd="y1 y2"),
        "H2": _hsum(),
        "D3": _T(t=-1, odd="y1") + _T(a + 1, t=-2, tau=-1, odd="y1 y2 x2"),
        # a single factor t^-2: the value at h = 0 of the deformed element
        "D4": _T(t=-1, odd="y2") - _T(a + 1, t=-2, tau=-1, odd="y1 y2 x1"),
    })
    return g


VARIANTS = ("poisson", "deformed", "pseudo_h", "pseudo_limit", "matrices")


def gamma_alpha_generators(alpha=ALPHA, variant="poisson", cutoff=DEFAULT_CUTOFF, h=H):
    """The seventeen labelled elements of a realization, as a dict.

    ``h`` specializes the deformation parameter of the deformed variants.
    """
    a = Coefficient.coerce(alpha)
    if variant == "poisson":
        return _poisson(a)
    if variant == "matrices":
        return {l: gamma_matrix(l, a) for l in GAMMA_LABELS}
    if variant == "pseudo_limit":
        return _pseudo_limit(a)
    if variant == "deformed":
        gens = _deformed(a)
    elif variant == "pseudo_h":
        gens = _pseudo_h(a, cutoff)
    else:
        raise UnknownVariant(variant)
    h = Coefficient.coerce(h)
    if h != H:
        gens = {k: v.evaluate({"h": h}) for k, v in gens.items()}
    return gens


def variant_bracket(variant, cutoff=DEFAULT_CUTOFF, h=H):
    """The bracket under which a realization is a Lie superalgebra."""
    if variant in ("poisson", "pseudo_limit"):
        return poisson_bracket
    if variant in ("deformed", "pseudo_h"):
        return lambda A, B: normalized_bracket_h(A, B, cutoff, h)
    if variant == "matrices":
        return supermatrix_bracket
    raise UnknownVariant(variant)


# the correspondence of abstract labels with the named generators
PHI = {
    even_label(1, 1, 1): (-1, "E1"),
    even_label(1, 2, 2): (-1, "F1"),
    even_label(1, 1, 2): (-1, "H1"),
    even_label(2, 1, 1): (-2, "F2"),
    even_label(2, 2, 2): (-2, "E2"),
    even_label(2, 1, 2): (1, "H2"),
    even_label(3, 1, 1): (-2, "F3"),
    even_label(3, 2, 2): (2, "E3"),
    even_label(3, 1, 2): (1, "H3"),
    odd_label(1, 1, 1): (OMEGA, "T1"),
    odd_label(1, 1, 2): (OMEGA, "T2"),
    odd_label(1, 2, 1): (-OMEGA, "T4"),
    odd_label(1, 2, 2): (OMEGA, "T3"),
    odd_label(2, 1, 1): (OMEGA, "D3"),
    odd_label(2, 1, 2): (OMEGA, "D4"),
    odd_label(2, 2, 1): (-OMEGA, "D2"),
    odd_label(2, 2, 2): (OMEGA, "D1"),
}


class LinearMap:
    """Assignment abstract label -> image, extended linearly."""

    def __init__(self, images):
        self.images = dict(images)

    def __call__(self, x):
        out = None
        for label, c in x.terms.items():
            term = self.images[label].scale(c)
            out = term if out is None else out + term
        return out

    def __getitem__(self, label):
        return self.images[label]


def phi_map(alpha=ALPHA, variant="poisson", cutoff=DEFAULT_CUTOFF, generators=None, h=H):
    """The isomorphism from Gamma(2, -1 - alpha, alpha - 1) onto a realization."""
    gens = generators or gamma_alpha_generators(alpha, variant, cutoff, h)
    return LinearMap({k: gens[name].scale(c) for k, (c, name) in PHI.items()})


def _is_zero(x):
    return x is None or x.is_zero()


class HomVerdict:
    def __init__(self, residuals, checked, rank, floor):
        self.residuals = residuals
        self.checked = checked
        self.rank = rank
        self.floor = floor

    @property
    def passed(self):
        return not self.residuals and self.rank == 17

    def __bool__(self):
        return self.passed

    def __repr__(self):
        return f"HomVerdict(checked={self.checked}, failures={len(self.residuals)}, rank={self.rank})"


def hom_check(phi, source, target_bracket, labels=None):
    """Check phi([x, y]) = [phi(x), phi(y)] on all basis pairs and that images are independent."""
    labels = labels or source.labels
    residuals = []
    floor = None
    for x in labels:
        for y in labels:
            lhs = phi(source.bracket(source.element(x), source.element(y)))
            rhs = target_bracket(phi[x], phi[y])
            diff = rhs if lhs is None else rhs - lhs
            f = getattr(diff, "floor", None)
            if f is not None:
                floor = f if floor is None else max(floor, f)
            if not diff.is_zero():
                residuals.append((x, y, diff))
    span = SpanBasis()
    for x in labels:
        span.add(phi[x].vector(), x)
    return HomVerdict(residuals, len(labels) ** 2, span.dim, floor)


def scaling_map(base, factor=2):
    """Map Gamma(k sigma) -> Gamma(sigma), k = factor^2: even fixed, odd scaled by factor."""
    return LinearMap({l: base.element(l).scale(factor if base.parity[l] else 1) for l in base.labels})


# -- relation ledger ------------------------------------------------------------------------


def relations(alpha=ALPHA):
    """The eight bracket relations among the odd generators: (x, y, [(coeff, label)])."""
    a = Coefficient.coerce(alpha)
    return [
        ("T1", "T3", [(ONE, "E1")]),
        ("T1", "D4", [(-(1 + a), "F2")]),
        ("T2", "T4", [(ONE, "E1")]),
        ("T2", "D3", [(1 + a, "F2")]),
        ("D1", "T4", [(1 + a, "E2")]),
        ("D1", "D3", [(ONE, "F1")]),
        ("D2", "T3", [(-(1 + a), "E2")]),
        ("D2", "D4", [(ONE, "F1")]),
    ]


def relations_check(variant, alpha=ALPHA, cutoff=DEFAULT_CUTOFF, h=H):
    """[(x, y, residual)] for each listed relation in the chosen realization."""
    gens = gamma_alpha_generators(alpha, variant, cutoff, h)
    br = variant_bracket(variant, cutoff, h)
    out = []
    for x, y, rhs in relations(alpha):
        val = br(gens[x], gens[y])
        for c, lab in rhs:
            val = val - gens[lab].scale(c)
        out.append((x, y, val))
    return out


def span_closure(gens, bracket):
    """Pairs of labels whose bracket leaves the span of ``gens``."""
    span = SpanBasis()
    for label, x in gens.items():
        span.add(x.vector(), label)
    labels = list(gens)
    out = []
    for i, a in enumerate(labels):
        for b in labels[i:]:
            if not span.contains(bracket(gens[a], gens[b]).vector()):
                out.append((a, b))
    return out


# -- generation from odd elements --------------------------------------------------------------


class Generated:
    def __init__(self, elements, rounds):
        self.elements = elements
        self.rounds = rounds

    @property
    def dim(self):
        return len(self.elements)


def generate_from_odd(odd_gens, bracket, max_rounds=8):
    """Close the span of the generators under the bracket."""
    span = SpanBasis()
    elems = []
    for g in odd_gens:
        if span.add(g.vector()):
            elems.append(g)
    done = set()
    for rounds in range(1, max_rounds + 1):
        grew = False
        count = len(elems)
        for i in range(count):
            for j in range(i, count):
                if (i, j) in done:
                    continue
                done.add((i, j))
                z = bracket(elems[i], elems[j])
                if span.add(z.vector()):
                    elems.append(z)
                    grew = True
        if not grew:
            return Generated(elems, rounds)
    raise NoConvergence(f"span still growing after {max_rounds} rounds (dimension {len(elems)})")


ODD_GENERATORS = ("T1", "T2", "T3", "T4", "D1", "D2", "D3", "D4")


# -- contraction of the deformed realizations ---------------------------------------------------


class LimitVerdict:
    def __init__(self, per_label, depth):
        self.per_label = per_label
        self.depth = depth

    @property
    def passed(self):
        return all(ok for ok, _ in self.per_label.values())

    def __bool__(self):
        return self.passed


def contraction_limit_check(variant_h, variant_0):
    """Each deformed image at h = 0 equals the undeformed one (on the known window).

    ``depth`` records, per truncated label, how many tau-orders below the
    lowest exact term of the undeformed image were compared.
    """
    per_label = {}
    depth = {}
    for label, x in variant_h.items():
        y = variant_0[label]
        limit = x.evaluate({"h": 0})
        diff = limit - y
        per_label[label] = (diff.is_zero(), diff)
        if x.floor is not None:
            depth[label] = y.min_tau() - x.floor
    return LimitVerdict(per_label, depth)


# -- the non-simple points -------------------------------------------------------------------------


PSL_SPANS = {
    1: ("E1", "H1", "F1", "E2", "H2", "F2"),
    -1: ("E1", "H1", "F1", "E3", "H3", "F3"),
}
_QUOTIENT = {1: ("E3", "F3", "H3"), -1: ("E2", "F2", "H2")}


class PslVerdict:
    def __init__(self, **fields):
        self.__dict__.update(fields)

    @property
    def passed(self):
        return (self.closed and self.dim == 14 and self.center_dim == 0 and self.ideal
                and self.quotient_ok)

    def __bool__(self):
        return self.passed


def psl_check(alpha_value, span_of=None):
    """Check the fourteen-dimensional ideal at alpha = +-1 in the matrix realization.

    ``span_of`` picks which label set to test (defaults to the one for
    ``alpha_value``); pairing the alpha = 1 set with alpha = 2 is the
    generic-parameter control, where closure must fail.
    """
    key = span_of if span_of is not None else alpha_value
    gens = gamma_alpha_generators(alpha_value, "matrices")
    labels = PSL_SPANS[key] + ODD_GENERATORS
    basis = [gens[l] for l in labels]
    span = SpanBasis()
    for l, x in zip(labels, basis):
        span.add(x.vector(), l)
    dim = span.dim
    br = supermatrix_bracket
    open_pairs = []
    for i, x in enumerate(basis):
        for y in basis[i:]:
            if not span.contains(br(x, y).vector()):
                open_pairs.append((x, y))
    closed = not open_pairs
    # the center: kernel of z -> ([z, b_1], ..., [z, b_14])
    rows = []
    for x in basis:
        v = {}
        for j, y in enumerate(basis):
            for k, c in br(x, y).vector().items():
                v[(j,) + k] = c
        rows.append(v)
    center_dim = len(kernel(rows))
    ideal = all(span.contains(br(gens[z], y).vector()) for z in GAMMA_LABELS for y in basis)
    quotient_ok = False
    kappa = None
    if key in _QUOTIENT and closed:
        e, f, hh = (gens[l] for l in _QUOTIENT[key])
        big = SpanBasis()
        for l, x in zip(labels, basis):
            big.add(x.vector(), l)
        for l, x in zip(("E", "F", "H"), (e, f, hh)):
            big.add(x.vector(), l)

        def coords(z):
            c = big.express(z.vector()) or {}
            return {q: c.get(q, ZERO) for q in ("E", "F", "H")}

        he, hf, ef = coords(br(hh, e)), coords(br(hh, f)), coords(br(e, f))
        kappa = ef["H"]
        quotient_ok = (
            he == {"E": Coefficient(2), "F": ZERO, "H": ZERO}
            and hf == {"E": ZERO, "F": Coefficient(-2), "H": ZERO}
            and ef["E"].is_zero() and ef["F"].is_zero() and not kappa.is_zero()
        )
    return PslVerdict(closed=closed, dim=dim, center_dim=center_dim, ideal=ideal,
                      quotient_ok=quotient_ok, kappa=kappa, open_pairs=len(open_pairs))
