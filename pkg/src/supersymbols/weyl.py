"""The Weyl algebra C[t, 1/t][d] with d = t d/dt, and (2|2) supermatrices over it.

A :class:`WeylElement` is a map ``(t_exp, d_pow) -> Coefficient`` in the
normal form ``t^a d^k`` (powers of d on the right); products use
``d t^b = t^b (d + b)``.  Supermatrices are sparse 4x4 arrays whose rows and
columns 1, 2 are even and 3, 4 are odd.
"""

from math import comb

from .coeff import ALPHA, ZERO, Coefficient
from .grammar import Algebra, parse
from .grassmann import _join_coeff, _join_terms
from .psymbols import MixedParity


class ShapeViolation(ValueError):
    def __init__(self, message, entry=None):
        super().__init__(message if entry is None else f"{message} at entry {entry}")
        self.entry = entry


class WeylElement:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def monomial(cls, c=1, t=0, d=0):
        return cls({(t, d): Coefficient.coerce(c)})

    @classmethod
    def scalar(cls, c):
        return cls.monomial(c)

    def __add__(self, other):
        if not isinstance(other, WeylElement):
            other = WeylElement.scalar(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return WeylElement(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, WeylElement):
            other = WeylElement.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Coefficient.coerce(c)
        return WeylElement({k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return weyl_mul(self, other)
        return self.scale(other)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            try:
                other = WeylElement.scalar(other)
            except TypeError:
                return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(str(self))

    def evaluate(self, assignment):
        return WeylElement({k: c.evaluate(assignment) for k, c in self.terms.items()})

    def act(self, m):
        """Coefficient p with self(t^m) = sum p t^(a + m), as {a: p}; m may be a Coefficient."""
        out = {}
        for (a, k), c in self.terms.items():
            out[a] = out.get(a, ZERO) + c * Coefficient.coerce(m) ** k
        return {a: c for a, c in out.items() if not c.is_zero()}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        # highest power of d first, then increasing t-degree
        for a, k in sorted(self.terms, key=lambda key: (-key[1], key[0])):
            factors = []
            if a:
                factors.append("t" if a == 1 else f"t^{a}")
            if k:
                factors.append("d" if k == 1 else f"d^{k}")
            parts.append(_join_coeff(self.terms[(a, k)], " ".join(factors)))
        return _join_terms(parts)

    def __repr__(self):
        return f"WeylElement({str(self)!r})"


def weyl_mul(x, y):
    """Normal-ordered product: (t^a d^k)(t^b d^l) = sum_j C(k, j) b^(k-j) t^(a+b) d^(j+l)."""
    out = {}
    for (a, k), c1 in x.terms.items():
        for (b, l), c2 in y.terms.items():
            c12 = c1 * c2
            for j in range(k + 1):
                f = comb(k, j) * b ** (k - j)
                if f:
                    key = (a + b, j + l)
                    out[key] = out.get(key, ZERO) + c12 * f
    return WeylElement(out)


class WeylAlgebra(Algebra):
    generators = ("t", "d")

    def generator(self, name, power):
        if name == "t":
            return WeylElement.monomial(1, t=power)
        if power < 0:
            raise ValueError("d has no inverse in the Weyl algebra")
        return WeylElement.monomial(1, d=power)

    def from_scalar(self, c):
        return WeylElement.scalar(c)

    def mul(self, x, y):
        return weyl_mul(x, y)


def parse_weyl(text):
    value = parse(text, WeylAlgebra())
    if isinstance(value, Coefficient):
        return WeylElement.scalar(value)
    return value


def W(text):
    return parse_weyl(text)


# -- supermatrices ------------------------------------------------------------------


def _block_parity(i, j):
    return int((i < 2) != (j < 2))


class WeylSuperMatrix:
    """Sparse 4x4 matrix over the Weyl algebra, indices 0-based internally."""

    __slots__ = ("entries",)

    def __init__(self, entries=None):
        self.entries = {k: v for k, v in (entries or {}).items() if not v.is_zero()}

    @classmethod
    def from_entries(cls, **kw):
        """``from_entries(e13="d t", e42="t")`` with 1-based positions."""
        out = {}
        for key, value in kw.items():
            i, j = int(key[1]) - 1, int(key[2]) - 1
            out[(i, j)] = value if isinstance(value, WeylElement) else parse_weyl(value)
        return cls(out)

    @classmethod
    def diag(cls, *values):
        return cls({(i, i): v if isinstance(v, WeylElement) else parse_weyl(str(v)) for i, v in enumerate(values)})

    @classmethod
    def identity(cls, c=1):
        return cls({(i, i): WeylElement.scalar(c) for i in range(4)})

    def __getitem__(self, ij):
        return self.entries.get(ij, WeylElement())

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return WeylSuperMatrix(out)

    def __neg__(self):
        return WeylSuperMatrix({k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Coefficient.coerce(c)
        return WeylSuperMatrix({k: v.scale(c) for k, v in self.entries.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        out = {}
        for (i, k), a in self.entries.items():
            for (k2, j), b in other.entries.items():
                if k == k2:
                    prod = weyl_mul(a, b)
                    out[(i, j)] = out[(i, j)] + prod if (i, j) in out else prod
        return WeylSuperMatrix(out)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, WeylSuperMatrix):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(str(self))

    def parity(self):
        ps = {_block_parity(i, j) for (i, j) in self.entries}
        if len(ps) > 1:
            return "mixed"
        return "odd" if ps == {1} else "even"

    def p(self):
        par = self.parity()
        if par == "mixed":
            raise MixedParity("matrix mixes even and odd blocks")
        return 1 if par == "odd" else 0

    def vector(self):
        out = {}
        for (i, j), v in self.entries.items():
            for (a, k), c in v.terms.items():
                out[(i, j, a, k)] = c
        return out

    def evaluate(self, assignment):
        return WeylSuperMatrix({k: v.evaluate(assignment) for k, v in self.entries.items()})

    def rows(self):
        return [[str(self[(i, j)]) for j in range(4)] for i in range(4)]

    def __str__(self):
        rows = self.rows()
        width = max(len(x) for r in rows for x in r)
        lines = []
        for i, r in enumerate(rows):
            left = "  ".join(x.rjust(width) for x in r[:2])
            right = "  ".join(x.rjust(width) for x in r[2:])
            lines.append(f"[ {left} | {right} ]")
            if i == 1:
                lines.append("-" * len(lines[0]))
        return "\n".join(lines)

    def __repr__(self):
        return f"WeylSuperMatrix({self.entries!r})"


def supermatrix_bracket(M1, M2):
    p1, p2 = M1.p(), M2.p()
    a, b = M1 @ M2, M2 @ M1
    return a + b if p1 and p2 else a - b


# -- the embedding of the centrally extended K'(4) ---------------------------------


def _t(n, c=1):
    return WeylElement.monomial(c, t=n)


def _td(n, c=1):
    """t^n d."""
    return WeylElement.monomial(c, t=n, d=1)


def _dt(n, c=1):
    """d t^n in normal form."""
    return weyl_mul(WeylElement.monomial(c, d=1), WeylElement.monomial(1, t=n))


def embed_I(label, n):
    """Matrix image of the mode field ``label_n`` (0-based entries internally)."""
    M = WeylSuperMatrix
    if label == "L":
        return M({(0, 0): _dt(n), (1, 1): _td(n), (2, 2): _td(n), (3, 3): _td(n)})
    if label == "G3":
        return M({(i, i): _t(n) for i in range(4)})
    table = {
        "R11": {(1, 1): _t(n), (2, 2): _t(n)},
        "R22": {(1, 1): _t(n), (3, 3): _t(n)},
        "R12": {(2, 3): _t(n)},
        "R21": {(3, 2): _t(n)},
        "G0": {(0, 1): _t(n, -1)},
        "Q": {(1, 0): _t(n)},
        "Y1": {(0, 2): _dt(n), (3, 1): _t(n)},
        "Y2": {(0, 3): _dt(n), (2, 1): _t(n, -1)},
        "X1": {(1, 3): _td(n), (2, 0): _t(n)},
        "X2": {(1, 2): _td(n, -1), (3, 0): _t(n)},
        "G1": {(0, 3): _t(n, -1)},
        "G2": {(0, 2): _t(n)},
        "Z1": {(1, 2): _t(n)},
        "Z2": {(1, 3): _t(n)},
    }
    if label not in table:
        from .contact import UnknownLabel

        raise UnknownLabel(label)
    return M(table[label])


def _combo(n, *pairs):
    out = WeylSuperMatrix()
    for c, label in pairs:
        out = out + embed_I(label, n).scale(c)
    return out


def embed_J(label, n):
    """The second embedding, written through the first."""
    rules = {
        "L": [(1, "L"), (-n, "G3"), (n, "R11"), (n, "R22")],
        "Q": [(1, "G0")],
        "R11": [(1, "G3"), (-1, "R11")],
        "R22": [(1, "G3"), (-1, "R22")],
        "R12": [(-1, "R21")],
        "R21": [(-1, "R12")],
        "G0": [(1, "Q")],
        "G3": [(1, "G3")],
        "Y1": [(1, "X1"), (n, "Z2")],
        "Y2": [(1, "X2"), (-n, "Z1")],
        "X1": [(1, "Y1"), (-n, "G2")],
        "X2": [(1, "Y2"), (n, "G1")],
        "G1": [(1, "Z1")],
        "G2": [(1, "Z2")],
        "Z1": [(1, "G1")],
        "Z2": [(1, "G2")],
    }
    if label not in rules:
        from .contact import UnknownLabel

        raise UnknownLabel(label)
    return _combo(n, *rules[label])


GAMMA_LABELS = ("E1", "F1", "H1", "E2", "F2", "H2", "E3", "F3", "H3",
                "T1", "T2", "T3", "T4", "D1", "D2", "D3", "D4")


def gamma_matrix(label, alpha=ALPHA):
    """Explicit matrices realizing D(2,1;alpha) inside the image of embed_I."""
    a = Coefficient.coerce(alpha)
    M = WeylSuperMatrix
    d = WeylElement.monomial(1, d=1)
    one = WeylElement.scalar(1)

    def t(k, shift):
        # t^k (d + shift)
        return weyl_mul(_t(k), d + WeylElement.scalar(shift))

    table = {
        "T1": lambda: M({(0, 2): t(1, 1), (3, 1): _t(1)}),
        "T2": lambda: M({(0, 3): t(1, 1), (2, 1): _t(1, -1)}),
        "D1": lambda: M({(1, 3): t(-1, a), (2, 0): _t(-1)}),
        "D2": lambda: M({(1, 2): -t(-1, a), (3, 0): _t(-1)}),
        "T3": lambda: M({(1, 3): t(1, 1), (2, 0): _t(1)}),
        "T4": lambda: M({(1, 2): -t(1, 1), (3, 0): _t(1)}),
        "D3": lambda: M({(0, 2): t(-1, a), (3, 1): _t(-1)}),
        "D4": lambda: M({(0, 3): t(-1, a), (2, 1): _t(-1, -1)}),
        "E1": lambda: M({(0, 0): t(2, 2), (1, 1): t(2, 2), (2, 2): t(2, 1), (3, 3): t(2, 1)}),
        "F1": lambda: M({(0, 0): t(-2, a - 1), (1, 1): t(-2, a - 1), (2, 2): t(-2, a), (3, 3): t(-2, a)}),
        "H1": lambda: M({(i, i): d + WeylElement.scalar((1 + a) / 2) for i in range(4)}),
        "E2": lambda: M({(1, 0): one}),
        "F2": lambda: M({(0, 1): -one}),
        "H2": lambda: M({(0, 0): -one, (1, 1): one}),
        "E3": lambda: M({(2, 3): one}),
        "F3": lambda: M({(3, 2): one}),
        "H3": lambda: M({(2, 2): one, (3, 3): -one}),
    }
    if label not in table:
        from .contact import UnknownLabel

        raise UnknownLabel(label)
    return table[label]()


def gamma_from_embedding(label, alpha=ALPHA):
    """The same seventeen matrices as combinations of embed_I images."""
    a = Coefficient.coerce(alpha)
    C = embed_I("G3", 0)
    rules = {
        "T1": [(1, "Y1", 1)],
        "T2": [(1, "Y2", 1)],
        "T3": [(1, "X1", 1), (1, "Z2", 1)],
        "T4": [(1, "X2", 1), (-1, "Z1", 1)],
        "D1": [(1, "X1", -1), (a, "Z2", -1)],
        "D2": [(1, "X2", -1), (-a, "Z1", -1)],
        "D3": [(1, "Y1", -1), (a + 1, "G2", -1)],
        "D4": [(1, "Y2", -1), (-(a + 1), "G1", -1)],
        "E1": [(1, "L", 2), (1, "R11", 2), (1, "R22", 2)],
        "F1": [(1, "L", -2), (a + 1, "G3", -2), (-1, "R11", -2), (-1, "R22", -2)],
        "H1": [(1, "L", 0)],
        "E2": [(1, "Q", 0)],
        "F2": [(1, "G0", 0)],
        "H2": [(1, "R11", 0), (1, "R22", 0)],
        "E3": [(1, "R12", 0)],
        "F3": [(1, "R21", 0)],
        "H3": [(1, "R11", 0), (-1, "R22", 0)],
    }
    if label not in rules:
        from .contact import UnknownLabel

        raise UnknownLabel(label)
    out = WeylSuperMatrix()
    for c, lab, n in rules[label]:
        out = out + embed_I(lab, n).scale(c)
    if label == "H1":
        out = out + C.scale((1 + a) / 2)
    if label == "H2":
        out = out - C
    return out


# -- the degree-zero shape ---------------------------------------------------------


def _tilde(i, j):
    """(sign, position) of the d-partner of the elementary matrix E_ij."""
    if i == j:
        return 1, (1 - i, 1 - i)
    return -1, (i, j)


class ShapeVerdict:
    def __init__(self, kappa, A, B, C, D, C_tilde):
        self.kappa = kappa
        self.A, self.B, self.C, self.D = A, B, C, D
        self.C_tilde = C_tilde

    def __bool__(self):
        return True

    def __repr__(self):
        return f"ShapeVerdict(kappa={self.kappa})"


def grading_component(M):
    """Check that M has the shape ((A, B + d C~), (C, D)) + kappa d 1 with tr A = tr D
    and C~ determined by C; raises ShapeViolation otherwise."""
    const = {}
    dpart = {}
    for (i, j), v in M.entries.items():
        for (a, k), c in v.terms.items():
            if a != 0:
                raise ShapeViolation(f"t-degree {a} is not degree zero", (i + 1, j + 1))
            if k > 1:
                raise ShapeViolation(f"d^{k} exceeds the allowed order", (i + 1, j + 1))
            (dpart if k else const)[(i, j)] = c
    kappa = dpart.get((0, 0), ZERO)
    for i in range(4):
        if dpart.get((i, i), ZERO) != kappa:
            raise ShapeViolation("d-coefficients on the diagonal differ", (i + 1, i + 1))
    for (i, j), c in dpart.items():
        if i == j:
            continue
        if not (i < 2 <= j):
            raise ShapeViolation("d-term outside the upper-right block", (i + 1, j + 1))

    def block(src, rows, cols):
        return {(i - rows, j - cols): c for (i, j), c in src.items()
                if rows <= i < rows + 2 and cols <= j < cols + 2}

    A, B = block(const, 0, 0), block(const, 0, 2)
    C, D = block(const, 2, 0), block(const, 2, 2)
    C_tilde = block(dpart, 0, 2)
    trA = A.get((0, 0), ZERO) + A.get((1, 1), ZERO)
    trD = D.get((0, 0), ZERO) + D.get((1, 1), ZERO)
    if trA != trD:
        raise ShapeViolation(f"tr A = {trA} differs from tr D = {trD}")
    expected = {}
    for (i, j), c in C.items():
        s, pos = _tilde(i, j)
        expected[pos] = expected.get(pos, ZERO) + c * s
    for pos in set(expected) | set(C_tilde):
        if expected.get(pos, ZERO) != C_tilde.get(pos, ZERO):
            raise ShapeViolation("d-part of the upper-right block does not match C", (pos[0] + 1, pos[1] + 3))
    return ShapeVerdict(kappa, A, B, C, D, C_tilde)
