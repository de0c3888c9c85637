"""The module V^mu = t^mu C[t, 1/t] (x) Lambda(x1, x2) of the centrally extended K'(4).

Two independent descriptions are kept here so they can be checked against
each other:

* :func:`rep_action`, the tabulated action on the basis v^0, v^1, v^2, v^3;
* :func:`field_action`, which lets the mode fields act directly as operators
  (t multiplies, tau differentiates, negative powers of tau integrate,
  x_i multiplies and y_i is d/dx_i), with the deformation parameter set to 1.

The direct action also yields Weyl matrices (with the mode index kept as a
formal parameter ``m``), which are compared with the explicit matrices.
"""

from .coeff import ONE, ZERO, Coefficient, declare_parameter
from .grassmann import left_derivative_mask, monomial_mul
from .weyl import WeylElement, WeylSuperMatrix

M_INDEX = declare_parameter("m")

# matrix row/column order of the basis vectors
BASIS_ORDER = (0, 3, 1, 2)
_SLOT = {s: i for i, s in enumerate(BASIS_ORDER)}
_MASK = {0: 0, 1: 0b01, 2: 0b10, 3: 0b11}
_FROM_MASK = {v: k for k, v in _MASK.items()}


def _norm_index(s):
    if s == 12 or s == "12":
        return 3
    if s not in (0, 1, 2, 3):
        raise KeyError(f"unknown basis index {s!r}")
    return s


class VVector:
    """Finite sum of basis vectors v^s_m; index 12 is an alias of 3."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for (s, m), c in (terms or {}).items():
            c = Coefficient.coerce(c)
            if not c.is_zero():
                key = (_norm_index(s), m)
                self.terms[key] = self.terms.get(key, ZERO) + c
        self.terms = {k: c for k, c in self.terms.items() if not c.is_zero()}

    @classmethod
    def basis(cls, s, m):
        return cls({(s, m): ONE})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return VVector(out)

    def __neg__(self):
        return VVector({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return VVector({k: Coefficient.coerce(c) * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, VVector):
            return NotImplemented
        return not (self - other).terms

    def __hash__(self):
        return hash(str(self))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c}) v{s}[{m}]" for (s, m), c in sorted(self.terms.items()))

    def __repr__(self):
        return f"VVector({str(self)!r})"


# -- tabulated action -------------------------------------------------------------


def action_table(label, n, s, m, mu=ZERO):
    """Image of v^s_m under label_n as {target index: coefficient}; targets sit at mode m + n.

    ``m`` and ``mu`` may be Coefficients.  Pairs not listed act as zero.
    """
    s = _norm_index(s)
    m, mu = Coefficient.coerce(m), Coefficient.coerce(mu)
    w = m + mu
    if label == "L":
        return {s: w + n if s == 0 else w}
    if label in ("X1", "X2"):
        i = int(label[1])
        if s == 0:
            return {i: ONE}
        if label == "X1" and s == 2:
            return {3: w}
        if label == "X2" and s == 1:
            return {3: -w}
        return {}
    if label == "Q":
        return {3: ONE} if s == 0 else {}
    if label in ("Y1", "Y2"):
        i = int(label[1])
        if s == i:
            return {0: w + n}
        if s == 3:
            return {2: ONE} if i == 1 else {1: -ONE}
        return {}
    if label in ("R11", "R22"):
        i = int(label[1])
        return {s: ONE} if s in (i, 3) else {}
    if label in ("R12", "R21"):
        i, j = int(label[1]), int(label[2])
        return {i: ONE} if s == j else {}
    if label in ("Z1", "Z2"):
        return {3: ONE} if s == int(label[1]) else {}
    if label == "G0":
        return {0: -ONE} if s == 3 else {}
    if label == "G1":
        return {0: -ONE} if s == 2 else {}
    if label == "G2":
        return {0: ONE} if s == 1 else {}
    if label == "G3":
        # for n = 0 this is the central element acting as the identity
        return {s: ONE}
    from .contact import UnknownLabel

    raise UnknownLabel(label)


def rep_action(label, n, v, mu=ZERO):
    """Linear action of label_n on a VVector."""
    out = {}
    for (s, m), c in v.terms.items():
        for target, k in action_table(label, n, s, m, mu).items():
            key = (target, m + n)
            out[key] = out.get(key, ZERO) + c * k
    return VVector(out)


# -- direct operator action -----------------------------------------------------------

# An operator word is a tuple of primitives applied right to left:
#   ("t", a)   multiplication by t^a
#   ("d", b)   b-th derivative in t; b < 0 integrates
#   ("o", g)   odd generator g: x_i multiplies (g < 2), y_i is d/dx_i (g >= 2)


def _word(t=None, tau=None, odd=()):
    out = []
    if t is not None:
        out.append(("t", t))
    if tau is not None:
        out.append(("d", tau))
    names = odd.split() if isinstance(odd, str) else odd
    for name in names:
        g = int(name[1]) - 1 + (2 if name[0] == "y" else 0)
        out.append(("o", g))
    return tuple(out)


def _swap_word(word):
    return tuple(("o", (x[1] + 2) % 4) if x[0] == "o" else x for x in word)


def field_operator(label, n, embedding="i"):
    """The mode field as a list of (coefficient, operator word), deformation parameter 1.

    ``embedding='j'`` interchanges x_i and y_i in every formula.
    """
    w = _word
    table = {
        "L": [(ONE, w(n + 1, 1))],
        "Q": [(ONE, w(n + 1, 1, "x1 x2"))],
        "X1": [(ONE, w(n + 1, 1, "x1"))],
        "X2": [(ONE, w(n + 1, 1, "x2"))],
        "Y1": [(ONE, w(n, None, "y1"))],
        "Y2": [(ONE, w(n, None, "y2"))],
        "Z1": [(ONE, w(n, None, "x1 x2 y1"))],
        "Z2": [(ONE, w(n, None, "x1 x2 y2"))],
        "G0": [(ONE, (("d", -1),) + w(n - 1, None, "y1 y2"))],
        "G1": [(ONE, (("d", -1),) + w(n - 1, None, "y1 y2 x1"))],
        "G2": [(ONE, (("d", -1),) + w(n - 1, None, "y1 y2 x2"))],
        "G3": [(Coefficient(n), (("d", -1),) + w(n - 1, None, "y1 y2 x1 x2")), (ONE, w(n))],
    }
    for j in (1, 2):
        for i in (1, 2):
            table[f"R{j}{i}"] = [(ONE, w(n, None, f"x{j} y{i}"))]
    if label not in table:
        from .contact import UnknownLabel

        raise UnknownLabel(label)
    ops = table[label]
    if label == "G3" and n == 0:
        ops = ops[1:]
    if embedding == "j":
        ops = [(c, _swap_word(word)) for c, word in ops]
    elif embedding != "i":
        raise ValueError(f"unknown embedding {embedding!r}")
    return ops


def _apply_word(word, func, base):
    """func is {(k, mask): coeff} meaning sum coeff * t^(base + k) * x^mask."""
    for prim, arg in reversed(word):
        out = {}
        for (k, mask), c in func.items():
            if prim == "t":
                key, c2 = (k + arg, mask), c
            elif prim == "d":
                e = base + k
                c2 = c
                if arg >= 0:
                    for j in range(arg):
                        c2 = c2 * (e - j)
                else:
                    for j in range(1, -arg + 1):
                        c2 = c2 / (e + j)
                key = (k - arg, mask)
            elif arg < 2:
                res = monomial_mul(1 << arg, mask)
                if res is None:
                    continue
                sign, m2 = res
                key, c2 = (k, m2), c if sign > 0 else -c
            else:
                res = left_derivative_mask(arg - 2, mask)
                if res is None:
                    continue
                sign, m2 = res
                key, c2 = (k, m2), c if sign > 0 else -c
            if c2.is_zero():
                continue
            out[key] = out.get(key, ZERO) + c2
        func = {k: c for k, c in out.items() if not c.is_zero()}
    return func


def _basis_norm(s, w, embedding):
    """Factor f with v^s = f * t^w * x^mask for the chosen basis."""
    if embedding == "i" and s == 0:
        return ONE / w
    if embedding == "j" and s == 3:
        return ONE / w
    return ONE


def field_action(label, n, s, w, embedding="i"):
    """Direct action on v^s at exponent w (= m + mu); returns {target: coefficient} at w + n."""
    s = _norm_index(s)
    w = Coefficient.coerce(w)
    func = {(0, _MASK[s]): _basis_norm(s, w, embedding)}
    total = {}
    for c, word in field_operator(label, n, embedding):
        for key, v in _apply_word(word, func, w).items():
            total[key] = total.get(key, ZERO) + c * v
    out = {}
    for (k, mask), c in total.items():
        if c.is_zero():
            continue
        if k != n:
            raise ArithmeticError(f"{label}[{n}] shifted the t-degree by {k}")
        target = _FROM_MASK[mask]
        out[target] = c / _basis_norm(target, w + n, embedding)
    return {k: c for k, c in out.items() if not c.is_zero()}


def matrix_from_action(action, n):
    """Weyl matrix of an action given as action(s, m) -> {target: coefficient}, m formal.

    Each coefficient must be a polynomial p(m) = sum p_k m^k; the entry is
    t^n sum p_k d^k, which sends t^m to p(m) t^(m + n).
    """
    entries = {}
    for s in BASIS_ORDER:
        for target, c in action(s, M_INDEX).items():
            terms = {(n, k): p for k, p in c.coefficients_in("m").items()}
            entries[(_SLOT[target], _SLOT[s])] = WeylElement(terms)
    return WeylSuperMatrix(entries)


def derived_matrix(label, n, embedding="i"):
    """Weyl matrix of the direct action in the basis (v0, v3, v1, v2)."""
    return matrix_from_action(lambda s, m: field_action(label, n, s, m, embedding), n)


def table_matrix(label, n):
    """Weyl matrix of the tabulated action at mu = 0."""
    return matrix_from_action(lambda s, m: action_table(label, n, s, m), n)


def matrix_action(M, s, m):
    """Image of v^s_m under a Weyl matrix, as {target: coefficient} at mode m + shift."""
    col = _SLOT[_norm_index(s)]
    out = {}
    for (i, j), entry in M.entries.items():
        if j != col:
            continue
        for shift, c in entry.act(m).items():
            out[(BASIS_ORDER[i], shift)] = c
    return out
