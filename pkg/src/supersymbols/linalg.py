"""Incremental row echelon over the coefficient field.

Vectors are plain dicts ``key -> Coefficient`` with sortable keys.  A
:class:`SpanBasis` keeps each stored row together with its expression in the
vectors that were added, so membership tests also return coordinates.
"""

from .coeff import ZERO, Coefficient


def _axpy(v, c, row):
    """v - c * row, in place on a copy."""
    out = dict(v)
    for k, x in row.items():
        y = out.get(k, ZERO) - c * x
        if y.is_zero():
            out.pop(k, None)
        else:
            out[k] = y
    return out


def _clean(v):
    return {k: c for k, c in v.items() if not c.is_zero()}


class SpanBasis:
    """Echelon basis of the span of labelled vectors."""

    def __init__(self):
        self.rows = []  # (pivot, vector with pivot entry 1, combo label -> coeff)
        self.labels = []

    def __len__(self):
        return len(self.rows)

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v):
        """(remainder, combo) with v = remainder + sum combo[l] * added[l]."""
        v = _clean(v)
        combo = {}
        for pivot, row, rcombo in self.rows:
            c = v.get(pivot)
            if c is None:
                continue
            v = _axpy(v, c, row)
            for l, x in rcombo.items():
                combo[l] = combo.get(l, ZERO) + c * x
        return v, {l: c for l, c in combo.items() if not c.is_zero()}

    def add(self, v, label=None):
        """Add v; returns True when it enlarged the span."""
        if label is None:
            label = len(self.labels)
        rem, combo = self.reduce(v)
        if not rem:
            return False
        pivot = min(rem)
        inv = rem[pivot].inverse()
        row = {k: c * inv for k, c in rem.items()}
        rcombo = {l: -c * inv for l, c in combo.items()}
        rcombo[label] = rcombo.get(label, ZERO) + inv
        self.rows.append((pivot, row, rcombo))
        self.labels.append(label)
        return True

    def contains(self, v):
        rem, _ = self.reduce(v)
        return not rem

    def express(self, v):
        """Coordinates of v in the added vectors, or None when v is outside the span."""
        rem, combo = self.reduce(v)
        if rem:
            return None
        return combo


def rank(vectors):
    span = SpanBasis()
    for v in vectors:
        span.add(v)
    return span.dim


def kernel(vectors):
    """Basis of linear relations among the given vectors, as lists of coefficients."""
    span = SpanBasis()
    relations = []
    for i, v in enumerate(vectors):
        rem, combo = span.reduce(v)
        if rem:
            span.add(v, i)
        else:
            rel = [ZERO] * len(vectors)
            rel[i] = Coefficient(1)
            for l, c in combo.items():
                rel[l] = rel[l] - c
            relations.append(rel)
    return relations


def combine(vectors, coeffs):
    out = {}
    for v, c in zip(vectors, coeffs):
        if c.is_zero():
            continue
        for k, x in v.items():
            out[k] = out.get(k, ZERO) + c * x
    return _clean(out)
