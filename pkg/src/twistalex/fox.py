"""Fox free differential calculus and specialization of integral group ring
elements through ``g -> t^phi(g) * alpha(g)``."""

from __future__ import annotations

import numpy as np

from .algebra import ComplexFloat, LaurentPoly
from .knots import mul
from .matrices import add_scaled, identity, is_zero_matrix, mat_mul, zero_matrix


class GroupRingElement:
    """Finite formal sum of reduced free-group words with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            if c:
                clean[tuple(w)] = clean.get(tuple(w), 0) + c
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def word(cls, w, c=1):
        return cls({tuple(w): c})

    @classmethod
    def one(cls):
        return cls({(): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement({w: c * other for w, c in self.terms.items()})
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = mul(w1, w2)
                out[w] = out.get(w, 0) + c1 * c2
        return GroupRingElement(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def augmentation(self):
        return sum(self.terms.values())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            word = "".join(f"x{x}" if x > 0 else f"X{-x}" for x in w) or "1"
            parts.append(f"{c:+d}*{word}")
        return " ".join(parts)


def fox_derivative(w, x):
    """d w / d x_x for a reduced word ``w``; one left-to-right pass over w."""
    out = {}
    prefix = ()
    for letter in w:
        if letter == x:
            out[prefix] = out.get(prefix, 0) + 1
        elif letter == -x:
            key = mul(prefix, (-x,))
            out[key] = out.get(key, 0) - 1
        prefix = prefix + (letter,)
    return GroupRingElement(out)


def fox_jacobian(relators, n):
    return [[fox_derivative(r, j + 1) for j in range(n)] for r in relators]


class Specializer:
    """Caches alpha(word) for one representation (images aligned with the
    presentation's generator order) and abelianization weights."""

    def __init__(self, rep, weights):
        self.ring = rep.ring
        self.k = rep.dimension
        self.weights = tuple(weights)
        self.images = rep.matrices
        self.inverses = rep.inverses
        self._cache = {(): identity(self.k, self.ring)}

    def matrix(self, word):
        m = self._cache.get(word)
        if m is None:
            x = word[-1]
            if abs(x) > len(self.images):
                raise KeyError(f"no image for generator {abs(x)}")
            img = self.images[x - 1] if x > 0 else self.inverses[-x - 1]
            m = mat_mul(self.matrix(word[:-1]), img, self.ring)
            self._cache[word] = m
        return m

    def weight(self, word):
        return sum(self.weights[abs(x) - 1] * (1 if x > 0 else -1) for x in word)

    def terms(self, e):
        """exponent -> constant k x k matrix, summing t^phi(g) alpha(g)."""
        acc = {}
        for w, c in e.terms.items():
            d = self.weight(w)
            cur = acc.get(d)
            if cur is None:
                cur = zero_matrix(self.k, self.ring)
            acc[d] = add_scaled(cur, self.matrix(w), c, self.ring)
        return {d: m for d, m in acc.items() if not is_zero_matrix(m, self.ring)}

    def exact(self, e):
        ring = self.ring
        terms = self.terms(e)
        out = []
        for i in range(self.k):
            row = []
            for j in range(self.k):
                row.append(LaurentPoly.from_dict({d: m[i][j] for d, m in terms.items()}, ring))
            out.append(row)
        return out

    def numeric(self, e, t):
        out = np.zeros((self.k, self.k), dtype=complex)
        for d, m in self.terms(e).items():
            out += (t ** d) * np.asarray(m, dtype=complex)
        return out


def specialize(e, rep, weights, mode="exact", t=None):
    """Apply the ring map induced by g -> t^phi(g) alpha(g).

    ``exact`` returns a k x k list of LaurentPoly over the representation's
    field; ``numeric`` returns a complex numpy matrix at the sample ``t``.
    """
    sp = Specializer(rep, weights)
    if mode == "exact":
        if isinstance(rep.ring, ComplexFloat):
            raise ValueError("exact specialization needs an exact field")
        return sp.exact(e)
    if mode == "numeric":
        if t is None:
            raise ValueError("numeric specialization needs a sample value t")
        return sp.numeric(e, t)
    raise ValueError(f"unknown mode {mode!r}")
