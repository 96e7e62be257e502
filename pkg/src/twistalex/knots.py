"""Knot input front ends: braid words, planar diagram codes, torus knots and
raw presentations, all turned into deficiency-one group presentations.

Free-group words are tuples of nonzero signed generator indices, 1-based:
``(1, 2, -1)`` is ``x1 x2 x1^-1``.  Every constructor returns freely reduced
words.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from math import gcd


class PresentationError(ValueError):
    """Input does not describe a valid knot group presentation."""


class BraidSyntaxError(PresentationError):
    pass


class ClosureIsLinkError(PresentationError):
    pass


# ---------------------------------------------------------------------------
# free group words


def reduce_word(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(word):
    return tuple(-x for x in reversed(word))


def mul(*words):
    out = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def substitute(word, images):
    """Apply the endomorphism x_i -> images[i-1] to ``word``."""
    out = []
    for x in word:
        img = images[abs(x) - 1]
        out.append(img if x > 0 else invert(img))
    return mul(*out)


def is_reduced(word):
    return all(word[i] != -word[i + 1] for i in range(len(word) - 1))


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        self.validate()

    @property
    def n(self):
        return len(self.generators)

    def weight(self, word):
        return sum(self.weights[abs(x) - 1] * (1 if x > 0 else -1) for x in word)

    def validate(self):
        n = len(self.generators)
        if n == 0:
            raise PresentationError("presentation has no generators")
        if len(set(self.generators)) != n:
            raise PresentationError("duplicate generator names")
        if len(self.weights) != n:
            raise PresentationError("one abelianization weight per generator required")
        if len(self.relators) != n - 1:
            raise PresentationError(
                f"deficiency one required: {n} generators, {len(self.relators)} relators"
            )
        for k, r in enumerate(self.relators):
            if any(x == 0 or abs(x) > n for x in r):
                raise PresentationError(f"relator {k} uses an unknown generator")
            if not is_reduced(r):
                raise PresentationError(f"relator {k} is not freely reduced")
            if self.weight(r) != 0:
                raise PresentationError(f"relator {k} does not abelianize to zero")
        g = 0
        for w in self.weights:
            g = gcd(g, w)
        if g != 1:
            raise PresentationError(f"abelianization weights generate {g}Z, not Z")

    # text / json -------------------------------------------------------------

    def _inverse_style(self):
        names = set(self.generators)
        ok = all(g.swapcase() != g and g.swapcase() not in names for g in self.generators)
        return "case" if ok else "suffix"

    def relator_string(self, word):
        style = self._inverse_style()
        toks = []
        for x in word:
            g = self.generators[abs(x) - 1]
            if x > 0:
                toks.append(g)
            else:
                toks.append(g.swapcase() if style == "case" else g + "^-1")
        return " ".join(toks)

    def to_json(self):
        data = {
            "generators": list(self.generators),
            "relators": [self.relator_string(r) for r in self.relators],
            "weights": list(self.weights),
        }
        return json.dumps(data, indent=2) + "\n"

    @classmethod
    def from_dict(cls, data):
        try:
            gens = [str(g) for g in data["generators"]]
            rels = data["relators"]
            weights = data.get("weights")
        except (KeyError, TypeError) as exc:
            raise PresentationError(f"presentation JSON missing field: {exc}") from None
        if weights is None:
            weights = [1] * len(gens)
        words = [parse_relator(r, gens) for r in rels]
        return cls(tuple(gens), tuple(words), tuple(weights))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __str__(self):
        gens = ", ".join(self.generators)
        rels = ", ".join(self.relator_string(r) or "1" for r in self.relators)
        return f"< {gens} | {rels} >"


def parse_relator(text, generators):
    """Parse ``"x1 x2 X1"``, ``"x1x2x1^-1"`` or ``"a a B B B"`` style words."""
    index = {g: i + 1 for i, g in enumerate(generators)}
    inverse = {}
    for g, i in index.items():
        sw = g.swapcase()
        if sw != g and sw not in index:
            inverse[sw] = -i
    table = dict(index)
    table.update(inverse)
    names = sorted(table, key=len, reverse=True)
    word = []
    s = text.replace(" ", "").replace("\t", "")
    pos = 0
    while pos < len(s):
        for name in names:
            if s.startswith(name, pos):
                x = table[name]
                pos += len(name)
                if s.startswith("^-1", pos):
                    x = -x
                    pos += 3
                word.append(x)
                break
        else:
            raise PresentationError(f"cannot parse relator {text!r} at position {pos}")
    return reduce_word(word)


# ---------------------------------------------------------------------------
# braids


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.strands < 2:
            raise PresentationError("a braid needs at least 2 strands")
        if any(x == 0 or abs(x) >= self.strands for x in self.letters):
            raise PresentationError("braid letter index out of range")
        if not _is_n_cycle(self.permutation()):
            raise ClosureIsLinkError(f"closure of braid {self.letters} is a link, not a knot")

    def permutation(self):
        """Image of each strand position after the braid (0-based)."""
        perm = list(range(self.strands))
        for x in self.letters:
            i = abs(x) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return tuple(perm)

    def inverse(self):
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def render(self):
        return " ".join(f"s{x}" if x > 0 else f"S{-x}" for x in self.letters)


def _is_n_cycle(perm):
    seen, i = 0, 0
    while True:
        i = perm[i]
        seen += 1
        if i == 0:
            break
    return seen == len(perm)


_SIGMA = re.compile(r"^([sS\u03c3])(\d+)(\^-1)?$")
_INT = re.compile(r"^(-?)(\d+)$")


def parse_braid(text, strands=None):
    """``"s1 s1 s1"`` / ``"s1 S2"`` / ``"s1 s2^-1"`` or ``"1 -2 1 -2"``; the
    letter and integer styles can't mix."""
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise BraidSyntaxError("empty braid word")
    styles = set()
    letters = []
    for tok in tokens:
        m = _SIGMA.match(tok)
        if m:
            styles.add("sigma")
            k = int(m.group(2))
            sign = (-1 if m.group(1) == "S" else 1) * (-1 if m.group(3) else 1)
            letters.append(sign * k)
            continue
        m = _INT.match(tok)
        if m:
            styles.add("int")
            k = int(m.group(2))
            letters.append(-k if m.group(1) else k)
            continue
        raise BraidSyntaxError(f"bad braid token {tok!r}")
    if len(styles) > 1:
        raise BraidSyntaxError("braid word mixes sK/SK and K/-K token styles")
    if any(k == 0 for k in letters):
        raise BraidSyntaxError("braid generator indices start at 1")
    n = 1 + max(abs(k) for k in letters)
    if strands is not None:
        if strands < n:
            raise BraidSyntaxError(f"braid uses {n} strands but {strands} were given")
        n = strands
    return BraidWord(n, tuple(letters))


def _artin_letter_images(s, n):
    """Images of x_1..x_n under the Artin automorphism of one braid letter."""
    images = [(j + 1,) for j in range(n)]
    i = abs(s)
    if s > 0:
        images[i - 1] = (i, i + 1, -i)
        images[i] = (i,)
    else:
        images[i - 1] = (i + 1,)
        images[i] = (-(i + 1), i, i + 1)
    return images


def artin_action(b):
    """Images of the free generators under the braid automorphism."""
    n = b.strands
    images = [(j + 1,) for j in range(n)]
    for s in b.letters:
        letter = _artin_letter_images(s, n)
        images = [substitute(w, images) for w in letter]
    return images


def braid_presentation(b):
    """Closure group < x_1..x_n | x_i beta(x_i)^-1 , i < n >."""
    images = artin_action(b)
    n = b.strands
    rels = [mul((i + 1,), invert(images[i])) for i in range(n)]
    gens = tuple(f"x{i + 1}" for i in range(n))
    return GroupPresentation(gens, tuple(rels[:-1]), (1,) * n)


# ---------------------------------------------------------------------------
# planar diagram codes


@dataclass(frozen=True)
class PDCode:
    crossings: tuple

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(v) for v in c) for c in self.crossings))
        self.validate()

    @property
    def labels(self):
        return sorted({v for c in self.crossings for v in c})

    def validate(self):
        if not self.crossings:
            raise PresentationError("empty PD code")
        counts = {}
        for c in self.crossings:
            if len(c) != 4:
                raise PresentationError(f"crossing {c} does not have 4 entries")
            for v in c:
                counts[v] = counts.get(v, 0) + 1
        bad = [v for v, k in counts.items() if k != 2]
        if bad:
            raise PresentationError(f"arc labels {sorted(bad)} do not occur exactly twice")
        labels = self.labels
        if labels != list(range(labels[0], labels[0] + len(labels))):
            raise PresentationError("arc labels do not form one consecutive cycle")
        N = len(labels)
        for c in self.crossings:
            a, b, cc, d = c
            if (cc - a) % N != 1 % N:
                raise PresentationError(f"crossing {c}: under-strand {a} -> {cc} is not consecutive")
            if (d - b) % N != 1 % N and (b - d) % N != 1 % N:
                raise PresentationError(f"crossing {c}: over-strand labels are not consecutive")

    def render(self):
        return ",".join("X(%d,%d,%d,%d)" % c for c in self.crossings)


_PD_X = re.compile(r"X\s*[\(\[]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[\)\]]")


def parse_pd(text):
    """``X(1,4,2,5),X(3,6,4,1),...`` (commas/whitespace between tuples)."""
    found = _PD_X.findall(text)
    rest = _PD_X.sub("", text)
    if re.sub(r"[\s,\[\]]", "", rest.replace("PD", "")):
        raise PresentationError(f"unrecognized text in PD code: {rest.strip()!r}")
    return PDCode(tuple(tuple(int(v) for v in m) for m in found))


def crossing_sign(code, crossing):
    """+1 when the over-strand runs d -> b, -1 when it runs b -> d."""
    N = len(code.labels)
    a, b, c, d = crossing
    if (b - d) % N == 1 % N:
        return 1
    return -1


def pd_to_wirtinger(code):
    """One generator per diagram arc, one conjugation relator per crossing
    ``o^e a o^-e c^-1`` (e the crossing sign), last relator dropped."""
    labels = code.labels
    parent = {v: v for v in labels}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b, c, d in code.crossings:
        parent[find(b)] = find(d)
    arc_of = {}
    order = {}
    for v in labels:
        root = find(v)
        if root not in order:
            order[root] = len(order) + 1
        arc_of[v] = order[root]
    n = len(order)
    if n != len(code.crossings):
        raise PresentationError(
            f"inconsistent crossing data: {n} arcs for {len(code.crossings)} crossings"
        )
    rels = []
    for cr in code.crossings:
        a, b, c, d = cr
        o, x, y = arc_of[b], arc_of[a], arc_of[c]
        e = crossing_sign(code, cr)
        rels.append(mul((e * o, x, -e * o), (-y,)))
    gens = tuple(f"x{i + 1}" for i in range(n))
    return GroupPresentation(gens, tuple(rels[:-1]), (1,) * n)


# ---------------------------------------------------------------------------
# torus knots and connected sums


def torus_presentation(p, q):
    """< a, b | a^p b^-q > with a -> q, b -> p under the abelianization."""
    if p < 2 or q < 2:
        raise PresentationError("torus knot parameters must be >= 2")
    if gcd(p, q) != 1:
        raise PresentationError(f"T({p},{q}) is not a knot: gcd = {gcd(p, q)}")
    return GroupPresentation(("a", "b"), ((1,) * p + (-2,) * q,), (q, p))


def unknot_presentation():
    return braid_presentation(BraidWord(2, (1,)))


def _bezout(weights):
    """Integers c with sum c_i w_i = gcd(weights)."""
    g, coeffs = 0, [0] * len(weights)
    for i, w in enumerate(weights):
        # extended Euclid of (g, w)
        r0, r1, s0, s1, t0, t1 = g, w, 1, 0, 0, 1
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0 < 0:
            r0, s0, t0 = -r0, -s0, -t0
        coeffs = [c * s0 for c in coeffs]
        coeffs[i] = t0
        g = r0
    return coeffs


def _with_meridian(P):
    """(presentation, index) of a generator with weight +-1.

    Presentations without one (torus knots) get a new generator ``m`` and
    the relator ``w m^-1`` for a word w of weight 1 built from Bezout
    coefficients.  For torus knots every such w is conjugate to the meridian.
    """
    for i, w in enumerate(P.weights):
        if abs(w) == 1:
            return P, i + 1
    word = []
    for i, c in enumerate(_bezout(P.weights)):
        word += [i + 1 if c > 0 else -(i + 1)] * abs(c)
    name = "m"
    while name in P.generators or name.swapcase() in P.generators:
        name += "'"
    n = P.n + 1
    extended = GroupPresentation(
        P.generators + (name,), P.relators + (tuple(word) + (-n,),), P.weights + (1,)
    )
    return extended, n


def connected_sum(P, Q):
    """Free product plus one relator identifying the two meridians."""
    P, m1 = _with_meridian(P)
    Q, m2 = _with_meridian(Q)
    names = list(P.generators)
    taken = set(names)
    for g in Q.generators:
        new = g
        while new in taken or new.swapcase() in taken:
            new += "'"
        names.append(new)
        taken.add(new)
    shift = P.n
    qrels = [tuple(x + shift if x > 0 else x - shift for x in r) for r in Q.relators]
    w1, w2 = P.weights[m1 - 1], Q.weights[m2 - 1]
    glue = (m1, -(w1 * w2) * (m2 + shift))
    return GroupPresentation(
        tuple(names), tuple(P.relators) + tuple(qrels) + (glue,), P.weights + Q.weights
    )
