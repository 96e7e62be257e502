"""Linear representations of presentation groups and a brute-force search
for nonabelian SL(2, F_p) representations."""

from __future__ import annotations

import itertools
import json
from fractions import Fraction

import numpy as np

from .algebra import CC, QQ, ComplexFloat, PrimeField, Rationals
from .matrices import as_matrix, det_small, distance_to_identity, identity, mat_inv, mat_mul

RELATOR_TOL = 1e-8


class RepresentationError(ValueError):
    pass


class Representation:
    """Generator images (k x k matrices) over Rationals, PrimeField(p) or
    ComplexFloat.  ``generators`` fixes the order used by words."""

    def __init__(self, generators, matrices, ring, special_linear=False):
        self.generators = tuple(generators)
        self.ring = ring
        self.matrices = tuple(as_matrix(m, ring) for m in matrices)
        if len(self.matrices) != len(self.generators):
            raise RepresentationError("one image per generator required")
        shapes = {np.shape(m) for m in self.matrices}
        if len(shapes) != 1:
            raise RepresentationError("images of different sizes")
        k, k2 = shapes.pop()
        if k != k2:
            raise RepresentationError("images must be square")
        self.dimension = k
        self.special_linear = special_linear
        try:
            self.inverses = tuple(mat_inv(m, ring) for m in self.matrices)
        except (ZeroDivisionError, np.linalg.LinAlgError):
            raise RepresentationError("a generator image is singular") from None
        if isinstance(ring, ComplexFloat):
            if any(abs(np.linalg.det(m)) < 1e-12 for m in self.matrices):
                raise RepresentationError("a generator image is singular")
        if special_linear:
            for g, m in zip(self.generators, self.matrices):
                d = det_small(m, ring)
                if (abs(d - 1) > RELATOR_TOL) if not ring.exact else ring.norm(d - 1) != 0:
                    raise RepresentationError(f"image of {g} does not have determinant 1")

    @property
    def images(self):
        return dict(zip(self.generators, self.matrices))

    def word_matrix(self, word):
        m = identity(self.dimension, self.ring)
        for x in word:
            m = mat_mul(m, self.matrices[x - 1] if x > 0 else self.inverses[-x - 1], self.ring)
        return m

    def relator_residuals(self, presentation):
        return [distance_to_identity(self.word_matrix(r), self.ring) for r in presentation.relators]

    def aligned(self, presentation):
        """Reorder images to the presentation's generators and verify every
        relator maps to the identity."""
        imgs = self.images
        missing = [g for g in presentation.generators if g not in imgs]
        if missing:
            raise RepresentationError(f"no image for generators {missing}")
        rep = Representation(
            presentation.generators,
            [imgs[g] for g in presentation.generators],
            self.ring,
            self.special_linear,
        )
        tol = RELATOR_TOL if not self.ring.exact else 0.0
        bad = [i for i, r in enumerate(rep.relator_residuals(presentation)) if r > tol]
        if bad:
            raise RepresentationError(f"relators {bad} do not map to the identity")
        return rep

    def is_abelian(self):
        ms = self.matrices
        for a, b in itertools.combinations(ms, 2):
            ab, ba = mat_mul(a, b, self.ring), mat_mul(b, a, self.ring)
            if isinstance(self.ring, ComplexFloat):
                if np.linalg.norm(ab - ba) > RELATOR_TOL:
                    return False
            elif ab != ba:
                return False
        return True

    def to_complex(self):
        """Recast an exact rational representation over complex floats."""
        if isinstance(self.ring, PrimeField):
            raise RepresentationError("a prime-field representation has no complex recast")
        mats = [[[complex(x) for x in row] for row in m] for m in self.matrices]
        return Representation(self.generators, mats, CC, self.special_linear)

    # json ------------------------------------------------------------------

    def to_dict(self):
        ring = self.ring
        if isinstance(ring, ComplexFloat):
            field = {"type": "ComplexFloat"}
            enc = lambda x: [float(x.real), float(x.imag)]  # noqa: E731
        elif isinstance(ring, PrimeField):
            field = {"type": "PrimeField", "p": ring.p}
            enc = int
        else:
            field = {"type": "Rationals"}
            enc = lambda x: int(x) if x.denominator == 1 else str(x)  # noqa: E731
        images = {
            g: [[enc(x) for x in row] for row in (m.tolist() if isinstance(m, np.ndarray) else m)]
            for g, m in zip(self.generators, self.matrices)
        }
        out = {"dimension": self.dimension, "field": field, "images": images}
        if self.special_linear:
            out["special_linear"] = True
        return out

    def to_json(self):
        """Indented JSON with one matrix per line."""
        data = self.to_dict()
        lines = ["{", f'  "dimension": {data["dimension"]},', f'  "field": {json.dumps(data["field"])},']
        lines.append('  "images": {')
        items = list(data["images"].items())
        for i, (g, m) in enumerate(items):
            sep = "," if i + 1 < len(items) else ""
            lines.append(f"    {json.dumps(g)}: {json.dumps(m)}{sep}")
        lines.append("  }" + ("," if "special_linear" in data else ""))
        if "special_linear" in data:
            lines.append('  "special_linear": true')
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dict(cls, data):
        try:
            field = data["field"]
            kind = field["type"]
            images = data["images"]
            dim = int(data["dimension"])
        except (KeyError, TypeError) as exc:
            raise RepresentationError(f"representation JSON missing field: {exc}") from None
        if kind == "PrimeField":
            ring = PrimeField(int(field["p"]))
        elif kind == "Rationals":
            ring = QQ
        elif kind == "ComplexFloat":
            ring = CC
        else:
            raise RepresentationError(f"unknown field type {kind!r}")
        gens = list(images)
        mats = []
        for g in gens:
            m = images[g]
            if isinstance(ring, Rationals):
                m = [[Fraction(x) for x in row] for row in m]
            mats.append(m)
        rep = cls(gens, mats, ring, bool(data.get("special_linear", False)))
        if rep.dimension != dim:
            raise RepresentationError("dimension field disagrees with the images")
        return rep

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(fh.read())

    @classmethod
    def trivial(cls, presentation, k=1, ring=QQ):
        mats = [identity(k, ring)] * presentation.n
        return cls(presentation.generators, mats, ring, special_linear=True)

    def __repr__(self):
        return f"Representation(dim={self.dimension}, field={self.ring!r}, generators={self.generators})"


# ---------------------------------------------------------------------------
# SL(2, F_p) search
#
# 2x2 matrices over F_p are 4-tuples (a, b, c, d) here for speed.

SEARCH_PRIMES = (2, 3, 5, 7, 11, 13)


def _m2mul(x, y, p):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)


def _m2inv(x, p):
    a, b, c, d = x
    det = (a * d - b * c) % p
    inv = pow(det, -1, p)
    return ((d * inv) % p, (-b * inv) % p, (-c * inv) % p, (a * inv) % p)


def _sl2(p):
    return [
        (a, b, c, d)
        for a, b, c, d in itertools.product(range(p), repeat=4)
        if (a * d - b * c) % p == 1
    ]


def _gl2(p):
    return [
        (a, b, c, d)
        for a, b, c, d in itertools.product(range(p), repeat=4)
        if (a * d - b * c) % p != 0
    ]


def _word_image(word, imgs, invs, p):
    m = (1, 0, 0, 1)
    for x in word:
        m = _m2mul(m, imgs[x - 1] if x > 0 else invs[-x - 1], p)
    return m


def _solve_single(word, idx, imgs, invs, p):
    """``word`` contains generator ``idx`` exactly once and everything else is
    assigned: return the image forcing word == 1."""
    pos = next(i for i, x in enumerate(word) if abs(x) == idx)
    u = _word_image(word[:pos], imgs, invs, p)
    v = _word_image(word[pos + 1:], imgs, invs, p)
    # u * g^e * v = 1  ->  g^e = u^-1 v^-1
    ge = _m2mul(_m2inv(u, p), _m2inv(v, p), p)
    return ge if word[pos] > 0 else _m2inv(ge, p)


def rep_search_sl2_fp(presentation, p, budget=50):
    """Nonabelian representations into SL(2, F_p), up to global conjugation.

    The first generator runs over one representative per trace; when all
    weights are 1 (meridian generators, hence conjugate) the others run over
    conjugates of it, otherwise over all of SL(2, F_p).  Relators with a
    single unassigned occurrence force that generator's image.
    """
    if p not in SEARCH_PRIMES:
        raise ValueError(f"p must be one of {SEARCH_PRIMES}")
    P = presentation
    n = P.n
    if n > 12:
        raise ValueError("rep search supports at most 12 generators")
    group = _sl2(p)
    glp = _gl2(p)
    meridional = all(w == 1 for w in P.weights)
    found = []
    seen = set()

    def occurrences(word):
        counts = {}
        for x in word:
            counts[abs(x)] = counts.get(abs(x), 0) + 1
        return counts

    rel_occ = [occurrences(r) for r in P.relators]

    for tr in range(p):
        first = (0, p - 1, 1, tr)  # companion matrix of x^2 - tr x + 1
        if meridional:
            cands = sorted({_m2mul(_m2mul(g, first, p), _m2inv(g, p), p) for g in group})
        else:
            cands = group
        centralizer = [g for g in glp if _m2mul(g, first, p) == _m2mul(first, g, p)]
        centralizer_inv = [_m2inv(g, p) for g in centralizer]

        imgs = [None] * n
        invs = [None] * n
        imgs[0], invs[0] = first, _m2inv(first, p)

        def consistent():
            for r, occ in zip(P.relators, rel_occ):
                if all(imgs[g - 1] is not None for g in occ):
                    if _word_image(r, imgs, invs, p) != (1, 0, 0, 1):
                        return False
            return True

        def propagate():
            changed = []
            progress = True
            while progress:
                progress = False
                for r, occ in zip(P.relators, rel_occ):
                    free = [g for g in occ if imgs[g - 1] is None]
                    if len(free) == 1 and occ[free[0]] == 1:
                        g = free[0]
                        m = _solve_single(r, g, imgs, invs, p)
                        if meridional and m not in cand_set:
                            return changed, False
                        imgs[g - 1], invs[g - 1] = m, _m2inv(m, p)
                        changed.append(g)
                        progress = True
            return changed, consistent()

        cand_set = set(cands)

        def record():
            if all(x == imgs[0] for x in imgs):
                return
            if all(_m2mul(a, b, p) == _m2mul(b, a, p) for a, b in itertools.combinations(imgs, 2)):
                return
            key = min(
                tuple(_m2mul(_m2mul(c, m, p), ci, p) for m in imgs)
                for c, ci in zip(centralizer, centralizer_inv)
            )
            if key in seen:
                return
            seen.add(key)
            found.append(tuple(imgs))

        def search():
            if len(found) >= budget:
                return
            changed, ok = propagate()
            if ok:
                try:
                    nxt = imgs.index(None)
                except ValueError:
                    record()
                    nxt = None
                if nxt is not None:
                    for m in cands:
                        imgs[nxt], invs[nxt] = m, _m2inv(m, p)
                        search()
                        imgs[nxt] = invs[nxt] = None
                        if len(found) >= budget:
                            break
            for g in changed:
                imgs[g - 1] = invs[g - 1] = None

        search()
        if len(found) >= budget:
            break

    ring = PrimeField(p)
    return [
        Representation(P.generators, [((m[0], m[1]), (m[2], m[3])) for m in imgs], ring, True)
        for imgs in found
    ]


def check_representation(rep, presentation):
    """Alias of :meth:`Representation.aligned` kept for call sites that read
    better as a check."""
    return rep.aligned(presentation)

