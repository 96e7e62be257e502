"""Max-product functions ``f(t) = C * t^m * prod max{a_i, t}^{e_i}`` on the
positive reals, the class that holds the L2-Alexander torsion of the
abelianization and the torus knot closed forms.

Functions are compared up to ``t^k``: the canonical representative has
``m = 0``, i.e. f is constant near ``t = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import gcd
from typing import NamedTuple

import numpy as np

from .roots import poly_roots, snap_modulus

BASE_TOL = 1e-8
COEFF_TOL = 1e-8


def _merge(factors):
    """Snap bases near 1 to 1, merge bases within BASE_TOL, drop zero exponents."""
    items = []
    for a, e in factors:
        a = float(a)
        if a <= 0:
            raise ValueError(f"max-product base must be positive, got {a}")
        if e == 0:
            continue
        if abs(a - 1.0) < BASE_TOL:
            a = 1.0
        items.append((a, int(e)))
    items.sort()
    merged = []
    for a, e in items:
        if merged and abs(a - merged[-1][0]) <= BASE_TOL * max(1.0, a):
            b, f = merged[-1]
            # keep an exact 1.0 if the cluster contains it
            merged[-1] = (1.0 if a == 1.0 else b, f + e)
        else:
            merged.append((a, e))
    return tuple((a, e) for a, e in merged if e != 0)


@dataclass(frozen=True)
class MaxProduct:
    C: float = 1.0
    m: int = 0
    factors: tuple = ()
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.C > 0:
            raise ValueError("scale C must be positive")
        object.__setattr__(self, "C", float(self.C))
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "factors", _merge(self.factors))

    def canonical(self):
        return MaxProduct(self.C, 0, self.factors, self.label)

    def shifted(self, k):
        return MaxProduct(self.C, self.m + k, self.factors, self.label)

    def equivalent(self, other, tol=COEFF_TOL):
        """f = t^k g for some integer k (numerically: C and bases to ``tol``)."""
        if len(self.factors) != len(other.factors):
            return False
        if abs(self.C - other.C) > tol * max(self.C, other.C):
            return False
        for (a, e), (b, f) in zip(self.factors, other.factors):
            if e != f or abs(a - b) > tol * max(1.0, a, b):
                return False
        return True

    def __call__(self, t):
        return mp_eval(self, t)

    def render(self):
        parts = []
        if self.C != 1.0:
            parts.append(f"{self.C:.12g}")
        if self.m:
            parts.append("t" if self.m == 1 else f"t^{self.m}")
        for a, e in self.factors:
            parts.append(f"max{{{a:.12g},t}}" + ("" if e == 1 else f"^{e}"))
        return " * ".join(parts) if parts else "1"

    def __str__(self):
        return self.render()


def constant(c=1.0):
    return MaxProduct(c)


# ---------------------------------------------------------------------------


def l2_from_alexander(delta, rng=None):
    """|c| * prod max{|a_i|, t} * max{1, t}^-1 for Delta = c * prod (t - a_i)."""
    if delta.is_zero():
        raise ValueError("Alexander polynomial must be nonzero")
    try:
        at_one = delta(1)
    except TypeError:
        at_one = None
    if at_one is not None and abs(at_one) != 1:
        raise ValueError(f"Delta(1) = {at_one}: not a knot Alexander polynomial")
    C = abs(complex(delta.leading()))
    factors = [(snap_modulus(r), 1) for r in (poly_roots(delta, rng) if delta.degree() > 0 else [])]
    factors.append((1.0, -1))
    return MaxProduct(C, 0, factors, "abelianization")


def torus_closed_form(p, q):
    """max{1, t^((p-1)(q-1)-1)} for the (p, q) torus knot."""
    if p < 2 or q < 2:
        raise ValueError("torus knot parameters must be >= 2")
    if gcd(p, q) != 1:
        raise ValueError(f"T({p},{q}) is not a knot: gcd = {gcd(p, q)}")
    return MaxProduct(1.0, 0, ((1.0, (p - 1) * (q - 1) - 1),), "full")


def unknot_form():
    return MaxProduct(1.0, 0, ((1.0, -1),), "full")


def mp_mul(f, g):
    label = f.label if f.label == g.label else ""
    return MaxProduct(f.C * g.C, f.m + g.m, f.factors + g.factors, label)


def mp_eval(f, t):
    if not t > 0:
        raise ValueError("max-product functions live on t > 0")
    out = f.C * t ** f.m
    for a, e in f.factors:
        out *= max(a, t) ** e
    return out


def mp_degree(f):
    """Degree in the limit: top exponent minus bottom exponent = sum of e_i."""
    return sum(e for _, e in f.factors)


class Coefficients(NamedTuple):
    bottom: float
    top: float
    monic: bool


def mp_coefficients(f):
    """f ~ C t^(m + sum e) at infinity and f ~ C prod a^e t^m at zero."""
    top = f.C
    bottom = f.C * math.prod(a ** e for a, e in f.factors)
    monic = abs(top - 1) <= COEFF_TOL and abs(bottom - 1) <= COEFF_TOL
    return Coefficients(bottom, top, monic)


def invert_argument(f):
    """The max-product g(t) = f(1/t), using max{a, 1/t} = (a/t) max{t, 1/a}."""
    C = f.C * math.prod(a ** e for a, e in f.factors)
    m = -f.m - mp_degree(f)
    return MaxProduct(C, m, tuple((1.0 / a, e) for a, e in f.factors), f.label)


class Symmetry(NamedTuple):
    holds: bool
    n: int
    odd: bool


def mp_symmetry_check(f):
    """Is f(1/t) = t^n f(t)?  Returns the flag, n, and whether n is odd."""
    g = invert_argument(f)
    holds = g.equivalent(f)
    n = g.m - f.m
    return Symmetry(holds, n, holds and n % 2 == 1)


# ---------------------------------------------------------------------------
# fibered step model


@dataclass(frozen=True)
class StepModel:
    genus: int
    T: float = 1.0

    def __post_init__(self):
        if self.T < 1:
            raise ValueError("T = exp(entropy) must be >= 1")
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")

    @classmethod
    def for_knot(cls, genus, fibered, entropy=0.0):
        if not fibered:
            raise ValueError("the step model only applies to fibered knots")
        return cls(genus, math.exp(entropy or 0.0))


def constancy_radius(f):
    """sup{T : f is constant on (0, T)} for the m = 0 representative."""
    if not f.factors:
        return math.inf
    return f.factors[0][0]


def step_consistency(f, model, entropy=None):
    """Compare f against the fibered step shape: 1 below 1/T, t^(2g-1) above T."""
    T = model.T
    lo, hi = 1.0 / T, T
    bases_ok = all(lo - BASE_TOL <= a <= hi + BASE_TOL for a, _ in f.factors)
    deg = mp_degree(f)
    coeffs = mp_coefficients(f)
    radius = constancy_radius(f.canonical())
    report = {
        "label": f.label,
        "bases_in_window": bases_ok,
        "degree": deg,
        "expected_degree": 2 * model.genus - 1,
        "degree_ok": deg == 2 * model.genus - 1,
        "monic": coeffs.monic,
        "constancy_radius": radius,
    }
    if entropy is not None:
        report["exp_minus_entropy"] = math.exp(-entropy)
    report["consistent"] = bases_ok and report["degree_ok"] and coeffs.monic
    return report


# ---------------------------------------------------------------------------
# unknot detection and shape checks


def unknot_detect(f, is_full_torsion=False):
    """True iff f ~ max{1,t}^-1.  Only a proof of unknottedness when f is the
    full torsion; for the abelianization form it is a necessary check."""
    return f.equivalent(unknot_form())


def unknot_report(f, is_full_torsion=False):
    hit = unknot_detect(f, is_full_torsion)
    if not hit:
        return "not the unknot form: knot is nontrivial"
    if is_full_torsion:
        return "full torsion equals max{1,t}^-1: trivial knot"
    return "abelianization form equals max{1,t}^-1: cannot certify unknottedness"


def convexity_checks(f, tmin=1e-3, tmax=1e3, points=2001):
    """Second differences of f(t) max{1,t} on a linear grid (convexity in t)
    and of log-values against log t on a geometric grid."""
    g = mp_mul(f, MaxProduct(1.0, 0, ((1.0, 1),)))
    lin = np.linspace(tmin, tmax, points)
    vals = np.array([mp_eval(g, x) for x in lin])
    d2 = vals[2:] - 2 * vals[1:-1] + vals[:-2]
    lin_ok = bool(np.all(d2 >= -1e-9 * np.maximum(1.0, np.abs(vals[1:-1]))))
    geo = np.geomspace(tmin, tmax, points)
    logs = np.array([mp_log_eval(g, x) for x in geo])
    d2l = logs[2:] - 2 * logs[1:-1] + logs[:-2]
    log_ok = bool(np.all(d2l >= -1e-9))
    return {"convex": lin_ok, "log_convex": log_ok}


def mp_log_eval(f, t):
    """log f(t), safe for large degrees."""
    if not t > 0:
        raise ValueError("max-product functions live on t > 0")
    lt = math.log(t)
    return math.log(f.C) + f.m * lt + sum(e * max(math.log(a), lt) for a, e in f.factors)


def monomial_in_limit(f, big=1e6):
    """Numerical check that f/t^d and f/t^D settle at the bottom and top ends."""
    d, D = f.m, f.m + mp_degree(f)
    lo = [mp_log_eval(f, x) - d * math.log(x) for x in (1e-9 / big, 1e-9)]
    hi = [mp_log_eval(f, x) - D * math.log(x) for x in (1e9, 1e9 * big)]
    return abs(lo[0] - lo[1]) <= 1e-9 and abs(hi[0] - hi[1]) <= 1e-9


def plot_samples(f, tmax=10.0, points=200):
    """Two-column text ``t<TAB>f(t)`` on a geometric grid [1/tmax, tmax]."""
    if tmax <= 1:
        raise ValueError("tmax must exceed 1")
    grid = np.geomspace(1.0 / tmax, tmax, int(points))
    return "".join(f"{x:.12g}\t{mp_eval(f, x):.12g}\n" for x in grid)

