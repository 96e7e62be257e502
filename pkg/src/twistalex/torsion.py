"""Alexander polynomial, Alexander torsion and twisted Alexander torsion
(Wada's determinant quotient), with the genus and fiberedness checks that
these invariants support."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import (
    NEG_INFINITY,
    QQ,
    ZZ,
    ComplexFloat,
    LaurentPoly,
    TorsionClass,
    det_exact,
)
from .fox import GroupRingElement, Specializer, fox_jacobian
from .matrices import det_small
from .representations import Representation

RADII = (0.5, 1.0, 2.0)
MONIC_TOL = 1e-4


class NoValidColumn(ArithmeticError):
    """Every candidate denominator det(alpha(x_j) t^phi(x_j) - 1) vanishes."""


class IllConditionedFit(ArithmeticError):
    pass


def _trivial_integral(P):
    return Representation(P.generators, [[[1]]] * P.n, ZZ)


def _t_minus_one(ring):
    return LaurentPoly([-1, 1], 0, ring)


def _jacobian_blocks(P, sp, jac, skip):
    """Square matrix of LaurentPoly: all block columns except ``skip``."""
    k = sp.k
    rows = []
    for i, row in enumerate(jac):
        blocks = [sp.exact(e) for j, e in enumerate(row) if j != skip]
        for a in range(k):
            rows.append([blk[a][b] for blk in blocks for b in range(k)])
    return rows


def alexander_polynomial(P):
    """Delta_K(t) over the integers, normalized to Delta(1) = +1 with lowest
    exponent 0."""
    j = next((i for i, w in enumerate(P.weights) if w != 0), None)
    sp = Specializer(_trivial_integral(P), P.weights)
    jac = fox_jacobian(P.relators, P.n)
    num = det_exact(_jacobian_blocks(P, sp, jac, j)) if P.n > 1 else LaurentPoly.one(ZZ)
    w = P.weights[j]
    den = LaurentPoly.monomial(w, 1, ZZ) - LaurentPoly.one(ZZ)
    delta = (num * _t_minus_one(ZZ)).exact_div(den).normalized_shift()
    if delta.is_zero():
        raise ValueError("Alexander polynomial vanished: not a knot group presentation")
    at_one = delta(1)
    if at_one not in (1, -1):
        raise ValueError(f"Delta(1) = {at_one}: not a knot group presentation")
    return delta if at_one == 1 else -delta


def alexander_torsion(P):
    """tau(K)(t) = Delta_K(t) / (1 - t)."""
    delta = alexander_polynomial(P)
    return TorsionClass(delta, LaurentPoly([1, -1], 0, ZZ))


def _column_denominator(P, sp, j):
    e = GroupRingElement.word((j + 1,)) - GroupRingElement.one()
    return det_exact(sp.exact(e))


def twisted_torsion(P, rep, column=None):
    """det(M_j) / det(Phi(x_j - 1)) over the representation's exact field.

    ``column`` forces the deleted block column (0-based); by default the
    first generator with a nonvanishing denominator is used.
    """
    rep = rep.aligned(P)
    if isinstance(rep.ring, ComplexFloat):
        raise ValueError("use twisted_torsion_numeric for complex representations")
    sp = Specializer(rep, P.weights)
    columns = [column] if column is not None else range(P.n)
    for j in columns:
        den = _column_denominator(P, sp, j)
        if den.is_zero():
            continue
        if P.n == 1:
            num = LaurentPoly.one(rep.ring)
        else:
            jac = fox_jacobian(P.relators, P.n)
            num = det_exact(_jacobian_blocks(P, sp, jac, j))
        if num.is_zero():
            return TorsionClass(LaurentPoly.zero(rep.ring), LaurentPoly.one(rep.ring))
        return TorsionClass(num, den)
    raise NoValidColumn("every block column has a vanishing denominator")


# ---------------------------------------------------------------------------
# numeric twisted torsion


@dataclass
class NumericTorsion:
    degree: object
    monic: bool
    report: dict = field(default_factory=dict)

    def __iter__(self):
        return iter((self.degree, self.monic, self.report))


def _entry_terms(sp, e):
    return {d: np.asarray(m, dtype=complex) for d, m in sp.terms(e).items()}


def _numeric_denominator(A, w):
    """Ascending coefficients and low exponent of det(t^w A - I)."""
    k = A.shape[0]
    if w == 0:
        c = complex(np.linalg.det(A - np.eye(k)))
        return LaurentPoly([c], 0, ComplexFloat(), _trusted=True) if abs(c) > 1e-10 else None
    lam = np.linalg.eigvals(A)
    desc = np.prod(lam) * np.poly(1.0 / lam)  # prod(lam*s - 1), descending in s
    asc = list(desc[::-1])
    terms = {w * i: complex(c) for i, c in enumerate(asc)}
    return LaurentPoly.from_dict(terms, ComplexFloat())


def twisted_torsion_numeric(P, rep, samples=64, column=None):
    """Degree and monicness of tau(K, alpha) for a complex representation.

    det(M_j) is sampled on circles of radius 1/2, 1 and 2.  A discrete Fourier
    transform on each circle isolates c_e r^e per residue class; a least
    squares line through log|c_e r^e| against log r gives the exponent e.
    """
    rep = rep.aligned(P)
    if not isinstance(rep.ring, ComplexFloat):
        rep = rep.to_complex().aligned(P)
    sp = Specializer(rep, P.weights)
    k = rep.dimension
    cols = [column] if column is not None else range(P.n)
    for j in cols:
        den = _numeric_denominator(rep.matrices[j], P.weights[j])
        if den is not None and not den.is_zero():
            break
    else:
        raise NoValidColumn("every block column has a vanishing denominator")

    jac = fox_jacobian(P.relators, P.n)
    entries = [[_entry_terms(sp, e) for jj, e in enumerate(row) if jj != j] for row in jac]
    bound = 0
    for row in entries:
        exps = [d for ent in row for d in ent]
        if exps:
            bound += k * (max(exps) - min(exps))
    S = max(int(samples), bound + 1)
    m = (P.n - 1) * k

    values = {}
    for r in RADII:
        z = r * np.exp(2j * np.pi * np.arange(S) / S)
        big = np.zeros((S, m, m), dtype=complex)
        for i, row in enumerate(entries):
            for jj, ent in enumerate(row):
                blk = np.zeros((S, k, k), dtype=complex)
                for d, C in ent.items():
                    blk += (z ** d)[:, None, None] * C[None, :, :]
                big[:, i * k:(i + 1) * k, jj * k:(jj + 1) * k] = blk
        values[r] = np.linalg.det(big) if m else np.ones(S, dtype=complex)

    coeffs = {r: np.fft.fft(values[r]) / S for r in RADII}
    c1 = np.abs(coeffs[1.0])
    hadamard = 1.0
    for v in values.values():
        hadamard = max(hadamard, float(np.max(np.abs(v))))
    report = {"column": j, "samples": S, "span_bound": bound, "radii": RADII}
    if c1.max() <= 1e-10 * hadamard:
        report.update(condition=None, max_fit_residual=None)
        return NumericTorsion(NEG_INFINITY, False, report)

    nonzero = np.nonzero(c1 > 1e-8 * c1.max())[0]
    logr = np.log(RADII)
    exps, resid = {}, 0.0
    for b in nonzero:
        y = np.log([max(abs(coeffs[r][b]), 1e-300) for r in RADII])
        slope, icpt = np.polyfit(logr, y, 1)
        e = int(b + S * round((slope - b) / S))
        resid = max(resid, abs(slope - e), float(np.max(np.abs(icpt + slope * logr - y))))
        exps[e] = coeffs[1.0][b]
    mags = np.abs(np.array(list(exps.values())))
    condition = float(mags.max() / mags.min())
    report.update(condition=condition, max_fit_residual=resid)
    if resid > 0.1:
        raise IllConditionedFit(
            f"exponent fit residual {resid:.3g} (condition {condition:.3g}); raise the sample count"
        )
    top, bottom = max(exps), min(exps)
    num_span = top - bottom
    degree = num_span - den.degree()
    top_ratio = abs(exps[top]) / abs(den.leading())
    bot_ratio = abs(exps[bottom]) / abs(den.trailing())
    monic = abs(top_ratio - 1) <= MONIC_TOL and abs(bot_ratio - 1) <= MONIC_TOL
    report.update(
        top_exponent=top,
        bottom_exponent=bottom,
        top_coefficient=complex(exps[top]),
        bottom_coefficient=complex(exps[bottom]),
        top_ratio=top_ratio,
        bottom_ratio=bot_ratio,
        denominator_span=den.degree(),
    )
    return NumericTorsion(degree, monic, report)


# ---------------------------------------------------------------------------
# genus and fiberedness


def genus_bound(tau, k=1):
    """Lower bound (deg(tau)/k + 1)/2 on the genus."""
    if tau.is_zero():
        raise ValueError("zero torsion gives no genus bound")
    return (Fraction(tau.degree(), k) + 1) / 2


class Fiberedness(enum.Enum):
    CONSISTENT = "Consistent"
    CERTIFIED_NON_FIBERED = "CertifiedNonFibered"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class FiberednessVerdict:
    status: Fiberedness
    witness: object = None
    reasons: tuple = ()

    def __str__(self):
        return self.status.value


def is_special_linear(rep):
    """Flagged special-linear, or every image has determinant exactly 1."""
    if rep.special_linear:
        return True
    if isinstance(rep.ring, ComplexFloat):
        return all(abs(det_small(m, rep.ring) - 1) <= 1e-8 for m in rep.matrices)
    return all(rep.ring.norm(det_small(m, rep.ring) - rep.ring.one) == 0 for m in rep.matrices)


def fibered_check(P, known_genus=None, reps=()):
    """Test the necessary conditions for fiberedness: every torsion nonzero,
    monic, and (with known genus g) of degree k(2g - 1).  Monicness is only
    demanded of special-linear representations.

    The classical torsion is tested as the trivial 1-dimensional case; the
    witness for a violation is the representation that produced it.
    """
    reasons = []
    cases = [(Representation.trivial(P, 1, QQ), alexander_torsion(P))]
    undecided = False
    for rep in reps:
        try:
            cases.append((rep, twisted_torsion(P, rep)))
        except NoValidColumn:
            undecided = True
            reasons.append(f"{rep!r}: no valid column")
    for rep, tau in cases:
        k = rep.dimension
        if tau.is_zero():
            reasons.append(f"tau = 0 for {rep!r}")
            return FiberednessVerdict(Fiberedness.CERTIFIED_NON_FIBERED, rep, tuple(reasons))
        if is_special_linear(rep) and not tau.is_monic():
            reasons.append(f"torsion {tau.render()} is not monic ({rep!r})")
            return FiberednessVerdict(Fiberedness.CERTIFIED_NON_FIBERED, rep, tuple(reasons))
        if known_genus is not None and tau.degree() != k * (2 * known_genus - 1):
            reasons.append(
                f"deg {tau.degree()} != k(2g-1) = {k * (2 * known_genus - 1)} ({rep!r})"
            )
            return FiberednessVerdict(Fiberedness.CERTIFIED_NON_FIBERED, rep, tuple(reasons))
    if known_genus is None or undecided:
        return FiberednessVerdict(Fiberedness.INCONCLUSIVE, None, tuple(reasons))
    return FiberednessVerdict(Fiberedness.CONSISTENT, None, tuple(reasons))
