"""Polynomial roots by Aberth-Ehrlich simultaneous iteration, and the Mahler
measure built on them.

Exact (integer/rational) inputs are split into squarefree parts first so
that repeated cyclotomic factors, as in connected sums, come out as simple
roots and converge quadratically.
"""

from __future__ import annotations

import numpy as np

from .algebra import QQ, ComplexFloat, Integers, LaurentPoly, poly_gcd

MAX_ITER = 200
UPDATE_TOL = 1e-13
RESIDUAL_TOL = 1e-9
UNIT_SNAP = 1e-8
RESTARTS = 8


class RootFindingError(RuntimeError):
    """Aberth iteration did not converge within its budget."""


def squarefree_decomposition(p):
    """Yun's algorithm over the rationals.

    Returns ``[(factor, multiplicity), ...]`` with monic rational factors whose
    product (with multiplicities) equals ``p`` up to a constant and a power of t.
    """
    f = p.change_ring(QQ).normalized_shift() if isinstance(p.ring, Integers) else p.normalized_shift()
    if f.degree() == 0:
        return []
    out = []
    fp = f.derivative()
    a = poly_gcd(f, fp)
    b = f.exact_div(a) if a.degree() > 0 else f
    c = fp.exact_div(a) if a.degree() > 0 else fp
    d = c - b.derivative()
    i = 1
    while b.degree() > 0:
        g = poly_gcd(b, d)
        if g.degree() > 0:
            out.append((g, i))
        b = b.exact_div(g).normalized_shift()
        c = d.exact_div(g)
        d = c - b.derivative()
        i += 1
    return out


def _aberth(coeffs, rng):
    """Roots of the polynomial with ascending complex ``coeffs`` (c0, cn != 0)."""
    n = len(coeffs) - 1
    if n == 1:
        return np.array([-coeffs[0] / coeffs[1]])
    desc = np.asarray(coeffs[::-1], dtype=complex)
    ddesc = np.polyder(desc)
    radius = (abs(coeffs[0]) / abs(coeffs[-1])) ** (1.0 / n)
    base = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    for attempt in range(RESTARTS):
        z = base if attempt == 0 else base * (1 + 0.3 * rng.standard_normal(n)) * np.exp(
            1j * rng.uniform(0, 2 * np.pi)
        )
        z = z.astype(complex)
        for _ in range(MAX_ITER):
            pz = np.polyval(desc, z)
            dz = np.polyval(ddesc, z)
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = pz / dz
                diff = z[:, None] - z[None, :]
                np.fill_diagonal(diff, 1.0)
                inv = 1.0 / diff
                np.fill_diagonal(inv, 0.0)
                s = inv.sum(axis=1)
                w = ratio / (1 - ratio * s)
            w = np.where(pz == 0, 0, w)
            if not np.all(np.isfinite(w)):
                break
            z = z - w
            if np.all(np.abs(w) <= UPDATE_TOL * np.maximum(1.0, np.abs(z))):
                return _polish(desc, ddesc, z)
    raise RootFindingError(f"no convergence for degree {n} after {RESTARTS} restarts")


def _polish(desc, ddesc, z):
    for _ in range(2):
        pz = np.polyval(desc, z)
        dz = np.polyval(ddesc, z)
        step = np.where(dz != 0, pz / np.where(dz != 0, dz, 1), 0)
        z = z - step
    return z


def _residual_ok(desc, z):
    mags = np.abs(desc)
    for root in z:
        scale = np.polyval(mags, abs(root))
        if abs(np.polyval(desc, root)) > RESIDUAL_TOL * max(scale, 1e-300):
            return False
    return True


def poly_roots(p, rng=None):
    """All roots of the polynomial part of ``p`` (lowest power of t removed),
    repeated according to multiplicity.  ``len(result) == p.degree()``."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no root list")
    if rng is None:
        rng = np.random.default_rng(0)
    if isinstance(p.ring, ComplexFloat):
        parts = [(p.normalized_shift(), 1)]
    else:
        parts = squarefree_decomposition(p)
    roots = []
    for factor, mult in parts:
        c = [complex(x) for x in factor.normalized_shift().coeffs]
        if len(c) < 2:
            continue
        z = _aberth(c, rng)
        if not _residual_ok(np.asarray(c[::-1], dtype=complex), z):
            raise RootFindingError("root residual above tolerance")
        for root in z:
            roots.extend([complex(root)] * mult)
    if len(roots) != p.degree():
        raise RootFindingError(f"found {len(roots)} roots for a polynomial of span {p.degree()}")
    return sorted(roots, key=lambda r: (abs(r), np.angle(r)))


def snap_modulus(r):
    """|r|, snapped to exactly 1 within UNIT_SNAP."""
    m = abs(r)
    return 1.0 if abs(m - 1.0) < UNIT_SNAP else m


def mahler(p, rng=None):
    """Mahler measure |c_n| * prod max(|a_j|, 1)."""
    if p.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    lead = abs(complex(p.leading()))
    if p.degree() == 0:
        return lead
    out = lead
    for r in poly_roots(p, rng):
        out *= max(snap_modulus(r), 1.0)
    return out


def as_complex_poly(coeffs, low=0):
    from .algebra import CC

    return LaurentPoly([complex(c) for c in coeffs], low, CC, _trusted=True)
