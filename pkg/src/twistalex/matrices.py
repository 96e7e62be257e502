"""Small dense matrices over an exact field (tuples of tuples) or complex
floats (numpy arrays).  Used for representation images, not for the big
polynomial determinants."""

from __future__ import annotations

import numpy as np

from .algebra import ComplexFloat


def identity(k, ring):
    if isinstance(ring, ComplexFloat):
        return np.eye(k, dtype=complex)
    return tuple(tuple(ring.one if i == j else ring.zero for j in range(k)) for i in range(k))


def as_matrix(rows, ring):
    if isinstance(ring, ComplexFloat):
        return np.array([[ring.coerce(x) for x in row] for row in rows], dtype=complex)
    return tuple(tuple(ring.norm(ring.coerce(x)) for x in row) for row in rows)


def mat_mul(a, b, ring):
    if isinstance(ring, ComplexFloat):
        return a @ b
    k, m = len(a), len(b[0])
    inner = len(b)
    return tuple(
        tuple(ring.norm(sum(a[i][l] * b[l][j] for l in range(inner))) for j in range(m))
        for i in range(k)
    )


def mat_inv(a, ring):
    if isinstance(ring, ComplexFloat):
        return np.linalg.inv(a)
    k = len(a)
    aug = [list(a[i]) + [ring.one if i == j else ring.zero for j in range(k)] for i in range(k)]
    for col in range(k):
        piv = next((r for r in range(col, k) if not ring.is_zero(aug[r][col])), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = ring.div(ring.one, aug[col][col])
        aug[col] = [ring.norm(x * inv) for x in aug[col]]
        for r in range(k):
            if r != col and not ring.is_zero(aug[r][col]):
                f = aug[r][col]
                aug[r] = [ring.norm(x - f * y) for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[k:]) for row in aug)


def det_small(a, ring):
    if isinstance(ring, ComplexFloat):
        return complex(np.linalg.det(a))
    k = len(a)
    m = [list(r) for r in a]
    d = ring.one
    for col in range(k):
        piv = next((r for r in range(col, k) if not ring.is_zero(m[r][col])), None)
        if piv is None:
            return ring.zero
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            d = ring.norm(-d)
        d = ring.norm(d * m[col][col])
        inv = ring.div(ring.one, m[col][col])
        for r in range(col + 1, k):
            if not ring.is_zero(m[r][col]):
                f = ring.norm(m[r][col] * inv)
                m[r] = [ring.norm(x - f * y) for x, y in zip(m[r], m[col])]
    return d


def add_scaled(acc, a, c, ring):
    """acc + c*a."""
    if isinstance(ring, ComplexFloat):
        return acc + c * a
    return tuple(tuple(ring.norm(x + c * y) for x, y in zip(r1, r2)) for r1, r2 in zip(acc, a))


def zero_matrix(k, ring):
    if isinstance(ring, ComplexFloat):
        return np.zeros((k, k), dtype=complex)
    return tuple(tuple(ring.zero for _ in range(k)) for _ in range(k))


def is_zero_matrix(a, ring):
    if isinstance(ring, ComplexFloat):
        return not np.any(a)
    return all(ring.is_zero(x) for row in a for x in row)


def distance_to_identity(a, ring):
    """Frobenius distance for complex matrices, 0/1 for exact ones."""
    k = len(a)
    if isinstance(ring, ComplexFloat):
        return float(np.linalg.norm(a - np.eye(k)))
    return 0.0 if a == identity(k, ring) else 1.0
