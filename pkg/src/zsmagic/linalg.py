"""Linear algebra over Z_n for composite n.

The zero-weight condition is linear: ``N x = 0 (mod n)`` with ``N`` the
unsigned vertex-edge incidence matrix.  Its solution set is a Z_n-submodule,
and the Howell normal form of a generating matrix describes it in echelon
shape: with leading entries ``d_k | n`` every solution is written uniquely as
``sum t_k r_k`` with ``0 <= t_k < n / d_k``.  That uniqueness is what lets the
search enumerate solutions without repeats.
"""

from __future__ import annotations

import math

import numpy as np


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b)``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def normalizing_unit(a: int, n: int) -> int:
    """A unit ``u`` of Z_n with ``u*a = gcd(a, n) (mod n)``."""
    a %= n
    if a == 0:
        return 1
    g = math.gcd(a, n)
    m = n // g
    if m == 1:
        return 1
    u = pow(a // g, -1, m)
    while math.gcd(u, n) != 1:
        u += m
    return u


def howell_form(rows: np.ndarray, n: int) -> np.ndarray:
    """Howell form of the row span of ``rows`` over Z_n.

    Returns a matrix whose rows are in echelon form with leading entries
    dividing ``n`` and which has the Howell property: for every column c,
    the rows leading at or after c span all of the module's vectors that vanish
    before c.
    """
    dtype = np.int64 if n < (1 << 31) else object
    pending = [np.asarray(r, dtype=dtype) % n for r in rows]
    pending = [r for r in pending if r.any()]
    ncols = rows.shape[1] if len(rows) else 0
    out = []
    for c in range(ncols):
        nz = [r for r in pending if r[c] != 0]
        if not nz:
            continue
        rest = [r for r in pending if r[c] == 0]
        piv = nz[0]
        for r in nz[1:]:
            a, b = int(piv[c]), int(r[c])
            g, s, t = egcd(a, b)
            new_piv = (s * piv + t * r) % n
            other = ((-b // g) * piv + (a // g) * r) % n
            piv = new_piv
            if other.any():
                rest.append(other)
        piv = (normalizing_unit(int(piv[c]), n) * piv) % n
        d = int(piv[c])
        # reduce the pivot row's own multiple that kills its lead
        annihilated = ((n // d) * piv) % n
        if annihilated.any():
            rest.append(annihilated)
        out.append(piv)
        pending = rest
    if not out:
        return np.zeros((0, ncols), dtype=dtype)
    h = np.array(out, dtype=dtype)
    # reduce entries above each pivot into [0, d)
    for k in range(len(h)):
        c = int(np.flatnonzero(h[k])[0])
        d = int(h[k, c])
        for i in range(k):
            q = int(h[i, c]) // d
            if q:
                h[i] = (h[i] - q * h[k]) % n
    return h


def lead_column(row: np.ndarray) -> int:
    nz = np.flatnonzero(row)
    return int(nz[0]) if len(nz) else -1


def kernel_basis(matrix: np.ndarray, n: int) -> np.ndarray:
    """Howell-form generators of ``{x : matrix @ x = 0 (mod n)}``.

    Uses the augmented matrix ``[matrix^T | I]``: the Howell rows that vanish
    on the first block span exactly the kernel, and inherit the Howell
    property on the identity block.
    """
    rows, cols = matrix.shape
    aug = np.concatenate([np.asarray(matrix).T % n, np.eye(cols, dtype=np.int64)], axis=1)
    h = howell_form(aug, n)
    if len(h) == 0:
        return np.zeros((0, cols), dtype=np.int64)
    keep = [k for k in range(len(h)) if not h[k, :rows].any()]
    return np.array([h[k, rows:] for k in keep], dtype=h.dtype).reshape(len(keep), cols)


def module_size(basis: np.ndarray, n: int) -> int:
    """Number of elements spanned by a Howell basis."""
    size = 1
    for row in basis:
        size *= n // int(row[lead_column(row)])
    return size
