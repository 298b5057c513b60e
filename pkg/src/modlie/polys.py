"""Univariate polynomials over F_p used by the MeatAxe.

Coefficient lists run from the constant term upwards.  Factoring is
delegated to sympy's finite-field routines (Cantor-Zassenhaus).
"""

from __future__ import annotations

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor

from .gfp import DTYPE, inv, matmul


def charpoly(a: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial via reduction to upper Hessenberg form."""
    h = np.asarray(a, dtype=DTYPE) % p
    m = h.shape[0]
    h = h.copy()
    for j in range(m - 2):
        nz = np.nonzero(h[j + 1:, j])[0]
        if nz.size == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            h[[i, j + 1]] = h[[j + 1, i]]
            h[:, [i, j + 1]] = h[:, [j + 1, i]]
        f = h[j + 2:, j] * inv(h[j + 1, j], p) % p
        if f.any():
            # similarity by an elementary lower-triangular matrix
            h[j + 2:, :] = (h[j + 2:, :] - np.outer(f, h[j + 1, :])) % p
            h[:, j + 1] = (h[:, j + 1] + h[:, j + 2:] @ f) % p
    polys = [np.array([1], dtype=DTYPE)]
    for k in range(1, m + 1):
        prev = polys[k - 1]
        cur = np.zeros(k + 1, dtype=DTYPE)
        cur[1:] = prev
        cur[:-1] = (cur[:-1] - h[k - 1, k - 1] * prev) % p
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * h[i, i - 1] % p
            if prod == 0:
                break
            c = h[i - 1, k - 1] * prod % p
            if c:
                q = polys[i - 1]
                cur[: len(q)] = (cur[: len(q)] - c * q) % p
        polys.append(cur % p)
    return [int(c) for c in polys[m]]


def factor(poly: list[int], p: int) -> list[tuple[list[int], int]]:
    """Monic irreducible factors with multiplicities, lowest degree first."""
    _, facs = gf_factor([ZZ(c) for c in reversed(poly)], p, ZZ)
    out = [([int(c) for c in reversed(f)], int(e)) for f, e in facs]
    out.sort(key=lambda fe: (len(fe[0]), fe[0]))
    return out


def evaluate(poly: list[int], a: np.ndarray, p: int) -> np.ndarray:
    """poly(a) by Horner's rule."""
    m = a.shape[0]
    eye = np.eye(m, dtype=DTYPE)
    out = np.zeros((m, m), dtype=DTYPE)
    for c in reversed(poly):
        out = (matmul(out, a, p) + c * eye) % p
    return out


def format_poly(poly: list[int]) -> str:
    terms = []
    for d in range(len(poly) - 1, -1, -1):
        c = poly[d]
        if not c:
            continue
        mono = "" if d == 0 else ("x" if d == 1 else "x^%d" % d)
        if mono and c == 1:
            terms.append(mono)
        else:
            terms.append("%d%s" % (c, ("*" + mono) if mono else ""))
    return " + ".join(terms) or "0"
