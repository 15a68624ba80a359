"""Dense row reduction over GF(p) for small coefficient matrices."""

from __future__ import annotations

from .errors import InputError
from .field import inverse_mod


def rref(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = inverse_mod(m[r][c], p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                a = m[i][c]
                m[i] = [(x - a * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: list[list[int]], p: int) -> int:
    return len(rref(rows, p)[1]) if rows else 0


def complete_basis(rows: list[list[int]], n: int, p: int) -> list[list[int]]:
    """Extend independent rows to a basis of GF(p)^n with unit vectors."""
    red, pivots = rref(rows, p)
    out = [list(r) for r in red]
    for c in range(n):
        if c not in pivots:
            out.append([1 if k == c else 0 for k in range(n)])
    return out


def inverse(mat: list[list[int]], p: int) -> list[list[int]]:
    n = len(mat)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(mat)]
    red, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise InputError("matrix is singular")
    return [r[n:] for r in red]
