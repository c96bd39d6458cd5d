"""Exact Gaussian elimination over Q, Q(zeta_N) and F_p."""

from __future__ import annotations

from fractions import Fraction


def _rref(rows, is_zero, inv):
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    top = 0
    for col in range(ncols):
        pr = next((i for i in range(top, len(rows)) if not is_zero(rows[i][col])), None)
        if pr is None:
            continue
        rows[top], rows[pr] = rows[pr], rows[top]
        scale = inv(rows[top][col])
        rows[top] = [x * scale for x in rows[top]]
        for i in range(len(rows)):
            if i != top and not is_zero(rows[i][col]):
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[top])]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows, pivots


def nullspace(rows, zero, one):
    """Basis of {x : rows @ x = 0} over a field whose elements support + - * and inverse().

    ``zero`` and ``one`` are the field's constants; the basis vectors carry
    ``one`` in their free coordinate.
    """
    if not rows:
        raise ValueError("empty system")
    ncols = len(rows[0])
    red, pivots = _rref(rows, lambda x: x == 0, lambda x: one / x)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [zero] * ncols
        vec[f] = one
        for i, pc in enumerate(pivots):
            vec[pc] = -red[i][f]
        basis.append(vec)
    return basis


def rational_nullspace(rows) -> list[list[Fraction]]:
    rows = [[Fraction(x) for x in r] for r in rows]
    return nullspace(rows, Fraction(0), Fraction(1))


def nullspace_mod_p(rows, p: int) -> list[list[int]]:
    ncols = len(rows[0])
    red, pivots = _rref(
        [[x % p for x in r] for r in rows],
        lambda x: x % p == 0,
        lambda x: pow(x, p - 2, p),
    )
    red = [[x % p for x in r] for r in red]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-red[i][f]) % p
        basis.append(vec)
    return basis
