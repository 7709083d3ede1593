"""Exact Gaussian elimination over a coefficient field (raw values)."""

from __future__ import annotations

from .fields import Field


def row_echelon(rows: list[list], f: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    ncols = max((len(r) for r in m), default=0)
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not f.is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = f.inv(m[r][c])
        m[r] = [f.mul(v, inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and not f.is_zero(m[i][c]):
                k = m[i][c]
                m[i] = [f.sub(a, f.mul(k, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list], f: Field) -> int:
    return len(row_echelon(rows, f)[1])


def solve(columns: list[list], target: list, f: Field) -> list | None:
    """Coefficients c with sum c_i * columns[i] == target, or None."""
    n = len(columns)
    length = len(target)
    aug = [[columns[j][i] for j in range(n)] + [target[i]] for i in range(length)]
    red, pivots = row_echelon(aug, f)
    if n in pivots:
        return None
    sol = [f.zero] * n
    for row, c in zip(red, pivots):
        sol[c] = row[n]
    return sol
