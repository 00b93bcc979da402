"""Dense exact linear algebra over the rational-function field.

Matrices are lists of row lists of :class:`~gsmc.symexpr.Expr`.  Pivoting
chooses the first row whose entry is not identically zero, which is exact and
deterministic; there is no notion of numeric magnitude here.
"""

from __future__ import annotations

from gsmc.symexpr import Expr, SymbolTable


class SingularMatrixError(Exception):
    """The matrix (or linear system) has no solution over the function field."""


def mat_mul(a: list[list[Expr]], b: list[list[Expr]]) -> list[list[Expr]]:
    n, k, m = len(a), len(b), len(b[0])
    table = a[0][0].table
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = table.zero
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def solve(a: list[list[Expr]], rhs: list[list[Expr]]) -> list[list[Expr]]:
    """Solve A X = B by Gauss-Jordan elimination; raises when A is singular."""
    n = len(a)
    width = len(rhs[0])
    aug = [list(a[i]) + list(rhs[i]) for i in range(n)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not aug[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            raise SingularMatrixError(f"no pivot in column {col}")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col]
        aug[col] = [e / inv for e in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [er - f * ec for er, ec in zip(aug[r], aug[col])]
    return [row[n : n + width] for row in aug]


def invert(a: list[list[Expr]]) -> list[list[Expr]]:
    n = len(a)
    table: SymbolTable = a[0][0].table
    ident = [
        [table.one if i == j else table.zero for j in range(n)] for i in range(n)
    ]
    return solve(a, ident)


def solve_vector(a: list[list[Expr]], b: list[Expr]) -> list[Expr]:
    return [row[0] for row in solve(a, [[e] for e in b])]


def solve_rectangular(
    a: list[list[Expr]], b: list[Expr]
) -> list[Expr] | None:
    """Any exact solution of A x = b, or None when the system is inconsistent.

    A may have more rows than columns (the usual case here: one equation per
    tensor component, three unknowns).  Free columns are pinned to zero, so
    the answer is deterministic even when A is rank deficient.
    """
    rows = len(a)
    if rows == 0:
        return []
    cols = len(a[0])
    table: SymbolTable = (a[0][0] if cols else b[0]).table
    aug = [list(a[i]) + [b[i]] for i in range(rows)]
    pivot_cols: list[int] = []
    r = 0
    for col in range(cols):
        pivot = None
        for rr in range(r, rows):
            if not aug[rr][col].is_zero():
                pivot = rr
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = aug[r][col]
        aug[r] = [e / inv for e in aug[r]]
        for rr in range(rows):
            if rr != r and not aug[rr][col].is_zero():
                f = aug[rr][col]
                aug[rr] = [er - f * ec for er, ec in zip(aug[rr], aug[r])]
        pivot_cols.append(col)
        r += 1
        if r == rows:
            break
    for rr in range(r, rows):
        if not aug[rr][cols].is_zero():
            return None
    x = [table.zero for _ in range(cols)]
    for rank_row, col in enumerate(pivot_cols):
        x[col] = aug[rank_row][cols]
    return x
