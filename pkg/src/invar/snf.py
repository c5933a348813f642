"""Smith normal form over the integers and lattice membership."""

from __future__ import annotations


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, D, V) with U*A*V = D diagonal, U and V unimodular, d_i | d_{i+1}."""
    n = len(A)
    m = len(A[0]) if n else 0
    D = [list(r) for r in A]
    U = _identity(n)
    V = _identity(m)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        # row dst += f * row src
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for row in D:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(n, m)):
        while True:
            cands = [(abs(D[i][j]), i, j) for i in range(t, n) for j in range(t, m) if D[i][j]]
            if not cands:
                break
            _, i, j = min(cands)
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, n):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, m):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, m) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if t < n and t < m and D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return U, D, V


def diagonal(D: list[list[int]]) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def invariant_factors(relations: list[list[int]], ngens: int) -> list[int]:
    """Invariant factors (> 1) of Z^ngens / (row span of relations); 0 marks a free summand."""
    if not relations:
        return [0] * ngens
    _, D, _ = smith_normal_form(relations)
    diag = diagonal(D)
    diag += [0] * (ngens - len(diag))
    return [d for d in diag if d != 1]


def solve_integer(A: list[list[int]], b: list[int]) -> list[int] | None:
    """Some integer x with A x = b, or None when b is outside the column lattice."""
    n = len(A)
    if n == 0:
        return []
    m = len(A[0])
    if m == 0:
        return [] if not any(b) else None
    U, D, V = smith_normal_form(A)
    c = [sum(U[i][j] * b[j] for j in range(n)) for i in range(n)]
    y = [0] * m
    for i in range(n):
        d = D[i][i] if i < m else 0
        if d == 0:
            if c[i]:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return [sum(V[i][j] * y[j] for j in range(m)) for i in range(m)]


def lattice_coefficients(vectors: list[list[int]], target: list[int]) -> list[int] | None:
    """Integer coefficients expressing target in the lattice spanned by vectors."""
    if not vectors:
        return [] if not any(target) else None
    dim = len(target)
    A = [[v[i] for v in vectors] for i in range(dim)]
    return solve_integer(A, list(target))
