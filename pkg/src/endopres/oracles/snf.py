"""Smith normal form over the integers and relator-lattice membership.

Lattice membership in the abelianization is only a necessary condition for
a word to be trivial in the group; a pass certifies nothing.
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence, Union

from ..errors import AlphabetError
from ..freegroup import Generator, Word

Matrix = list  # list of rows of Python ints


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(x * b[k][j] for k, x in enumerate(row)) for j in range(cols)] for row in a]


def snf(m: Sequence[Sequence[int]]) -> tuple:
    """Return ``(U, D, V)`` with ``U @ M @ V == D``, U and V unimodular and
    ``D`` diagonal with ``d_1 | d_2 | ...`` (all non-negative).

    Elementary row and column operations, always pivoting on the entry of
    least absolute value in the remaining block.
    """
    a = [[int(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(row) != cols for row in a):
        raise ValueError("matrix is not rectangular")
    u, v = identity(rows), identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    for s in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(s, rows):
                for j in range(s, cols):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return u, a, v
            swap_rows(s, pivot[0])
            swap_cols(s, pivot[1])
            p = a[s][s]
            for i in range(s + 1, rows):
                if a[i][s]:
                    add_row(i, s, a[i][s] // p)
            for j in range(s + 1, cols):
                if a[s][j]:
                    add_col(j, s, a[s][j] // p)
            if any(a[i][s] for i in range(s + 1, rows)) or any(a[s][j] for j in range(s + 1, cols)):
                continue
            bad = next(
                (i for i in range(s + 1, rows) for j in range(s + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(s, bad, -1)
        if a[s][s] < 0:
            a[s] = [-x for x in a[s]]
            u[s] = [-x for x in u[s]]
    return u, a, v


def lattice_solve(m: Sequence[Sequence[int]], vec: Sequence[int]) -> Optional[list]:
    """An integer ``x`` with ``x @ M == vec``, or None if ``vec`` is not in the
    row lattice of ``M``."""
    rows = len(m)
    cols = len(vec)
    if rows and any(len(r) != cols for r in m):
        raise ValueError("dimension mismatch between matrix and vector")
    if rows == 0:
        return [] if not any(vec) else None
    u, d, v = snf(m)
    c = [sum(vec[k] * v[k][j] for k in range(cols)) for j in range(cols)]
    y = [0] * rows
    for j in range(cols):
        dj = d[j][j] if j < rows else 0
        if dj == 0:
            if c[j]:
                return None
        elif c[j] % dj:
            return None
        else:
            y[j] = c[j] // dj
    return [sum(y[k] * u[k][i] for k in range(rows)) for i in range(rows)]


def exponent_vector(w: Word, generators: Sequence[Generator]) -> list:
    index = {g: i for i, g in enumerate(generators)}
    out = [0] * len(generators)
    for g, s in w.letters:
        if g not in index:
            raise AlphabetError(f"generator {g} is not in the presentation")
        out[index[g]] += s
    return out


def relator_matrix(p) -> Matrix:
    return [exponent_vector(r, p.generators) for r in p.relators]


def in_relator_lattice(vec: Union[Sequence[int], Mapping[Generator, int]], p) -> bool:
    """Whether ``vec`` lies in the integer span of ``p``'s relator exponent vectors."""
    if isinstance(vec, Mapping):
        unknown = [g for g in vec if g not in p.generators]
        if unknown:
            raise AlphabetError(f"generator {unknown[0]} is not in the presentation")
        vec = [vec.get(g, 0) for g in p.generators]
    if len(vec) != len(p.generators):
        raise ValueError(
            f"vector has length {len(vec)} but the presentation has {len(p.generators)} generators"
        )
    return lattice_solve(relator_matrix(p), list(vec)) is not None
