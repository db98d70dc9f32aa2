"""Exact sparse Gaussian elimination over Q."""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Sequence


class SingularSystem(ArithmeticError):
    pass


def solve_sparse(
    rows: Sequence[dict[int, Fraction]], rhs: Sequence[Sequence[Fraction]]
) -> list[list[Fraction]]:
    """Solve ``A x = b`` exactly for a square sparse ``A``.

    ``rows[i]`` maps column -> entry of row i.  ``rhs`` holds one or more
    right-hand sides as length-n columns; returns one solution vector per
    right-hand side.  Pivots are chosen to keep fill-in low (fewest nonzeros
    first).
    """
    n = len(rows)
    A = [{j: Fraction(v) for j, v in r.items()} for r in rows]
    bs = [list(map(Fraction, b)) for b in rhs]
    for b in bs:
        if len(b) != n:
            raise ValueError("right-hand side has the wrong length")
    cols: dict[int, set[int]] = {}
    for i, r in enumerate(A):
        for j, v in list(r.items()):
            if v == 0:
                del r[j]
                continue
            if not 0 <= j < n:
                raise ValueError(f"column {j} out of range")
            cols.setdefault(j, set()).add(i)

    pivot_of_row: dict[int, int] = {}
    remaining = set(range(n))
    # lazy priority queue on row length; stale entries are skipped
    queue = [(len(r), i) for i, r in enumerate(A)]
    heapq.heapify(queue)
    while remaining:
        size, i = heapq.heappop(queue)
        if i not in remaining or size != len(A[i]):
            continue
        if not A[i]:
            raise SingularSystem(f"row {i} vanished during elimination")
        j = min(A[i], key=lambda c: (len(cols[c]), c))
        remaining.discard(i)
        pivot_of_row[i] = j
        piv = A[i][j]
        for k in list(cols[j]):
            if k == i or k not in remaining:
                continue
            f = A[k][j] / piv
            for c, v in A[i].items():
                nv = A[k].get(c, 0) - f * v
                if nv:
                    if c not in A[k]:
                        cols[c].add(k)
                    A[k][c] = nv
                else:
                    A[k].pop(c, None)
                    cols[c].discard(k)
            for b in bs:
                b[k] -= f * b[i]
            heapq.heappush(queue, (len(A[k]), k))
        for c in A[i]:
            cols[c].discard(i)

    # back substitution in reverse elimination order
    order = list(pivot_of_row)
    sols = []
    for b in bs:
        x = [Fraction(0)] * n
        for i in reversed(order):
            j = pivot_of_row[i]
            s = b[i] - sum(v * x[c] for c, v in A[i].items() if c != j)
            x[j] = s / A[i][j]
        sols.append(x)
    return sols
