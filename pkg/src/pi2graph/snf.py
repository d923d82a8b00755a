"""Exact integer Smith normal form by row/column elimination.

Sparse-friendly: rows are dicts, pivots are chosen by smallest magnitude
then least fill, and the final diagonal is corrected to the divisibility
chain d1 | d2 | ... with all entries positive.
"""

from __future__ import annotations

from math import gcd


def smith_normal_form(rows, cols: int | None = None) -> tuple[list[int], int]:
    """Invariant factors and rank of an integer matrix.

    `rows` is a sequence of integer sequences.  Returns (diagonal, rank)
    where diagonal lists the nonzero invariant factors in divisibility
    order and rank equals their count.
    """
    mat: dict[int, dict[int, int]] = {}
    ncols = cols or 0
    for i, row in enumerate(rows):
        ncols = max(ncols, len(row))
        entries = {j: int(v) for j, v in enumerate(row) if v}
        if entries:
            mat[i] = entries
    col_index: dict[int, set[int]] = {}
    for i, row in mat.items():
        for j in row:
            col_index.setdefault(j, set()).add(i)

    def set_entry(i: int, j: int, v: int) -> None:
        row = mat.setdefault(i, {})
        if v:
            if j not in row:
                col_index.setdefault(j, set()).add(i)
            row[j] = v
        else:
            if j in row:
                del row[j]
                col_index[j].discard(i)
                if not col_index[j]:
                    del col_index[j]
            if not row:
                mat.pop(i, None)

    def add_row(src: int, dst: int, factor: int) -> None:
        # dst += factor * src
        if factor == 0 or src not in mat:
            return
        for j, v in list(mat[src].items()):
            set_entry(dst, j, mat.get(dst, {}).get(j, 0) + factor * v)

    def add_col(src: int, dst: int, factor: int) -> None:
        if factor == 0 or src not in col_index:
            return
        for i in list(col_index.get(src, ())):
            v = mat[i][src]
            set_entry(i, dst, mat.get(i, {}).get(dst, 0) + factor * v)

    def swap_rows(a: int, b: int) -> None:
        if a == b:
            return
        ra, rb = mat.pop(a, {}), mat.pop(b, {})
        for j in ra:
            col_index[j].discard(a)
        for j in rb:
            col_index[j].discard(b)
        if rb:
            mat[a] = rb
        if ra:
            mat[b] = ra
        for j in rb:
            col_index.setdefault(j, set()).add(a)
        for j in ra:
            col_index.setdefault(j, set()).add(b)

    def swap_cols(a: int, b: int) -> None:
        if a == b:
            return
        rows_a = set(col_index.get(a, ()))
        rows_b = set(col_index.get(b, ()))
        for i in rows_a | rows_b:
            row = mat[i]
            va, vb = row.get(a, 0), row.get(b, 0)
            set_entry(i, a, vb)
            set_entry(i, b, va)

    diagonal: list[int] = []
    pivot_pos = 0
    while mat:
        # pivot: smallest |value|, breaking ties toward least fill
        best = None
        for i, row in mat.items():
            for j, v in row.items():
                key = (abs(v), len(row) + len(col_index[j]), i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        _, pi, pj = best
        swap_rows(pivot_pos, pi)
        swap_cols(pivot_pos, pj)
        # clear the pivot row and column, looping while remainders appear
        while True:
            pval = mat[pivot_pos][pivot_pos]
            again = False
            for i in list(col_index.get(pivot_pos, ())):
                if i == pivot_pos:
                    continue
                q, r = divmod(mat[i][pivot_pos], pval)
                add_row(pivot_pos, i, -q)
                if r:
                    swap_rows(pivot_pos, i)
                    again = True
                    break
            if again:
                continue
            prow = mat.get(pivot_pos, {})
            done = True
            for j in [j for j in prow if j != pivot_pos]:
                q, r = divmod(prow[j], pval)
                add_col(pivot_pos, j, -q)
                if r:
                    swap_cols(pivot_pos, j)
                    done = False
                    break
            if done:
                break
        diagonal.append(abs(mat[pivot_pos][pivot_pos]))
        set_entry(pivot_pos, pivot_pos, 0)
        pivot_pos += 1

    # enforce the divisibility chain: replace (a, b) by (gcd, lcm)
    changed = True
    while changed:
        changed = False
        for i in range(len(diagonal) - 1):
            a, b = diagonal[i], diagonal[i + 1]
            if b % a != 0:
                g = gcd(a, b)
                diagonal[i], diagonal[i + 1] = g, a * b // g
                changed = True
    diagonal.sort()
    return diagonal, len(diagonal)


def smith_normal_form_naive(rows, cols: int | None = None) -> tuple[list[int], int]:
    """Textbook dense reduction; the independent cross-check oracle."""
    m = [list(map(int, r)) for r in rows]
    nrows = len(m)
    ncols = cols if cols is not None else (max((len(r) for r in m), default=0))
    for r in m:
        r.extend([0] * (ncols - len(r)))
    diag: list[int] = []
    top = 0
    while top < nrows and top < ncols:
        # smallest nonzero entry of the remaining region becomes the pivot
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                v = m[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, bi, bj = best
        m[top], m[bi] = m[bi], m[top]
        for r in m:
            r[top], r[bj] = r[bj], r[top]
        pivot = m[top][top]
        clean = True
        for i in range(top + 1, nrows):
            q = m[i][top] // pivot
            if q:
                for j in range(top, ncols):
                    m[i][j] -= q * m[top][j]
            if m[i][top]:
                clean = False
        for j in range(top + 1, ncols):
            q = m[top][j] // pivot
            if q:
                for i in range(top, nrows):
                    m[i][j] -= q * m[i][top]
            if m[top][j]:
                clean = False
        if not clean:
            continue  # a smaller remainder exists; re-select the pivot
        diag.append(abs(pivot))
        top += 1
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if b % a != 0:
                g = gcd(a, b)
                diag[i], diag[i + 1] = g, a * b // g
                changed = True
    diag.sort()
    return diag, len(diag)


def minor_gcds(rows, upto: int) -> list[int]:
    """gcd of all k x k minors for k = 1..upto; the classical invariant.

    Affordable only for small matrices; d_k = minor_gcd(k)/minor_gcd(k-1).
    """
    from itertools import combinations

    m = [list(map(int, r)) for r in rows]
    nrows, ncols = len(m), max((len(r) for r in m), default=0)
    for r in m:
        r.extend([0] * (ncols - len(r)))

    def det(rs, cs) -> int:
        k = len(rs)
        if k == 1:
            return m[rs[0]][cs[0]]
        total = 0
        sign = 1
        for idx, r in enumerate(rs):
            v = m[r][cs[0]]
            if v:
                total += sign * v * det(rs[:idx] + rs[idx + 1 :], cs[1:])
            sign = -sign
        return total

    out = []
    for k in range(1, upto + 1):
        g = 0
        for rs in combinations(range(nrows), k):
            for cs in combinations(range(ncols), k):
                g = gcd(g, det(list(rs), list(cs)))
        out.append(abs(g))
    return out
