"""HLT-style coset enumeration over the trivial subgroup.

Certifies the order of the presented group when the table completes within
the coset budget; exceeding the budget is a verdict, not an error.  The
enumeration is deterministic: cosets are scanned in definition order and
relators in presentation order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentation import GroupPresentation

DEFAULT_COSET_BUDGET = 10**6


@dataclass(frozen=True)
class CosetResult:
    status: str  # "finite" | "exceeded"
    order: int | None = None
    cosets_defined: int = 0

    @property
    def is_finite(self) -> bool:
        return self.status == "finite"

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "order": self.order,
            "cosets_defined": self.cosets_defined,
        }


def todd_coxeter(
    p: GroupPresentation, budget_cosets: int = DEFAULT_COSET_BUDGET
) -> CosetResult:
    """Enumerate cosets of the trivial subgroup; order on completion."""
    ngens = p.rank
    if ngens == 0:
        return CosetResult("finite", 1, 1)
    ncols = 2 * ngens

    def col(x: int) -> int:
        return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1

    words = [[col(x) for x in r] for r in p.relators]

    table: list[list[int | None]] = [[None] * ncols]
    parent = [0]
    pending: list[int] = []

    def find(a: int) -> int:
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def merge(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra == rb:
            return
        if ra > rb:
            ra, rb = rb, ra
        parent[rb] = ra
        pending.append(rb)

    def process_coincidences() -> None:
        while pending:
            dead = pending.pop()
            row = table[dead]
            for c in range(ncols):
                d = row[c]
                if d is None:
                    continue
                row[c] = None
                d = find(d)
                live = find(dead)
                # transfer dead^c = d, i.e. also d^(c^-1) = live
                back = table[d][c ^ 1]
                if back is not None:
                    merge(back, live)
                else:
                    table[d][c ^ 1] = live
                fwd = table[live][c]
                if fwd is not None:
                    merge(fwd, d)
                else:
                    table[live][c] = d

    defined = 1

    def define(a: int, c: int) -> int | None:
        nonlocal defined
        if defined >= budget_cosets:
            return None
        table.append([None] * ncols)
        parent.append(len(table) - 1)
        b = len(table) - 1
        table[a][c] = b
        table[b][c ^ 1] = a
        defined += 1
        return b

    def scan_and_fill(a: int, word: list[int]) -> bool:
        """Scan the relator at coset a, defining cosets to close the gap."""
        f, i = a, 0
        b, j = a, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = find(table[f][word[i]])
                i += 1
            if i > j:
                if f != b:
                    merge(f, b)
                    process_coincidences()
                return True
            while j >= i and table[b][word[j] ^ 1] is not None:
                b = find(table[b][word[j] ^ 1])
                j -= 1
            if j < i:
                merge(f, b)
                process_coincidences()
                return True
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return True
            nxt = define(f, word[i])
            if nxt is None:
                return False
            f = nxt
            i += 1

    a = 0
    while a < len(table):
        if find(a) != a:
            a += 1
            continue
        for w in words:
            if not scan_and_fill(find(a), w):
                return CosetResult("exceeded", None, defined)
            if find(a) != a:
                break
        if find(a) == a:
            for c in range(ncols):
                live = find(a)
                if live != a:
                    break
                if table[live][c] is None:
                    if define(live, c) is None:
                        return CosetResult("exceeded", None, defined)
        a += 1

    order = sum(1 for i in range(len(table)) if find(i) == i)
    return CosetResult("finite", order, defined)
