"""Group presentations from graphs, and word/presentation algebra.

A presentation's relators are words over signed generator indices:
+k / -k refer to generators[k-1] and its inverse.  The presentation of the
closed-walk group of a graph uses the non-tree edges of a breadth-first
spanning tree as generators and the boundary walks of the graph's small
cycles as relators (4-cycles alone, or 3- and 4-cycles for the variant
that also fills triangles).
"""

from __future__ import annotations

import heapq
import json
import warnings
from collections import deque
from dataclasses import dataclass

from .graph import Graph, GraphError, enumerate_cycles
from .homotopy import Walk

Word = tuple[int, ...]


class PresentationError(ValueError):
    """Invalid presentation or word input."""


def free_reduce(w) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w) -> Word:
    w = list(free_reduce(w))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert_word(w) -> Word:
    return tuple(-x for x in reversed(w))


def concat_words(*ws) -> Word:
    out: list[int] = []
    for w in ws:
        out.extend(w)
    return free_reduce(out)


def gen_name(i: int) -> str:
    """Deterministic generator names: a..z, then g26, g27, ..."""
    if i < 26:
        return chr(ord("a") + i)
    return f"g{i}"


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        k = len(self.generators)
        if len(set(self.generators)) != k:
            raise PresentationError("duplicate generator names")
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > k:
                    raise PresentationError(f"relator letter {x} out of range")

    @classmethod
    def of(cls, generators, relators) -> "GroupPresentation":
        rels = tuple(
            sorted(
                {cr for r in relators if (cr := cyclic_reduce(r))},
            )
        )
        return cls(tuple(generators), rels)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def is_trivial_presentation(self) -> bool:
        """No generators left: presents the trivial group syntactically."""
        return not self.generators

    def to_json_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "relators": [
                [[self.generators[abs(x) - 1], 1 if x > 0 else -1] for x in r]
                for r in self.relators
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "GroupPresentation":
        gens = [str(g) for g in d["generators"]]
        index = {g: i + 1 for i, g in enumerate(gens)}
        rels = []
        for r in d["relators"]:
            word = []
            for name, sign in r:
                if name not in index or sign not in (1, -1):
                    raise PresentationError(f"bad relator letter {[name, sign]!r}")
                word.append(sign * index[name])
            rels.append(tuple(word))
        return cls.of(gens, rels)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def pretty(self) -> str:
        if not self.generators:
            return "< | >"
        rs = []
        for r in self.relators:
            parts = []
            for x in r:
                name = self.generators[abs(x) - 1]
                parts.append(name if x > 0 else name + "^-1")
            rs.append(" ".join(parts))
        return "< " + ", ".join(self.generators) + " | " + ", ".join(rs) + " >"


# -- spanning trees and the walk-to-word homomorphism ------------------------


@dataclass(frozen=True, eq=False)
class SpanningTree:
    """Breadth-first spanning tree of one component, lex tie-break."""

    root: str
    parent: dict[str, str]
    order: tuple[str, ...] = ()

    @classmethod
    def bfs(cls, g: Graph, root: str) -> "SpanningTree":
        if root not in g:
            raise GraphError(f"unknown root {root!r}")
        parent: dict[str, str] = {root: root}
        order = [root]
        q = deque([root])
        while q:
            v = q.popleft()
            for w in g.neighbors(v):
                if w not in parent:
                    parent[w] = v
                    order.append(w)
                    q.append(w)
        return cls(root, parent, tuple(order))

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.order

    def covers(self, v: str) -> bool:
        return v in self.parent

    def tree_edges(self) -> set[tuple[str, str]]:
        out = set()
        for v, p in self.parent.items():
            if v != p:
                out.add((v, p) if v < p else (p, v))
        return out

    def path_to_root(self, v: str) -> list[str]:
        if v not in self.parent:
            raise GraphError(f"{v!r} not spanned by the tree")
        path = [v]
        while path[-1] != self.root:
            path.append(self.parent[path[-1]])
        return path

    def walk_between(self, u: str, v: str) -> Walk:
        """The tree walk u -> v (through the root's direction, then pruned)."""
        up = self.path_to_root(u)
        vp = self.path_to_root(v)
        up_set = {x: i for i, x in enumerate(up)}
        meet = next(x for x in vp if x in up_set)
        first = up[: up_set[meet] + 1]
        second = list(reversed(vp[: vp.index(meet)]))
        return Walk(tuple(first + second))


def nontree_edges(g: Graph, t: SpanningTree) -> list[tuple[str, str]]:
    """Component edges outside the tree, lex order: the generator list."""
    tree = t.tree_edges()
    comp = set(t.vertices)
    return [e for e in g.edges if e[0] in comp and e[1] in comp and e not in tree]


class WordMap:
    """Precomputed edge-to-letter tables for converting many walks."""

    def __init__(self, g: Graph, t: SpanningTree):
        self.gen_edges = nontree_edges(g, t)
        self.gens = {e: i + 1 for i, e in enumerate(self.gen_edges)}
        self.tree = t.tree_edges()

    def word(self, vertices) -> Word:
        out: list[int] = []
        for a, b in zip(vertices, vertices[1:]):
            key = (a, b) if a < b else (b, a)
            if key in self.tree:
                continue
            idx = self.gens.get(key)
            if idx is None:
                raise GraphError(
                    f"walk leaves the spanned component at ({a!r}, {b!r})"
                )
            out.append(idx if (a, b) == key else -idx)
        return free_reduce(out)


def walk_to_word(g: Graph, t: SpanningTree, w: Walk) -> Word:
    """Image of a walk: tree edges vanish, non-tree edges map to letters.

    The letter sign records the traversal direction of the edge's canonical
    (lexicographic) orientation.  Concatenation of walks maps to word
    concatenation, so this is the based-loop homomorphism once restricted
    to closed walks at the tree root.
    """
    return WordMap(g, t).word(w.vertices)


def cycle_boundary_walk(cycle: tuple[str, ...]) -> Walk:
    return Walk(cycle + (cycle[0],))


def pi12_presentation(g: Graph, base: str, mode: str = "pi12") -> GroupPresentation:
    """Presentation of the closed-walk group at base.

    mode 'pi12' fills 4-cycles only; mode 'a1' fills 3- and 4-cycles.
    A disconnected graph is restricted to the base's component with a
    warning.
    """
    if base not in g:
        raise GraphError(f"base vertex {base!r} not in graph")
    if mode not in ("pi12", "a1"):
        raise PresentationError(f"unknown mode {mode!r}")
    tree = SpanningTree.bfs(g, base)
    if len(tree.vertices) != len(g.vertices):
        warnings.warn(
            f"graph is disconnected; using the component of {base!r}", stacklevel=2
        )
        g = g.subgraph(tree.vertices)
    wm = WordMap(g, tree)
    names = [gen_name(i) for i in range(len(wm.gen_edges))]
    lengths = (3, 4) if mode == "a1" else (4,)
    relators = []
    for length in lengths:
        for cyc in sorted(enumerate_cycles(g, length)):
            word = wm.word(cyc + (cyc[0],))
            if word:
                relators.append(word)
    return GroupPresentation.of(names, relators)


# -- abelianization -----------------------------------------------------------


@dataclass(frozen=True)
class AbelianInvariants:
    """Free rank plus divisibility-ordered torsion coefficients."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise PresentationError(f"torsion {self.torsion} violates divisibility")
        if any(t < 2 for t in self.torsion):
            raise PresentationError("torsion coefficients must be >= 2")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " x ".join(parts) if parts else "trivial"

    def to_json_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def abelianize(p: GroupPresentation) -> AbelianInvariants:
    """Invariants of the abelianized group via the exponent-sum matrix."""
    from .snf import smith_normal_form

    rows = []
    for r in p.relators:
        row = [0] * p.rank
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    diagonal, rank = smith_normal_form(rows, cols=p.rank)
    torsion = tuple(d for d in diagonal if d > 1)
    return AbelianInvariants(p.rank - rank, torsion)


# -- Tietze simplification ----------------------------------------------------


def _canonical_cyclic(word: Word) -> Word:
    """Least rotation among the word and its inverse; dedup key."""
    w = cyclic_reduce(word)
    if not w:
        return w
    best = None
    for cand in (w, invert_word(w)):
        n = len(cand)
        for i in range(n):
            rot = cand[i:] + cand[:i]
            if best is None or rot < best:
                best = rot
    return best


def _substitute(word: list[int], gen: int, replacement: Word) -> list[int]:
    """Replace letters +-gen by the replacement word (resp. its inverse)."""
    inv = invert_word(replacement)
    out: list[int] = []
    for x in word:
        if x == gen:
            out.extend(replacement)
        elif x == -gen:
            out.extend(inv)
        else:
            out.append(x)
    return list(free_reduce(out))


def _overlap_shorten(target: list[int], other: Word) -> list[int] | None:
    """Rewrite target using relator `other` if that strictly shortens it.

    If more than half of `other` occurs as a subword of the cyclic word
    `target`, that subword equals the inverse of the complement and may be
    swapped for it.
    """
    n = len(target)
    if n == 0 or len(other) < 2:
        return None
    for source in (other, invert_word(other)):
        m = len(other)
        half = m // 2 + 1
        doubled_src = source + source
        for L in range(min(m - 1, n), half - 1, -1):
            repl_len = m - L
            if repl_len >= L:
                break
            for s in range(m):
                pat = doubled_src[s : s + L]
                # scan target cyclically
                doubled_t = target + target
                for t0 in range(n):
                    if tuple(doubled_t[t0 : t0 + L]) == pat:
                        complement = doubled_src[s + L : s + m]
                        repl = invert_word(tuple(complement))
                        new = doubled_t[t0 + L : t0 + n] + list(repl)
                        new = list(cyclic_reduce(new))
                        if len(new) < n:
                            return new
    return None


_OVERLAP_PHASE_MAX_RELATORS = 300


class _TietzeState:
    """Live relator set with incremental per-generator occurrence maps."""

    def __init__(self, p: GroupPresentation):
        self.gens: set[int] = set(range(1, p.rank + 1))
        self.rel: dict[int, Word] = {}
        self.occ: dict[int, set[int]] = {g: set() for g in self.gens}
        self.canon: dict[Word, int] = {}
        self.heap: list[tuple[int, int]] = []
        self.next_id = 0
        for r in p.relators:
            self.add(r)

    def add(self, word) -> None:
        c = _canonical_cyclic(tuple(word))
        if not c or c in self.canon:
            return
        rid = self.next_id
        self.next_id += 1
        self.rel[rid] = c
        self.canon[c] = rid
        for x in c:
            self.occ[abs(x)].add(rid)
        heapq.heappush(self.heap, (len(c), rid))

    def remove(self, rid: int) -> Word:
        word = self.rel.pop(rid)
        del self.canon[word]
        for x in word:
            self.occ[abs(x)].discard(rid)
        return word

    def pop_shortest(self) -> tuple[int, Word] | None:
        while self.heap:
            length, rid = heapq.heappop(self.heap)
            word = self.rel.get(rid)
            if word is not None and len(word) == length:
                return rid, word
        return None

    def eliminate(self, rid: int, g: int, word: Word) -> None:
        """Solve word = u g^s v for g and substitute everywhere."""
        self.remove(rid)
        i = next(j for j, x in enumerate(word) if abs(x) == g)
        u, s, v = word[:i], (1 if word[i] > 0 else -1), word[i + 1 :]
        rest = v + u
        replacement = invert_word(rest) if s > 0 else rest
        for other in sorted(self.occ[g]):
            old = self.remove(other)
            self.add(_substitute(list(old), g, replacement))
        self.gens.discard(g)
        del self.occ[g]


def tietze_simplify(p: GroupPresentation, budget: int = 50) -> GroupPresentation:
    """Best-effort reduction preserving the presented group.

    Per pass: eliminate generators occurring exactly once in some relator
    (shortest relator first, preferring rarely-used generators), then
    shorten relators against each other by overlap substitution.  Stops
    when a pass changes nothing or the pass budget runs out.  Never claims
    minimality.
    """
    st = _TietzeState(p)
    for _ in range(max(0, budget)):
        changed = False

        # generator eliminations driven by a shortest-relator heap
        stuck: list[tuple[int, Word]] = []
        while True:
            item = st.pop_shortest()
            if item is None:
                break
            rid, word = item
            counts: dict[int, int] = {}
            for x in word:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            once = [g for g, c in counts.items() if c == 1]
            if not once:
                stuck.append((len(word), rid))
                continue
            g = min(once, key=lambda gg: (len(st.occ[gg]), gg))
            st.eliminate(rid, g, word)
            changed = True
        for entry in stuck:
            heapq.heappush(st.heap, entry)

        # overlap shortening, only worthwhile on small relator sets
        if len(st.rel) <= _OVERLAP_PHASE_MAX_RELATORS:
            for rid in sorted(st.rel):
                word = st.rel.get(rid)
                if word is None:
                    continue
                for other_id in sorted(st.rel):
                    other = st.rel.get(other_id)
                    if other is None or other_id == rid:
                        continue
                    shorter = _overlap_shorten(list(word), other)
                    if shorter is not None:
                        st.remove(rid)
                        st.add(shorter)
                        changed = True
                        break
        if not changed:
            break

    gens = sorted(st.gens)
    keep_names = [p.generators[g - 1] for g in gens]
    renum = {g: i + 1 for i, g in enumerate(gens)}
    new_rels = [
        tuple(renum[x] if x > 0 else -renum[-x] for x in r)
        for r in sorted(st.rel.values(), key=lambda w: (len(w), w))
    ]
    return GroupPresentation.of(keep_names, new_rels)
