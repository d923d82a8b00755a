"""Finite simple graphs with string vertex labels, gluing, and quotients.

Vertices are plain strings.  Every operation is deterministic: vertex order
is lexicographic everywhere, so downstream tie-breaks (spanning trees,
cycle canonicalization, union-find representatives) are reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Invalid graph construction or operation input."""


class GluingError(GraphError):
    """An identification would produce a self-loop."""


def compose_label(*parts: str) -> str:
    """Join hierarchical label parts, e.g. ('B(a,b,c)', 'D1/A1(0,2)')."""
    return "/".join(parts)


def split_label(label: str) -> list[str]:
    return label.split("/")


class Graph:
    """Immutable finite simple undirected graph."""

    __slots__ = ("vertices", "edges", "_adj")

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str]]):
        vs = sorted(set(str(v) for v in vertices))
        vset = set(vs)
        eset: set[tuple[str, str]] = set()
        for e in edges:
            a, b = str(e[0]), str(e[1])
            if a == b:
                raise GraphError(f"self-loop at {a!r}")
            if a not in vset or b not in vset:
                raise GraphError(f"edge ({a!r}, {b!r}) has an undeclared endpoint")
            eset.add((a, b) if a < b else (b, a))
        self.vertices: tuple[str, ...] = tuple(vs)
        self.edges: tuple[tuple[str, str], ...] = tuple(sorted(eset))
        adj: dict[str, list[str]] = {v: [] for v in vs}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}

    def __contains__(self, v: str) -> bool:
        return v in self._adj

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def has_edge(self, a: str, b: str) -> bool:
        return a in self._adj and b in self._adj[a]

    def neighbors(self, v: str) -> tuple[str, ...]:
        if v not in self._adj:
            raise GraphError(f"unknown vertex {v!r}")
        return self._adj[v]

    def is_subgraph_of(self, other: "Graph") -> bool:
        return set(self.vertices) <= set(other.vertices) and set(self.edges) <= set(
            other.edges
        )

    def subgraph(self, vertices: Iterable[str], edges: Iterable[tuple[str, str]] | None = None) -> "Graph":
        """Subgraph on the given vertices; all induced edges unless edges given."""
        vs = set(vertices)
        unknown = vs - set(self.vertices)
        if unknown:
            raise GraphError(f"unknown vertices {sorted(unknown)!r}")
        if edges is None:
            es = [(a, b) for (a, b) in self.edges if a in vs and b in vs]
        else:
            eset = set(self.edges)
            es = []
            for a, b in edges:
                key = (a, b) if a < b else (b, a)
                if key not in eset:
                    raise GraphError(f"edge ({a!r}, {b!r}) not in parent graph")
                es.append(key)
        return Graph(vs, es)

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json_dict(cls, d: dict) -> "Graph":
        try:
            return cls(d["vertices"], [tuple(e) for e in d["edges"]])
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc
        return cls.from_json_dict(d)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for a, b in self.edges:
            lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- small constructors ----------------------------------------------------


def path_graph(n_vertices: int, labels: Sequence[str] | None = None) -> Graph:
    """Path with n_vertices vertices (length n_vertices - 1)."""
    if n_vertices < 1:
        raise GraphError("path needs at least one vertex")
    if labels is None:
        labels = [str(i) for i in range(n_vertices)]
    if len(labels) != n_vertices:
        raise GraphError("label count mismatch")
    return Graph(labels, [(labels[i], labels[i + 1]) for i in range(n_vertices - 1)])


def cycle_graph(n: int) -> Graph:
    """Cycle on vertices 0..n-1."""
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    vs = [str(i) for i in range(n)]
    return Graph(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


def empty_graph() -> Graph:
    return Graph([], [])


# -- identification / gluing -----------------------------------------------


@dataclass(frozen=True)
class IdentificationMap:
    """Vertex pairs to merge, resolved union-find style.

    The canonical representative of each merge class is its
    lexicographically least member.
    """

    pairs: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    @classmethod
    def of(cls, pairs: Iterable[tuple[str, str]]) -> "IdentificationMap":
        return cls(tuple((str(a), str(b)) for a, b in pairs))

    def resolve(self, labels: Iterable[str]) -> dict[str, str]:
        """Map every label to its class representative (least label)."""
        parent: dict[str, str] = {v: v for v in labels}

        def find(x: str) -> str:
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        for a, b in self.pairs:
            if a not in parent or b not in parent:
                raise GraphError(f"identification uses unknown vertex {a!r} or {b!r}")
            ra, rb = find(a), find(b)
            if ra == rb:
                continue
            lo, hi = (ra, rb) if ra < rb else (rb, ra)
            parent[hi] = lo
        return {v: find(v) for v in parent}


def glue(g: Graph, m: IdentificationMap) -> Graph:
    """Quotient of g by the identification classes of m.

    Edges are mapped through class representatives; duplicates collapse to a
    single edge.  An edge inside one class would become a self-loop, which
    signals an inconsistent gluing and raises GluingError.
    """
    rep = m.resolve(g.vertices)
    edges = []
    for a, b in g.edges:
        ra, rb = rep[a], rep[b]
        if ra == rb:
            raise GluingError(f"gluing collapses edge ({a!r}, {b!r}) to a self-loop")
        edges.append((ra, rb))
    return Graph(set(rep.values()), edges)


def disjoint_union(graphs: Sequence[Graph], prefixes: Sequence[str]) -> Graph:
    """Disjoint union with vertex labels namespaced as '<prefix>/<label>'."""
    if len(graphs) != len(prefixes):
        raise GraphError("need one prefix per graph")
    if len(set(prefixes)) != len(prefixes):
        raise GraphError(f"prefixes must be distinct, got {list(prefixes)!r}")
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    for g, p in zip(graphs, prefixes):
        vertices.extend(compose_label(p, v) for v in g.vertices)
        edges.extend((compose_label(p, a), compose_label(p, b)) for a, b in g.edges)
    return Graph(vertices, edges)


# -- quotient by a group action ---------------------------------------------


def quotient_by_action(g: Graph, group, action, require_free: bool = False) -> Graph:
    """Quotient graph of g under a group action.

    Vertices are orbits, named by their least member.  Orbits o1 != o2 are
    adjacent iff some vertex of o1 has a neighbor in o2.  A within-orbit edge
    would be a self-loop and raises GluingError.  The action is checked to be
    by graph isomorphisms.
    """
    from .classifying import GroupAction  # cycle-free at runtime

    if isinstance(action, GroupAction):
        action.validate(group, g)
        perms = action.permutations
    else:
        perms = action
    if require_free:
        for e in group.elements:
            if e == group.identity:
                continue
            fixed = [v for v in g.vertices if perms[e][v] == v]
            if fixed:
                raise GraphError(
                    f"action is not free: {e!r} fixes {fixed[0]!r}"
                )
    # orbit of v = {perm_e(v)}
    rep: dict[str, str] = {}
    for v in g.vertices:
        if v in rep:
            continue
        orbit = sorted({perms[e][v] for e in group.elements})
        least = orbit[0]
        for w in orbit:
            rep[w] = least
    edges = []
    for a, b in g.edges:
        ra, rb = rep[a], rep[b]
        if ra == rb:
            raise GluingError(
                f"within-orbit edge ({a!r}, {b!r}): quotient would have a loop"
            )
        edges.append((ra, rb))
    return Graph(set(rep.values()), edges)


# -- traversal primitives ----------------------------------------------------


def connected_components(g: Graph) -> list[tuple[str, ...]]:
    """Components as sorted vertex tuples, ordered by least vertex."""
    seen: set[str] = set()
    comps = []
    for v in g.vertices:
        if v in seen:
            continue
        comp = []
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in g.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(tuple(sorted(comp)))
    return sorted(comps, key=lambda c: c[0])


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def walk_counts_by_length(g: Graph, u: str, v: str, maxlen: int) -> list[bool]:
    """Entry l is True iff a walk of length exactly l runs from u to v.

    Walks may repeat vertices; computed by boolean adjacency-power iteration.
    """
    if u not in g or v not in g:
        raise GraphError(f"unknown vertex {u!r} or {v!r}")
    if maxlen < 0:
        raise GraphError("maxlen must be >= 0")
    idx = {w: i for i, w in enumerate(g.vertices)}
    adj = [0] * len(g.vertices)
    for a, b in g.edges:
        adj[idx[a]] |= 1 << idx[b]
        adj[idx[b]] |= 1 << idx[a]
    reach = 1 << idx[u]
    out = [bool(reach >> idx[v] & 1)]
    for _ in range(maxlen):
        nxt = 0
        rest = reach
        while rest:
            low = rest & -rest
            nxt |= adj[low.bit_length() - 1]
            rest ^= low
        reach = nxt
        out.append(bool(reach >> idx[v] & 1))
    return out


def adjacency_bitsets(g: Graph) -> tuple[dict[str, int], list[int]]:
    """Vertex index map and neighbor bitmasks, for bulk walk queries."""
    idx = {w: i for i, w in enumerate(g.vertices)}
    adj = [0] * len(g.vertices)
    for a, b in g.edges:
        adj[idx[a]] |= 1 << idx[b]
        adj[idx[b]] |= 1 << idx[a]
    return idx, adj


def bitset_power(adj: list[int], k: int) -> list[int]:
    """Reachability-in-exactly-k-steps masks for every start vertex."""
    cur = [1 << i for i in range(len(adj))]
    for _ in range(k):
        nxt = []
        for mask in cur:
            acc = 0
            rest = mask
            while rest:
                low = rest & -rest
                acc |= adj[low.bit_length() - 1]
                rest ^= low
            nxt.append(acc)
        cur = nxt
    return cur


# -- cycle enumeration -------------------------------------------------------


def canonical_cycle(cycle: Sequence[str]) -> tuple[str, ...]:
    """Least-vertex-first, lexicographically smaller direction."""
    n = len(cycle)
    start = min(range(n), key=lambda i: cycle[i])
    fwd = tuple(cycle[(start + j) % n] for j in range(n))
    bwd = tuple(cycle[(start - j) % n] for j in range(n))
    return min(fwd, bwd)


def enumerate_cycles(g: Graph, length: int) -> set[tuple[str, ...]]:
    """All simple cycles of the given length (3 or 4), canonicalized."""
    if length not in (3, 4):
        raise GraphError("cycle length must be 3 or 4")
    out: set[tuple[str, ...]] = set()
    if length == 3:
        for a, b in g.edges:
            common = set(g.neighbors(a)) & set(g.neighbors(b))
            for c in common:
                out.add(canonical_cycle((a, b, c)))
        return out
    # 4-cycles a-x-b-y: group wedges x-v-y by their endpoint pair {x,y};
    # two distinct centers over the same pair close up a 4-cycle
    wedges: dict[tuple[str, str], list[str]] = {}
    for v in g.vertices:
        ns = g.neighbors(v)
        for i, x in enumerate(ns):
            for y in ns[i + 1 :]:
                wedges.setdefault((x, y), []).append(v)
    for (x, y), centers in wedges.items():
        for i, a in enumerate(centers):
            for b in centers[i + 1 :]:
                out.add(canonical_cycle((a, x, b, y)))
    return out


@dataclass(frozen=True)
class Cover:
    """A family of subgraphs of a parent graph."""

    members: tuple[Graph, ...]

    @classmethod
    def of(cls, members: Iterable[Graph]) -> "Cover":
        return cls(tuple(members))

    def validate_members(self, parent: Graph) -> None:
        for i, m in enumerate(self.members):
            if not m.is_subgraph_of(parent):
                raise GraphError(f"cover member {i} is not a subgraph of the parent")
