"""Building graphs whose closed-walk group realizes a prescribed finite group.

The pipeline: a 3x3 grid is glued into a triangular tile D, three tiles
into a block B with three corners pairwise at distance 8, and one block
per cyclic class of ordered triples of group elements is stitched into a
simply connected graph on which the group acts freely by left translation.
The quotient then has the group as its closed-walk group.

Two departures from the naive stitching are load-bearing and verified by
the lemma checker:

* For every ordered pair (a, b) a membrane is glued along the 16-cycle
  formed by the two corner-to-corner fringe walks between a and b (a ring
  of sixteen square cells, then a 4x4 grid closing the middle).  Without
  it those two walks are unrelated and the stitched graph has a global
  cyclic invariant of order 3 (it is never simply connected).  Ordering
  the pair keeps the action free: an element swapping a and b swaps the
  two membranes of the pair instead of fixing one.  The ring layer keeps
  antipodal boundary vertices at distance >= 6 through the membrane,
  which the translate walk-length condition needs.
* Cyclic triple classes of the form (x, hx, h^2x) for an order-3 element h
  are fixed setwise by h, which would pin the block's central vertex, so
  those classes are omitted.  Their gluing relations follow from the
  surviving blocks and the pair membranes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .coset import DEFAULT_COSET_BUDGET, CosetResult, todd_coxeter
from .graph import (
    Graph,
    GraphError,
    IdentificationMap,
    adjacency_bitsets,
    is_connected,
    quotient_by_action,
)
from .presentation import abelianize, pi12_presentation, tietze_simplify


class GroupInputError(ValueError):
    """Malformed multiplication table or group spec."""


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group as a multiplication table over named elements."""

    name: str
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]  # table[i][j] = index of e_i * e_j
    identity_index: int

    @classmethod
    def from_table(cls, name: str, elements, table) -> "FiniteGroup":
        elems = tuple(str(e) for e in elements)
        n = len(elems)
        if len(set(elems)) != n or n == 0:
            raise GroupInputError("element names must be nonempty and distinct")
        tab = tuple(tuple(int(x) for x in row) for row in table)
        if len(tab) != n or any(len(row) != n for row in tab):
            raise GroupInputError("multiplication table must be square")
        if any(x < 0 or x >= n for row in tab for x in row):
            raise GroupInputError("table entries must index elements")
        identity = None
        for i in range(n):
            if all(tab[i][j] == j and tab[j][i] == j for j in range(n)):
                identity = i
                break
        if identity is None:
            raise GroupInputError("no identity element")
        for i in range(n):
            if not any(tab[i][j] == identity for j in range(n)):
                raise GroupInputError(f"element {elems[i]!r} has no inverse")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if tab[tab[i][j]][k] != tab[i][tab[j][k]]:
                        raise GroupInputError(
                            f"associativity fails at ({elems[i]}, {elems[j]}, {elems[k]})"
                        )
        return cls(name, elems, tab, identity)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> str:
        return self.elements[self.identity_index]

    def index(self, e: str) -> int:
        try:
            return self.elements.index(e)
        except ValueError:
            raise GroupInputError(f"unknown element {e!r}") from None

    def mul(self, a: str, b: str) -> str:
        return self.elements[self.table[self.index(a)][self.index(b)]]

    def inv(self, a: str) -> str:
        i = self.index(a)
        for j in range(self.order):
            if self.table[i][j] == self.identity_index:
                return self.elements[j]
        raise GroupInputError(f"no inverse for {a!r}")

    def abelian_invariants(self):
        """Invariants of G/[G,G], via the commutator-quotient relation matrix."""
        from .presentation import AbelianInvariants
        from .snf import smith_normal_form

        n = self.order
        rows = []
        for i in range(n):
            for j in range(n):
                k = self.table[i][j]
                row = [0] * n
                row[i] += 1
                row[j] += 1
                row[k] -= 1
                rows.append(row)
        diagonal, rank = smith_normal_form(rows, cols=n)
        return AbelianInvariants(n - rank, tuple(d for d in diagonal if d > 1))

    def to_json_dict(self) -> dict:
        return {"elements": list(self.elements), "table": [list(r) for r in self.table]}

    @classmethod
    def from_json_dict(cls, d: dict, name: str = "table") -> "FiniteGroup":
        try:
            return cls.from_table(name, d["elements"], d["table"])
        except (KeyError, TypeError) as exc:
            raise GroupInputError(f"malformed group JSON: {exc}") from exc


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupInputError("cyclic order must be positive")
    elems = [str(i) for i in range(n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup.from_table(f"cyclic:{n}", elems, table)


def symmetric_group(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise GroupInputError("symmetric group supported for 1 <= n <= 5")
    perms = sorted(itertools.permutations(range(n)))
    names = ["p" + "".join(map(str, p)) for p in perms]
    idx = {p: i for i, p in enumerate(perms)}
    table = [
        [idx[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms
    ]
    return FiniteGroup.from_table(f"sym:{n}", names, table)


def dihedral_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupInputError("dihedral parameter must be positive")
    elems = [f"r{i}" for i in range(n)] + [f"s{i}" for i in range(n)]

    def mul(a: int, b: int) -> int:
        ar, af = a % n, a // n
        br, bf = b % n, b // n
        rot = (ar + br) % n if af == 0 else (ar - br) % n
        return rot + n * (af ^ bf)

    table = [[mul(a, b) for b in range(2 * n)] for a in range(2 * n)]
    return FiniteGroup.from_table(f"dihedral:{n}", elems, table)


def product_group(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    elems = [f"({a},{b})" for a in g1.elements for b in g2.elements]
    n2 = g2.order

    def mul(x: int, y: int) -> int:
        a1, b1 = divmod(x, n2)
        a2, b2 = divmod(y, n2)
        return g1.table[a1][a2] * n2 + g2.table[b1][b2]

    order = g1.order * g2.order
    table = [[mul(x, y) for y in range(order)] for x in range(order)]
    return FiniteGroup.from_table(f"product:{g1.name},{g2.name}", elems, table)


def group_from_spec(spec: str) -> FiniteGroup:
    """Parse named constructors: cyclic:n, sym:n, dihedral:n, trivial,
    product:<spec>,<spec>[,...]."""
    spec = spec.strip()
    if spec == "trivial":
        return cyclic_group(1)
    if spec.startswith("product:"):
        parts = spec[len("product:") :].split(",")
        if len(parts) < 2:
            raise GroupInputError("product needs at least two factors")
        factors = [group_from_spec(p) for p in parts]
        out = factors[0]
        for f in factors[1:]:
            out = product_group(out, f)
        return out
    kind, _, arg = spec.partition(":")
    if not arg:
        raise GroupInputError(f"bad group spec {spec!r}")
    try:
        n = int(arg)
    except ValueError:
        raise GroupInputError(f"bad group spec {spec!r}") from None
    if kind == "cyclic":
        return cyclic_group(n)
    if kind == "sym":
        return symmetric_group(n)
    if kind == "dihedral":
        return dihedral_group(n)
    raise GroupInputError(f"unknown group constructor {kind!r}")


@dataclass(frozen=True)
class GroupAction:
    """One vertex permutation per group element."""

    permutations: dict[str, dict[str, str]]

    def validate(self, group: FiniteGroup, g: Graph) -> None:
        verts = set(g.vertices)
        for e in group.elements:
            if e not in self.permutations:
                raise GraphError(f"action missing element {e!r}")
            perm = self.permutations[e]
            if set(perm) != verts or set(perm.values()) != verts:
                raise GraphError(f"action of {e!r} is not a vertex permutation")
            for x, y in g.edges:
                if not g.has_edge(perm[x], perm[y]):
                    raise GraphError(
                        f"action of {e!r} breaks edge ({x!r}, {y!r})"
                    )
        ident = self.permutations[group.identity]
        if any(ident[v] != v for v in verts):
            raise GraphError("identity element must act trivially")
        for a in group.elements:
            for b in group.elements:
                pa, pb, pab = (
                    self.permutations[a],
                    self.permutations[b],
                    self.permutations[group.mul(a, b)],
                )
                for v in g.vertices:
                    if pa[pb[v]] != pab[v]:
                        raise GraphError(
                            f"action is not a homomorphism at ({a!r}, {b!r})"
                        )

    def fixed_vertices(self, group: FiniteGroup, g: Graph) -> list[tuple[str, str]]:
        out = []
        for e in group.elements:
            if e == group.identity:
                continue
            perm = self.permutations[e]
            for v in g.vertices:
                if perm[v] == v:
                    out.append((e, v))
        return out


# -- the grid, the tile D, and the block B ------------------------------------


@lru_cache(maxsize=1)
def build_grid22() -> Graph:
    """3x3-vertex grid; vertices '(x,y)' adjacent when one coordinate steps."""
    vs = [f"({x},{y})" for x in range(3) for y in range(3)]
    es = []
    for x in range(3):
        for y in range(3):
            if x + 1 < 3:
                es.append((f"({x},{y})", f"({x + 1},{y})"))
            if y + 1 < 3:
                es.append((f"({x},{y})", f"({x},{y + 1})"))
    return Graph(vs, es)


def _alabel(j: int, x: int, y: int) -> str:
    return f"A{j}({x},{y})"


@lru_cache(maxsize=1)
def _d_resolver() -> dict[str, str]:
    raw = [_alabel(j, x, y) for j in (1, 2, 3) for x in range(3) for y in range(3)]
    return _d_identifications().resolve(raw)


def d_vertex(j: int, x: int, y: int) -> str:
    """Canonical label of grid copy j's vertex (x, y) inside the tile D."""
    return _d_resolver()[_alabel(j, x, y)]


def _d_identifications() -> IdentificationMap:
    pairs = []
    for t in range(3):
        pairs.append((_alabel(1, t, 2), _alabel(2, t, 0)))
        pairs.append((_alabel(1, 2, t), _alabel(3, 0, t)))
        pairs.append((_alabel(2, 2, t), _alabel(3, t, 2)))
    return IdentificationMap.of(pairs)


@lru_cache(maxsize=1)
def build_D() -> Graph:
    """Three grids glued along shared rows/columns into a 19-vertex tile."""
    grid = build_grid22()
    vertices = [_alabel(j, x, y) for j in (1, 2, 3) for x in range(3) for y in range(3)]
    edges = []
    for j in (1, 2, 3):
        for a, b in grid.edges:
            edges.append((f"A{j}{a}", f"A{j}{b}"))
    disjoint = Graph(vertices, edges)
    from .graph import glue

    return glue(disjoint, _d_identifications())


_COPY_NAMES = {1: "D12", 2: "D23", 3: "D31"}


@lru_cache(maxsize=1)
def _b_resolver() -> dict[str, str]:
    d = build_D()
    raw = [f"{_COPY_NAMES[i]}/{v}" for i in (1, 2, 3) for v in d.vertices]
    pairs = []
    for i, k in ((1, 2), (2, 3), (3, 1)):
        for t in range(3):
            pairs.append(
                (
                    f"{_COPY_NAMES[i]}/{d_vertex(2, t, 2)}",
                    f"{_COPY_NAMES[k]}/{d_vertex(3, 2, t)}",
                )
            )
    return IdentificationMap.of(pairs).resolve(raw)


def b_vertex(copy: int, j: int, x: int, y: int) -> str:
    """Canonical label of tile copy's grid vertex inside the block B."""
    return _b_resolver()[f"{_COPY_NAMES[copy]}/{d_vertex(j, x, y)}"]


@lru_cache(maxsize=1)
def _build_b_graph() -> Graph:
    d = build_D()
    from .graph import disjoint_union, glue

    disjoint = disjoint_union([d, d, d], [_COPY_NAMES[i] for i in (1, 2, 3)])
    pairs = []
    for i, k in ((1, 2), (2, 3), (3, 1)):
        for t in range(3):
            pairs.append(
                (
                    f"{_COPY_NAMES[i]}/{d_vertex(2, t, 2)}",
                    f"{_COPY_NAMES[k]}/{d_vertex(3, 2, t)}",
                )
            )
    return glue(disjoint, IdentificationMap.of(pairs))


def build_B() -> tuple[Graph, tuple[str, str, str]]:
    """The block graph and its three corner labels."""
    g = _build_b_graph()
    corners = tuple(b_vertex(i, 1, 0, 0) for i in (1, 2, 3))
    return g, corners


@lru_cache(maxsize=1)
def _b_structure():
    """Side paths, interior labels, and edge list of the block B.

    Side (j -> j+1) runs from corner j along copy j's left boundary to the
    shared mid vertex, then down copy j+1's bottom boundary reversed; each
    side has 9 vertices (length 8).
    """
    g, corners = build_B()
    sides: dict[tuple[int, int], list[str]] = {}
    for j in (1, 2, 3):
        k = j % 3 + 1
        first = [
            b_vertex(j, 1, 0, 0),
            b_vertex(j, 1, 0, 1),
            b_vertex(j, 1, 0, 2),
            b_vertex(j, 2, 0, 1),
            b_vertex(j, 2, 0, 2),
        ]
        second = [
            b_vertex(k, 3, 1, 0),
            b_vertex(k, 3, 0, 0),
            b_vertex(k, 1, 1, 0),
            b_vertex(k, 1, 0, 0),
        ]
        sides[(j, k)] = first + second
    fringe = {v for path in sides.values() for v in path}
    interior = tuple(sorted(set(g.vertices) - fringe))
    for path in sides.values():
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                raise GraphError("block side path is not a walk")
    return g, corners, sides, interior


def _rotate_b_label(label: str, r: int) -> str:
    """Image of a canonical block vertex under r leftward triple rotations."""
    if r == 0:
        return label
    copy_name, rest = label.split("/", 1)
    i = {v: k for k, v in _COPY_NAMES.items()}[copy_name]
    i2 = (i - 1 - r) % 3 + 1
    return _b_resolver()[f"{_COPY_NAMES[i2]}/{rest}"]


# -- stitching the universal graph ---------------------------------------------


def _canonical_triple(t: tuple[int, int, int]) -> tuple[tuple[int, int, int], int]:
    """Least rotation and how many left rotations reach it."""
    rots = [t, (t[1], t[2], t[0]), (t[2], t[0], t[1])]
    r = min(range(3), key=lambda i: rots[i])
    return rots[r], r


def _is_rotation_fixed(group: FiniteGroup, t: tuple[int, int, int]) -> bool:
    """True when some element left-translates the triple to a rotation of
    itself (equivalently the triple is (x, hx, h^2x) for an order-3 h)."""
    a, b, c = t
    tab = group.table
    # candidate h sends a to b; then check it cycles b -> c -> a
    for h in range(group.order):
        if tab[h][a] == b and tab[h][b] == c and tab[h][c] == a:
            return True
    return False


def block_triple_classes(group: FiniteGroup) -> list[tuple[str, str, str]]:
    """Canonical ordered-triple classes that receive a block."""
    n = group.order
    out = []
    seen = set()
    for t in itertools.permutations(range(n), 3):
        canon, _ = _canonical_triple(t)
        if canon in seen:
            continue
        seen.add(canon)
        if not _is_rotation_fixed(group, canon):
            out.append(tuple(group.elements[i] for i in canon))
    return sorted(out)


def _corner_label(a: str) -> str:
    return f"c({a})"


def _arc_label(a: str, b: str, i: int) -> str:
    return f"w({a},{b})/{i}"


def _arc_vertex(a: str, b: str, i: int) -> str:
    """Vertex at position i (0..8) along the fringe walk from a to b."""
    if i == 0:
        return _corner_label(a)
    if i == 8:
        return _corner_label(b)
    return _arc_label(a, b, i)


def _cycle_vertex(a: str, b: str, p: int) -> str:
    """Position p (0..15) on the pair's boundary 16-cycle w(a,b)*w(b,a)."""
    p %= 16
    return _arc_vertex(a, b, p) if p <= 8 else _arc_vertex(b, a, 16 - p)


def _ring_label(a: str, b: str, p: int) -> str:
    return f"M({a},{b})/r{p % 16}"


def _grid_ring_position(x: int, y: int) -> int | None:
    """Ring index of a 4x4-grid boundary vertex, None for interior."""
    if x == 0:
        return y
    if y == 4:
        return 4 + x
    if x == 4:
        return 12 - y
    if y == 0:
        return 16 - x
    return None


def _membrane_vertex(a: str, b: str, x: int, y: int) -> str:
    p = _grid_ring_position(x, y)
    if p is not None:
        return _ring_label(a, b, p)
    return f"M({a},{b})/({x},{y})"


def build_Xtilde(group: FiniteGroup) -> tuple[Graph, GroupAction]:
    """The stitched simply connected graph and the left-translation action."""
    n = group.order
    if n < 4:
        raise GraphError(f"need at least 4 elements, got {n}; embed first")
    elems = group.elements
    classes = block_triple_classes(group)
    _, _, sides, interior = _b_structure()
    bgraph = _build_b_graph()

    vertices: set[str] = set()
    edges: set[tuple[str, str]] = set()

    def add_edge(u: str, v: str) -> None:
        if u == v:
            raise GraphError(f"inconsistent identification collapses an edge at {u!r}")
        edges.add((u, v) if u < v else (v, u))

    for a in elems:
        vertices.add(_corner_label(a))
    pairs = [(a, b) for a in elems for b in elems if a != b]
    for a, b in pairs:
        for i in range(1, 8):
            vertices.add(_arc_label(a, b, i))
        for i in range(8):
            add_edge(_arc_vertex(a, b, i), _arc_vertex(a, b, i + 1))

    # blocks: map each block edge through the side/interior classification
    for triple in classes:
        vmap: dict[str, str] = {}
        for j in (1, 2, 3):
            k = j % 3 + 1
            ga, gb = triple[j - 1], triple[k - 1]
            for i, lab in enumerate(sides[(j, k)]):
                vmap[lab] = _arc_vertex(ga, gb, i)
        prefix = f"B({triple[0]},{triple[1]},{triple[2]})"
        for lab in interior:
            vmap[lab] = f"{prefix}/{lab}"
            vertices.add(vmap[lab])
        for u, v in bgraph.edges:
            add_edge(vmap[u], vmap[v])

    # pair membranes: a prism ring of square cells inside the 16-cycle
    # w(a,b) * w(b,a), then a 4x4 grid closing the ring
    for a, b in pairs:
        for p in range(16):
            vertices.add(_ring_label(a, b, p))
        for x in range(1, 4):
            for y in range(1, 4):
                vertices.add(_membrane_vertex(a, b, x, y))
        for p in range(16):
            add_edge(_cycle_vertex(a, b, p), _ring_label(a, b, p))
            add_edge(_ring_label(a, b, p), _ring_label(a, b, p + 1))
        for x in range(5):
            for y in range(5):
                if x + 1 < 5:
                    add_edge(
                        _membrane_vertex(a, b, x, y),
                        _membrane_vertex(a, b, x + 1, y),
                    )
                if y + 1 < 5:
                    add_edge(
                        _membrane_vertex(a, b, x, y),
                        _membrane_vertex(a, b, x, y + 1),
                    )

    expected = n + 7 * n * (n - 1) + 25 * len(classes) + 25 * n * (n - 1)
    if len(vertices) != expected:
        raise GraphError(
            f"stitching inconsistency: {len(vertices)} vertices, expected {expected}"
        )
    graph = Graph(vertices, edges)

    # left-translation action
    index = {e: i for i, e in enumerate(elems)}
    perms: dict[str, dict[str, str]] = {}
    for gname in elems:
        perm: dict[str, str] = {}
        row = group.table[index[gname]]
        mul = {x: elems[row[index[x]]] for x in elems}
        for a in elems:
            perm[_corner_label(a)] = _corner_label(mul[a])
        for a, b in pairs:
            ga, gb = mul[a], mul[b]
            for i in range(1, 8):
                perm[_arc_label(a, b, i)] = _arc_label(ga, gb, i)
            for p in range(16):
                perm[_ring_label(a, b, p)] = _ring_label(ga, gb, p)
            for x in range(1, 4):
                for y in range(1, 4):
                    perm[f"M({a},{b})/({x},{y})"] = f"M({ga},{gb})/({x},{y})"
        for triple in classes:
            timg = tuple(index[mul[t]] for t in triple)
            canon, r = _canonical_triple(timg)
            tgt = tuple(elems[i] for i in canon)
            prefix = f"B({triple[0]},{triple[1]},{triple[2]})"
            tprefix = f"B({tgt[0]},{tgt[1]},{tgt[2]})"
            for lab in interior:
                perm[f"{prefix}/{lab}"] = f"{tprefix}/{_rotate_b_label(lab, r)}"
        perms[gname] = perm
    return graph, GroupAction(perms)


# -- the covering criterion ------------------------------------------------------


@dataclass(frozen=True)
class LemmaReport:
    """Machine-checked hypotheses of the covering criterion."""

    connected: bool
    action_free: bool
    walk_condition: bool
    pi12_trivial: str  # "certified" | "inconclusive"
    fixed_vertices: tuple[tuple[str, str], ...] = ()
    walk_offenders: tuple[tuple[str, str, int], ...] = ()
    pi12_detail: dict = field(default_factory=dict)

    @property
    def all_true(self) -> bool:
        return (
            self.connected
            and self.action_free
            and self.walk_condition
            and self.pi12_trivial == "certified"
        )

    def to_json_dict(self) -> dict:
        return {
            "connected": self.connected,
            "action_free": self.action_free,
            "walk_condition": self.walk_condition,
            "pi12_trivial": self.pi12_trivial,
            "fixed_vertices": [list(p) for p in self.fixed_vertices],
            "walk_offenders": [list(o) for o in self.walk_offenders],
            "pi12_detail": dict(self.pi12_detail),
            "all_true": self.all_true,
        }


def certify_trivial_pi12(
    g: Graph,
    base: str | None = None,
    tietze_budget: int = 50,
    coset_budget: int = DEFAULT_COSET_BUDGET,
) -> tuple[str, dict]:
    """Certify that the closed-walk group of g is trivial, or say why not."""
    if base is None:
        base = g.vertices[0]
    pres = pi12_presentation(g, base)
    simplified = tietze_simplify(pres, tietze_budget)
    detail: dict = {
        "generators": pres.rank,
        "relators": len(pres.relators),
        "simplified_generators": simplified.rank,
        "simplified_relators": len(simplified.relators),
    }
    if simplified.is_trivial_presentation():
        detail["method"] = "tietze"
        return "certified", detail
    result: CosetResult = todd_coxeter(simplified, coset_budget)
    detail["method"] = "todd_coxeter"
    detail["coset_result"] = result.to_json_dict()
    if result.is_finite and result.order == 1:
        return "certified", detail
    if result.is_finite:
        detail["order"] = result.order
        return "inconclusive", detail
    invariants = abelianize(simplified)
    detail["abelian_invariants"] = invariants.to_json_dict()
    return "inconclusive", detail


def check_lemma_conditions(
    x: Graph,
    group: FiniteGroup,
    act: GroupAction,
    tietze_budget: int = 50,
    coset_budget: int = DEFAULT_COSET_BUDGET,
    max_offenders: int = 20,
) -> LemmaReport:
    """Check every hypothesis of the covering criterion on (x, action)."""
    act.validate(group, x)
    connected = is_connected(x)
    fixed = act.fixed_vertices(group, x)
    idx, adj = adjacency_bitsets(x)
    # walks of length exactly 2 and 4 via bitset squaring
    def square(rows: list[int]) -> list[int]:
        out = []
        for mask in rows:
            acc = 0
            rest = mask
            while rest:
                low = rest & -rest
                acc |= rows[low.bit_length() - 1]
                rest ^= low
            out.append(acc)
        return out

    a2 = square(adj)
    a4 = square(a2)
    offenders = []
    for e in group.elements:
        if e == group.identity:
            continue
        perm = act.permutations[e]
        for v in x.vertices:
            vi, wi = idx[v], idx[perm[v]]
            for length, rows in ((1, adj), (2, a2), (4, a4)):
                if rows[vi] >> wi & 1:
                    offenders.append((e, v, length))
                    if len(offenders) >= max_offenders:
                        break
            if len(offenders) >= max_offenders:
                break
        if len(offenders) >= max_offenders:
            break
    pi12_status, detail = certify_trivial_pi12(
        x, tietze_budget=tietze_budget, coset_budget=coset_budget
    )
    return LemmaReport(
        connected=connected,
        action_free=not fixed,
        walk_condition=not offenders,
        pi12_trivial=pi12_status,
        fixed_vertices=tuple(fixed[:max_offenders]),
        walk_offenders=tuple(offenders),
        pi12_detail=detail,
    )


# -- the classifying quotient ------------------------------------------------------


def embed_for_construction(group: FiniteGroup) -> tuple[FiniteGroup, dict[str, str]]:
    """Host group of order >= 4 and the embedding of `group` into it.

    Groups of order >= 4 host themselves; order 1 goes into its product
    with a 4-cycle group, orders 2 and 3 into the product with a 2-cycle.
    """
    if group.order >= 4:
        return group, {e: e for e in group.elements}
    factor = cyclic_group(4 if group.order == 1 else 2)
    host = product_group(group, factor)
    embedding = {e: f"({e},{factor.identity})" for e in group.elements}
    return host, embedding


def build_classifying_graph(group: FiniteGroup) -> Graph:
    """A connected graph whose closed-walk group is isomorphic to `group`."""
    host, embedding = embed_for_construction(group)
    xtilde, act = build_Xtilde(host)
    sub = GroupAction({g: act.permutations[embedding[g]] for g in group.elements})
    return quotient_by_action(xtilde, group, sub, require_free=True)
