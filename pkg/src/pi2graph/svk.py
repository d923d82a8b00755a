"""Gluing computations for closed-walk groups of covered graphs.

Two routes: the two-subgraph amalgamated free product, and the general
base-vertex-set colimit assembled from per-member fundamental groupoids.
Both produce ordinary presentations whose invariants can be compared with
a direct computation on the whole graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coset import DEFAULT_COSET_BUDGET, todd_coxeter
from .graph import Cover, Graph, GraphError, connected_components, enumerate_cycles, is_connected
from .homotopy import Walk, concat
from .presentation import (
    AbelianInvariants,
    GroupPresentation,
    SpanningTree,
    WordMap,
    abelianize,
    gen_name,
    invert_word,
    pi12_presentation,
    tietze_simplify,
)


class CoverError(GraphError):
    """Cover hypotheses violated."""


MAX_MATERIALIZED_MEMBERS = 64


def intersection_graph(a: Graph, b: Graph) -> Graph:
    vs = set(a.vertices) & set(b.vertices)
    es = set(a.edges) & set(b.edges)
    return Graph(vs, es)


def materialize_intersections(members) -> list[Graph]:
    """Close the member list under pairwise intersection (to a fixpoint)."""
    out = list(members)
    seen = set(out)
    while True:
        new = []
        for i in range(len(out)):
            for j in range(i + 1, len(out)):
                inter = intersection_graph(out[i], out[j])
                if inter not in seen:
                    seen.add(inter)
                    new.append(inter)
        if not new:
            return out
        out.extend(new)
        if len(out) > MAX_MATERIALIZED_MEMBERS:
            raise CoverError("intersection closure exceeds member limit")


@dataclass(frozen=True)
class CoverReport:
    covers_union: bool
    intersection_closed: bool
    four_cycle_condition: bool
    missing_vertices: tuple[str, ...] = ()
    missing_edges: tuple[tuple[str, str], ...] = ()
    missing_intersections: tuple[tuple[int, int], ...] = ()
    offending_cycles: tuple[tuple[str, ...], ...] = ()

    @property
    def all_pass(self) -> bool:
        return self.covers_union and self.intersection_closed and self.four_cycle_condition

    def to_json_dict(self) -> dict:
        return {
            "covers_union": self.covers_union,
            "intersection_closed": self.intersection_closed,
            "four_cycle_condition": self.four_cycle_condition,
            "missing_vertices": list(self.missing_vertices),
            "missing_edges": [list(e) for e in self.missing_edges],
            "missing_intersections": [list(p) for p in self.missing_intersections],
            "offending_cycles": [list(c) for c in self.offending_cycles],
        }


def check_cover(g: Graph, u: Cover) -> CoverReport:
    """Check the three gluing hypotheses, listing offenders per failure."""
    u.validate_members(g)
    members = u.members
    union_v = set().union(*(set(m.vertices) for m in members)) if members else set()
    union_e = set().union(*(set(m.edges) for m in members)) if members else set()
    missing_v = tuple(sorted(set(g.vertices) - union_v))
    missing_e = tuple(sorted(set(g.edges) - union_e))
    member_keys = {m for m in members}
    missing_int = []
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if intersection_graph(members[i], members[j]) not in member_keys:
                missing_int.append((i, j))
    offending = []
    for cyc in sorted(enumerate_cycles(g, 4)):
        cyc_vs = set(cyc)
        cyc_es = set()
        for k in range(4):
            a, b = cyc[k], cyc[(k + 1) % 4]
            cyc_es.add((a, b) if a < b else (b, a))
        if not any(
            cyc_vs <= set(m.vertices) and cyc_es <= set(m.edges) for m in members
        ):
            offending.append(cyc)
    return CoverReport(
        covers_union=not missing_v and not missing_e,
        intersection_closed=not missing_int,
        four_cycle_condition=not offending,
        missing_vertices=missing_v,
        missing_edges=missing_e,
        missing_intersections=tuple(missing_int),
        offending_cycles=tuple(offending),
    )


@dataclass(frozen=True)
class BaseSet:
    """Nonempty set of base vertices (the objects of the walk groupoid)."""

    vertices: tuple[str, ...]

    @classmethod
    def of(cls, vertices) -> "BaseSet":
        vs = tuple(sorted(set(str(v) for v in vertices)))
        if not vs:
            raise CoverError("base set must be nonempty")
        return cls(vs)


def check_base_set(g: Graph, u: Cover, a: BaseSet) -> tuple[bool, list[tuple[int, tuple[str, ...]]]]:
    """True iff every component of every member meets the base set."""
    aset = set(a.vertices)
    if not aset <= set(g.vertices):
        raise CoverError("base set contains vertices outside the parent graph")
    offenders = []
    for i, m in enumerate(u.members):
        for comp in connected_components(m):
            if not aset & set(comp):
                offenders.append((i, comp))
    return (not offenders, offenders)


# -- two-subgraph amalgamation -------------------------------------------------


def amalgamated_presentation(
    g: Graph, u1: Graph, u2: Graph, base: str, force: bool = False
) -> GroupPresentation:
    """Free product of the two pieces' groups, amalgamated over the overlap.

    One relator per generator of the overlap's group identifies its images
    in the two pieces.
    """
    inter = intersection_graph(u1, u2)
    if not force:
        if set(g.vertices) != set(u1.vertices) | set(u2.vertices) or set(
            g.edges
        ) != set(u1.edges) | set(u2.edges):
            raise CoverError("the two subgraphs do not cover the parent")
        for name, part in (("parent", g), ("first member", u1), ("second member", u2), ("overlap", inter)):
            if not is_connected(part):
                raise CoverError(f"{name} is not connected")
        if base not in inter:
            raise CoverError(f"base {base!r} must lie in the overlap")
        report = check_cover(g, Cover.of([u1, u2, inter]))
        if not report.four_cycle_condition:
            raise CoverError(
                f"4-cycles outside every member: {report.offending_cycles}"
            )

    trees = {}
    maps = {}
    presentations = {}
    for key, part in (("u1", u1), ("u2", u2)):
        tree = SpanningTree.bfs(part, base)
        trees[key] = tree
        maps[key] = WordMap(part, tree)
        presentations[key] = pi12_presentation(part, base)

    p1, p2 = presentations["u1"], presentations["u2"]
    names = [f"u1.{n}" for n in p1.generators] + [f"u2.{n}" for n in p2.generators]
    off2 = p1.rank
    relators = [r for r in p1.relators]
    relators += [
        tuple(x + off2 if x > 0 else x - off2 for x in r) for r in p2.relators
    ]

    # push each overlap generator into both pieces and equate the images
    itree = SpanningTree.bfs(inter, base)
    for e in _nontree_edges_of(inter, itree):
        walk = _loop_through_edge(itree, e)
        w1 = maps["u1"].word(walk.vertices)
        w2 = maps["u2"].word(walk.vertices)
        w2_shifted = tuple(x + off2 if x > 0 else x - off2 for x in w2)
        relators.append(tuple(w1) + invert_word(w2_shifted))
    return GroupPresentation.of(names, relators)


def _nontree_edges_of(g: Graph, t: SpanningTree):
    from .presentation import nontree_edges

    return nontree_edges(g, t)


def _loop_through_edge(t: SpanningTree, e: tuple[str, str]) -> Walk:
    a, b = e
    first = t.walk_between(t.root, a)
    back = t.walk_between(b, t.root)
    return concat(concat(first, Walk((a, b))), back)


# -- general colimit over a cover ----------------------------------------------


@dataclass
class _MemberData:
    graph: Graph
    components: list[tuple[str, ...]] = field(default_factory=list)
    roots: dict[str, str] = field(default_factory=dict)  # vertex -> its root
    trees: dict[str, SpanningTree] = field(default_factory=dict)  # root -> tree
    word_maps: dict[str, WordMap] = field(default_factory=dict)
    loop_gens: dict[str, list[int]] = field(default_factory=dict)  # root -> global ids
    gamma: dict[tuple[str, str], int] = field(default_factory=dict)  # (root, x) -> id


def groupoid_colimit_group(
    g: Graph,
    u: Cover,
    a: BaseSet,
    base: str,
    force: bool = False,
    materialize: bool = True,
) -> GroupPresentation:
    """Vertex group at `base` of the colimit of the cover's walk groupoids.

    Per member and component: a spanning tree presents the component's group
    at its least base vertex, with connecting generators to the component's
    other base vertices.  Inclusions between members identify the images of
    shared generators, and a spanning tree over the base vertices contracts
    the groupoid to a one-object presentation.
    """
    if base not in a.vertices:
        raise CoverError(f"base {base!r} must belong to the base set")
    members = (
        materialize_intersections(list(u.members)) if materialize else list(u.members)
    )
    cover = Cover.of(members)
    if not force:
        report = check_cover(g, cover)
        if not report.all_pass:
            raise CoverError(f"cover hypotheses fail: {report.to_json_dict()}")
        ok, offenders = check_base_set(g, cover, a)
        if not ok:
            raise CoverError(f"components missing base vertices: {offenders}")
        if not is_connected(g):
            raise CoverError("parent graph is not connected")

    aset = set(a.vertices)
    gen_names: list[str] = []
    relators: list[tuple[int, ...]] = []
    data: list[_MemberData] = []

    def new_gen(name: str) -> int:
        gen_names.append(name)
        return len(gen_names)

    for mi, member in enumerate(members):
        md = _MemberData(member)
        for comp in connected_components(member):
            bases = sorted(aset & set(comp))
            if not bases:
                raise CoverError(f"member {mi} component {comp[0]!r} misses the base set")
            root = bases[0]
            tree = SpanningTree.bfs(member, root)
            wm = WordMap(member, tree)
            md.components.append(comp)
            md.trees[root] = tree
            md.word_maps[root] = wm
            for v in comp:
                md.roots[v] = root
            ids = [
                new_gen(f"m{mi}.{gen_name(k)}") for k in range(len(wm.gen_edges))
            ]
            md.loop_gens[root] = ids
            for x in bases[1:]:
                md.gamma[(root, x)] = new_gen(f"m{mi}.c[{x}]")
        # relators: small cycles of each component
        for length in (4,):
            for cyc in sorted(enumerate_cycles(member, length)):
                root = md.roots[cyc[0]]
                wm = md.word_maps[root]
                local = wm.word(cyc + (cyc[0],))
                ids = md.loop_gens[root]
                word = tuple(ids[abs(x) - 1] * (1 if x > 0 else -1) for x in local)
                if word:
                    relators.append(word)
        data.append(md)

    def groupoid_word(md: _MemberData, walk: Walk) -> tuple[int, ...]:
        """Image of a walk between base vertices in a member's generators."""
        p, q = walk.start, walk.end
        root = md.roots[p]
        if md.roots.get(q) != root:
            raise CoverError("walk endpoints lie in different components")
        tree, wm = md.trees[root], md.word_maps[root]
        loop = concat(concat(tree.walk_between(root, p), walk), tree.walk_between(q, root))
        local = wm.word(loop.vertices)
        ids = md.loop_gens[root]
        word = [ids[abs(x) - 1] * (1 if x > 0 else -1) for x in local]
        prefix = [] if p == root else [-md.gamma[(root, p)]]
        suffix = [] if q == root else [md.gamma[(root, q)]]
        return tuple(prefix + word + suffix)

    # identification relators along every inclusion of members
    for wi, wd in enumerate(data):
        for ui, ud in enumerate(data):
            if wi == ui or not wd.graph.is_subgraph_of(ud.graph):
                continue
            for comp in wd.components:
                root = wd.roots[comp[0]]
                tree, wm = wd.trees[root], wd.word_maps[root]
                for k, e in enumerate(wm.gen_edges):
                    walk = _loop_through_edge(tree, e)
                    target = groupoid_word(ud, walk)
                    own = wd.loop_gens[root][k]
                    relators.append(target + (-own,))
                for x in sorted(aset & set(comp)):
                    if x == root:
                        continue
                    walk = tree.walk_between(root, x)
                    target = groupoid_word(ud, walk)
                    own = wd.gamma[(root, x)]
                    relators.append(target + (-own,))

    # contract a spanning tree over the base vertices
    object_edges: dict[str, list[tuple[str, int]]] = {v: [] for v in a.vertices}
    for md in data:
        for (root, x), gid in sorted(md.gamma.items()):
            object_edges[root].append((x, gid))
            object_edges[x].append((root, gid))
    reached = {base}
    frontier = [base]
    tree_gens: list[int] = []
    while frontier:
        v = frontier.pop(0)
        for w, gid in sorted(object_edges[v]):
            if w not in reached:
                reached.add(w)
                tree_gens.append(gid)
                frontier.append(w)
    if reached != set(a.vertices):
        raise CoverError(
            f"base vertices {sorted(set(a.vertices) - reached)} unreachable in the colimit"
        )
    relators.extend((gid,) for gid in tree_gens)
    return GroupPresentation.of(gen_names, relators)


# -- agreement verdicts ---------------------------------------------------------


@dataclass(frozen=True)
class SvkVerdict:
    status: str  # "agree" | "disagree" | "inconclusive"
    colimit_invariants: AbelianInvariants
    direct_invariants: AbelianInvariants
    colimit_order: int | None
    direct_order: int | None

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "colimit_invariants": self.colimit_invariants.to_json_dict(),
            "direct_invariants": self.direct_invariants.to_json_dict(),
            "colimit_order": self.colimit_order,
            "direct_order": self.direct_order,
        }


def verify_svk(
    g: Graph,
    members,
    base: str,
    base_set: BaseSet | None = None,
    force: bool = False,
    budget_cosets: int = DEFAULT_COSET_BUDGET,
) -> SvkVerdict:
    """Compare the glued presentation with the direct one.

    Exactly two members without a base set take the amalgamation route;
    otherwise the groupoid colimit over the materialized cover is used.
    """
    members = list(members)
    if base_set is None and len(members) == 2:
        glued = amalgamated_presentation(g, members[0], members[1], base, force=force)
    else:
        a = base_set if base_set is not None else BaseSet.of([base])
        glued = groupoid_colimit_group(g, Cover.of(members), a, base, force=force)
    direct = pi12_presentation(g, base)

    ab_glued = abelianize(glued)
    ab_direct = abelianize(direct)
    tc_glued = todd_coxeter(tietze_simplify(glued), budget_cosets)
    tc_direct = todd_coxeter(tietze_simplify(direct), budget_cosets)

    if ab_glued != ab_direct:
        status = "disagree"
    elif tc_glued.is_finite and tc_direct.is_finite:
        status = "agree" if tc_glued.order == tc_direct.order else "disagree"
    elif tc_glued.is_finite != tc_direct.is_finite:
        status = "inconclusive"
    else:
        status = "agree"
    return SvkVerdict(status, ab_glued, ab_direct, tc_glued.order, tc_direct.order)
