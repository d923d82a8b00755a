"""Walk rewriting: substitution/insertion/deletion moves on graph walks.

Two walks are homotopic when a finite move sequence turns one into the
other.  Deletion alone is confluent, so every walk has a unique
deletion-normal form; the bounded equivalence search runs over normal
forms and stitches the certificate back together from the moves it took.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .graph import Graph


class WalkError(ValueError):
    """Invalid walk or illegal move."""


@dataclass(frozen=True)
class Walk:
    """Nonempty vertex sequence with consecutive vertices adjacent."""

    vertices: tuple[str, ...]

    @classmethod
    def of(cls, g: Graph, vertices) -> "Walk":
        vs = tuple(str(v) for v in vertices)
        if not vs:
            raise WalkError("a walk needs at least one vertex")
        for v in vs:
            if v not in g:
                raise WalkError(f"unknown vertex {v!r}")
        for a, b in zip(vs, vs[1:]):
            if b not in g.neighbors(a):
                raise WalkError(f"{a!r} and {b!r} are not adjacent")
        return cls(vs)

    @property
    def start(self) -> str:
        return self.vertices[0]

    @property
    def end(self) -> str:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def is_closed(self) -> bool:
        return self.start == self.end

    def __repr__(self) -> str:
        return "Walk(" + " ".join(self.vertices) + ")"


@dataclass(frozen=True)
class HomotopyMove:
    """One rewriting step.

    substitution: replace interior vertex i by a common neighbor of its
        neighbors; insertion: replace vertex i by (v_i, w, v_i); deletion:
        drop the backtrack (v_{i-1}, v_i, v_{i+1}) -> v_{i-1}.
    """

    kind: str  # "substitution" | "insertion" | "deletion"
    index: int
    replacement: str | None = None

    def to_json_dict(self) -> dict:
        d = {"kind": self.kind, "index": self.index}
        if self.replacement is not None:
            d["replacement"] = self.replacement
        return d

    def inverted(self, before: Walk) -> "HomotopyMove":
        """The move undoing self, given the walk it was applied to."""
        if self.kind == "substitution":
            return HomotopyMove("substitution", self.index, before.vertices[self.index])
        if self.kind == "insertion":
            return HomotopyMove("deletion", self.index + 1)
        if self.kind == "deletion":
            return HomotopyMove("insertion", self.index - 1, before.vertices[self.index])
        raise WalkError(f"unknown move kind {self.kind!r}")


def apply_move(g: Graph, w: Walk, m: HomotopyMove) -> Walk:
    """Apply a move, checking its legality."""
    vs = w.vertices
    k = len(vs) - 1
    i = m.index
    if m.kind == "substitution":
        if not 0 < i < k:
            raise WalkError(f"substitution index {i} not interior")
        r = m.replacement
        if r is None:
            raise WalkError("substitution needs a replacement vertex")
        if r not in g.neighbors(vs[i - 1]) or r not in g.neighbors(vs[i + 1]):
            raise WalkError(
                f"{r!r} is not a common neighbor of {vs[i - 1]!r} and {vs[i + 1]!r}"
            )
        return Walk(vs[:i] + (r,) + vs[i + 1 :])
    if m.kind == "insertion":
        if not 0 <= i <= k:
            raise WalkError(f"insertion index {i} out of range")
        wv = m.replacement
        if wv is None:
            raise WalkError("insertion needs the inserted vertex")
        if wv not in g.neighbors(vs[i]):
            raise WalkError(f"{wv!r} is not a neighbor of {vs[i]!r}")
        return Walk(vs[: i + 1] + (wv, vs[i]) + vs[i + 1 :])
    if m.kind == "deletion":
        if not 0 < i < k:
            raise WalkError(f"deletion index {i} not interior")
        if vs[i - 1] != vs[i + 1]:
            raise WalkError(f"no backtrack at index {i}")
        return Walk(vs[: i - 1] + vs[i + 1 :])
    raise WalkError(f"unknown move kind {m.kind!r}")


def reduce(w: Walk) -> Walk:
    """Deletion-normal form: remove backtracks until none remain."""
    walk, _ = reduce_with_moves(w)
    return walk


def reduce_with_moves(w: Walk) -> tuple[Walk, list[HomotopyMove]]:
    """Normal form plus the deletion moves that produce it."""
    vs = list(w.vertices)
    moves: list[HomotopyMove] = []
    i = 1
    while i + 1 < len(vs):
        if vs[i - 1] == vs[i + 1]:
            moves.append(HomotopyMove("deletion", i))
            del vs[i : i + 2]
            i = max(1, i - 1)
        else:
            i += 1
    return Walk(tuple(vs)), moves


def concat(w1: Walk, w2: Walk) -> Walk:
    if w1.end != w2.start:
        raise WalkError(f"cannot concatenate: {w1.end!r} != {w2.start!r}")
    return Walk(w1.vertices + w2.vertices[1:])


def reverse(w: Walk) -> Walk:
    return Walk(tuple(reversed(w.vertices)))


@dataclass(frozen=True)
class HomotopyVerdict:
    """'equivalent' with a replayable move certificate, or 'unknown'."""

    status: str  # "equivalent" | "unknown"
    moves: tuple[HomotopyMove, ...] | None = None
    states_explored: int = 0

    @property
    def is_equivalent(self) -> bool:
        return self.status == "equivalent"


def default_max_walk_length(w1: Walk, w2: Walk) -> int:
    return w1.length + w2.length + 8

DEFAULT_MAX_STATES = 10**6


def _legal_moves(g: Graph, w: Walk, max_len: int) -> Iterator[HomotopyMove]:
    vs = w.vertices
    k = len(vs) - 1
    for i in range(1, k):
        common = sorted(set(g.neighbors(vs[i - 1])) & set(g.neighbors(vs[i + 1])))
        for r in common:
            if r != vs[i]:
                yield HomotopyMove("substitution", i, r)
    if w.length + 2 <= max_len:
        for i in range(k + 1):
            for nb in g.neighbors(vs[i]):
                yield HomotopyMove("insertion", i, nb)
    for i in range(1, k):
        if vs[i - 1] == vs[i + 1]:
            yield HomotopyMove("deletion", i)


def homotopic(
    g: Graph,
    w1: Walk,
    w2: Walk,
    max_walk_length: int | None = None,
    max_states: int = DEFAULT_MAX_STATES,
) -> HomotopyVerdict:
    """Bounded breadth-first search for a move sequence from w1 to w2.

    States are deletion-normal forms; every expansion applies one move and
    renormalizes, recording the extra deletions, so the returned certificate
    replays exactly from w1 to w2.  'unknown' means the bounded search
    failed, never that the walks are inequivalent.
    """
    if w1.start != w2.start or w1.end != w2.end:
        raise WalkError("walks must share both endpoints")
    if max_states < 1:
        raise WalkError("max_states must be >= 1")
    if max_walk_length is None:
        max_walk_length = default_max_walk_length(w1, w2)

    start, start_moves = reduce_with_moves(w1)
    target, target_moves = reduce_with_moves(w2)

    def finish(mid_moves: tuple[HomotopyMove, ...], states: int) -> HomotopyVerdict:
        # invert w2's reduction so the certificate lands on w2, not its
        # normal form
        replayed = w2
        undo: list[HomotopyMove] = []
        for mv in target_moves:
            undo.append(mv.inverted(replayed))
            replayed = apply_move(g, replayed, mv)
        tail = tuple(reversed(undo))
        return HomotopyVerdict(
            "equivalent",
            tuple(start_moves) + mid_moves + tail,
            states,
        )

    if start == target:
        return finish((), 1)

    seen = {start.vertices: None}
    parent: dict[tuple, tuple] = {}
    via: dict[tuple, tuple[HomotopyMove, ...]] = {}
    queue = deque([start])
    states = 1
    while queue:
        cur = queue.popleft()
        for mv in _legal_moves(g, cur, max_walk_length):
            nxt_raw = apply_move(g, cur, mv)
            nxt, extra = reduce_with_moves(nxt_raw)
            key = nxt.vertices
            if key in seen:
                continue
            seen[key] = None
            parent[key] = cur.vertices
            via[key] = (mv,) + tuple(extra)
            states += 1
            if key == target.vertices:
                chain: list[HomotopyMove] = []
                k = key
                while k != start.vertices:
                    chain[:0] = via[k]
                    k = parent[k]
                return finish(tuple(chain), states)
            if states >= max_states:
                return HomotopyVerdict("unknown", None, states)
            queue.append(nxt)
    return HomotopyVerdict("unknown", None, states)


def replay(g: Graph, w: Walk, moves) -> Walk:
    """Apply a move sequence; used to validate certificates."""
    cur = w
    for mv in moves:
        cur = apply_move(g, cur, mv)
    return cur


def invert_certificate(g: Graph, w1: Walk, moves) -> list[HomotopyMove]:
    """Moves transforming the certificate's endpoint back to w1."""
    walks = [w1]
    for mv in moves:
        walks.append(apply_move(g, walks[-1], mv))
    out = []
    for mv, before in zip(reversed(list(moves)), reversed(walks[:-1])):
        out.append(mv.inverted(before))
    return out
