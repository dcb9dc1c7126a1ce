"""Directed hypergraphs: data model, counting, enumeration, quotients.

A hyperedge is a pair (tail, head) of nonempty vertex sets; the tail
states drive every vertex in the head.  The order of an edge is
``|tail| + 1`` (one slot for the receiving vertex plus one per input).
An edge is degenerate when head and tail intersect, and undirected when
they coincide.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable


@dataclass(frozen=True, order=True)
class Hyperedge:
    """Directed hyperedge with set tail and set head (vertex ids are 1-based)."""

    tail: frozenset[int] = field(compare=False)
    head: frozenset[int] = field(compare=False)
    _key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "tail", frozenset(self.tail))
        object.__setattr__(self, "head", frozenset(self.head))
        if not self.tail or not self.head:
            raise ValueError("hyperedge tail and head must be nonempty")
        object.__setattr__(
            self, "_key", (len(self.tail), tuple(sorted(self.tail)), tuple(sorted(self.head)))
        )

    @property
    def order(self) -> int:
        return len(self.tail) + 1

    @property
    def degenerate(self) -> bool:
        return bool(self.head & self.tail)

    @property
    def undirected(self) -> bool:
        return self.head == self.tail

    def validate(self, n: int) -> None:
        if not all(1 <= v <= n for v in self.tail | self.head):
            raise ValueError(f"vertex ids of {self} out of range 1..{n}")

    def relabel(self, mapping: dict[int, int]) -> "Hyperedge":
        return Hyperedge(frozenset(mapping[v] for v in self.tail),
                         frozenset(mapping[v] for v in self.head))

    def to_json(self) -> dict:
        return {"tail": sorted(self.tail), "head": sorted(self.head)}

    @classmethod
    def from_json(cls, obj: dict) -> "Hyperedge":
        return cls(frozenset(obj["tail"]), frozenset(obj["head"]))

    def __str__(self) -> str:
        t = ",".join(map(str, sorted(self.tail)))
        h = ",".join(map(str, sorted(self.head)))
        return f"<{t}->{h}>"


def edge(tail: Iterable[int], head: Iterable[int]) -> Hyperedge:
    """Shorthand constructor: ``edge((2, 3), (1,))``."""
    return Hyperedge(frozenset(tail), frozenset(head))


@dataclass(frozen=True)
class Hypergraph:
    """Immutable directed hypergraph on vertices 1..n with duplicate-free edges."""

    n: int
    edges: tuple[Hyperedge, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one vertex")
        canon = tuple(sorted(self.edges, key=lambda e: e._key))
        seen = set()
        for e in canon:
            e.validate(self.n)
            if e._key in seen:
                raise ValueError(f"duplicate hyperedge {e}")
            seen.add(e._key)
        object.__setattr__(self, "edges", canon)

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[Iterable[int], Iterable[int]]]) -> "Hypergraph":
        return cls(n, tuple(edge(t, h) for t, h in pairs))

    # -- structure queries ---------------------------------------------
    def orders(self) -> tuple[int, ...]:
        return tuple(sorted({e.order for e in self.edges}))

    def edges_of_order(self, m: int) -> tuple[Hyperedge, ...]:
        return tuple(e for e in self.edges if e.order == m)

    def in_edges(self, k: int) -> tuple[Hyperedge, ...]:
        return tuple(e for e in self.edges if k in e.head)

    def is_m_uniform(self, m: int) -> bool:
        return bool(self.edges) and all(e.order == m for e in self.edges)

    def uniform_order(self) -> int | None:
        os = self.orders()
        return os[0] if len(os) == 1 else None

    @property
    def is_undirected(self) -> bool:
        return all(e.undirected for e in self.edges)

    def head_count(self, m: int, k: int) -> int:
        """Number of order-m edges whose head contains vertex k."""
        if not 1 <= k <= self.n:
            raise ValueError(f"vertex {k} out of range 1..{self.n}")
        return sum(1 for e in self.edges if e.order == m and k in e.head)

    def relabel(self, mapping: dict[int, int]) -> "Hypergraph":
        return Hypergraph(self.n, tuple(e.relabel(mapping) for e in self.edges))

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        return {"n": self.n, "edges": [e.to_json() for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> "Hypergraph":
        return cls(int(obj["n"]), tuple(Hyperedge.from_json(e) for e in obj["edges"]))


@dataclass(frozen=True)
class InputProfile:
    """Per-vertex input composition of a 3-uniform hypergraph on 3 vertices.

    true_pair:  true 2-to-1 inputs (receiving vertex not in the tail)
    right_self: degenerate inputs whose tail is {k, right neighbor of k}
    left_self:  degenerate inputs whose tail is {k, left neighbor of k}

    Neighbor orientation is the cyclic order 1 -> 2 -> 3 -> 1.
    """

    true_pair: int
    right_self: int
    left_self: int

    def __post_init__(self):
        for v in (self.true_pair, self.right_self, self.left_self):
            if not 0 <= v <= 4:
                raise ValueError("each input class holds at most 4 edges")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.true_pair, self.right_self, self.left_self)


RIGHT = {1: 2, 2: 3, 3: 1}
LEFT = {1: 3, 2: 1, 3: 2}


def omega_sets() -> dict[tuple[int, int], frozenset[Hyperedge]]:
    """Input-class membership sets for order-3 edges on 3 vertices.

    Key (i, k): class i in {0: true 2-to-1, 1: degenerate via right
    neighbor, 2: degenerate via left neighbor} for receiving vertex k.
    Hard-coded; a generated-membership test cross-checks them.
    """
    heads = [frozenset(s) for r in (1, 2, 3) for s in itertools.combinations((1, 2, 3), r)]

    def with_tail(tail: frozenset[int], must_have: int) -> frozenset[Hyperedge]:
        return frozenset(Hyperedge(tail, h) for h in heads if must_have in h)

    out: dict[tuple[int, int], frozenset[Hyperedge]] = {}
    for k in (1, 2, 3):
        out[(0, k)] = with_tail(frozenset({1, 2, 3} - {k}), k)
        out[(1, k)] = with_tail(frozenset({k, RIGHT[k]}), k)
        out[(2, k)] = with_tail(frozenset({k, LEFT[k]}), k)
    return out


def input_profile_3uniform(h: Hypergraph) -> dict[int, InputProfile]:
    """Classify every in-edge of a 3-uniform hypergraph on 3 vertices."""
    if h.n != 3:
        raise ValueError("input profiles are defined on 3 vertices")
    if h.edges and not h.is_m_uniform(3):
        raise ValueError("hypergraph is not 3-uniform")
    profiles = {}
    for k in (1, 2, 3):
        pi = phi = psi = 0
        for e in h.in_edges(k):
            if k not in e.tail:
                pi += 1
            elif e.tail == frozenset({k, RIGHT[k]}):
                phi += 1
            elif e.tail == frozenset({k, LEFT[k]}):
                psi += 1
            else:  # pragma: no cover - unreachable for 3 vertices
                raise AssertionError(f"unclassifiable edge {e}")
        profiles[k] = InputProfile(pi, phi, psi)
    return profiles


def enumerate_hyperedges(n: int, max_order: int) -> list[Hyperedge]:
    """All distinct hyperedges on n vertices with tail size up to max_order.

    With n = 3 and max_order = 3 this is the full catalogue of 49
    non-trivial directed hyperedges on three vertices (7 nonempty tails
    times 7 nonempty heads).  Use :func:`Hypergraph.edges_of_order` to
    slice by the |tail| + 1 order convention.
    """
    if n < 1 or max_order < 1:
        raise ValueError("need n >= 1 and max_order >= 1")
    vs = range(1, n + 1)
    tails = [frozenset(c) for r in range(1, min(max_order, n) + 1)
             for c in itertools.combinations(vs, r)]
    heads = [frozenset(c) for r in range(1, n + 1) for c in itertools.combinations(vs, r)]
    out = [Hyperedge(t, hd) for t in tails for hd in heads]
    return sorted(out, key=lambda e: e._key)


def quotient_restrict(h: Hypergraph, partition) -> Hypergraph:
    """Collapse a hypergraph along a balanced partition into 3 classes.

    Classes become the quotient vertices (numbered by their minimal
    member); each edge maps to the classes of its tail and head, and
    duplicates merge.  The class-level dynamics agree with the original
    dynamics restricted to the synchrony subspace; that identity is
    validated numerically by the system-level restriction.
    """
    from .synchrony import is_balanced  # local import avoids a module cycle

    if len(partition.classes) != 3:
        raise ValueError("quotient_restrict expects a partition into 3 classes")
    if not is_balanced(h, partition):
        raise ValueError("partition is not balanced for this hypergraph")
    reps = sorted(min(c) for c in partition.classes)
    index = {rep: i + 1 for i, rep in enumerate(reps)}
    cls_of = {}
    for c in partition.classes:
        for v in c:
            cls_of[v] = index[min(c)]
    seen = set()
    edges = []
    for e in h.edges:
        q = Hyperedge(frozenset(cls_of[v] for v in e.tail),
                      frozenset(cls_of[v] for v in e.head))
        if q._key not in seen:
            seen.add(q._key)
            edges.append(q)
    return Hypergraph(3, tuple(edges))


# Reference hypergraphs from the 3-vertex analysis -----------------------

def complete_undirected(n: int) -> Hypergraph:
    """Every nonempty vertex set as an undirected hyperedge."""
    vs = range(1, n + 1)
    sets = [frozenset(c) for r in range(1, n + 1) for c in itertools.combinations(vs, r)]
    return Hypergraph(n, tuple(Hyperedge(s, s) for s in sets))


def classical_ring_all_to_all() -> Hypergraph:
    """The six pairwise edges between distinct vertices of a 3-node network."""
    pairs = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3) if i != j]
    return Hypergraph(3, tuple(edge((i,), (j,)) for i, j in pairs))


def pure_two_to_one() -> Hypergraph:
    """Three true 2-to-1 triplet interactions, one per target vertex."""
    return Hypergraph.from_edges(3, [((2, 3), (1,)), ((1, 3), (2,)), ((1, 2), (3,))])


def gh_pair_plus_triplet() -> Hypergraph:
    """One pairwise edge from the right neighbor plus the true triplets."""
    return Hypergraph.from_edges(
        3,
        [((2,), (1,)), ((3,), (2,)), ((1,), (3,)),
         ((2, 3), (1,)), ((1, 3), (2,)), ((1, 2), (3,))],
    )


def gh_pair_plus_degenerate() -> Hypergraph:
    """One pairwise edge plus one degenerate order-3 self-input per vertex."""
    return Hypergraph.from_edges(
        3,
        [((2,), (1,)), ((3,), (2,)), ((1,), (3,)),
         ((1, 3), (1,)), ((1, 2), (2,)), ((2, 3), (3,))],
    )


def field_reference() -> Hypergraph:
    """The asymmetric pairwise + triplet hypergraph carrying the two-saddle cycle."""
    return Hypergraph.from_edges(
        3,
        [((2,), (1,)), ((1,), (2,)), ((2,), (3,)),
         ((2, 3), (1,)), ((1, 3), (2,)), ((1, 2), (3,))],
    )


def uniform3_category_example() -> Hypergraph:
    """Six order-3 edges giving per-vertex input profile (0, 1, 2)."""
    return Hypergraph.from_edges(
        3,
        [((1, 3), (1,)), ((1, 2), (2,)), ((2, 3), (3,)),
         ((1, 3), (1, 3)), ((1, 2), (1, 2)), ((2, 3), (2, 3))],
    )
