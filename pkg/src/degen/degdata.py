"""Simple, double and global degeneration data, with canonical encodings.

Local data are trees of projective lines.  Every special point carries a
(m, h) label; edges carry one label per side plus the thickness e.  The
boundary attachments (the origin of a simple datum, the two geodesic ends of a
double datum) are stored as distinguished points rather than edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Union

from .arith import Place
from .torsor import BoundaryType, GroupKind, TorsorRep

NONSPLIT = "nonsplit"
SPLIT = "split"
SPECIES = (NONSPLIT, SPLIT)


class StructureError(ValueError):
    """A datum is not a well-formed tree (cycle, disconnected, dangling id)."""


@dataclass(frozen=True)
class PointLabel:
    m: int
    h: int = 0
    location: Place | None = None


@dataclass(frozen=True)
class MarkedPoint:
    """A smooth marked point x_{i,j}: conductor m, residue h, r branch points."""

    m: int
    h: int = 0
    r: int = 0
    location: Place | None = None


@dataclass(frozen=True)
class Vertex:
    kind: GroupKind
    delta: int | None = None
    genus: int = 0
    marked: tuple[MarkedPoint, ...] = ()
    rep: TorsorRep | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GroupKind(self.kind))
        object.__setattr__(self, "marked", tuple(self.marked))


@dataclass(frozen=True)
class Edge:
    """A double point joining u and v; ``at_u`` is the label on u's side."""

    u: str
    v: str
    e: int
    at_u: PointLabel
    at_v: PointLabel

    def side(self, vid: str) -> PointLabel:
        if vid == self.u:
            return self.at_u
        if vid == self.v:
            return self.at_v
        raise KeyError(vid)

    def other(self, vid: str) -> str:
        return self.v if vid == self.u else self.u


@dataclass(frozen=True)
class Boundary:
    """Attachment of a local tree to the rest of the curve.

    ``point`` is the label on the tree side (m_{i0,j0}, h_{i0,j0}); ``e`` the
    thickness of the attaching double point and ``delta`` the different of the
    torsor on the boundary of the formal fibre.
    """

    vertex: str
    point: PointLabel
    e: int
    delta: int


@dataclass(frozen=True)
class Tree:
    vertices: dict[str, Vertex]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", dict(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

    def incident(self, vid: str) -> list[Edge]:
        return [e for e in self.edges if vid in (e.u, e.v)]

    def check_structure(self, roots=()) -> None:
        """Raise StructureError unless this is a connected acyclic tree."""
        if not self.vertices:
            raise StructureError("tree has no vertices")
        for r in roots:
            if r not in self.vertices:
                raise StructureError(f"distinguished vertex {r!r} is not in the tree")
        for k, e in enumerate(self.edges):
            for x in (e.u, e.v):
                if x not in self.vertices:
                    raise StructureError(f"edges[{k}] refers to unknown vertex {x!r}")
            if e.u == e.v:
                raise StructureError(f"edges[{k}] is a loop at {e.u!r}")
        if len(self.edges) != len(self.vertices) - 1:
            raise StructureError(
                f"{len(self.vertices)} vertices and {len(self.edges)} edges cannot form a tree"
            )
        start = next(iter(self.vertices))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for e in self.incident(x):
                y = e.other(x)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(self.vertices):
            raise StructureError("tree is disconnected")

    def path(self, a: str, b: str) -> list[str]:
        """The geodesic from a to b."""
        prev = {a: None}
        stack = [a]
        while stack:
            x = stack.pop()
            for e in self.incident(x):
                y = e.other(x)
                if y not in prev:
                    prev[y] = x
                    stack.append(y)
        if b not in prev:
            raise StructureError(f"no path from {a!r} to {b!r}")
        out = [b]
        while out[-1] != a:
            out.append(prev[out[-1]])
        return out[::-1]


@dataclass(frozen=True)
class SimpleDegData:
    species: str
    r: int
    boundary_type: BoundaryType
    tree: Tree
    origin: Boundary

    @property
    def boundaries(self) -> tuple[Boundary, ...]:
        return (self.origin,)

    @property
    def boundary_types(self) -> tuple[BoundaryType, ...]:
        return (self.boundary_type,)


@dataclass(frozen=True)
class DoubleDegData:
    species: str
    r: int
    boundary_types: tuple[BoundaryType, BoundaryType]
    tree: Tree
    ends: tuple[Boundary, Boundary]

    @property
    def boundaries(self) -> tuple[Boundary, ...]:
        return self.ends


LocalData = Union[SimpleDegData, DoubleDegData]


# -- global data --

@dataclass(frozen=True)
class Component:
    """An irreducible component X_i of the base curve and its torsor.

    ``points`` names every special point of X_i (node branches, marked points,
    critical points) with its (m, h) label; for positive genus this map is the
    symbolic description of the torsor.  ``rep`` is set only for genus-0
    components given by an explicit representative.
    """

    genus: int
    kind: GroupKind
    delta: int | None = None
    points: dict[str, PointLabel] = field(default_factory=dict)
    rep: TorsorRep | None = None
    generic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", GroupKind(self.kind))
        object.__setattr__(self, "points", dict(self.points))


@dataclass(frozen=True)
class PointRef:
    component: str
    point: str


@dataclass(frozen=True)
class Node:
    """A double point z_t of the base; ``datum`` is None for a split node."""

    a: PointRef
    b: PointRef
    r: int = 0
    datum: DoubleDegData | None = None
    split: bool = False


@dataclass(frozen=True)
class GlobalMarked:
    at: PointRef
    r: int
    datum: SimpleDegData | None = None


@dataclass(frozen=True)
class Critical:
    at: PointRef
    datum: SimpleDegData | None = None


@dataclass(frozen=True)
class GlobalDegData:
    components: dict[str, Component]
    nodes: dict[str, Node] = field(default_factory=dict)
    marked: dict[str, GlobalMarked] = field(default_factory=dict)
    critical: dict[str, Critical] = field(default_factory=dict)
    r: int = 0

    def __post_init__(self):
        for name in ("components", "nodes", "marked", "critical"):
            object.__setattr__(self, name, dict(getattr(self, name)))

    def label(self, ref: PointRef) -> PointLabel:
        return self.components[ref.component].points[ref.point]

    def branch_count(self) -> int:
        return sum(n.r for n in self.nodes.values()) + sum(x.r for x in self.marked.values())

    def base_betti(self) -> int:
        comps = set(self.components)
        parent = {c: c for c in comps}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for n in self.nodes.values():
            parent[find(n.a.component)] = find(n.b.component)
        ncc = len({find(c) for c in comps})
        return len(self.nodes) - len(comps) + ncc

    def base_genus(self) -> int:
        return sum(c.genus for c in self.components.values()) + self.base_betti()


# -- canonical encoding --

def encode_place(z: Place | None):
    if z is None:
        return None
    if z.is_infinity:
        return "inf"
    return [list(z.poly), z.index]


def encode_element(a) -> list[int]:
    return a.coords()


def encode_rep(T: TorsorRep | None):
    if T is None:
        return None
    return [
        T.kind.value,
        [encode_element(a) for a in T.rep.num.elements()],
        [encode_element(a) for a in T.rep.den.elements()],
    ]


def _dumps(x) -> str:
    return json.dumps(x, separators=(",", ":"), sort_keys=True)


def _point(pl: PointLabel):
    return [pl.m, pl.h, encode_place(pl.location)]


def _vertex_label(v: Vertex, extra=None):
    marked = sorted(_dumps([x.m, x.h, x.r, encode_place(x.location)]) for x in v.marked)
    return [v.kind.value, v.delta, v.genus, marked, encode_rep(v.rep), extra]


def _subtree(tree: Tree, vid: str, parent: str | None, flags: dict) -> str:
    children = []
    for e in tree.incident(vid):
        w = e.other(vid)
        if w == parent:
            continue
        edge = [e.e, _point(e.side(vid)), _point(e.side(w))]
        children.append(_dumps([edge, _subtree(tree, w, vid, flags)]))
    children.sort()
    return _dumps([_vertex_label(tree.vertices[vid], flags.get(vid)), children])


def _boundary(b: Boundary):
    return [_point(b.point), b.e, b.delta]


def _btype(t: BoundaryType):
    return [t.kind.value, t.m, t.h]


def canonical_form(d: LocalData) -> str:
    """Rooted-tree canonical form (AHU style) as a JSON string."""
    if isinstance(d, SimpleDegData):
        d.tree.check_structure([d.origin.vertex])
        body = _subtree(d.tree, d.origin.vertex, None, {})
        return _dumps(["simple", d.species, d.r, _btype(d.boundary_type), _boundary(d.origin), body])
    if isinstance(d, DoubleDegData):
        e1, e2 = d.ends
        d.tree.check_structure([e1.vertex, e2.vertex])
        flags = {e2.vertex: ["end2", _boundary(e2)]}
        body = _subtree(d.tree, e1.vertex, None, flags)
        return _dumps(
            ["double", d.species, d.r, [_btype(t) for t in d.boundary_types], _boundary(e1), body]
        )
    raise TypeError(f"cannot encode {type(d).__name__}")


def canonical_encode(d: LocalData) -> bytes:
    return canonical_form(d).encode()


def _root(d: LocalData) -> str:
    return d.origin.vertex if isinstance(d, SimpleDegData) else d.ends[0].vertex


def _flags(d: LocalData) -> dict:
    if isinstance(d, DoubleDegData):
        return {d.ends[1].vertex: ["end2", _boundary(d.ends[1])]}
    return {}


def type_signature(d: LocalData):
    if isinstance(d, SimpleDegData):
        return ("simple", d.species, d.r, d.boundary_type)
    return ("double", d.species, d.r, tuple(d.boundary_types))


def is_isomorphic(d1: LocalData, d2: LocalData, witness: bool = False):
    """Isomorphism test through canonical forms.

    With ``witness=True`` returns the vertex bijection (or None) instead of a bool.
    """
    if type_signature(d1) != type_signature(d2):
        raise TypeError("data of different species or type are never compared")
    same = canonical_form(d1) == canonical_form(d2)
    if not witness:
        return same
    if not same:
        return None
    f1, f2 = _flags(d1), _flags(d2)
    mapping: dict[str, str] = {}

    def match(a: str, pa, b: str, pb):
        mapping[a] = b
        kids1 = [(e, e.other(a)) for e in d1.tree.incident(a) if e.other(a) != pa]
        kids2 = [(e, e.other(b)) for e in d2.tree.incident(b) if e.other(b) != pb]

        def key(tree, flags, v, e, w):
            edge = [e.e, _point(e.side(v)), _point(e.side(w))]
            return _dumps([edge, _subtree(tree, w, v, flags)])

        pool = [(key(d2.tree, f2, b, e, w), w) for e, w in kids2]
        for e, w in kids1:
            k = key(d1.tree, f1, a, e, w)
            j = next(i for i, (k2, _) in enumerate(pool) if k2 == k)
            _, w2 = pool.pop(j)
            match(w, a, w2, b)

    match(_root(d1), None, _root(d2), None)
    return mapping


def relabel(d: LocalData, mapping: dict[str, str]) -> LocalData:
    """Rename vertex ids (mapping must be a bijection onto new names)."""
    t = d.tree
    verts = {mapping[k]: v for k, v in t.vertices.items()}
    edges = tuple(replace(e, u=mapping[e.u], v=mapping[e.v]) for e in t.edges)
    tree = Tree(verts, edges)
    if isinstance(d, SimpleDegData):
        return replace(d, tree=tree, origin=replace(d.origin, vertex=mapping[d.origin.vertex]))
    return replace(d, tree=tree, ends=tuple(replace(b, vertex=mapping[b.vertex]) for b in d.ends))


def global_form(g: GlobalDegData) -> str:
    """Deterministic encoding of a global datum (component ids are fixed by the base)."""

    def ref(x: PointRef):
        c = g.components[x.component]
        pl = c.points.get(x.point)
        return [x.component, encode_place(pl.location) if pl else None, x.point if pl is None or pl.location is None else None]

    comps = []
    for cid in sorted(g.components):
        c = g.components[cid]
        pts = sorted(
            _dumps([encode_place(pl.location) if pl.location is not None else name, pl.m, pl.h])
            for name, pl in c.points.items()
        )
        comps.append([cid, c.genus, c.kind.value, c.delta, c.generic, encode_rep(c.rep), pts])
    nodes = sorted(
        _dumps([ref(n.a), ref(n.b), n.r, n.split, canonical_form(n.datum) if n.datum else None])
        for n in g.nodes.values()
    )
    marked = sorted(
        _dumps([ref(x.at), x.r, canonical_form(x.datum) if x.datum else None]) for x in g.marked.values()
    )
    crit = sorted(
        _dumps([ref(x.at), canonical_form(x.datum) if x.datum else None]) for x in g.critical.values()
    )
    return _dumps(["global", g.r, comps, nodes, marked, crit])


def encode(d) -> bytes:
    if isinstance(d, GlobalDegData):
        return global_form(d).encode()
    return canonical_encode(d)
