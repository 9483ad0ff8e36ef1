"""Special fibre upstairs: realize local and global degeneration data as nodal curves."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import networkx as nx

from .arith import PrimeContext
from .degdata import DoubleDegData, GlobalDegData, PointLabel, SimpleDegData
from .torsor import GroupKind
from .validate import check_double, check_global, check_simple, genus_double, genus_simple


class RealizationError(ValueError):
    """Raised when a datum cannot be assembled; ``location`` names the offending field."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


@dataclass(frozen=True)
class FiberComponent:
    id: str
    genus: int
    provenance: str


@dataclass
class CurveFragment:
    components: list[FiberComponent] = field(default_factory=list)
    edges: list[tuple[str, str]] = field(default_factory=list)
    boundaries: list[list[str]] = field(default_factory=list)

    def graph(self) -> nx.MultiGraph:
        G = nx.MultiGraph()
        G.add_nodes_from(c.id for c in self.components)
        G.add_edges_from(self.edges)
        return G

    @property
    def b1(self) -> int:
        G = self.graph()
        return G.number_of_edges() - G.number_of_nodes() + nx.number_connected_components(G)

    @property
    def total_genus(self) -> int:
        return sum(c.genus for c in self.components) + self.b1

    def genera(self) -> dict[str, int]:
        return {c.id: c.genus for c in self.components}


@dataclass
class SpecialFiber(CurveFragment):
    """A realized global datum; same shape as a fragment, without boundaries."""

    def connected_parts(self) -> list["SpecialFiber"]:
        G = self.graph()
        out = []
        for nodes in sorted(nx.connected_components(G), key=lambda s: sorted(s)):
            comps = [c for c in self.components if c.id in nodes]
            edges = [e for e in self.edges if e[0] in nodes]
            out.append(SpecialFiber(comps, edges))
        return out


# -- single components --

def etale_cover_genus(ctx: PrimeContext, genus: int, conductors) -> int:
    """Riemann-Hurwitz for a connected etale-kind cyclic cover of degree p."""
    p = ctx.p
    two_g = p * (2 * genus - 2) + sum((m + 1) * (p - 1) for m in conductors if m > 0) + 2
    if two_g < 0 or two_g % 2:
        raise RealizationError(f"Riemann-Hurwitz gives 2g = {two_g}")
    return two_g // 2


def preimage_count(ctx: PrimeContext, kind: GroupKind, label: PointLabel) -> int:
    if kind is GroupKind.SPLIT:
        return ctx.p
    if not kind.is_radicial and label.m == 0 and label.h == 0:
        return ctx.p
    return 1


def realize_vertex(ctx: PrimeContext, kind: GroupKind, genus: int, labels, name: str = "V",
                   provenance: str = ""):
    """Cover of one component.

    Returns (components, attach) where ``attach(label)`` lists, for each
    preimage of a special point, the upstairs component it lies on.
    """
    kind = GroupKind(kind)
    prov = provenance or name
    if kind is GroupKind.SPLIT:
        comps = [FiberComponent(f"{name}#{k}", genus, prov) for k in range(ctx.p)]
        ids = [c.id for c in comps]
        return comps, lambda label: list(ids)
    if kind is GroupKind.ETALE:
        g = etale_cover_genus(ctx, genus, [x.m for x in labels])
    else:
        g = genus
    comp = FiberComponent(name, g, prov)
    return [comp], lambda label: [name] * preimage_count(ctx, kind, label)


def _glue(frag: CurveFragment, left: list[str], right: list[str], location: str) -> None:
    if len(left) != len(right):
        raise RealizationError(
            f"{len(left)} points above one side but {len(right)} above the other", location
        )
    frag.edges.extend(zip(left, right))


def _realize_local(ctx: PrimeContext, d, prefix: str = "") -> CurveFragment:
    frag = CurveFragment()
    attach = {}
    tree = d.tree
    labels = {vid: [x for x in v.marked] for vid, v in tree.vertices.items()}
    for e in tree.edges:
        labels[e.u].append(e.at_u)
        labels[e.v].append(e.at_v)
    for b in d.boundaries:
        labels[b.vertex].append(b.point)
    for vid, v in sorted(tree.vertices.items()):
        try:
            comps, att = realize_vertex(ctx, v.kind, v.genus, labels[vid], prefix + vid,
                                        f"{prefix}vertices.{vid}")
        except RealizationError as exc:
            raise RealizationError(str(exc), f"{prefix}vertices.{vid}") from None
        frag.components.extend(comps)
        attach[vid] = att
    for k, e in enumerate(tree.edges):
        _glue(frag, attach[e.u](e.at_u), attach[e.v](e.at_v), f"{prefix}edges[{k}]")
    for b in d.boundaries:
        frag.boundaries.append(attach[b.vertex](b.point))
    return frag


def realize_simple(ctx: PrimeContext, d: SimpleDegData, validate: bool = True, prefix: str = "") -> CurveFragment:
    if validate:
        rep = check_simple(ctx, d)
        if not rep.ok:
            raise RealizationError(f"datum fails {', '.join(rep.failed())}", prefix.rstrip("/"))
    return _realize_local(ctx, d, prefix)


def realize_double(ctx: PrimeContext, d: DoubleDegData, validate: bool = True, prefix: str = "") -> CurveFragment:
    if validate:
        rep = check_double(ctx, d)
        if not rep.ok:
            raise RealizationError(f"datum fails {', '.join(rep.failed())}", prefix.rstrip("/"))
    return _realize_local(ctx, d, prefix)


def closed_form_genus(ctx: PrimeContext, d) -> int:
    if isinstance(d, SimpleDegData):
        return genus_simple(ctx, d.r, d.boundary_type.m)
    t1, t2 = d.boundary_types
    return genus_double(ctx, d.r, t1.m, t2.m)


def local_ledger(ctx: PrimeContext, d) -> tuple[int, int | Fraction]:
    """(closed-form genus, realized genus) for a local datum.

    The realized side is Euler-characteristic bookkeeping on the fragment:
    sum of genera + |E| - |V| + 1, plus (k-1)/2 for each boundary with k points
    above it.  For a connected fragment with unsplit boundaries this is the
    usual sum of genera + b1.  A split boundary closes its p-1 cycles only after
    gluing, and the closed form books half of them on each side.
    """
    frag = _realize_local(ctx, d)
    shared = sum(len(b) - 1 for b in frag.boundaries)
    euler = sum(c.genus for c in frag.components) + len(frag.edges) - len(frag.components) + 1
    realized = euler + Fraction(shared, 2)
    return closed_form_genus(ctx, d), int(realized) if realized.denominator == 1 else realized


# -- global data --

def _realize_global(ctx: PrimeContext, g: GlobalDegData) -> SpecialFiber:
    fib = SpecialFiber()
    attach = {}
    for cid, comp in sorted(g.components.items()):
        try:
            comps, att = realize_vertex(ctx, comp.kind, comp.genus, list(comp.points.values()), cid,
                                        f"components.{cid}")
        except RealizationError as exc:
            raise RealizationError(str(exc), f"components.{cid}") from None
        fib.components.extend(comps)
        attach[cid] = att

    def above(ref):
        return attach[ref.component](g.label(ref))

    def graft(frag: CurveFragment, k: int, ref, loc: str):
        fib.components.extend(frag.components)
        fib.edges.extend(frag.edges)
        _glue(fib, above(ref), frag.boundaries[k], loc)

    for nid, n in sorted(g.nodes.items()):
        loc = f"nodes.{nid}"
        if n.datum is None:
            if not n.split:
                raise RealizationError("non-split node without a datum", loc)
            _glue(fib, above(n.a), above(n.b), loc)
            continue
        frag = _realize_local(ctx, n.datum, f"{nid}/")
        graft(frag, 0, n.a, loc + ".a")
        _glue(fib, above(n.b), frag.boundaries[1], loc + ".b")
    for group, items in (("marked", g.marked), ("critical", g.critical)):
        for xid, x in sorted(items.items()):
            loc = f"{group}.{xid}"
            if x.datum is None:
                raise RealizationError("missing local datum", loc)
            frag = _realize_local(ctx, x.datum, f"{xid}/")
            graft(frag, 0, x.at, loc)
    return fib


def realize_global(ctx: PrimeContext, g: GlobalDegData, validate: bool = True) -> SpecialFiber:
    if validate:
        rep = check_global(ctx, g)
        if not rep.ok:
            raise RealizationError(f"datum fails {', '.join(rep.failed())}")
    return _realize_global(ctx, g)


class Conservation(NamedTuple):
    expected: int
    realized: int
    ok: bool
    diagnostics: tuple[str, ...] = ()


def generic_genus(ctx: PrimeContext, g_X: int, r: int) -> int:
    """Genus of a connected degree-p cyclic cover: 2g_Y - 2 = p(2g_X - 2) + r(p - 1)."""
    two = ctx.p * (2 * g_X - 2) + r * (ctx.p - 1) + 2
    if two % 2:
        raise ValueError(f"2g_Y = {two} is odd")
    return two // 2


def conservation_check(ctx: PrimeContext, g: GlobalDegData) -> Conservation:
    """Compare the realized arithmetic genus with the generic-fibre genus.

    Works on unvalidated data; local data whose realized genus disagrees with
    the closed form of their type are listed in ``diagnostics``.
    """
    diags = []
    for group, items in (("nodes", g.nodes), ("marked", g.marked), ("critical", g.critical)):
        for xid, x in sorted(items.items()):
            if x.datum is None:
                continue
            try:
                closed, realized = local_ledger(ctx, x.datum)
            except (RealizationError, ValueError) as exc:
                diags.append(f"{group}.{xid}.datum: {exc}")
                continue
            if closed != realized:
                diags.append(
                    f"{group}.{xid}.datum: realized genus {realized} != closed form {closed} of its type"
                )
    G = nx.MultiGraph()
    G.add_nodes_from(g.components)
    G.add_edges_from((n.a.component, n.b.component) for n in g.nodes.values())
    if nx.number_connected_components(G) != 1:
        raise ValueError("conservation is defined for a connected base curve")
    g_X = g.base_genus()
    r = g.branch_count()
    try:
        fib = _realize_global(ctx, g)
    except RealizationError as exc:
        diags.append(str(exc))
        return Conservation(generic_genus(ctx, g_X, r), -1, False, tuple(diags))
    parts = fib.connected_parts()
    realized = fib.total_genus
    if len(parts) == 1:
        expected = generic_genus(ctx, g_X, r)
    elif len(parts) == ctx.p and r == 0:
        # p disjoint sheets, each isomorphic to the base
        expected = ctx.p * g_X
        for k, part in enumerate(parts):
            if part.total_genus != g_X:
                diags.append(f"sheet {k}: genus {part.total_genus} != base genus {g_X}")
    else:
        expected = generic_genus(ctx, g_X, r)
        diags.append(f"cover has {len(parts)} connected parts")
    ok = expected == realized and not diags
    if expected != realized:
        diags.append(f"realized genus {realized} != expected {expected}")
    return Conservation(expected, realized, ok, tuple(diags))
