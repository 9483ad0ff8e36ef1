"""Residue-field Galois action, extraction from covers, and bounded enumeration."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field, replace

from .arith import GaloisElement, Place, PrimeContext, RationalFunction
from .degdata import (
    NONSPLIT,
    SPECIES,
    SPLIT,
    Boundary,
    Component,
    Critical,
    DoubleDegData,
    Edge,
    GlobalDegData,
    GlobalMarked,
    MarkedPoint,
    Node,
    PointLabel,
    PointRef,
    SimpleDegData,
    Tree,
    Vertex,
    canonical_form,
    encode,
)
from .fields import field as gf
from .poly import FF, Poly
from .torsor import (
    BoundaryType,
    GroupKind,
    conductor_residue_at,
    critical_places,
    TorsorRep,
    galois_apply,
    singular_places,
)
from .validate import _kind_shape, check_double, check_simple, kind_from_delta

ET, MU, AL, SP = GroupKind.ETALE, GroupKind.MULT, GroupKind.ADD, GroupKind.SPLIT


# -- the action --

def _loc(sigma, z):
    return None if z is None else sigma(z)


def _label(sigma, pl):
    return replace(pl, location=_loc(sigma, pl.location))


def _vertex(sigma, v: Vertex) -> Vertex:
    return replace(
        v,
        marked=tuple(replace(x, location=_loc(sigma, x.location)) for x in v.marked),
        rep=None if v.rep is None else galois_apply(sigma, v.rep),
    )


def _local(sigma, d):
    t = d.tree
    tree = Tree(
        {k: _vertex(sigma, v) for k, v in t.vertices.items()},
        [replace(e, at_u=_label(sigma, e.at_u), at_v=_label(sigma, e.at_v)) for e in t.edges],
    )
    if isinstance(d, SimpleDegData):
        return replace(d, tree=tree, origin=replace(d.origin, point=_label(sigma, d.origin.point)))
    return replace(d, tree=tree, ends=tuple(replace(b, point=_label(sigma, b.point)) for b in d.ends))


def act(sigma: GaloisElement, d):
    """Transport every coefficient and place by sigma; numeric labels are untouched."""
    if sigma.p_power == 0:
        return d
    if isinstance(d, (SimpleDegData, DoubleDegData)):
        return _local(sigma, d)
    if not isinstance(d, GlobalDegData):
        raise TypeError(f"cannot act on {type(d).__name__}")
    comps = {
        cid: replace(
            c,
            points={k: _label(sigma, pl) for k, pl in c.points.items()},
            rep=None if c.rep is None else galois_apply(sigma, c.rep),
        )
        for cid, c in d.components.items()
    }

    def sub(x):
        return x if x is None else _local(sigma, x)

    return replace(
        d,
        components=comps,
        nodes={k: replace(n, datum=sub(n.datum)) for k, n in d.nodes.items()},
        marked={k: replace(x, datum=sub(x.datum)) for k, x in d.marked.items()},
        critical={k: replace(x, datum=sub(x.datum)) for k, x in d.critical.items()},
    )


def _degrees(d):
    """Field degrees (over F_p) of every coefficient and place occurring in d."""
    out = {1}

    def place(z):
        if z is not None and not z.is_infinity:
            out.add(z.degree)

    def rep(T):
        if T is not None:
            out.add(T.rep.coefficient_degree())
            for z in T.punctures:
                place(z)

    def local(x):
        if x is None:
            return
        for v in x.tree.vertices.values():
            rep(v.rep)
            for y in v.marked:
                place(y.location)
        for e in x.tree.edges:
            place(e.at_u.location)
            place(e.at_v.location)
        for b in x.boundaries:
            place(b.point.location)

    if isinstance(d, GlobalDegData):
        for c in d.components.values():
            rep(c.rep)
            for pl in c.points.values():
                place(pl.location)
        for group in (d.nodes, d.marked, d.critical):
            for x in group.values():
                local(x.datum)
    else:
        local(d)
    return out


def orbit_bound(d) -> int:
    return math.lcm(*_degrees(d))


def orbit(sigma: GaloisElement, d) -> list[bytes]:
    """Encodings of d, sigma d, sigma^2 d, ... up to the first repetition."""
    start = encode(d)
    out = [start]
    cur = d
    for _ in range(orbit_bound(d)):
        cur = act(sigma, cur)
        enc = encode(cur)
        if enc == start:
            return out
        out.append(enc)
    raise RuntimeError("orbit did not close within the definition-field bound")


# -- covers and extraction --

@dataclass(frozen=True)
class CoverDescription:
    """A degree-p cover of a tree of projective lines, by explicit representatives.

    ``components`` maps a name to a TorsorRep (or None for the trivial torsor);
    ``nodes`` maps a name to ((component, place), (component, place));
    ``marked`` maps a name to (component, place).
    """

    p: int
    components: dict = field(default_factory=dict)
    nodes: dict = field(default_factory=dict)
    marked: dict = field(default_factory=dict)


def galois_cover(sigma: GaloisElement, cover: CoverDescription) -> CoverDescription:
    return CoverDescription(
        cover.p,
        {k: None if T is None else galois_apply(sigma, T) for k, T in cover.components.items()},
        {k: ((a, sigma(z)), (b, w and sigma(w))) for k, ((a, z), (b, w)) in cover.nodes.items()},
        {k: (c, sigma(z)) for k, (c, z) in cover.marked.items()},
    )


class InadmissibleCover(ValueError):
    pass


def extract_degdata(ctx: PrimeContext, cover: CoverDescription) -> GlobalDegData:
    """Residue-field skeleton of the degeneration data of a cover; local data are left as stubs."""
    special: dict[str, dict[str, Place]] = {c: {} for c in cover.components}
    for nid, ((a, z), (b, w)) in cover.nodes.items():
        special[a][f"{nid}.a"] = z
        special[b][f"{nid}.b"] = w
    for mid, (c, z) in cover.marked.items():
        special[c][mid] = z
    comps = {}
    critical = {}
    for cid, T in cover.components.items():
        named = special[cid]
        if len(set(named.values())) != len(named):
            raise InadmissibleCover(f"components.{cid}: two special points coincide")
        if T is None:
            pts = {k: PointLabel(0, 0, z) for k, z in named.items()}
            comps[cid] = Component(0, SP, None, pts)
            continue
        zeros = {z for z, _ in critical_places(T)}
        for z in singular_places(T):
            if z not in named.values() and z not in zeros:
                raise InadmissibleCover(f"components.{cid}: torsor is singular at {z!r}")
        pts = {}
        for k, z in named.items():
            m, h = conductor_residue_at(T, z)
            pts[k] = PointLabel(m, h, z)
        extra = sorted(zeros - set(named.values()), key=Place.sort_key)
        for j, z in enumerate(extra):
            m, h = conductor_residue_at(T, z)
            pts[f"crit{j}"] = PointLabel(m, h, z)
            critical[f"{cid}.crit{j}"] = Critical(PointRef(cid, f"crit{j}"))
        delta = {ET: 0, MU: ctx.vKp}.get(T.kind)
        comps[cid] = Component(0, T.kind, delta, pts, rep=T)
    nodes = {}
    for nid, ((a, _), (b, _)) in cover.nodes.items():
        ra, rb = PointRef(a, f"{nid}.a"), PointRef(b, f"{nid}.b")
        la, lb = comps[a].points[ra.point], comps[b].points[rb.point]
        split = all(
            c.kind is SP or (not c.kind.is_radicial and (pl.m, pl.h) == (0, 0))
            for c, pl in ((comps[a], la), (comps[b], lb))
        )
        nodes[nid] = Node(ra, rb, 0, None, split)
    marked = {}
    for mid, (c, _) in cover.marked.items():
        pl = comps[c].points[mid]
        r = 1 if comps[c].kind is SP else pl.m + 1
        marked[mid] = GlobalMarked(PointRef(c, mid), r)
    g = GlobalDegData(comps, nodes, marked, critical)
    return replace(g, r=g.branch_count())


def equivariance_check(ctx: PrimeContext, sigma: GaloisElement, cover: CoverDescription) -> bool:
    left = extract_degdata(ctx, galois_cover(sigma, cover))
    right = act(sigma, extract_degdata(ctx, cover))
    return encode(left) == encode(right)


def numeric_profile(g: GlobalDegData):
    """Everything sigma must fix: kinds, deltas, (m, h) labels, branch counts."""
    comps = sorted(
        (cid, c.kind.value, c.delta, c.genus, tuple(sorted((k, pl.m, pl.h) for k, pl in c.points.items())))
        for cid, c in g.components.items()
    )
    nodes = sorted((k, n.r, n.split) for k, n in g.nodes.items())
    marked = sorted((k, x.r) for k, x in g.marked.items())
    return g.r, comps, nodes, marked, len(g.critical)


def random_cover(p: int, rng: random.Random, degree: int = 2, max_punctures: int = 4) -> CoverDescription:
    """A random cover of one or two projective lines over F_{p^degree}."""
    F = gf(p, degree)
    t = RationalFunction.t(p)

    def rand_elt(nonzero=False):
        while True:
            a = FF(F, rng.randrange(F.order))
            if a or not nonzero:
                return a

    def component():
        n = rng.randint(1, max_punctures - 1)
        pts = []
        while len(pts) < n:
            a = rand_elt()
            if a not in pts:
                pts.append(a)
        kind = rng.choice([ET, MU, AL, None])
        if kind is None:
            return None, pts
        if kind is MU:
            f = RationalFunction.const(rand_elt(True))
            for a in pts:
                f = f * (t - RationalFunction.const(a)) ** rng.randint(1, p - 1)
        else:
            f = RationalFunction(Poly(F, [0]))
            for a in pts:
                k = rng.choice([k for k in range(1, 2 * p + 1) if k % p])
                f = f + RationalFunction.const(rand_elt(True)) / (t - RationalFunction.const(a)) ** k
            if rng.random() < 0.5:
                k = rng.choice([k for k in range(1, p + 2) if k % p])
                f = f + RationalFunction.const(rand_elt(True)) * t**k
        places = [Place.at(a, p) for a in pts] + [Place.infinity(p)]
        T = TorsorRep(kind, f, places)
        try:
            critical_places(T)
            singular_places(T)
        except OverflowError:
            # a zero of omega generates a residue field beyond the table limit
            return component()
        return T, pts

    comps, marked, nodes = {}, {}, {}
    ncomp = rng.choice([1, 2])
    places_of = {}
    for i in range(ncomp):
        T, pts = component()
        name = f"X{i + 1}"
        comps[name] = T
        places_of[name] = (
            T.punctures if T is not None else [Place.at(a, p) for a in pts] + [Place.infinity(p)]
        )
    if ncomp == 2:
        nodes["n1"] = (("X1", Place.infinity(p)), ("X2", Place.infinity(p)))
    for name, places in places_of.items():
        for z in places:
            if ncomp == 2 and z.is_infinity:
                continue
            marked[f"{name}.{len(marked)}"] = (name, z)
    return CoverDescription(p, comps, nodes, marked)


# -- bounded enumeration --

def rooted_shapes(n: int):
    """Parent arrays of rooted trees on n vertices (vertex 0 is the root), with repeats."""
    if n <= 0:
        return
    yield from itertools.product(*[range(i) for i in range(1, n)])


def _labels(ctx: PrimeContext, M: int, allow_h_nonzero_m=False):
    p = ctx.p
    for m in range(-M, M + 1):
        if m and m % p == 0:
            continue
        for h in range(p) if m == 0 else (0,):
            yield m, h


def _marked_options(ctx: PrimeContext, M: int, species: str, max_marked: int):
    p = ctx.p
    if species == NONSPLIT:
        base = [(m, h, m + 1) for m, h in _labels(ctx, M) if m >= 0]
    else:
        base = [(m, h, 1) for m, h in _labels(ctx, M)]
    out = []
    for k in range(max_marked + 1):
        for combo in itertools.combinations_with_replacement(base, k):
            out.append(tuple(MarkedPoint(m, h, r) for m, h, r in combo))
    return out


def _vertex_options(ctx: PrimeContext, delta_in: int | None, incoming, marked_opts):
    """(kind, delta, marked) choices for a vertex whose different is forced to delta_in."""
    if delta_in is None:
        # below a split vertex the different is unconstrained
        candidates = range(0, ctx.vKp + 1, ctx.p - 1)
    elif 0 <= delta_in <= ctx.vKp and delta_in % (ctx.p - 1) == 0:
        candidates = (delta_in,)
    else:
        candidates = ()
    for delta in candidates:
        kind = kind_from_delta(ctx, delta)
        for mk in marked_opts:
            yield kind, delta, mk
    if incoming == (0, 0):
        yield SP, None, ()


def _boundary_options(ctx: PrimeContext, M: int, T: int):
    p = ctx.p
    for kind in (ET, MU, AL):
        for m, h in _labels(ctx, M):
            if h and kind is not MU:
                continue
            bt = BoundaryType(kind, m, h)
            for delta in range(0, ctx.vKp + 1, p - 1):
                if kind_from_delta(ctx, delta) is not kind:
                    continue
                for t in range(1, T + 1):
                    yield bt, delta, t


def _grow(ctx, n, parents, M, T, marked_opts, roots, species=NONSPLIT, extra=None):
    """Fill vertex labels and edges top-down; ``roots`` lists (vertex, delta_in, incoming label)."""
    p = ctx.p
    children = {i: [j for j in range(1, n) if parents[j - 1] == i] for i in range(n)}

    def rec(i, chosen, edges, pending):
        # pending: vertex -> (delta_in, incoming (m, h) on its own side)
        if i == n:
            yield dict(chosen), list(edges)
            return
        delta_in, inc = pending[i]
        for kind, delta, mk in _vertex_options(ctx, delta_in, inc, marked_opts):
            if species == SPLIT and mk and kind is not MU:
                continue
            kids = children[i]
            choices = list(itertools.product(range(1, T + 1), list(_labels(ctx, M))))
            for picks in itertools.product(choices, repeat=len(kids)):
                # prune on the vertex's own admissibility shape (a necessary condition)
                labels = [PointLabel(*inc)] + [PointLabel(x.m, x.h) for x in mk]
                labels += [PointLabel(-m, (-h) % p) for _, (m, h) in picks]
                if extra and i in extra:
                    labels.append(extra[i])
                    if kind is SP and (extra[i].m, extra[i].h) != (0, 0):
                        continue
                if _kind_shape(p, kind, labels):
                    continue
                new_pending = dict(pending)
                new_edges = list(edges)
                for j, (t, (m, h)) in zip(kids, picks):
                    # child-side label (m, h); parent side (-m, -h)
                    d_child = None if delta is None else delta - t * m * (p - 1)
                    new_pending[j] = (d_child, (m, h))
                    new_edges.append(
                        Edge(f"X{i + 1}", f"X{j + 1}", p * t, PointLabel(-m, (-h) % p), PointLabel(m, h))
                    )
                chosen[i] = Vertex(kind, delta, 0, mk)
                yield from rec(i + 1, chosen, new_edges, new_pending)
            chosen.pop(i, None)

    yield from rec(0, {}, [], {0: roots})


def enum_simple(ctx: PrimeContext, vertices: int, max_m: int, max_t: int, max_marked: int = 2,
                species=SPECIES) -> list[SimpleDegData]:
    """All valid simple data with at most ``vertices`` vertices, |m| <= max_m, t <= max_t, up to isomorphism."""
    if vertices < 1 or max_m < 0 or max_t < 1:
        return []
    p = ctx.p
    found: dict[str, SimpleDegData] = {}
    for sp in species:
        marked_opts = _marked_options(ctx, max_m, sp, max_marked)
        for bt, delta_b, t0 in _boundary_options(ctx, max_m, max_t):
            inc = (-bt.m, (-bt.h) % p)
            delta_in = delta_b - t0 * inc[0] * (p - 1)
            for n in range(1, vertices + 1):
                for parents in rooted_shapes(n):
                    for verts, edges in _grow(ctx, n, parents, max_m, max_t, marked_opts, (delta_in, inc), sp):
                        r = sum(x.r for v in verts.values() for x in v.marked)
                        d = SimpleDegData(
                            sp, r, bt,
                            Tree({f"X{i + 1}": v for i, v in verts.items()}, edges),
                            Boundary("X1", PointLabel(*inc), p * t0, delta_b),
                        )
                        key = canonical_form(d)
                        if key in found:
                            continue
                        if check_simple(ctx, d).ok:
                            found[key] = d
    return [found[k] for k in sorted(found)]


def enum_double(ctx: PrimeContext, vertices: int, max_m: int, max_t: int, max_marked: int = 1,
                species=SPECIES) -> list[DoubleDegData]:
    """Double data: as enum_simple, with a second boundary placed on any vertex."""
    if vertices < 1 or max_m < 0 or max_t < 1:
        return []
    p = ctx.p
    found: dict[str, DoubleDegData] = {}
    bopts = list(_boundary_options(ctx, max_m, max_t))
    for sp in species:
        marked_opts = _marked_options(ctx, max_m, sp, max_marked)
        for bt1, delta_1, t1 in bopts:
            inc = (-bt1.m, (-bt1.h) % p)
            delta_in = delta_1 - t1 * inc[0] * (p - 1)
            for bt2, delta_2, t2 in bopts:
                pt2 = PointLabel(-bt2.m, (-bt2.h) % p)
                for n in range(1, vertices + 1):
                    for parents in rooted_shapes(n):
                        for j in range(n):
                            grown = _grow(ctx, n, parents, max_m, max_t, marked_opts, (delta_in, inc), sp,
                                          {j: pt2})
                            for verts, edges in grown:
                                v = verts[j]
                                if v.kind is not SP and delta_2 - v.delta != t2 * pt2.m * (p - 1):
                                    continue
                                r = sum(x.r for w in verts.values() for x in w.marked)
                                d = DoubleDegData(
                                    sp, r, (bt1, bt2),
                                    Tree({f"X{i + 1}": w for i, w in verts.items()}, edges),
                                    (
                                        Boundary("X1", PointLabel(*inc), p * t1, delta_1),
                                        Boundary(f"X{j + 1}", pt2, p * t2, delta_2),
                                    ),
                                )
                                key = canonical_form(d)
                                if key in found:
                                    continue
                                if check_double(ctx, d).ok:
                                    found[key] = d
    return [found[k] for k in sorted(found)]
