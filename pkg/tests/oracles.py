"""Independent oracles used by the test suite.

Nothing here calls the enumeration, canonical-form or genus code of the
package; only the final validity verdict (check_simple) is shared, and it is
applied after an independent pre-filter.
"""

from __future__ import annotations

import itertools
import random
from collections import defaultdict

from degen.degdata import (
    NONSPLIT,
    SPLIT,
    Boundary,
    Edge,
    MarkedPoint,
    PointLabel,
    SimpleDegData,
    Tree,
    Vertex,
)
from degen.torsor import BoundaryType, GroupKind
from degen.validate import check_simple

ET, MU, AL, SP = GroupKind.ETALE, GroupKind.MULT, GroupKind.ADD, GroupKind.SPLIT


# -- labeled trees --

def prufer_decode(seq, n):
    """Edges of the labeled tree on 0..n-1 with Prufer sequence ``seq``."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    edges.append((u, v))
    return edges


def labeled_trees(n):
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield prufer_decode(seq, n)


def orient_from(root, edges):
    """Parent -> child pairs, breadth first from root."""
    adj = defaultdict(list)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    out, seen, queue = [], {root}, [root]
    while queue:
        x = queue.pop(0)
        for y in sorted(adj[x]):
            if y not in seen:
                seen.add(y)
                out.append((x, y))
                queue.append(y)
    return out


# -- per-vertex predicates, written from the axiom statements --

def oracle_kind(ctx, delta):
    if delta == 0:
        return ET
    if delta == ctx.vKp:
        return MU
    return AL


def vertex_plausible(ctx, kind, delta, labels):
    """Necessary conditions on one genus-0 vertex given every (m, h) at it."""
    p = ctx.p
    if kind is SP:
        return delta is None and all(lab == (0, 0) for lab in labels)
    if delta is None or not 0 <= delta <= ctx.vKp or delta % (p - 1):
        return False
    if oracle_kind(ctx, delta) is not kind:
        return False
    for m, h in labels:
        if m and m % p == 0:
            return False
        if h and not (kind is MU and m == 0):
            return False
    if kind is ET:
        return all(m >= 0 for m, _ in labels) and any(m > 0 for m, _ in labels)
    # radicial: sum of orders of omega is -2 on P^1
    if sum(-m - 1 for m, _ in labels) != -2:
        return False
    if kind is MU:
        return all(m <= 0 for m, _ in labels) and sum(h for _, h in labels) % p == 0
    return all(m != 0 for m, _ in labels)


def label_universe(p, M):
    return [(m, h) for m in range(-M, M + 1) for h in range(p)]


def marked_universe(p, M, species, max_marked):
    r_rule = (lambda m: m + 1) if species == NONSPLIT else (lambda m: 1)
    single = [(m, h, r) for m, h in label_universe(p, M) for r in range(0, M + 2) if r == r_rule(m) and r >= 1]
    out = []
    for k in range(max_marked + 1):
        out.extend(itertools.combinations_with_replacement(single, k))
    return out


def bruteforce_simple(ctx, V, M, T, max_marked=2):
    """Every valid labeled simple datum in the bound, one per labeling."""
    p = ctx.p
    labels = label_universe(p, M)
    deltas = list(range(0, ctx.vKp + 1))
    kinds = (ET, MU, AL)
    out = []
    for species in (NONSPLIT, SPLIT):
        marked = marked_universe(p, M, species, max_marked)
        for bkind, (bm, bh), delta_b, t0 in itertools.product(kinds, labels, deltas, range(1, T + 1)):
            bt = BoundaryType(bkind, bm, bh)
            if bt.problems(p) or oracle_kind(ctx, delta_b) is not bkind or delta_b % (p - 1):
                continue
            origin_label = (-bm, (-bh) % p)
            for n in range(1, V + 1):
                for tree in labeled_trees(n):
                    for root in range(n):
                        out.extend(_fill(ctx, species, bt, origin_label, delta_b, t0, n, tree, root,
                                         labels, marked, M, T))
    return out


def _fill(ctx, species, bt, origin_label, delta_b, t0, n, tree, root, labels, marked, M, T):
    p = ctx.p
    directed = orient_from(root, tree)
    # every edge gets (t, label on parent side, label on child side), antisymmetric
    edge_choices = []
    for _ in directed:
        edge_choices.append([(t, a, ((-a[0]), (-a[1]) % p)) for t in range(1, T + 1) for a in labels
                             if abs(a[0]) <= M])
    for picks in itertools.product(*edge_choices):
        at = defaultdict(list)
        at[root].append(origin_label)
        for (u, v), (t, a, b) in zip(directed, picks):
            at[u].append(a)
            at[v].append(b)
        # per-vertex options
        options = []
        for i in range(n):
            opts = []
            for kind in (ET, MU, AL, SP):
                for delta in ([None] if kind is SP else range(0, ctx.vKp + 1)):
                    for mk in marked:
                        if kind is SP and mk:
                            continue
                        if species == SPLIT and mk and kind is not MU:
                            continue
                        labs = at[i] + [(m, h) for m, h, _ in mk]
                        if vertex_plausible(ctx, kind, delta, labs):
                            opts.append((kind, delta, mk))
            if not opts:
                break
            options.append(opts)
        else:
            for choice in itertools.product(*options):
                if not _deltas_consistent(ctx, choice, directed, picks, root, delta_b, t0, origin_label):
                    continue
                d = _build(species, bt, origin_label, delta_b, t0, tree, directed, picks, choice, root, p)
                if check_simple(ctx, d).ok:
                    yield d


def _deltas_consistent(ctx, choice, directed, picks, root, delta_b, t0, origin_label):
    p = ctx.p
    kind_r, delta_r, _ = choice[root]
    if kind_r is not SP and delta_b - delta_r != t0 * origin_label[0] * (p - 1):
        return False
    # the conductor on the child side drives the drop in the different, as at the origin
    for (u, v), (t, _, b) in zip(directed, picks):
        du, dv = choice[u][1], choice[v][1]
        if du is None or dv is None:
            continue
        if du - dv != t * b[0] * (p - 1):
            return False
    return True


def _build(species, bt, origin_label, delta_b, t0, tree, directed, picks, choice, root, p):
    name = lambda i: f"N{i}"  # noqa: E731
    verts = {
        name(i): Vertex(kind, delta, 0, tuple(MarkedPoint(m, h, r) for m, h, r in mk))
        for i, (kind, delta, mk) in enumerate(choice)
    }
    edges = []
    for (u, v), (t, a, b) in zip(directed, picks):
        # store with the smaller index first so orientation varies against the root
        if u < v:
            edges.append(Edge(name(u), name(v), p * t, PointLabel(*a), PointLabel(*b)))
        else:
            edges.append(Edge(name(v), name(u), p * t, PointLabel(*b), PointLabel(*a)))
    r = sum(x.r for v in verts.values() for x in v.marked)
    return SimpleDegData(species, r, bt, Tree(verts, edges),
                         Boundary(name(root), PointLabel(*origin_label), p * t0, delta_b))


# -- isomorphism by brute force over vertex bijections --

def _vertex_sig(v):
    return (v.kind, v.delta, v.genus, tuple(sorted((x.m, x.h, x.r) for x in v.marked)), v.rep)


def _edge_set(tree, rename):
    return {
        frozenset([(rename[e.u], e.at_u.m, e.at_u.h), (rename[e.v], e.at_v.m, e.at_v.h), ("e", e.e)])
        for e in tree.edges
    }


def _ends(d):
    return tuple(d.ends) if hasattr(d, "ends") else (d.origin,)


def _types(d):
    return tuple(d.boundary_types) if hasattr(d, "ends") else (d.boundary_type,)


def brute_isomorphic(d1, d2):
    if type(d1) is not type(d2) or d1.species != d2.species or d1.r != d2.r:
        return False
    if _types(d1) != _types(d2):
        return False
    a, b = sorted(d1.tree.vertices), sorted(d2.tree.vertices)
    if len(a) != len(b) or len(d1.tree.edges) != len(d2.tree.edges):
        return False
    target = _edge_set(d2.tree, {x: x for x in b})
    for perm in itertools.permutations(b):
        rename = dict(zip(a, perm))
        if any(_vertex_sig(d1.tree.vertices[x]) != _vertex_sig(d2.tree.vertices[rename[x]]) for x in a):
            continue
        ok = True
        for e1, e2 in zip(_ends(d1), _ends(d2)):
            if (rename[e1.vertex], e1.point.m, e1.point.h, e1.e, e1.delta) != (
                e2.vertex, e2.point.m, e2.point.h, e2.e, e2.delta
            ):
                ok = False
                break
        if ok and _edge_set(d1.tree, rename) == target:
            return True
    return False


def _invariant(d):
    return (
        type(d).__name__, d.species, d.r, _types(d), len(d.tree.vertices),
        tuple(sorted(map(repr, (_vertex_sig(v) for v in d.tree.vertices.values())))),
        tuple(sorted((e.e, tuple(sorted([(e.at_u.m, e.at_u.h), (e.at_v.m, e.at_v.h)]))) for e in d.tree.edges)),
    )


def quotient(data):
    """Group data into isomorphism classes; returns a list of classes (lists)."""
    buckets = defaultdict(list)
    for d in data:
        buckets[_invariant(d)].append(d)
    classes = []
    for items in buckets.values():
        reps = []
        for d in items:
            for cls in reps:
                if brute_isomorphic(cls[0], d):
                    cls.append(d)
                    break
            else:
                reps.append([d])
        classes.extend(reps)
    return classes


# -- random local data (not necessarily valid) for isomorphism testing --

def random_local(rng: random.Random, n: int, p: int = 3, spread: int = 2):
    """A random simple datum on n vertices; small label ranges so collisions happen."""
    names = [f"V{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        j = rng.randrange(i)
        a = PointLabel(rng.randint(-spread, spread), 0)
        b = PointLabel(rng.randint(-spread, spread), 0)
        if rng.random() < 0.5:
            edges.append(Edge(names[j], names[i], p * rng.randint(1, 2), a, b))
        else:
            edges.append(Edge(names[i], names[j], p * rng.randint(1, 2), b, a))
    verts = {}
    for x in names:
        mk = tuple(MarkedPoint(m, 0, m + 1) for m in sorted(rng.choice([[], [1], [1, 2]])))
        verts[x] = Vertex(rng.choice([ET, MU]), None, 0, mk)
    verts = {x: Vertex(v.kind, 0 if v.kind is ET else 4, 0, v.marked) for x, v in verts.items()}
    origin = Boundary(rng.choice(names), PointLabel(1, 0), p, 4)
    return SimpleDegData(NONSPLIT, 0, BoundaryType(MU, -1, 0), Tree(verts, edges), origin)


def shuffle_names(rng: random.Random, d):
    """Rename vertices at random and flip stored edge orientations at random."""
    names = list(d.tree.vertices)
    new = [f"R{k}" for k in range(len(names))]
    rng.shuffle(new)
    ren = dict(zip(names, new))
    verts = {ren[x]: v for x, v in d.tree.vertices.items()}
    edges = []
    for e in d.tree.edges:
        if rng.random() < 0.5:
            edges.append(Edge(ren[e.u], ren[e.v], e.e, e.at_u, e.at_v))
        else:
            edges.append(Edge(ren[e.v], ren[e.u], e.e, e.at_v, e.at_u))
    rng.shuffle(edges)
    tree = Tree(dict(sorted(verts.items(), key=lambda kv: rng.random())), edges)
    if hasattr(d, "ends"):
        ends = tuple(Boundary(ren[b.vertex], b.point, b.e, b.delta) for b in d.ends)
        return type(d)(d.species, d.r, d.boundary_types, tree, ends)
    o = d.origin
    return SimpleDegData(d.species, d.r, d.boundary_type, tree, Boundary(ren[o.vertex], o.point, o.e, o.delta))


# -- Riemann-Hurwitz genus of an Artin-Schreier cover of P^1 --

def artin_schreier_genus(p, pole_orders):
    """Genus of y^p - y = f with the given reduced pole orders (all prime to p)."""
    return (p - 1) * (sum(m + 1 for m in pole_orders) - 2) // 2
