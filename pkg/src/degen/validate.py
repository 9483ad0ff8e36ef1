"""Axiom checks for degeneration data, genus formulas and the delta/kind dictionary."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass

from .arith import PrimeContext
from .degdata import (
    NONSPLIT,
    SPECIES,
    SPLIT,
    Boundary,
    DoubleDegData,
    GlobalDegData,
    PointLabel,
    SimpleDegData,
    StructureError,
    Tree,
)
from .torsor import (
    BoundaryType,
    GroupKind,
    conductor_residue_at,
    critical_places,
    is_admissible,
)

LOCAL_AXIOMS = {
    "A1": "type sanity",
    "A2": "tree and distinguished vertices",
    "A3": "rational marked tree shape",
    "A4": "torsor admissibility and kind",
    "A5": "marked-point ledger and boundary matching",
    "A6": "edge antisymmetry",
    "A7": "different ledger",
    "A8": "genus identity",
    "A9": "edge splitting agreement",
}

GLOBAL_AXIOMS = {
    "G1": "references and structure",
    "G2": "component torsor admissibility",
    "G3": "node data types",
    "G4": "marked-point data types",
    "G5": "critical-point coverage",
    "G6": "branch ledger",
    "G7": "attached local data",
    "G8": "generic zero count",
}


# -- closed forms --

def _half(ctx: PrimeContext, n: int, what: str) -> int:
    if n < 0:
        raise ValueError(f"{what} would be negative ({n}*(p-1)/2)")
    val = n * (ctx.p - 1)
    if val % 2:
        raise ValueError(f"{what} {val}/2 is not an integer")
    return val // 2


def genus_simple(ctx: PrimeContext, r: int, m: int) -> int:
    """(r - m - 1)(p - 1)/2."""
    return _half(ctx, r - m - 1, "genus")


def genus_double(ctx: PrimeContext, r: int, m1: int, m2: int) -> int:
    """(r - m1 - m2)(p - 1)/2."""
    return _half(ctx, r - m1 - m2, "genus")


def genus_tail(ctx: PrimeContext, m: int) -> int:
    """Genus (-m - 1)(p - 1)/2 of the datum attached at a zero of omega."""
    if m >= 0:
        raise ValueError(f"critical-point conductor must be negative, got {m}")
    return _half(ctx, -m - 1, "genus")


def kind_from_delta(ctx: PrimeContext, delta: int) -> GroupKind:
    """Special-fibre kind of a torsor whose different has degree delta."""
    if not 0 <= delta <= ctx.vKp or delta % (ctx.p - 1):
        raise ValueError(f"delta={delta} must lie in [0, {ctx.vKp}] and be divisible by {ctx.p - 1}")
    if delta == 0:
        return GroupKind.ETALE
    if delta == ctx.vKp:
        return GroupKind.MULT
    return GroupKind.ADD


# -- reports --

@dataclass(frozen=True)
class AxiomResult:
    axiom: str
    ok: bool
    message: str
    location: str

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"


class ValidationReport:
    def __init__(self, results: list[AxiomResult]):
        self.results = list(results)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failed(self) -> list[str]:
        return [r.axiom for r in self.results if not r.ok]

    def __getitem__(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def __eq__(self, other):
        return isinstance(other, ValidationReport) and self.results == other.results

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            line = f"{r.axiom}\t{r.status}"
            if not r.ok:
                line += f"\t{r.location}\t{r.message}"
            lines.append(line)
        return "\n".join(lines)

    def to_json(self) -> list[dict]:
        return [
            {"axiom": r.axiom, "status": r.status, "message": r.message, "location": r.location}
            for r in self.results
        ]

    def __repr__(self):
        return f"ValidationReport(ok={self.ok}, failed={self.failed()})"


class _Collector:
    def __init__(self, axioms: dict[str, str], prefix: str = ""):
        self.axioms = axioms
        self.prefix = prefix
        self.fails: dict[str, list[tuple[str, str]]] = defaultdict(list)

    def fail(self, axiom: str, msg: str, path: str = "") -> None:
        self.fails[axiom].append((msg, self.prefix + path))

    def report(self) -> ValidationReport:
        out = []
        for ax in self.axioms:
            items = self.fails.get(ax, [])
            if items:
                out.append(AxiomResult(ax, False, "; ".join(m for m, _ in items), items[0][1]))
            else:
                out.append(AxiomResult(ax, True, "", ""))
        return ValidationReport(out)


# -- local data --

def _preimages(p: int, kind: GroupKind, m: int, h: int) -> int:
    """Number of points above a special point with label (m, h)."""
    if kind is GroupKind.SPLIT:
        return p
    if not kind.is_radicial and m == 0 and h == 0:
        return p
    return 1


def _special_points(d, tree: Tree):
    """vertex -> list of (role, PointLabel-like, path)."""
    pts = defaultdict(list)
    for vid, v in tree.vertices.items():
        for j, x in enumerate(v.marked):
            pts[vid].append(("marked", x, f"vertices.{vid}.marked[{j}]"))
    for k, e in enumerate(tree.edges):
        pts[e.u].append(("edge", e.at_u, f"edges[{k}].at_u"))
        pts[e.v].append(("edge", e.at_v, f"edges[{k}].at_v"))
    for k, b in enumerate(d.boundaries):
        name = "origin" if isinstance(d, SimpleDegData) else f"ends[{k}]"
        pts[b.vertex].append(("boundary", b.point, f"{name}.point"))
    return pts


def _kind_shape(p: int, kind: GroupKind, labels, genus: int = 0) -> list[str]:
    """Necessary conditions on the (m, h) labels of a torsor of the given kind."""
    out = []
    ms = [x.m for x in labels]
    for x in labels:
        if x.m != 0 and x.m % p == 0:
            out.append(f"conductor {x.m} divisible by p")
        if not 0 <= x.h < p:
            out.append(f"residue {x.h} not in [0, p)")
    if kind is GroupKind.ETALE:
        if any(m < 0 for m in ms):
            out.append("etale torsor with negative conductor")
        if any(x.h for x in labels):
            out.append("etale torsor with nonzero residue")
        if genus == 0 and not any(m > 0 for m in ms):
            out.append("etale torsor unramified everywhere on P^1 is trivial (use split)")
    elif kind is GroupKind.MULT:
        if any(m > 0 for m in ms):
            out.append("mu_p torsor with positive conductor")
        for x in labels:
            if x.m == 0 and x.h == 0:
                out.append("mu_p torsor with (m, h) = (0, 0)")
            if x.m != 0 and x.h != 0:
                out.append("mu_p residue nonzero at a point with m != 0")
        if sum(-m - 1 for m in ms) != 2 * genus - 2:
            out.append(f"orders of omega sum to {sum(-m - 1 for m in ms)}, expected {2 * genus - 2}")
        if sum(x.h for x in labels) % p:
            out.append("residues of the logarithmic form do not sum to 0")
    elif kind is GroupKind.ADD:
        if any(m == 0 for m in ms):
            out.append("alpha_p torsor with m = 0 (exact forms have no simple poles)")
        if any(x.h for x in labels):
            out.append("alpha_p torsor with nonzero residue")
        if sum(-m - 1 for m in ms) != 2 * genus - 2:
            out.append(f"orders of omega sum to {sum(-m - 1 for m in ms)}, expected {2 * genus - 2}")
        if genus == 0 and not any(m > 0 for m in ms):
            out.append("alpha_p torsor without poles on P^1")
    elif kind is GroupKind.SPLIT:
        if any((x.m, x.h) != (0, 0) for x in labels):
            out.append("split torsor with nonzero conductor or residue")
    return out


def _check_rep(rep, kind, labels) -> list[str]:
    out = []
    if rep.kind is not kind:
        out.append(f"representative kind {rep.kind} differs from {kind}")
        return out
    locs = [x.location for x in labels]
    if any(z is None for z in locs):
        return ["explicit representative requires located special points"]
    if not is_admissible(rep, locs):
        out.append("representative is not admissible on the special points")
    for x in labels:
        got = conductor_residue_at(rep, x.location)
        if got != (x.m, x.h):
            out.append(f"label ({x.m},{x.h}) at {x.location!r} but representative gives {got}")
    return out


def _check_local(ctx: PrimeContext, d, is_double: bool) -> ValidationReport:
    p = ctx.p
    c = _Collector(LOCAL_AXIOMS)
    tree = d.tree

    # A1
    if d.species not in SPECIES:
        c.fail("A1", f"unknown species {d.species!r}", "species")
    if d.r < 0:
        c.fail("A1", f"r={d.r} is negative", "type.r")
    for k, bt in enumerate(d.boundary_types):
        if bt.kind is GroupKind.SPLIT:
            c.fail("A1", "boundary type must be a rank-p group kind", f"type.boundary[{k}]")
        for msg in bt.problems(p):
            c.fail("A1", msg, f"type.boundary[{k}]")
    excess = d.r - sum(bt.m for bt in d.boundary_types) - (0 if is_double else 1)
    if excess < 0:
        c.fail("A1", f"genus numerator {excess} is negative", "type")
    elif (excess * (p - 1)) % 2:
        c.fail("A1", "genus is not an integer", "type")

    # A2
    roots = [b.vertex for b in d.boundaries]
    try:
        tree.check_structure(roots)
    except StructureError as exc:
        c.fail("A2", str(exc), "tree")
        for ax in list(LOCAL_AXIOMS)[2:]:
            c.fail(ax, "not evaluated: the tree is malformed", "tree")
        return c.report()

    pts = _special_points(d, tree)

    # A3
    for vid, v in tree.vertices.items():
        if v.genus != 0:
            c.fail("A3", f"local vertex has genus {v.genus}", f"vertices.{vid}.genus")
        locs = [x.location for _, x, _ in pts[vid] if x.location is not None]
        if len(set(locs)) != len(locs):
            c.fail("A3", "special points on one component coincide", f"vertices.{vid}")

    # A4
    for vid, v in tree.vertices.items():
        labels = [x for _, x, _ in pts[vid]]
        path = f"vertices.{vid}"
        if v.kind is GroupKind.SPLIT:
            if v.marked and d.species == NONSPLIT:
                c.fail("A4", "branch points cannot specialize on a split component", path)
        else:
            if v.delta is None:
                c.fail("A4", "missing delta", path)
            elif 0 <= v.delta <= ctx.vKp and v.delta % (p - 1) == 0:
                want = kind_from_delta(ctx, v.delta)
                if want is not v.kind:
                    c.fail("A4", f"kind {v.kind} inconsistent with delta={v.delta} ({want})", path)
        if d.species == SPLIT and v.marked and v.kind is not GroupKind.MULT:
            c.fail("A4", "split species: components with marked points carry mu_p", path)
        for msg in _kind_shape(p, v.kind, labels):
            c.fail("A4", msg, path)
        if v.rep is not None:
            for msg in _check_rep(v.rep, v.kind, labels):
                c.fail("A4", msg, path)

    # A5
    total = 0
    for vid, v in tree.vertices.items():
        for j, x in enumerate(v.marked):
            path = f"vertices.{vid}.marked[{j}]"
            total += x.r
            if x.r < 1:
                c.fail("A5", f"marked point with r={x.r} (no branch point specializes)", path)
            if d.species == SPLIT:
                if x.r != 1:
                    c.fail("A5", f"split species requires r=1, got {x.r}", path)
            elif x.r != x.m + 1:
                c.fail("A5", f"r={x.r} != m+1={x.m + 1}", path)
    if total != d.r:
        c.fail("A5", f"branch points at marked points sum to {total}, type says r={d.r}", "type.r")
    for k, (b, bt) in enumerate(zip(d.boundaries, d.boundary_types)):
        path = "origin" if not is_double else f"ends[{k}]"
        if b.point.m + bt.m != 0:
            c.fail("A5", f"boundary conductor {b.point.m} does not cancel m={bt.m}", path)
        if (b.point.h + bt.h) % p:
            c.fail("A5", f"boundary residue {b.point.h} does not cancel h={bt.h}", path)

    # A6
    for k, e in enumerate(tree.edges):
        if e.at_u.m + e.at_v.m != 0:
            c.fail("A6", f"conductors {e.at_u.m} and {e.at_v.m} do not cancel", f"edges[{k}]")
        if (e.at_u.h + e.at_v.h) % p:
            c.fail("A6", f"residues {e.at_u.h} and {e.at_v.h} do not cancel", f"edges[{k}]")

    # A7
    def delta_ok(delta):
        return delta is not None and 0 <= delta <= ctx.vKp and delta % (p - 1) == 0

    for vid, v in tree.vertices.items():
        if v.kind is not GroupKind.SPLIT and v.delta is not None and not delta_ok(v.delta):
            c.fail("A7", f"delta={v.delta} outside [0, vKp] or not divisible by p-1", f"vertices.{vid}.delta")
    for k, e in enumerate(tree.edges):
        if e.e <= 0 or e.e % p:
            c.fail("A7", f"thickness e={e.e} is not a positive multiple of p", f"edges[{k}].e")
            continue
        vu, vv = tree.vertices[e.u], tree.vertices[e.v]
        if GroupKind.SPLIT in (vu.kind, vv.kind) or vu.delta is None or vv.delta is None:
            continue
        t = e.e // p
        if vu.delta - vv.delta != t * e.at_v.m * (p - 1):
            c.fail(
                "A7",
                f"delta_{e.u} - delta_{e.v} = {vu.delta - vv.delta} != t*m*(p-1) = {t * e.at_v.m * (p - 1)}",
                f"edges[{k}]",
            )
    for k, (b, bt) in enumerate(zip(d.boundaries, d.boundary_types)):
        path = "origin" if not is_double else f"ends[{k}]"
        if b.e <= 0 or b.e % p:
            c.fail("A7", f"boundary thickness e={b.e} is not a positive multiple of p", path + ".e")
            continue
        if not delta_ok(b.delta):
            c.fail("A7", f"boundary delta={b.delta} outside [0, vKp] or not divisible by p-1", path + ".delta")
            continue
        if kind_from_delta(ctx, b.delta) is not bt.kind and bt.kind is not GroupKind.SPLIT:
            c.fail("A7", f"boundary delta={b.delta} does not give kind {bt.kind}", path + ".delta")
        v = tree.vertices[b.vertex]
        if v.kind is GroupKind.SPLIT or v.delta is None:
            continue
        t = b.e // p
        if b.delta - v.delta != t * b.point.m * (p - 1):
            c.fail(
                "A7",
                f"delta - delta_{b.vertex} = {b.delta - v.delta} != t*m*(p-1) = {t * b.point.m * (p - 1)}",
                path,
            )

    # A8
    lhs = d.r - sum(bt.m for bt in d.boundary_types) - (0 if is_double else 1)
    rhs = 0
    for vid, v in tree.vertices.items():
        if v.kind is GroupKind.ETALE:
            rhs += -2 + sum(x.m + 1 for _, x, _ in pts[vid])
    if lhs != rhs:
        c.fail("A8", f"closed form numerator {lhs} != sum over etale components {rhs}", "tree")

    # A9
    def count(vid, x):
        return _preimages(p, tree.vertices[vid].kind, x.m, x.h)

    for k, e in enumerate(tree.edges):
        cu, cv = count(e.u, e.at_u), count(e.v, e.at_v)
        if cu != cv:
            c.fail("A9", f"{cu} points above the edge on {e.u!r} side, {cv} on {e.v!r} side", f"edges[{k}]")
        for vid, x in ((e.u, e.at_u), (e.v, e.at_v)):
            if tree.vertices[vid].kind.is_radicial and (x.m, x.h) == (0, 0):
                c.fail("A9", "radicial component cannot split above a double point", f"edges[{k}]")
    for vid, v in tree.vertices.items():
        for j, x in enumerate(v.marked):
            if count(vid, x) != 1:
                c.fail("A9", "cover splits above a marked point", f"vertices.{vid}.marked[{j}]")
    for k, (b, bt) in enumerate(zip(d.boundaries, d.boundary_types)):
        inner = count(b.vertex, b.point)
        outer = p if (bt.kind is GroupKind.ETALE and (bt.m, bt.h) == (0, 0)) else 1
        if inner != outer:
            c.fail("A9", f"{inner} points above the boundary inside, {outer} outside",
                   "origin" if not is_double else f"ends[{k}]")
    split_ids = {vid for vid, v in tree.vertices.items() if v.kind is GroupKind.SPLIT}
    seen: set[str] = set()
    for s in sorted(split_ids):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        attach = 0
        while stack:
            x = stack.pop()
            for e in tree.incident(x):
                y = e.other(x)
                if y in split_ids:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
                else:
                    attach += 1
            attach += sum(1 for b in d.boundaries if b.vertex == x)
        seen |= comp
        if attach != 2:
            c.fail("A9", f"split subtree {sorted(comp)} meets {attach} non-split attachments (need 2)",
                   f"vertices.{s}")
    return c.report()


def check_simple(ctx: PrimeContext, d: SimpleDegData) -> ValidationReport:
    return _check_local(ctx, d, False)


def check_double(ctx: PrimeContext, d: DoubleDegData) -> ValidationReport:
    return _check_local(ctx, d, True)


def local_genus(ctx: PrimeContext, d) -> int:
    if isinstance(d, SimpleDegData):
        return genus_simple(ctx, d.r, d.boundary_type.m)
    t1, t2 = d.boundary_types
    return genus_double(ctx, d.r, t1.m, t2.m)


def summed_delta_identity(ctx: PrimeContext, d) -> dict[str, bool]:
    """|D_i| delta_i = sum_j (delta_j + t m_{j-side} (p-1)) per vertex (informational)."""
    p = ctx.p
    out = {}
    for vid, v in d.tree.vertices.items():
        if v.kind is GroupKind.SPLIT:
            continue
        lhs = rhs = 0
        for e in d.tree.incident(vid):
            w = d.tree.vertices[e.other(vid)]
            if w.kind is GroupKind.SPLIT:
                continue
            lhs += v.delta
            rhs += w.delta + (e.e // p) * e.side(e.other(vid)).m * (p - 1)
        out[vid] = lhs == rhs
    return out


# -- global data --

def check_global(ctx: PrimeContext, g: GlobalDegData) -> ValidationReport:
    p = ctx.p
    c = _Collector(GLOBAL_AXIOMS)

    # G1
    used: dict[tuple[str, str], str] = {}
    refs = []
    for nid, n in g.nodes.items():
        refs += [(n.a, f"nodes.{nid}.a"), (n.b, f"nodes.{nid}.b")]
    refs += [(x.at, f"marked.{mid}.at") for mid, x in g.marked.items()]
    refs += [(x.at, f"critical.{cid}.at") for cid, x in g.critical.items()]
    bad_refs = False
    for ref, path in refs:
        comp = g.components.get(ref.component)
        if comp is None or ref.point not in comp.points:
            c.fail("G1", f"reference to unknown point {ref.component}.{ref.point}", path)
            bad_refs = True
            continue
        key = (ref.component, ref.point)
        if key in used:
            c.fail("G1", f"point {ref.component}.{ref.point} used by {used[key]} and {path}", path)
        used[key] = path
    for cid, comp in g.components.items():
        if comp.genus < 0:
            c.fail("G1", f"negative genus {comp.genus}", f"components.{cid}.genus")
        if comp.rep is not None and comp.genus != 0:
            c.fail("G1", "explicit representatives are only supported on genus-0 components",
                   f"components.{cid}.rep")
        for name, pl in comp.points.items():
            if (cid, name) not in used and not (comp.kind.is_radicial and pl.m <= -2):
                c.fail("G1", f"special point {name} is not attached to anything", f"components.{cid}.points.{name}")
        locs = [pl.location for pl in comp.points.values() if pl.location is not None]
        if len(set(locs)) != len(locs):
            c.fail("G1", "special points on one component coincide", f"components.{cid}")
    if g.r < 0:
        c.fail("G1", f"negative branch count {g.r}", "r")
    if bad_refs:
        for ax in ("G3", "G4", "G5"):
            c.fail(ax, "skipped: unresolved references", "")

    # G2
    special_roles = defaultdict(set)
    for ref, path in refs:
        special_roles[ref.component].add(ref.point)
    for cid, comp in g.components.items():
        path = f"components.{cid}"
        labels = list(comp.points.values())
        if comp.kind is not GroupKind.SPLIT:
            if comp.delta is None:
                c.fail("G2", "missing delta", path)
            elif not (0 <= comp.delta <= ctx.vKp and comp.delta % (p - 1) == 0):
                c.fail("G2", f"delta={comp.delta} out of range", path + ".delta")
            elif kind_from_delta(ctx, comp.delta) is not comp.kind:
                c.fail("G2", f"kind {comp.kind} inconsistent with delta={comp.delta}", path)
        for msg in _kind_shape(p, comp.kind, labels, comp.genus):
            c.fail("G2", msg, path)
        if comp.rep is not None:
            nonzero = [pl for name, pl in comp.points.items()
                       if name not in {x.at.point for x in g.critical.values() if x.at.component == cid}]
            locs = [pl.location for pl in comp.points.values()]
            if any(z is None for z in locs):
                c.fail("G2", "explicit representative requires located points", path)
            else:
                from .torsor import singular_places

                allowed = {pl.location for pl in nonzero}
                for z in singular_places(comp.rep):
                    if z not in allowed and not (
                        comp.kind.is_radicial and any(z == w for w, _ in critical_places(comp.rep))
                    ):
                        c.fail("G2", f"torsor is not admissible: singular at {z!r}", path)
                for name, pl in comp.points.items():
                    got = conductor_residue_at(comp.rep, pl.location)
                    if got != (pl.m, pl.h):
                        c.fail("G2", f"label ({pl.m},{pl.h}) but representative gives {got}",
                               f"{path}.points.{name}")

    def eff_kind(comp):
        return GroupKind.ETALE if comp.kind is GroupKind.SPLIT else comp.kind

    def eff_delta(comp):
        return 0 if comp.kind is GroupKind.SPLIT else comp.delta

    def btype(ref):
        comp = g.components[ref.component]
        pl = comp.points[ref.point]
        return BoundaryType(eff_kind(comp), pl.m, pl.h)

    if not bad_refs:
        # G3
        for nid, n in g.nodes.items():
            path = f"nodes.{nid}"
            ca, cb = g.components[n.a.component], g.components[n.b.component]
            ta, tb = btype(n.a), btype(n.b)
            if n.split:
                ok = all(
                    _preimages(p, comp.kind, pl.m, pl.h) == p
                    for comp, pl in ((ca, g.label(n.a)), (cb, g.label(n.b)))
                )
                if not ok:
                    c.fail("G3", "node marked split but the torsors do not split there", path)
                if n.r != 0 or n.datum is not None:
                    c.fail("G3", "split node carries branch points or a datum", path)
                continue
            if n.r - ta.m - tb.m < 0:
                c.fail("G3", f"r_t - m1 - m2 = {n.r - ta.m - tb.m} < 0", path + ".r")
            if n.datum is None:
                c.fail("G3", "missing double degeneration datum", path)
                continue
            d = n.datum
            if d.r != n.r:
                c.fail("G3", f"datum has r={d.r}, node has r_t={n.r}", path + ".r")
            if tuple(d.boundary_types) != (ta, tb):
                c.fail("G3", f"datum type {tuple(d.boundary_types)} != ({ta}, {tb})", path + ".datum.type")
            for k, comp in enumerate((ca, cb)):
                if d.ends[k].delta != eff_delta(comp):
                    c.fail("G3", f"boundary delta {d.ends[k].delta} != component delta {eff_delta(comp)}",
                           f"{path}.datum.ends[{k}].delta")

        # G4
        for mid, x in g.marked.items():
            path = f"marked.{mid}"
            comp = g.components[x.at.component]
            t = btype(x.at)
            if x.r - t.m - 1 < 0:
                c.fail("G4", f"r - m - 1 = {x.r - t.m - 1} < 0", path + ".r")
            if x.datum is None:
                c.fail("G4", "missing simple degeneration datum", path)
                continue
            if x.datum.r != x.r:
                c.fail("G4", f"datum has r={x.datum.r}, point has r={x.r}", path + ".r")
            if x.datum.boundary_type != t:
                c.fail("G4", f"datum type {x.datum.boundary_type} != {t}", path + ".datum.type")
            if x.datum.origin.delta != eff_delta(comp):
                c.fail("G4", "boundary delta differs from the component's", path + ".datum.origin.delta")

        # G5
        crit_at = {(x.at.component, x.at.point): cid for cid, x in g.critical.items()}
        for cid, x in g.critical.items():
            path = f"critical.{cid}"
            comp = g.components[x.at.component]
            pl = g.label(x.at)
            if not comp.kind.is_radicial or pl.m > -2:
                c.fail("G5", "critical point is not a zero of a radicial differential form", path)
                continue
            if x.datum is None:
                c.fail("G5", "missing simple degeneration datum", path)
                continue
            t = btype(x.at)
            if x.datum.r != 0 or x.datum.boundary_type != t:
                c.fail("G5", f"datum type ({x.datum.r}, {x.datum.boundary_type}) != (0, {t})", path)
            if x.datum.origin.delta != eff_delta(comp):
                c.fail("G5", "boundary delta differs from the component's", path + ".datum.origin.delta")
        attached = {(r.component, r.point) for r, _ in refs if not _.startswith("critical")}
        for cid, comp in g.components.items():
            if not comp.kind.is_radicial:
                continue
            for name, pl in comp.points.items():
                if pl.m <= -2 and (cid, name) not in attached and (cid, name) not in crit_at:
                    c.fail("G5", f"zero of omega at {name} has no critical datum", f"components.{cid}.points.{name}")
            if comp.rep is not None:
                located = {pl.location for pl in comp.points.values()}
                for z, _ in critical_places(comp.rep):
                    if z not in located:
                        c.fail("G5", f"zero of omega at {z!r} is not listed", f"components.{cid}")

    # G6
    if g.r != g.branch_count():
        c.fail("G6", f"stored r={g.r} but nodes and marked points carry {g.branch_count()}", "r")

    # G7
    for nid, n in g.nodes.items():
        if n.datum is not None:
            rep = check_double(ctx, n.datum)
            for res in rep.results:
                if not res.ok:
                    c.fail("G7", f"{res.axiom}: {res.message}", f"nodes.{nid}.datum.{res.location}")
    for group, items in (("marked", g.marked), ("critical", g.critical)):
        for xid, x in items.items():
            if x.datum is not None:
                rep = check_simple(ctx, x.datum)
                for res in rep.results:
                    if not res.ok:
                        c.fail("G7", f"{res.axiom}: {res.message}", f"{group}.{xid}.datum.{res.location}")

    # G8
    for cid, comp in g.components.items():
        if not comp.generic or not comp.kind.is_radicial or comp.genus < 1:
            continue
        orders = [-pl.m - 1 for pl in comp.points.values() if pl.m <= -2]
        if p == 2:
            ok = orders == [2] * (comp.genus - 1)
            want = f"{comp.genus - 1} double zeros"
        else:
            ok = orders == [1] * (2 * comp.genus - 2)
            want = f"{2 * comp.genus - 2} simple zeros"
        if not ok:
            c.fail("G8", f"generic component needs {want}, omega has zero orders {sorted(orders)}",
                   f"components.{cid}")
    return c.report()


def check(ctx: PrimeContext, d) -> ValidationReport:
    if isinstance(d, SimpleDegData):
        return check_simple(ctx, d)
    if isinstance(d, DoubleDegData):
        return check_double(ctx, d)
    if isinstance(d, GlobalDegData):
        return check_global(ctx, d)
    raise TypeError(f"cannot validate {type(d).__name__}")
