"""Worked examples, normalized to the conventions enforced by ``validate``.

Every builder takes the prime p and returns ``(ctx, datum)``.  Unless stated
otherwise vKp = 2(p - 1), i.e. vLambda = 2.
"""

from __future__ import annotations

from dataclasses import replace

from .arith import Place, PrimeContext, RationalFunction
from .degdata import (
    NONSPLIT,
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
)
from .fields import field
from .poly import FF
from .torsor import BoundaryType, GroupKind, TorsorRep

ET, MU, AL, SP = GroupKind.ETALE, GroupKind.MULT, GroupKind.ADD, GroupKind.SPLIT


def _ctx(p: int, vKp: int | None = None) -> PrimeContext:
    return PrimeContext(p, 2 * (p - 1) if vKp is None else vKp)


def tail(ctx: PrimeContext, m: int = -2, kind: GroupKind = MU) -> SimpleDegData:
    """Datum of type (0, (kind, m, 0)) hanging off a zero of omega: one etale line.

    The origin conductor is -m and the origin thickness is fixed by the
    different ledger, so vLambda must be divisible by -m when kind is Mult.
    """
    p = ctx.p
    delta = ctx.vKp if kind is MU else None
    if delta is None:
        raise ValueError("only mu_p tails are built here")
    t, rem = divmod(ctx.vLambda, -m)
    if rem:
        raise ValueError(f"vLambda={ctx.vLambda} not divisible by {-m}")
    return SimpleDegData(
        species=NONSPLIT,
        r=0,
        boundary_type=BoundaryType(kind, m, 0),
        tree=Tree({"V1": Vertex(ET, delta=0)}),
        origin=Boundary("V1", PointLabel(-m), e=p * t, delta=delta),
    )


def f1(p: int = 3):
    """One etale line with conductor 2 at the origin; genus (p-1)/2."""
    ctx = _ctx(p)
    return ctx, tail(ctx, -2)


def example_125(p: int = 3, m: int = 1, m_prime: int = 4):
    """One etale line with conductor m' - m + 1 at the origin; genus (m'-m)(p-1)/2."""
    c = m_prime - m + 1
    if c % p == 0:
        raise ValueError(f"conductor {c} must be prime to p={p}")
    ctx = PrimeContext(p, c * (p - 1))
    return ctx, tail(ctx, -c)


def add_tail(p: int = 3):
    """One etale line under an alpha_p boundary of conductor 1; type (0, (Add, -1, 0)), genus 0."""
    ctx = _ctx(p)
    d = SimpleDegData(
        species=NONSPLIT,
        r=0,
        boundary_type=BoundaryType(AL, -1, 0),
        tree=Tree({"X1": Vertex(ET, delta=0)}),
        origin=Boundary("X1", PointLabel(1), e=p, delta=p - 1),
    )
    return ctx, d


def f2(p: int = 3):
    """Two etale lines meeting above p points; type (2, (Mult, -1, 0)), genus p - 1."""
    ctx = _ctx(p)
    tree = Tree(
        {
            "X1": Vertex(ET, delta=0),
            "X2": Vertex(ET, delta=0, marked=(MarkedPoint(1, 0, 2),)),
        },
        [Edge("X1", "X2", p, PointLabel(0), PointLabel(0))],
    )
    d = SimpleDegData(
        species=NONSPLIT,
        r=2,
        boundary_type=BoundaryType(MU, -1, 0),
        tree=tree,
        origin=Boundary("X1", PointLabel(1), e=p * ctx.vLambda, delta=ctx.vKp),
    )
    return ctx, d


def _double(ctx, vertices, edges, m1, m2, end1, end2, r=0):
    return DoubleDegData(
        species=NONSPLIT,
        r=r,
        boundary_types=(BoundaryType(MU, m1, 0), BoundaryType(MU, m2, 0)),
        tree=Tree(vertices, edges),
        ends=(
            Boundary(end1, PointLabel(-m1), e=ctx.p * (ctx.vLambda // -m1), delta=ctx.vKp),
            Boundary(end2, PointLabel(-m2), e=ctx.p * (ctx.vLambda // -m2), delta=ctx.vKp),
        ),
    )


def f3(p: int = 3, m1: int = -1, m2: int = -1):
    """One etale line P with both boundary points on it; type (0, (Mult, m1, 0), (Mult, m2, 0))."""
    ctx = _ctx(p)
    return ctx, _double(ctx, {"P": Vertex(ET, delta=0)}, [], m1, m2, "P", "P")


def f4(p: int = 3):
    """Two etale lines joined above p points, boundary conductor 1 on each; genus p - 1."""
    ctx = _ctx(p)
    vs = {"P1": Vertex(ET, delta=0), "P2": Vertex(ET, delta=0)}
    es = [Edge("P1", "P2", p, PointLabel(0), PointLabel(0))]
    return ctx, _double(ctx, vs, es, -1, -1, "P1", "P2")


def f4_as_printed(p: int = 3):
    """The two-line node datum read literally: boundary conductors 2 against (Mult, -1, 0).

    Each line then has genus (p-1)/2 upstairs and the fragment has genus
    2(p-1), one more p-1 than the type allows.
    """
    ctx = _ctx(p)
    vs = {"T1": Vertex(ET, delta=0), "T2": Vertex(ET, delta=0)}
    es = [Edge("T1", "T2", p, PointLabel(0), PointLabel(0))]
    d = DoubleDegData(
        species=NONSPLIT,
        r=0,
        boundary_types=(BoundaryType(MU, -1, 0), BoundaryType(MU, -1, 0)),
        tree=Tree(vs, es),
        ends=(
            Boundary("T1", PointLabel(2), e=p, delta=ctx.vKp),
            Boundary("T2", PointLabel(2), e=p, delta=ctx.vKp),
        ),
    )
    return ctx, d


def f4_rx2(p: int = 3):
    """Two-line node datum with two branch points on T1; type (2, (Mult,-1,0), (Mult,-1,0)), genus 2(p-1)."""
    ctx = _ctx(p)
    vs = {
        "T1": Vertex(ET, delta=0, marked=(MarkedPoint(1, 0, 2),)),
        "T2": Vertex(ET, delta=0),
    }
    es = [Edge("T1", "T2", p, PointLabel(0), PointLabel(0))]
    return ctx, _double(ctx, vs, es, -1, -1, "T1", "T2", r=2)


def f4_double_zero(p: int = 3):
    """Two lines of genus (p-1)/2 meeting above p points; type (0, (Mult,-2,0), (Mult,-2,0))."""
    ctx = _ctx(p)
    vs = {"T1": Vertex(ET, delta=0), "T2": Vertex(ET, delta=0)}
    es = [Edge("T1", "T2", p, PointLabel(0), PointLabel(0))]
    return ctx, _double(ctx, vs, es, -2, -2, "T1", "T2")


def f2_concrete(p: int = 3, code: int | None = None):
    """F2 with explicit Artin-Schreier representatives a/t on X1 and t on X2.

    ``code`` selects a in F_{p^2} (default: the Conway generator, not in F_p).
    """
    ctx, d = f2(p)
    F = field(p, 2)
    a = FF(F, p if code is None else code)
    t = RationalFunction.t(p)
    zero, inf = Place.at(0, p), Place.infinity(p)
    x1 = Vertex(ET, 0, 0, (), TorsorRep(ET, RationalFunction.const(a) / t, (zero, inf)))
    x2 = Vertex(ET, 0, 0, (MarkedPoint(1, 0, 2, inf),), TorsorRep(ET, t, (zero, inf)))
    tree = Tree({"X1": x1, "X2": x2}, [Edge("X1", "X2", p, PointLabel(0, 0, inf), PointLabel(0, 0, zero))])
    origin = replace(d.origin, point=PointLabel(1, 0, zero))
    return ctx, replace(d, tree=tree, origin=origin)


def frobenius_cover(p: int = 3, code: int | None = None):
    """One projective line with the Kummer torsor t - a, a in F_{p^2} \\ F_p."""
    from .galois import CoverDescription

    ctx = _ctx(p)
    F = field(p, 2)
    a = FF(F, p if code is None else code)
    t = RationalFunction.t(p)
    za, inf = Place.at(a), Place.infinity(p)
    T = TorsorRep(MU, t - RationalFunction.const(a), (za, inf))
    return ctx, CoverDescription(p, {"X": T}, {}, {"x": ("X", za), "y": ("X", inf)})


# -- global data --

def _generic_pair(ctx, node_datum, m1=-1, m2=-1, r_node=0):
    """Two generic genus-2 mu_p components joined at one node, tails at the remaining zeros."""
    comps = {}
    critical = {}
    for name, m in (("V1", m1), ("V2", m2)):
        zeros = 2 - (1 if m == -2 else 0)
        pts = {"z": PointLabel(m)}
        for k in range(zeros):
            pts[f"c{k + 1}"] = PointLabel(-2)
            critical[f"{name}.c{k + 1}"] = Critical(PointRef(name, f"c{k + 1}"), tail(ctx, -2))
        comps[name] = Component(genus=2, kind=MU, delta=ctx.vKp, points=pts, generic=True)
    nodes = {"n1": Node(PointRef("V1", "z"), PointRef("V2", "z"), r=r_node, datum=node_datum)}
    return GlobalDegData(comps, nodes, {}, critical, r=r_node)


def f5(p: int = 3):
    """Two generic genus-2 mu_p components, node datum F3, four tails; total genus p(g_X - 1) + 1."""
    ctx, node = f3(p)
    return ctx, _generic_pair(ctx, node)


def f5_node_zero(p: int = 3):
    """F5 with omega_2 vanishing at the node: node type (0, (Mult,-1,0), (Mult,-2,0)), three tails."""
    ctx, node = f3(p, -1, -2)
    return ctx, _generic_pair(ctx, node, -1, -2)


def f5_double_zero(p: int = 3):
    """Both forms vanish at the node; node datum of genus 2(p-1), two tails."""
    ctx, node = f4_double_zero(p)
    return ctx, _generic_pair(ctx, node, -2, -2)


def f5_second_case_printed(p: int = 3):
    """The second configuration as printed: the two-line node datum with r = 0."""
    ctx, node = f4_as_printed(p)
    return ctx, _generic_pair(ctx, node)


def f5_second_case_rx2(p: int = 3):
    """The second configuration with two branch points carried by the node datum."""
    ctx, node = f4_rx2(p)
    return ctx, _generic_pair(ctx, node, r_node=2)


def split_everywhere(p: int = 3):
    """Both genus-2 components carry the trivial torsor; the cover is p copies of the base."""
    ctx = _ctx(p)
    comps = {
        name: Component(genus=2, kind=SP, points={"z": PointLabel(0)}) for name in ("V1", "V2")
    }
    nodes = {"n1": Node(PointRef("V1", "z"), PointRef("V2", "z"), split=True)}
    return ctx, GlobalDegData(comps, nodes)


def line_with_marked(p: int = 3):
    """An etale line with conductor 1 at two marked points, two branch points at each.

    Each marked point carries the genus-0 datum of type (2, (Etale, 1, 0)): a
    single alpha_p line whose different is p - 1.
    """
    ctx = _ctx(p)
    comps = {"X": Component(genus=0, kind=ET, delta=0, points={"a": PointLabel(1), "b": PointLabel(1)})}
    marked = {}
    for name in ("a", "b"):
        d = SimpleDegData(
            species=NONSPLIT,
            r=2,
            boundary_type=BoundaryType(ET, 1, 0),
            tree=Tree({"W": Vertex(AL, delta=p - 1, marked=(MarkedPoint(1, 0, 2),))}),
            origin=Boundary("W", PointLabel(-1), e=p, delta=0),
        )
        marked[name] = GlobalMarked(PointRef("X", name), r=2, datum=d)
    return ctx, GlobalDegData(comps, {}, marked, {}, r=4)


def nongeneric_double_zero(p: int = 5):
    """A genus-2 mu_p component whose omega has one double zero (p = 5, vKp = 24)."""
    ctx = PrimeContext(p, 6 * (p - 1))
    comps = {"V": Component(genus=2, kind=MU, delta=ctx.vKp, points={"c": PointLabel(-3)})}
    critical = {"V.c": Critical(PointRef("V", "c"), tail(ctx, -3))}
    return ctx, GlobalDegData(comps, {}, {}, critical)


SIMPLE = {"F1": f1, "EX125": example_125, "F2": f2, "ADD_TAIL": add_tail}
DOUBLE = {"F3": f3, "F4": f4, "F4_RX2": f4_rx2, "F4_DOUBLE_ZERO": f4_double_zero}
GLOBAL = {
    "F5": f5,
    "F5_NODE_ZERO": f5_node_zero,
    "F5_DOUBLE_ZERO": f5_double_zero,
    "F5_SECOND_RX2": f5_second_case_rx2,
    "SPLIT": split_everywhere,
    "LINE_MARKED": line_with_marked,
}
REJECTED = {"F4_PRINTED": f4_as_printed, "F5_SECOND_PRINTED": f5_second_case_printed}


def write_documents(directory, p: int = 3) -> list[str]:
    """Write every fixture as a JSON document under ``directory``; returns the file names."""
    from pathlib import Path

    from .serialize import dumps

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    names = []
    table = {**SIMPLE, **DOUBLE, **GLOBAL, **REJECTED, "F2_CONCRETE": f2_concrete, "FROBENIUS_COVER": frobenius_cover}
    for name, fn in table.items():
        ctx, d = fn(p)
        fname = f"{name.lower()}_p{p}.json"
        (out / fname).write_text(dumps(ctx, d) + "\n")
        names.append(fname)
    return names
