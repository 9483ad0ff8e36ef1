"""DOT emission for realized fibres and for decorated trees."""

from __future__ import annotations

from .degdata import DoubleDegData, GlobalDegData, SimpleDegData
from .fiber import CurveFragment


def _q(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def fiber_dot(frag: CurveFragment, name: str = "fiber") -> str:
    """Components as circles labelled id:genus, one line per upstairs double point."""
    lines = [f"graph {_q(name)} {{", f"  // b1={frag.b1} total_genus={frag.total_genus}"]
    for c in frag.components:
        lines.append(f"  {_q(c.id)} [shape=circle, label={_q(f'{c.id}:{c.genus}')}];")
    for a, b in frag.edges:
        lines.append(f"  {_q(a)} -- {_q(b)};")
    for k, pts in enumerate(frag.boundaries):
        for j, cid in enumerate(pts):
            bid = f"boundary{k}.{j}"
            lines.append(f"  {_q(bid)} [shape=diamond, label={_q(f'x{k + 1}')}];")
            lines.append(f"  {_q(bid)} -- {_q(cid)} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _pl(pl) -> str:
    return f"({pl.m},{pl.h})"


def tree_dot(d, name: str = "datum") -> str:
    """The downstairs decorated tree: kinds, deltas, marked points, thicknesses and half-labels."""
    if isinstance(d, GlobalDegData):
        return global_dot(d, name)
    lines = [f"graph {_q(name)} {{", f"  // r={d.r}"]
    for vid, v in sorted(d.tree.vertices.items()):
        marks = " ".join(f"[{x.m},{x.h};r={x.r}]" for x in v.marked)
        delta = "" if v.delta is None else f" d={v.delta}"
        lines.append(f"  {_q(vid)} [shape=circle, label={_q(f'{vid} {v.kind.value}{delta} {marks}'.strip())}];")
    for e in d.tree.edges:
        lines.append(f"  {_q(e.u)} -- {_q(e.v)} [label={_q(f'e={e.e} {_pl(e.at_u)}|{_pl(e.at_v)}')}];")
    types = [d.boundary_type] if isinstance(d, SimpleDegData) else list(d.boundary_types)
    for k, (b, t) in enumerate(zip(d.boundaries, types)):
        bid = f"boundary{k}"
        lines.append(f"  {_q(bid)} [shape=diamond, label={_q(f'{t.kind.value},{t.m},{t.h} d={b.delta}')}];")
        lines.append(f"  {_q(bid)} -- {_q(b.vertex)} [style=dashed, label={_q(f'e={b.e} {_pl(b.point)}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def global_dot(g: GlobalDegData, name: str = "base") -> str:
    lines = [f"graph {_q(name)} {{", f"  // r={g.r} base_genus={g.base_genus()}"]
    for cid, c in sorted(g.components.items()):
        delta = "" if c.delta is None else f" d={c.delta}"
        lines.append(f"  {_q(cid)} [shape=circle, label={_q(f'{cid}:{c.genus} {c.kind.value}{delta}')}];")
    for nid, n in sorted(g.nodes.items()):
        lines.append(f"  {_q(n.a.component)} -- {_q(n.b.component)} [label={_q(f'{nid} r={n.r}')}];")
    for group, shape in (("marked", "diamond"), ("critical", "point")):
        for xid, x in sorted(getattr(g, group).items()):
            comp = g.components.get(x.at.component)
            pl = comp.points.get(x.at.point) if comp else None
            text = f"{xid} {_pl(pl)}" if pl else xid
            lines.append(f"  {_q(xid)} [shape={shape}, label={_q(text)}];")
            lines.append(f"  {_q(xid)} -- {_q(x.at.component)} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
