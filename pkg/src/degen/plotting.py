"""Matplotlib figures of realized fibres and decorated trees, written to image files."""

from __future__ import annotations

from collections import Counter

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402

from .fiber import CurveFragment  # noqa: E402


def _layout(G):
    if G.number_of_nodes() <= 1:
        return {n: (0.0, 0.0) for n in G.nodes}
    return nx.kamada_kawai_layout(nx.Graph(G))


def _draw_multi(ax, G, pos, labels, title):
    nx.draw_networkx_nodes(G, pos, ax=ax, node_color="#dde6f0", edgecolors="#33445a", node_size=900)
    nx.draw_networkx_labels(G, pos, labels=labels, ax=ax, font_size=8)
    mult = Counter(tuple(sorted(e)) for e in G.edges())
    for (a, b), k in mult.items():
        for j in range(k):
            rad = 0.0 if k == 1 else -0.3 + 0.6 * j / (k - 1)
            nx.draw_networkx_edges(
                G, pos, edgelist=[(a, b)], ax=ax, connectionstyle=f"arc3,rad={rad}", arrows=True,
                arrowstyle="-", edge_color="#33445a",
            )
    ax.margins(0.2)
    ax.set_title(title, fontsize=9)
    ax.set_axis_off()


def plot_fiber(frag: CurveFragment, path: str, title: str | None = None) -> str:
    """Draw the dual graph of a realized fibre (nodes id:genus, parallel edges as arcs)."""
    G = frag.graph()
    pos = _layout(G)
    labels = {c.id: f"{c.id}\n{c.genus}" for c in frag.components}
    fig, ax = plt.subplots(figsize=(5, 4))
    _draw_multi(ax, G, pos, labels, title or f"b1={frag.b1}  total genus={frag.total_genus}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_tree(d, path: str, title: str | None = None) -> str:
    """Draw a local datum's decorated tree, boundary vertices outlined in red."""
    G = nx.MultiGraph()
    G.add_nodes_from(d.tree.vertices)
    G.add_edges_from((e.u, e.v) for e in d.tree.edges)
    pos = _layout(G)
    labels = {
        vid: f"{vid}\n{v.kind.value}" + ("" if v.delta is None else f" d={v.delta}")
        for vid, v in d.tree.vertices.items()
    }
    fig, ax = plt.subplots(figsize=(5, 4))
    _draw_multi(ax, G, pos, labels, title or f"r={d.r}")
    ends = [b.vertex for b in d.boundaries]
    nx.draw_networkx_nodes(G, pos, nodelist=sorted(set(ends)), ax=ax, node_color="none",
                           edgecolors="#b03030", node_size=1100, linewidths=2)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
