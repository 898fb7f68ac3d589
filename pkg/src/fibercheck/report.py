"""Rendering helpers for batch reports.

Draws the signed Seifert graph of a diagram (vertices = Seifert circles,
edges = crossing bands, solid blue for positive bands and dashed red for
negative ones) to a PNG via matplotlib.
"""

from __future__ import annotations

import pathlib

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import networkx as nx

from .diagram import Diagram
from .seifert import build_seifert

__all__ = ["draw_seifert_graph"]


def draw_seifert_graph(d: Diagram, path: str | pathlib.Path, title: str = "") -> None:
    """Write a PNG of ``d``'s signed Seifert graph to ``path``."""
    m = build_seifert(d)
    g = nx.MultiGraph()
    g.add_nodes_from(range(m.s))
    for x, (u, v, sign) in enumerate(m.graph_edges):
        g.add_edge(u, v, key=x, sign=sign)

    pos = nx.spring_layout(g, seed=7)
    fig, ax = plt.subplots(figsize=(5, 4))
    nx.draw_networkx_nodes(g, pos, ax=ax, node_color="#f0f0f0",
                           edgecolors="black", node_size=600)
    labels = {i: f"c{i}" + ("*" if i in m.nested_circles else "")
              for i in range(m.s)}
    nx.draw_networkx_labels(g, pos, labels, ax=ax, font_size=9)

    # spread parallel edges apart with distinct curvatures
    slot: dict[tuple[int, int], int] = {}
    for u, v, x, data in g.edges(keys=True, data=True):
        pair = (min(u, v), max(u, v))
        i = slot.get(pair, 0)
        slot[pair] = i + 1
        rad = 0.0 if u == v else 0.25 * ((i + 1) // 2) * (-1) ** i
        color = "tab:blue" if data["sign"] > 0 else "tab:red"
        style = "solid" if data["sign"] > 0 else "dashed"
        ax.annotate(
            "", xy=pos[v], xytext=pos[u],
            arrowprops=dict(arrowstyle="-", color=color, linestyle=style,
                            shrinkA=14, shrinkB=14,
                            connectionstyle=f"arc3,rad={rad}"),
        )
    sub = f"s={m.s} c={m.c} β₁={m.beta1}"
    ax.set_title((title + "\n" if title else "") + sub, fontsize=10)
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
