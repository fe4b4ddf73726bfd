"""PNG renderings of the divisor incidence table and the Petersen labeling."""
from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

# no timestamps or version strings, so repeated renders are byte-identical
_PNG_META = {"Software": None}


def _label(bits) -> str:
    return "".join(map(str, bits))


def incidence_heatmap(path: Path) -> Path:
    from .abelian import divisor_incidence
    inc = divisor_incidence()
    names = [_label(p) for p in inc.points]
    fig, ax = plt.subplots(figsize=(6.4, 6.0))
    ax.imshow([[int(x) for x in row] for row in inc.table], cmap="Greys", vmin=0, vmax=1)
    ax.set_xticks(range(16), names, rotation=90, fontsize=7, family="monospace")
    ax.set_yticks(range(16), [f"D+{n}" for n in names], fontsize=7, family="monospace")
    ax.set_xlabel("fixed point")
    ax.set_title("fixed points on the 16 translated divisors (10 per row)")
    ax.set_xticks([x - 0.5 for x in range(1, 16)], minor=True)
    ax.set_yticks([y - 0.5 for y in range(1, 16)], minor=True)
    ax.grid(which="minor", color="0.8", linewidth=0.4)
    ax.tick_params(which="minor", length=0)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)
    return path


def _petersen_positions(vertices) -> dict:
    # outer 5-cycle of pairwise disjoint neighbours; inner k is the spoke of outer k
    outer = ["ab", "cd", "be", "ac", "de"]
    inner = ["ce", "ae", "ad", "bd", "bc"]
    pos = {}
    for k, (o, i) in enumerate(zip(outer, inner)):
        angle = math.pi / 2 - 2 * math.pi * k / 5
        pos[o] = (math.cos(angle), math.sin(angle))
        pos[i] = (0.5 * math.cos(angle), 0.5 * math.sin(angle))
    missing = set(vertices) - set(pos)
    if missing:
        raise ValueError(f"unplaced vertices {missing}")
    return pos


def petersen_figure(path: Path) -> Path:
    from .combinatorics import _fmt_partition, petersen_labeling
    lab, _ = petersen_labeling()
    pos = _petersen_positions(lab.vertices)
    colors = dict(zip("abcde", ["tab:blue", "tab:orange", "tab:green", "tab:red", "tab:purple"]))
    fig, ax = plt.subplots(figsize=(7, 8))
    for missing, edges in sorted(lab.classes.items()):
        for u, w in edges:
            (x0, y0), (x1, y1) = pos[u], pos[w]
            ax.plot([x0, x1], [y0, y1], color=colors[missing], linewidth=2.2, zorder=1)
            pair = "".join(map(str, sorted(lab.edge_labels[(u, w)])))
            ax.text((x0 + x1) / 2, (y0 + y1) / 2, pair, fontsize=8, ha="center", va="center",
                    bbox={"boxstyle": "round,pad=0.15", "fc": "white", "ec": colors[missing], "lw": 0.8}, zorder=3)
    for v, (x, y) in sorted(pos.items()):
        ax.scatter([x], [y], s=420, color="white", edgecolors="black", zorder=2)
        ax.text(x, y, v, ha="center", va="center", fontsize=10, weight="bold", zorder=4)
        r = math.hypot(x, y)
        if r > 0.75:
            tx, ty = x * (1 + 0.2 / r), y * (1 + 0.2 / r)
        else:
            tx, ty = x, y - 0.12
        ax.text(tx, ty, _fmt_partition(lab.vertex_partitions[v]), ha="center", va="center", fontsize=7,
                color="0.25", zorder=4)
    handles = [plt.Line2D([], [], color=colors[m], linewidth=2.2,
                          label=f"no {m}: " + _fmt_partition(frozenset(lab.edge_labels[e] for e in lab.classes[m])))
               for m in sorted(lab.classes)]
    ax.legend(handles=handles, loc="lower center", ncol=2, fontsize=8, frameon=False)
    ax.set_xlim(-1.45, 1.45)
    ax.set_ylim(-1.75, 1.35)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title("Petersen graph: vertex transpositions, beta partitions and edge pairs")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)
    return path


def render_all(directory) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    return [incidence_heatmap(out / "incidence-table.png"), petersen_figure(out / "petersen-labeling.png")]
