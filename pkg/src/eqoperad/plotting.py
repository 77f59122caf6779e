"""PNG renderings for the command line `--plot` option."""

from __future__ import annotations

from .groups import lattice
from .indexing import IndexingSystem, hasse


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def _system_label(s: IndexingSystem) -> str:
    L = lattice(s.group)
    pairs = [f"{L.label(L.subgroups[k])}>{L.label(L.subgroups[h])}" for k, h in s.proper_pairs()]
    return "\n".join(pairs) or "isos"


def plot_hasse(systems: list[IndexingSystem], path: str) -> None:
    """Hasse diagram of a lattice of indexing systems, ranked by size."""
    plt = _pyplot()
    ranks: dict[int, list[int]] = {}
    for i, s in enumerate(systems):
        ranks.setdefault(len(s.proper_pairs()), []).append(i)
    levels = sorted(ranks)
    pos = {}
    for y, r in enumerate(levels):
        row = ranks[r]
        for x, i in enumerate(row):
            pos[i] = (x - (len(row) - 1) / 2, y)
    width = max(len(r) for r in ranks.values())
    fig, ax = plt.subplots(figsize=(max(4, 2.2 * width), max(3, 1.6 * len(levels))))
    for i, j in hasse(systems):
        (x0, y0), (x1, y1) = pos[i], pos[j]
        ax.plot([x0, x1], [y0, y1], color="0.6", lw=1, zorder=1)
    for i, s in enumerate(systems):
        x, y = pos[i]
        ax.text(x, y, _system_label(s), ha="center", va="center", fontsize=7, zorder=2,
                bbox=dict(boxstyle="round", fc="white", ec="0.3"))
    G = systems[0].group.name if systems else ""
    ax.set_title(f"Indexing systems for {G} ({len(systems)})")
    ax.set_xlim(-width / 2 - 0.5, width / 2 + 0.5)
    ax.set_ylim(-0.7, len(levels) - 0.3)
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_burnside(table, path: str) -> None:
    """Heatmap of the number of orbits in each product of basis orbits."""
    plt = _pyplot()
    M = table.matrix()
    labels = [f"{table.group.name}/{b}" for b in table.basis]
    fig, ax = plt.subplots(figsize=(1.1 * len(labels) + 2, 1.1 * len(labels) + 1.5))
    im = ax.imshow(M, cmap="viridis")
    ax.set_xticks(range(len(labels)), labels, rotation=45, ha="right")
    ax.set_yticks(range(len(labels)), labels)
    top = max(max(r) for r in M) if M else 0
    for i, row in enumerate(M):
        for j, v in enumerate(row):
            ax.text(j, i, str(v), ha="center", va="center",
                    color="white" if v < top / 2 else "black", fontsize=8)
    fig.colorbar(im, ax=ax, label="orbits in product")
    ax.set_title(f"Burnside products for {table.group.name}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
