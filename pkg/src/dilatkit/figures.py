"""Static figures of polygon presentations and their invariants.

Everything goes through the object-oriented matplotlib API on an Agg
canvas, so nothing depends on an interactive backend.  SVG output is made
reproducible by fixing the hash salt, keeping text as text and dropping
the date from the metadata.
"""

import io as _io
import os

import matplotlib
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure
from matplotlib.patches import FancyArrowPatch, Polygon as PolygonPatch

_STYLE = {
    "svg.hashsalt": "dilatkit",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
}

_CURVE_COLOURS = ["tab:red", "tab:blue", "tab:green", "tab:purple",
                  "tab:orange", "tab:brown", "tab:pink", "tab:olive"]
_GAP = 0.35


def _layout_offsets(surface):
    """Horizontal offsets placing the polygons side by side."""
    offsets, x = [], 0.0
    for poly in surface.polygons:
        xs = [float(v.re) for v in poly]
        ys = [float(v.im) for v in poly]
        width = max(xs) - min(xs)
        height = max(ys) - min(ys)
        offsets.append((x - min(xs), -min(ys)))
        x += width + _GAP * max(width, height, 1e-9)
    return offsets


def _xy(z, off):
    return float(z.re) + off[0], float(z.im) + off[1]


def _fmt(q):
    return str(q.re) if q.im == 0 else f"{q.re}+{q.im}i"


def draw_surface(ax, surface, curves=(), annotate=True):
    offsets = _layout_offsets(surface)
    for p, poly in enumerate(surface.polygons):
        off = offsets[p]
        patch = PolygonPatch([_xy(v, off) for v in poly], closed=True,
                             facecolor="0.93", edgecolor="0.2", linewidth=1.0)
        patch.set_gid(f"polygon-{p}")
        ax.add_patch(patch)
    if annotate:
        for k, (s1, s2) in enumerate(surface.pairings):
            a = surface.gluing_maps[k].a
            for which, (p, e) in enumerate((s1, s2)):
                poly = surface.polygons[p]
                u, v = poly[e], poly[(e + 1) % len(poly)]
                mx, my = _xy((u + v) / 2, offsets[p])
                d = v - u
                # nudge the label inside the polygon
                nx, ny = -float(d.im), float(d.re)
                norm = max((nx * nx + ny * ny) ** 0.5, 1e-12)
                scale = 0.06 * max(abs(d), 1e-12) ** 0.5
                label = str(k) if a.is_positive_real() and a.re == 1 else f"{k}: {_fmt(a)}"
                if which == 1:
                    label = str(k)
                t = ax.text(mx + scale * nx / norm, my + scale * ny / norm, label,
                            ha="center", va="center", fontsize=7, color="tab:blue")
                t.set_gid(f"pairing-{k}" if which == 0 else f"pairing-{k}-partner")
        for c, cls in enumerate(surface.vertex_classes):
            cone = surface.cones[c]
            marked = c in surface.marked
            for j, (p, i) in enumerate(cls):
                x, y = _xy(surface.polygons[p][i], offsets[p])
                dot = ax.plot([x], [y], marker="o", markersize=3.5,
                              color=_CURVE_COLOURS[c % len(_CURVE_COLOURS)],
                              markerfacecolor="white" if not marked else None)[0]
                dot.set_gid(f"vertex-{c}-{j}")
            p, i = cls[0]
            x, y = _xy(surface.polygons[p][i], offsets[p])
            angle = cone.angle_turns
            txt = f"P{c}: {angle}" if surface.exact else f"P{c}: {float(angle):.4g}"
            t = ax.text(x, y, txt, fontsize=6, ha="right", va="top", color="0.3")
            t.set_gid(f"cone-{c}")
    for j, path in enumerate(curves):
        colour = _CURVE_COLOURS[j % len(_CURVE_COLOURS)]
        xs, ys = [], []
        for s, seg in enumerate(path.segments):
            off = offsets[seg.polygon]
            (x0, y0), (x1, y1) = _xy(seg.start, off), _xy(seg.end, off)
            # NaN breaks the polyline where the path jumps across a gluing
            xs += [x0, x1, float("nan")]
            ys += [y0, y1, float("nan")]
            head = FancyArrowPatch((x0, y0), ((x0 + x1) / 2, (y0 + y1) / 2),
                                   arrowstyle="-|>", mutation_scale=8, color=colour,
                                   linewidth=0, shrinkA=0, shrinkB=0)
            head.set_gid(f"curve-{j}-arrow-{s}")
            ax.add_patch(head)
        line = ax.plot(xs, ys, color=colour, linewidth=1.0)[0]
        line.set_gid(f"curve-{j}")
    ax.set_aspect("equal")
    ax.autoscale_view()
    ax.axis("off")
    return ax


def surface_figure(surface, curves=(), title=None):
    with matplotlib.rc_context(_STYLE):
        n = len(surface.polygons)
        fig = Figure(figsize=(min(3.0 + 2.2 * n, 12), 3.6))
        FigureCanvasAgg(fig)
        ax = fig.add_subplot(1, 1, 1)
        ax.margins(0.08)
        draw_surface(ax, surface, curves)
        if title:
            ax.set_title(title)
    return fig


def cone_figure(surface):
    """Angle (in turns) and log dilation factor of each marked point."""
    with matplotlib.rc_context(_STYLE):
        fig = Figure(figsize=(6, 2.8))
        FigureCanvasAgg(fig)
        ax1, ax2 = fig.subplots(1, 2)
        cones = surface.marked_cones
        labels = [f"P{c.vertex_class}" for c in cones]
        ax1.bar(labels, [float(c.angle_turns) for c in cones], color="0.5")
        ax1.set_ylabel("cone angle / 2pi")
        ax2.bar(labels, [c.log_factor for c in cones], color="tab:blue")
        ax2.axhline(0, color="0.2", linewidth=0.6)
        ax2.set_ylabel("log dilation factor")
        fig.tight_layout()
    return fig


def orbit_figure(enumeration, sig):
    """Orbit sizes found by the move-system search."""
    with matplotlib.rc_context(_STYLE):
        fig = Figure(figsize=(4, 2.8))
        FigureCanvasAgg(fig)
        ax = fig.add_subplot(1, 1, 1)
        labels = ["".join(str(x) for x in nf) or "-" for nf in enumeration.normal_forms]
        ax.bar(range(len(labels)), [1] * len(labels), color="0.6")
        ax.set_xticks(range(len(labels)))
        ax.set_xticklabels(labels, rotation=45, fontsize=6)
        ax.set_yticks([])
        ax.set_title(f"g={sig.genus} kappa={list(sig.kappa)}: {enumeration.count} orbits")
        fig.tight_layout()
    return fig


def save(fig, path):
    """Write ``fig``; SVG files are byte-for-byte reproducible."""
    ext = os.path.splitext(path)[1].lower()
    with matplotlib.rc_context(_STYLE):
        if ext == ".svg":
            fig.savefig(path, format="svg", metadata={"Date": None})
        else:
            fig.savefig(path, metadata={"Software": None} if ext == ".png" else None)
    return path


def svg_text(fig):
    buf = _io.StringIO()
    with matplotlib.rc_context(_STYLE):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()
