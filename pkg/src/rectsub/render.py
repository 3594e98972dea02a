"""Drawing subdivisions and solutions: SVG text and matplotlib figures."""

from __future__ import annotations

from xml.sax.saxutils import quoteattr

from .geometry import FaceClass, Subdivision

COLOURS = {
    FaceClass.GENERIC: "#dfe7ef",
    FaceClass.VARIABLE: "#cfe3c4",
    FaceClass.CLAUSE: "#f5d9a8",
    FaceClass.OUTER: "#eeeeee",
}
HIGHLIGHT = "#d9534f"


def _face_path(sub: Subdivision, f: int) -> str:
    parts = []
    for loop in sub.face_loops(f):
        parts.append("M " + " L ".join(f"{p.x} {p.y}" for p in loop) + " Z")
    return " ".join(parts)


def _chosen(solution):
    """Split a solution (object or bare list) into points and face ids."""
    if solution is None:
        return [], set()
    if hasattr(solution, "points"):
        return [tuple(p) for p in solution.points], set()
    if hasattr(solution, "face_ids"):
        return [], set(solution.face_ids)
    items = list(solution)
    if items and all(isinstance(i, int) for i in items):
        return [], set(items)
    return [tuple(p) for p in items], set()


def render_svg(sub: Subdivision, solution=None, scale: float = 20.0, margin: float = 1.0) -> str:
    """SVG 1.1 drawing: one ``path`` per face, segments as strokes.

    Faces carry ``data-face`` and ``data-class`` attributes; faces of a face
    solution get ``class="face selected"``, and each point of a point
    solution becomes a ``circle class="point"``.
    """
    points, faces = _chosen(solution)
    xs = [s.a.x for s in sub.segments] + [s.b.x for s in sub.segments] or [0]
    ys = [s.a.y for s in sub.segments] + [s.b.y for s in sub.segments] or [0]
    x0, x1 = min(xs) - margin, max(xs) + margin
    y0, y1 = min(ys) - margin, max(ys) + margin
    w, h = (x1 - x0) * scale, (y1 - y0) * scale
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:g}" height="{h:g}" '
        f'viewBox="{x0:g} {-y1:g} {x1 - x0:g} {y1 - y0:g}">',
        '<g transform="scale(1,-1)">',
    ]
    for face in sub.faces:
        sel = face.id in faces
        fill = HIGHLIGHT if sel else COLOURS[face.cls]
        cls = "face selected" if sel else "face"
        out.append(
            f'<path class={quoteattr(cls)} data-face="{face.id}" data-class="{face.cls.value}" '
            f'fill="{fill}" fill-rule="evenodd" stroke="none" d="{_face_path(sub, face.id)}"/>'
        )
    stroke = 0.08
    for s in sub.segments:
        out.append(
            f'<line class="segment" x1="{s.a.x}" y1="{s.a.y}" x2="{s.b.x}" y2="{s.b.y}" '
            f'stroke="#222" stroke-width="{stroke}" stroke-linecap="square"/>'
        )
    for x, y in points:
        out.append(f'<circle class="point" cx="{x}" cy="{y}" r="0.25" fill="{HIGHLIGHT}" stroke="#000" stroke-width="0.04"/>')
    out += ["</g>", "</svg>", ""]
    return "\n".join(out)


def render_figure(sub: Subdivision, path: str, solution=None, title: str | None = None):
    """Write a matplotlib drawing of ``sub`` (format chosen by the file suffix)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import PathPatch
    from matplotlib.path import Path as MplPath

    points, faces = _chosen(solution)
    fig, ax = plt.subplots(figsize=(8, 5))
    for face in sub.faces:
        verts, codes = [], []
        for loop in sub.face_loops(face.id):
            verts += [(p.x, p.y) for p in loop] + [(loop[0].x, loop[0].y)]
            codes += [MplPath.MOVETO] + [MplPath.LINETO] * (len(loop) - 1) + [MplPath.CLOSEPOLY]
        colour = HIGHLIGHT if face.id in faces else COLOURS[face.cls]
        ax.add_patch(PathPatch(MplPath(verts, codes), facecolor=colour, edgecolor="none"))
    for s in sub.segments:
        ax.plot([s.a.x, s.b.x], [s.a.y, s.b.y], color="#222", linewidth=0.8)
    if points:
        ax.scatter([p[0] for p in points], [p[1] for p in points], s=18, color=HIGHLIGHT, zorder=3)
    ax.set_aspect("equal")
    ax.autoscale_view()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def ratio_figure(rows: list[dict], path: str):
    """Scatter of greedy and local-search sizes against the exact optimum."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4.5))
    exact = [r["exact"] for r in rows]
    ax.scatter(exact, [r["greedy"] for r in rows], s=14, label="greedy", alpha=0.7)
    ax.scatter(exact, [r["local_search"] for r in rows], s=14, marker="x", label="local search (k=3)")
    top = max(exact + [1])
    ax.plot([0, top], [0, top], color="#888", linewidth=0.8, label="exact")
    ax.plot([0, top], [0, top * 25 / 12], color="#c33", linestyle="--", linewidth=0.8, label="25/12 bound")
    ax.set_xlabel("exact stabbing number")
    ax.set_ylabel("solution size")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
