"""CSV, SVG and XYZ writers for generated point sets."""

import csv
import io

import numpy as np

from .analysis import min_pair_distance


def _num(v):
    return format(float(v), ".17g")


def csv_text(q, occupation):
    """Columns x, y[, z], occupation, src (src = ';'-joined lattice vector)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "y", "z"][: q.points.shape[1]] + ["occupation", "src"])
    for p, occ, x in zip(q.points, occupation, q.sources):
        writer.writerow([_num(c) for c in p] + [_num(occ), ";".join(str(int(i)) for i in x)])
    return buf.getvalue()


def read_csv(path):
    """Points, occupation and source vectors from a file written by ``csv_text``."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    n = len(header) - 2
    points = np.array([[float(c) for c in r[:n]] for r in body]).reshape(-1, n)
    occupation = np.array([float(r[n]) for r in body])
    sources = np.array([[int(i) for i in r[n + 1].split(";")] for r in body], dtype=np.int64)
    return points, occupation, sources


def svg_text(q):
    pts = q.points
    if pts.shape[1] != 2:
        raise ValueError("SVG output needs 2-dimensional points")
    r = 0.15 * min_pair_distance(q) if len(pts) > 1 else 0.1
    lo = pts.min(axis=0) - 2 * r
    size = pts.max(axis=0) + 2 * r - lo
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_num(lo[0])} {_num(-lo[1] - size[1])} {_num(size[0])} {_num(size[1])}">'
    ]
    # flip y so the picture has the usual orientation
    for x, y in pts:
        out.append(f'<circle cx="{_num(x)}" cy="{_num(-y)}" r="{_num(r)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def xyz_text(q):
    if q.points.shape[1] != 3:
        raise ValueError("XYZ output needs 3-dimensional points")
    return "".join(" ".join(_num(c) for c in p) + "\n" for p in q.points)
