"""Bit-exact writers for point sets and shadow grids.

All output is ASCII with LF line endings and no locale-dependent formatting,
so files are byte-identical across runs and platforms.  Formats:

- csv:   header "x0,...,x{d-1}", one row per point, canonical order.
- jsonl: one JSON array per line, compact separators.
- obj:   "v x y z" vertex lines, d = 3 only; no faces, the artifact is a
         discrete point set.
- svg:   unit squares per point (or greyscale cells per shadow count),
         y-axis flipped so the origin is bottom-left, viewBox [0, 2**n]^2;
         2-dimensional data only.

Shadow csv carries no header: each row is the cell coordinates followed by
the count, so the degenerate 0-dimensional grid serializes as ",<count>".
"""

from __future__ import annotations

import io
import json
from typing import IO, Iterable

from .core import Position
from .errors import BadRequestError
from .fractal import PointSet
from .geometry import ShadowGrid

POINTSET_FORMATS = ("csv", "jsonl", "obj", "svg")
SHADOW_FORMATS = ("csv", "svg")


def check_pointset_format(fmt: str, d: int) -> None:
    """Reject unknown formats and format/dimension mismatches."""
    if fmt not in POINTSET_FORMATS:
        raise BadRequestError(
            f"unknown point set format {fmt!r}; expected one of {POINTSET_FORMATS}")
    if fmt == "obj" and d != 3:
        raise BadRequestError(f"obj output needs dimension 3, got {d}")
    if fmt == "svg" and d != 2:
        raise BadRequestError(f"svg output needs dimension 2, got {d}")


def write_points(sink: IO[bytes], d: int, n: int, points: Iterable[Position],
                 fmt: str) -> None:
    """Stream ``points`` (canonical order, all below 2**n) to a binary sink."""
    check_pointset_format(fmt, d)
    if fmt == "csv":
        sink.write((",".join(f"x{i}" for i in range(d)) + "\n").encode("ascii"))
        for point in points:
            sink.write((",".join(map(str, point)) + "\n").encode("ascii"))
    elif fmt == "jsonl":
        for point in points:
            sink.write((json.dumps(list(point), separators=(",", ":")) + "\n")
                       .encode("ascii"))
    elif fmt == "obj":
        for point in points:
            sink.write(f"v {point[0]} {point[1]} {point[2]}\n".encode("ascii"))
    else:
        side = 1 << n
        sink.write(
            (f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {side} {side}"'
             f' shape-rendering="crispEdges">\n').encode("ascii"))
        for point in points:
            x, y = point[0], side - 1 - point[1]
            sink.write(f'<rect x="{x}" y="{y}" width="1" height="1"/>\n'
                       .encode("ascii"))
        sink.write(b"</svg>\n")


def write_pointset(ps: PointSet, fmt: str, sink: IO[bytes]) -> None:
    write_points(sink, ps.d, ps.n, ps.points, fmt)


def dumps_pointset(ps: PointSet, fmt: str) -> bytes:
    buffer = io.BytesIO()
    write_pointset(ps, fmt, buffer)
    return buffer.getvalue()


def _grey(count: int) -> str:
    # Count 0 is white, count 1 black per contract; nothing renders darker
    # than black, so higher counts clamp.
    value = max(0, 255 * (1 - count))
    return f"#{value:02x}{value:02x}{value:02x}"


def write_shadow(grid: ShadowGrid, fmt: str, sink: IO[bytes]) -> None:
    """Serialize a shadow grid; cells in lexicographic order."""
    if fmt not in SHADOW_FORMATS:
        raise BadRequestError(
            f"unknown shadow format {fmt!r}; expected one of {SHADOW_FORMATS}")
    if fmt == "svg" and grid.d_reduced != 2:
        raise BadRequestError(
            f"svg output needs a 2-dimensional grid, got {grid.d_reduced}")
    cells = sorted(grid.counts.items())
    if fmt == "csv":
        for cell, count in cells:
            row = ",".join(map(str, cell)) + "," + str(count)
            sink.write((row + "\n").encode("ascii"))
    else:
        side = 1 << grid.n
        sink.write(
            (f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {side} {side}"'
             f' shape-rendering="crispEdges">\n').encode("ascii"))
        for cell, count in cells:
            if count == 0:
                continue
            x, y = cell[0], side - 1 - cell[1]
            sink.write(
                f'<rect x="{x}" y="{y}" width="1" height="1" fill="{_grey(count)}"/>\n'
                .encode("ascii"))
        sink.write(b"</svg>\n")


def dumps_shadow(grid: ShadowGrid, fmt: str) -> bytes:
    buffer = io.BytesIO()
    write_shadow(grid, fmt, buffer)
    return buffer.getvalue()


def read_pointset_csv(data: bytes, n: int | None = None) -> PointSet:
    """Parse a csv export back into a PointSet.

    The csv does not carry the bounding exponent; pass ``n`` to restore it,
    otherwise the smallest exponent covering the coordinates is used.
    """
    lines = data.decode("ascii").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise BadRequestError("csv data is empty")
    header = lines[0].split(",")
    d = len(header)
    if header != [f"x{i}" for i in range(d)]:
        raise BadRequestError(f"unrecognized csv header {lines[0]!r}")
    points = tuple(tuple(int(field) for field in line.split(","))
                   for line in lines[1:])
    if n is None:
        n = max((c.bit_length() for point in points for c in point), default=0)
    return PointSet(d=d, n=n, points=points)
