"""Static region plots: binary pixmaps and plain-rectangle vector files.

The window is divided into grid cells at the sampler step.  A cell is
painted as member only when the constraint holds over the whole cell,
as nonmember only when it fails over the whole cell, and in a third
boundary color otherwise.  Cell ranges of |f| come from rectangle
interval arithmetic with an outward inflation factor, so the boundary
band is conservative at plotting precision (the rigorous per-point
path lives in the region module).

Both writers are byte-exact functions of the inputs: the pixmap is raw
binary P6, the vector file one axis-aligned rectangle per cell with
integer cell coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .regions import FALSE, TRUE, UNDECIDED, RegionExpr
from .scalars import as_fraction

#: member, nonmember, boundary-undecided
PALETTE = ((31, 119, 180), (245, 245, 245), (255, 127, 14))

_INFLATE = 1e-12


@dataclass(frozen=True)
class CellGrid:
    """Three-valued membership codes per cell; row 0 is the top row."""

    codes: np.ndarray          # int8, shape (rows, cols)
    window: tuple
    step: Fraction


def _widen(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    pad_lo = np.abs(lo) * _INFLATE + 1e-300
    pad_hi = np.abs(hi) * _INFLATE + 1e-300
    return lo - pad_lo, hi + pad_hi


def _imul(alo, ahi, blo, bhi):
    p1, p2, p3, p4 = alo * blo, alo * bhi, ahi * blo, ahi * bhi
    lo = np.minimum(np.minimum(p1, p2), np.minimum(p3, p4))
    hi = np.maximum(np.maximum(p1, p2), np.maximum(p3, p4))
    return _widen(lo, hi)


def _iadd(alo, ahi, blo, bhi):
    return _widen(alo + blo, ahi + bhi)


def _box_eval(coeffs: list[complex], re_lo, re_hi, im_lo, im_hi):
    """Rectangle enclosure of f over the cell boxes, Horner form."""
    zero = np.zeros_like(re_lo)
    a_re_lo, a_re_hi = zero.copy(), zero.copy()
    a_im_lo, a_im_hi = zero.copy(), zero.copy()
    for c in reversed(coeffs):
        # acc = acc * z
        rr_lo, rr_hi = _imul(a_re_lo, a_re_hi, re_lo, re_hi)
        ii_lo, ii_hi = _imul(a_im_lo, a_im_hi, im_lo, im_hi)
        ri_lo, ri_hi = _imul(a_re_lo, a_re_hi, im_lo, im_hi)
        ir_lo, ir_hi = _imul(a_im_lo, a_im_hi, re_lo, re_hi)
        n_re_lo, n_re_hi = _iadd(rr_lo, rr_hi, -ii_hi, -ii_lo)
        n_im_lo, n_im_hi = _iadd(ri_lo, ri_hi, ir_lo, ir_hi)
        # acc += c
        a_re_lo, a_re_hi = _iadd(n_re_lo, n_re_hi,
                                 np.full_like(zero, c.real),
                                 np.full_like(zero, c.real))
        a_im_lo, a_im_hi = _iadd(n_im_lo, n_im_hi,
                                 np.full_like(zero, c.imag),
                                 np.full_like(zero, c.imag))
    return a_re_lo, a_re_hi, a_im_lo, a_im_hi


def _abs_range(re_lo, re_hi, im_lo, im_hi):
    """Range of |z| over a rectangle: nearest and farthest point to 0."""
    re_near = np.where(re_lo > 0, re_lo, np.where(re_hi < 0, -re_hi, 0.0))
    im_near = np.where(im_lo > 0, im_lo, np.where(im_hi < 0, -im_hi, 0.0))
    near = np.hypot(re_near, im_near)
    far = np.hypot(np.maximum(np.abs(re_lo), np.abs(re_hi)),
                   np.maximum(np.abs(im_lo), np.abs(im_hi)))
    lo, hi = _widen(near, far)
    return np.maximum(lo, 0.0), hi


def rasterize(region: RegionExpr, window, step) -> CellGrid:
    """Classify every cell of the window at the given step."""
    x0, y0, x1, y1 = (as_fraction(w) for w in window)
    step = as_fraction(step)
    cols = max(1, int((x1 - x0) / step))
    rows = max(1, int((y1 - y0) / step))
    xs_lo = np.array([float(x0 + i * step) for i in range(cols)])
    xs_hi = np.array([float(x0 + (i + 1) * step) for i in range(cols)])
    # row 0 at the top of the window
    ys_hi = np.array([float(y1 - j * step) for j in range(rows)])
    ys_lo = np.array([float(y1 - (j + 1) * step) for j in range(rows)])
    re_lo = np.broadcast_to(xs_lo[None, :], (rows, cols)).reshape(-1)
    re_hi = np.broadcast_to(xs_hi[None, :], (rows, cols)).reshape(-1)
    im_lo = np.broadcast_to(ys_lo[:, None], (rows, cols)).reshape(-1)
    im_hi = np.broadcast_to(ys_hi[:, None], (rows, cols)).reshape(-1)

    n = rows * cols
    abs_cache: dict = {}

    def constraint_codes(con) -> np.ndarray:
        rng = abs_cache.get(con.f)
        if rng is None:
            box = _box_eval(con.f.to_complex_list(), re_lo, re_hi, im_lo, im_hi)
            rng = _abs_range(*box)
            abs_cache[con.f] = rng
        v_lo, v_hi = rng
        c = float(con.c)
        out = np.full(n, UNDECIDED, dtype=np.int8)
        if con.rel in ("<=", "<"):
            out[v_hi < c] = TRUE
            out[v_lo > c] = FALSE
        else:
            out[v_lo > c] = TRUE
            out[v_hi < c] = FALSE
        return out

    if not region.terms:
        codes = np.full(n, FALSE, dtype=np.int8)
    else:
        any_true = np.zeros(n, dtype=bool)
        any_undec = np.zeros(n, dtype=bool)
        for term in region.terms:
            if not term:
                any_true[:] = True
                continue
            t_false = np.zeros(n, dtype=bool)
            t_undec = np.zeros(n, dtype=bool)
            for con in term:
                m = constraint_codes(con)
                t_false |= m == FALSE
                t_undec |= m == UNDECIDED
            any_true |= ~(t_false | t_undec)
            any_undec |= t_undec & ~t_false
        codes = np.full(n, FALSE, dtype=np.int8)
        codes[any_undec] = UNDECIDED
        codes[any_true] = TRUE
    return CellGrid(codes.reshape(rows, cols), tuple((x0, y0, x1, y1)), step)


def write_ppm(grid: CellGrid, path: str) -> None:
    """Binary portable pixmap, magic P6, 8-bit RGB, one pixel per cell."""
    rows, cols = grid.codes.shape
    lut = np.array([PALETTE[1], PALETTE[0], PALETTE[2]], dtype=np.uint8)
    pixels = lut[grid.codes]
    header = f"P6\n{cols} {rows}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(pixels.tobytes())


def write_svg(grid: CellGrid, path: str) -> None:
    """Plain rectangles per cell in cell coordinates, deterministic."""
    rows, cols = grid.codes.shape
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {cols} {rows}" '
        f'width="{cols}" height="{rows}" shape-rendering="crispEdges">',
        f'<rect x="0" y="0" width="{cols}" height="{rows}" '
        f'fill="{_hex(PALETTE[1])}"/>',
    ]
    for j in range(rows):
        for i in range(cols):
            code = grid.codes[j, i]
            if code == FALSE:
                continue
            color = PALETTE[0] if code == TRUE else PALETTE[2]
            lines.append(f'<rect x="{i}" y="{j}" width="1" height="1" '
                         f'fill="{_hex(color)}"/>')
    lines.append("</svg>")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _hex(rgb) -> str:
    return "#" + "".join(f"{v:02x}" for v in rgb)
