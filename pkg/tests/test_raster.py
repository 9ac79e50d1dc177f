"""Region rasterization and the byte-exact image writers."""

import hashlib
from fractions import Fraction

import numpy as np

from analine.raster import PALETTE, rasterize, write_ppm, write_svg
from analine.regions import EMPTY, parse_region


def test_disc_raster_geometry():
    grid = rasterize(parse_region("|1:1| <= 1"), (-2, -2, 2, 2),
                     Fraction(1, 64))
    rows, cols = grid.codes.shape
    assert (rows, cols) == (256, 256)
    assert grid.codes[rows // 2, cols // 2] == 1        # center is member
    assert grid.codes[0, 0] == 0                        # corner is not
    member = np.count_nonzero(grid.codes == 1)
    # cell area 1/64^2; the disc has area pi: counted area within 3%
    assert abs(member / 64**2 - np.pi) < 0.03 * np.pi


def test_boundary_band_renders_as_third_color():
    grid = rasterize(parse_region("|1:1| <= 1 & |1:1| >= 1"),
                     (-2, -2, 2, 2), Fraction(1, 64))
    assert np.count_nonzero(grid.codes == 1) == 0
    boundary = np.count_nonzero(grid.codes == 2)
    # a one-cell-wide ring: roughly 2*pi*r/step cells, loosely bounded
    assert 300 < boundary < 1200


def test_empty_region_uniform():
    grid = rasterize(EMPTY, (-2, -2, 2, 2), Fraction(1, 16))
    assert np.all(grid.codes == 0)


def test_ppm_bytes_deterministic(tmp_path):
    grid = rasterize(parse_region("|1:1| < 3/2"), (-2, -2, 2, 2),
                     Fraction(1, 32))
    p1, p2 = tmp_path / "a.ppm", tmp_path / "b.ppm"
    write_ppm(grid, str(p1))
    write_ppm(grid, str(p2))
    b1 = p1.read_bytes()
    assert b1 == p2.read_bytes()
    assert b1.startswith(b"P6\n128 128\n255\n")
    assert len(b1) == len(b"P6\n128 128\n255\n") + 128 * 128 * 3


def test_ppm_center_pixel_color(tmp_path):
    grid = rasterize(parse_region("|1:1| <= 1"), (-2, -2, 2, 2),
                     Fraction(1, 64))
    path = tmp_path / "disc.ppm"
    write_ppm(grid, str(path))
    raw = path.read_bytes()
    header_len = len(b"P6\n256 256\n255\n")
    offset = header_len + ((128 * 256) + 128) * 3
    assert tuple(raw[offset:offset + 3]) == PALETTE[0]


def test_svg_output_deterministic_and_wellformed(tmp_path):
    grid = rasterize(parse_region("|1:1| >= 1"), (-1, -1, 1, 1),
                     Fraction(1, 8))
    p1, p2 = tmp_path / "a.svg", tmp_path / "b.svg"
    write_svg(grid, str(p1))
    write_svg(grid, str(p2))
    t1 = p1.read_text()
    assert t1 == p2.read_text()
    assert t1.startswith('<?xml version="1.0"')
    assert t1.count("<rect") >= 2
    assert t1.rstrip().endswith("</svg>")


def test_formats_share_hash_stability(tmp_path):
    grid = rasterize(parse_region("(|1:1| <= 1) | (|0:-1 1:1| <= 1/2)"),
                     (-2, -2, 2, 2), Fraction(1, 16))
    path = tmp_path / "r.ppm"
    write_ppm(grid, str(path))
    h1 = hashlib.sha256(path.read_bytes()).hexdigest()
    write_ppm(grid, str(path))
    assert hashlib.sha256(path.read_bytes()).hexdigest() == h1
