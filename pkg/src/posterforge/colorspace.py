"""sRGB <-> CIELAB conversion and the discrete color representation.

Colors are quantized to (ab_bin, light_bin): ab bins are the in-gamut
cells of a 10-unit grid over the CIELAB ab plane, lightness is split
into 10 even bins over [0, 100].

Gamut convention (pinned, see assets/ab_gamut.txt): bin centers lie on
multiples of 10 spanning [-110, 110]; a bin is in-gamut when its center
is within one cell diagonal (10*sqrt(2)) of the (a, b) coordinates of at
least one 8-bit sRGB color. Full enumeration of the sRGB cube yields
exactly 313 such bins.
"""

import importlib.resources
from typing import NamedTuple

import numpy as np

from . import kernels

N_AB_BINS = 313
N_LIGHT_BINS = 10
GRID = 10.0
_DILATE = GRID * np.sqrt(2.0)


class LabColor(NamedTuple):
    L: float
    a: float
    b: float


class QColor(NamedTuple):
    """Quantized color: in-gamut ab bin index + lightness bin."""

    ab_bin: int
    light_bin: int


def validate_qcolor(q, n_ab=N_AB_BINS):
    if not (0 <= q.ab_bin < n_ab):
        raise ValueError(f"ab_bin {q.ab_bin} outside [0, {n_ab})")
    if not (0 <= q.light_bin < N_LIGHT_BINS):
        raise ValueError(f"light_bin {q.light_bin} outside [0, {N_LIGHT_BINS})")


def srgb_to_lab(rgb):
    """Convert one sRGB triplet in [0,1] to LabColor (D65, 2 deg)."""
    arr = np.asarray(rgb, dtype=np.float64).reshape(1, 3)
    lab = kernels.srgb_to_lab_flat(arr)[0]
    return LabColor(float(lab[0]), float(lab[1]), float(lab[2]))


def lab_to_srgb(lab):
    """Inverse transform; out-of-gamut channels are clipped to [0,1]."""
    arr = np.asarray(lab, dtype=np.float64).reshape(1, 3)
    rgb = kernels.lab_to_srgb_flat(arr)[0]
    return (float(rgb[0]), float(rgb[1]), float(rgb[2]))


def srgb_image_to_lab(arr):
    """(H, W, 3) sRGB array -> (H, W, 3) Lab array."""
    arr = np.asarray(arr, dtype=np.float64)
    flat = kernels.srgb_to_lab_flat(arr.reshape(-1, 3))
    return flat.reshape(arr.shape)


def lab_image_to_srgb(arr):
    arr = np.asarray(arr, dtype=np.float64)
    flat = kernels.lab_to_srgb_flat(arr.reshape(-1, 3))
    return flat.reshape(arr.shape)


class AbGamut:
    """The ordered in-gamut ab bins; immutable after construction."""

    def __init__(self, centers):
        centers = np.asarray(centers, dtype=np.float64)
        if centers.ndim != 2 or centers.shape[1] != 2:
            raise ValueError(f"centers must be (Q, 2), got {centers.shape}")
        order = np.lexsort((centers[:, 1], centers[:, 0]))  # row-major: a, then b
        self.centers = np.ascontiguousarray(centers[order])
        self.centers.flags.writeable = False
        if len(np.unique(self.centers, axis=0)) != len(self.centers):
            raise ValueError("duplicate gamut centers")
        self._cell_index = {
            (int(round(a / GRID)), int(round(b / GRID))): i
            for i, (a, b) in enumerate(self.centers)
        }

    def __len__(self):
        return self.centers.shape[0]

    def __eq__(self, other):
        return isinstance(other, AbGamut) and np.array_equal(
            self.centers, other.centers
        )


def _enum_values(stride):
    v = np.arange(0, 256, stride, dtype=np.int64)
    if v[-1] != 255:
        v = np.append(v, 255)
    return v.astype(np.float64) / 255.0


def build_ab_gamut(stride=1):
    """Enumerate the 8-bit sRGB cube and derive the in-gamut ab bins.

    Two passes over the cube: pass 1 marks occupied grid cells, pass 2
    collects only the points near candidate cells that are unoccupied,
    then exact minimum distances decide borderline bins. The stride
    parameter thins the enumeration (endpoint 255 always kept); the
    resulting bin set is stable from stride 4 down to 1.
    """
    vals = _enum_values(stride)
    n = len(vals)
    occupied = np.zeros((23, 23), dtype=bool)  # cell k in [-11, 11] -> k + 11

    def cells_of(ab):
        ka = np.floor((ab[:, 0] + GRID / 2) / GRID).astype(np.int64)
        kb = np.floor((ab[:, 1] + GRID / 2) / GRID).astype(np.int64)
        return ka, kb

    gb, bb = np.meshgrid(vals, vals, indexing="ij")
    gb = gb.ravel()
    bb = bb.ravel()
    plane = np.empty((gb.shape[0], 3), dtype=np.float64)
    plane[:, 1] = gb
    plane[:, 2] = bb

    for i in range(n):
        plane[:, 0] = vals[i]
        ab = kernels.srgb_to_lab_flat(plane)[:, 1:]
        ka, kb = cells_of(ab)
        occupied[ka + 11, kb + 11] = True

    # candidates: occupied cells are in by definition; their unoccupied
    # neighbors (Chebyshev <= 1) may be within one diagonal of a point
    cand = np.zeros_like(occupied)
    oy, ox = np.nonzero(occupied)
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            cand[np.clip(oy + dy, 0, 22), np.clip(ox + dx, 0, 22)] = True
    pend_k = np.argwhere(cand & ~occupied) - 11  # cell coords of pending bins
    pend_centers = pend_k.astype(np.float64) * GRID

    best = np.full(len(pend_centers), np.inf)
    for i in range(n):
        plane[:, 0] = vals[i]
        ab = kernels.srgb_to_lab_flat(plane)[:, 1:]
        # only points within Chebyshev 2 cells of some pending bin matter
        ka, kb = cells_of(ab)
        near = np.zeros(len(ab), dtype=bool)
        for pa, pb in pend_k:
            near |= (np.abs(ka - pa) <= 2) & (np.abs(kb - pb) <= 2)
        if near.any():
            d2 = kernels.min_center_dist2(ab[near], pend_centers)
            np.minimum(best, d2, out=best)

    keep = np.sqrt(best) <= _DILATE + 1e-9
    centers = [((k[0] - 11) * GRID, (k[1] - 11) * GRID) for k in np.argwhere(occupied)]
    centers.extend((float(c[0]), float(c[1])) for c in pend_centers[keep])
    return AbGamut(np.array(centers))


def save_gamut_table(g, path):
    with open(path, "w", encoding="utf-8") as f:
        for a, b in g.centers:
            f.write(f"{a:g} {b:g}\n")


def load_gamut_table(path):
    centers = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                a, b = line.split()
                centers.append((float(a), float(b)))
    return AbGamut(np.array(centers))


_default = None


def default_gamut():
    """The pinned 313-bin gamut shipped with the package."""
    global _default
    if _default is None:
        ref = importlib.resources.files("posterforge") / "assets" / "ab_gamut.txt"
        with importlib.resources.as_file(ref) as path:
            g = load_gamut_table(path)
        if len(g) != N_AB_BINS:
            raise RuntimeError(f"gamut asset has {len(g)} bins, expected {N_AB_BINS}")
        _default = g
    return _default


def quantize_ab(lab, g):
    """Index of the in-gamut bin center nearest in (a, b); ties -> lowest."""
    pt = np.array([[lab[1], lab[2]]], dtype=np.float64)
    return int(kernels.nearest_center(pt, g.centers)[0])


def quantize_ab_array(ab, g):
    """Vectorized quantize_ab over an (N, 2) array of ab values."""
    return kernels.nearest_center(np.asarray(ab, dtype=np.float64), g.centers)


def quantize_light(L):
    """Lightness bin: min(floor(L/10), 9); L is clamped to [0, 100]."""
    L = min(100.0, max(0.0, float(L)))
    return min(int(L // 10), N_LIGHT_BINS - 1)


def light_representative(light_bin):
    return light_bin * 10.0 + 5.0


def dequantize(q, g):
    """LabColor at the bin's (a, b) center and lightness interval center."""
    validate_qcolor(q, n_ab=len(g))
    a, b = g.centers[q.ab_bin]
    return LabColor(light_representative(q.light_bin), float(a), float(b))


def quantize_color(lab, g):
    """Full quantization of a LabColor to a QColor."""
    return QColor(quantize_ab(lab, g), quantize_light(lab[0]))


def qcolor_to_srgb(q, g):
    return lab_to_srgb(dequantize(q, g))
