"""Pure-numpy implementations of the hot kernels.

Reference semantics for the numba twin in ``_numba_impl``; both backends
must agree within float tolerance on every function here.
"""

import numpy as np

# sRGB <-> CIELAB constants (D65, 2 degree observer)
_RGB2XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_XYZ2RGB = np.array(
    [
        [3.2404542, -1.5371385, -0.4985314],
        [-0.9692660, 1.8760108, 0.0415560],
        [0.0556434, -0.2040259, 1.0572252],
    ]
)
_WHITE = np.array([0.95047, 1.0, 1.08883])
_DELTA = 6.0 / 29.0


def srgb_to_lab_flat(rgb):
    rgb = np.asarray(rgb, dtype=np.float64)
    lin = np.where(rgb <= 0.04045, rgb / 12.92, ((rgb + 0.055) / 1.055) ** 2.4)
    xyz = lin @ _RGB2XYZ.T
    t = xyz / _WHITE
    f = np.where(t > _DELTA**3, np.cbrt(t), t / (3.0 * _DELTA * _DELTA) + 4.0 / 29.0)
    out = np.empty_like(rgb)
    out[:, 0] = 116.0 * f[:, 1] - 16.0
    out[:, 1] = 500.0 * (f[:, 0] - f[:, 1])
    out[:, 2] = 200.0 * (f[:, 1] - f[:, 2])
    return out


def lab_to_srgb_flat(lab):
    lab = np.asarray(lab, dtype=np.float64)
    fy = (lab[:, 0] + 16.0) / 116.0
    fx = fy + lab[:, 1] / 500.0
    fz = fy - lab[:, 2] / 200.0
    f = np.stack([fx, fy, fz], axis=-1)
    t = np.where(f > _DELTA, f**3, 3.0 * _DELTA * _DELTA * (f - 4.0 / 29.0))
    lin = (t * _WHITE) @ _XYZ2RGB.T
    srgb = np.where(
        lin <= 0.0031308,
        12.92 * lin,
        1.055 * np.sign(lin) * np.abs(lin) ** (1.0 / 2.4) - 0.055,
    )
    return np.clip(srgb, 0.0, 1.0)


def resize_bilinear(src, out_h, out_w):
    src = np.asarray(src, dtype=np.float64)
    h, w = src.shape[0], src.shape[1]
    sy = (np.arange(out_h) + 0.5) * (h / out_h) - 0.5
    sx = (np.arange(out_w) + 0.5) * (w / out_w) - 0.5
    sy = np.clip(sy, 0.0, h - 1.0)
    sx = np.clip(sx, 0.0, w - 1.0)
    y0 = np.floor(sy).astype(np.int64)
    x0 = np.floor(sx).astype(np.int64)
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    fy = (sy - y0)[:, None, None]
    fx = (sx - x0)[None, :, None]
    a = src[np.ix_(y0, x0)]
    b = src[np.ix_(y0, x1)]
    c = src[np.ix_(y1, x0)]
    d = src[np.ix_(y1, x1)]
    top = a * (1.0 - fx) + b * fx
    bot = c * (1.0 - fx) + d * fx
    return top * (1.0 - fy) + bot * fy


def convolve_axis(src, kern, axis):
    """1D correlation along ``axis`` (0 or 1) with edge-replicate padding."""
    src = np.asarray(src, dtype=np.float64)
    kern = np.asarray(kern, dtype=np.float64)
    r = (kern.shape[0] - 1) // 2
    pad = [(0, 0)] * src.ndim
    pad[axis] = (r, r)
    padded = np.pad(src, pad, mode="edge")
    win = np.lib.stride_tricks.sliding_window_view(padded, kern.shape[0], axis=axis)
    return np.tensordot(win, kern, axes=([-1], [0]))


def integral_image(m):
    m = np.asarray(m, dtype=np.float64)
    out = np.zeros((m.shape[0] + 1, m.shape[1] + 1), dtype=np.float64)
    np.cumsum(np.cumsum(m, axis=0), axis=1, out=out[1:, 1:])
    return out


def window_sums(ii, win_h, win_w):
    h = ii.shape[0] - 1
    w = ii.shape[1] - 1
    oh = h - win_h + 1
    ow = w - win_w + 1
    return (
        ii[win_h : win_h + oh, win_w : win_w + ow]
        - ii[0:oh, win_w : win_w + ow]
        - ii[win_h : win_h + oh, 0:ow]
        + ii[0:oh, 0:ow]
    )


def diffusion_fill(img, mask, max_iter, tol):
    """Jacobi fill of masked pixels by in-bounds 4-neighbor averaging."""
    img = np.asarray(img, dtype=np.float64)
    mask = np.asarray(mask, dtype=bool)
    cur = img.copy()
    if not mask.any():
        return cur
    unmasked = ~mask
    if unmasked.any():
        seed = img[unmasked].reshape(-1, img.shape[2]).mean(axis=0)
    else:
        seed = img.reshape(-1, img.shape[2]).mean(axis=0)
    cur[mask] = seed

    h, w = mask.shape
    count = np.zeros((h, w), dtype=np.float64)
    count[1:, :] += 1.0
    count[:-1, :] += 1.0
    count[:, 1:] += 1.0
    count[:, :-1] += 1.0

    for _ in range(max_iter):
        s = np.zeros_like(cur)
        s[1:, :] += cur[:-1, :]
        s[:-1, :] += cur[1:, :]
        s[:, 1:] += cur[:, :-1]
        s[:, :-1] += cur[:, 1:]
        new = s / count[:, :, None]
        delta = np.abs(new[mask] - cur[mask]).max()
        cur[mask] = new[mask]
        if delta < tol:
            break
    return cur


def min_center_dist2(pts, centers):
    """Minimum squared distance from each center to the point set."""
    pts = np.asarray(pts, dtype=np.float64)
    centers = np.asarray(centers, dtype=np.float64)
    best = np.full(centers.shape[0], np.inf)
    step = 65536
    for i in range(0, pts.shape[0], step):
        chunk = pts[i : i + step]
        d2 = (chunk[:, 0:1] - centers[None, :, 0]) ** 2 + (
            chunk[:, 1:2] - centers[None, :, 1]
        ) ** 2
        np.minimum(best, d2.min(axis=0), out=best)
    return best


def nearest_center(pts, centers):
    """Index of the nearest center per point; ties go to the lowest index."""
    pts = np.asarray(pts, dtype=np.float64)
    centers = np.asarray(centers, dtype=np.float64)
    out = np.empty(pts.shape[0], dtype=np.int64)
    step = 65536
    for i in range(0, pts.shape[0], step):
        chunk = pts[i : i + step]
        d2 = (chunk[:, 0:1] - centers[None, :, 0]) ** 2 + (
            chunk[:, 1:2] - centers[None, :, 1]
        ) ** 2
        out[i : i + step] = d2.argmin(axis=1)
    return out


def im2col(img, k, stride, pad):
    """Patch matrix: row p = flattened k x k x C patch at output position p.

    Column layout: (ky * k + kx) * C + c. Zero padding of width ``pad``.
    """
    img = np.asarray(img, dtype=np.float64)
    h, w, c = img.shape
    padded = np.pad(img, ((pad, pad), (pad, pad), (0, 0)))
    oh = (h + 2 * pad - k) // stride + 1
    ow = (w + 2 * pad - k) // stride + 1
    win = np.lib.stride_tricks.sliding_window_view(padded, (k, k), axis=(0, 1))
    win = win[::stride, ::stride]  # (oh, ow, C, k, k)
    win = win.transpose(0, 1, 3, 4, 2)  # (oh, ow, k, k, C)
    return win.reshape(oh * ow, k * k * c).copy()


def col2im(dcols, h, w, c, k, stride, pad):
    """Adjoint of im2col: scatter-add patch gradients back to image shape."""
    dcols = np.asarray(dcols, dtype=np.float64)
    oh = (h + 2 * pad - k) // stride + 1
    ow = (w + 2 * pad - k) // stride + 1
    dpad = np.zeros((h + 2 * pad, w + 2 * pad, c), dtype=np.float64)
    d = dcols.reshape(oh, ow, k, k, c)
    ys = np.arange(oh) * stride
    xs = np.arange(ow) * stride
    for ky in range(k):
        for kx in range(k):
            dpad[np.ix_(ys + ky, xs + kx)] += d[:, :, ky, kx, :]
    if pad:
        return dpad[pad:-pad, pad:-pad, :].copy()
    return dpad


def polygon_coverage(verts, h, w, ss):
    """Supersampled coverage of a simple polygon over an h x w pixel grid.

    ``verts`` is (P, 2) in (x, y) pixel coordinates; ss x ss subsamples per
    pixel, even-odd (crossing parity) inside test.
    """
    verts = np.asarray(verts, dtype=np.float64)
    sub = (np.arange(ss) + 0.5) / ss
    xs = (np.arange(w)[:, None] + sub[None, :]).ravel()
    ys = (np.arange(h)[:, None] + sub[None, :]).ravel()
    px = np.tile(xs[None, :], (h * ss, 1)).ravel()
    py = np.repeat(ys, w * ss)
    inside = np.zeros(px.shape[0], dtype=bool)
    n = verts.shape[0]
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        crosses = (y1 <= py) != (y2 <= py)
        if not crosses.any():
            continue
        t = (py - y1) / (y2 - y1)
        xint = x1 + t * (x2 - x1)
        inside ^= crosses & (px < xint)
    cov = inside.reshape(h, ss, w, ss).astype(np.float64)
    return cov.mean(axis=(1, 3))
