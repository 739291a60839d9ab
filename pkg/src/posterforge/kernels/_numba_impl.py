"""Numba-jitted implementations of the hot kernels.

Mirrors ``_numpy_impl`` function by function; loops are written so both
backends agree within float tolerance. All entry points accept/return
float64 arrays with the same layouts as the numpy twin.
"""

import numpy as np
from numba import njit

_D = 6.0 / 29.0


@njit(cache=True)
def _srgb_to_lab_flat(rgb):
    n = rgb.shape[0]
    out = np.empty((n, 3), dtype=np.float64)
    for i in range(n):
        lin = np.empty(3)
        for c in range(3):
            v = rgb[i, c]
            lin[c] = v / 12.92 if v <= 0.04045 else ((v + 0.055) / 1.055) ** 2.4
        x = 0.4124564 * lin[0] + 0.3575761 * lin[1] + 0.1804375 * lin[2]
        y = 0.2126729 * lin[0] + 0.7151522 * lin[1] + 0.0721750 * lin[2]
        z = 0.0193339 * lin[0] + 0.1191920 * lin[1] + 0.9503041 * lin[2]
        t0 = x / 0.95047
        t1 = y
        t2 = z / 1.08883
        f0 = t0 ** (1.0 / 3.0) if t0 > _D**3 else t0 / (3.0 * _D * _D) + 4.0 / 29.0
        f1 = t1 ** (1.0 / 3.0) if t1 > _D**3 else t1 / (3.0 * _D * _D) + 4.0 / 29.0
        f2 = t2 ** (1.0 / 3.0) if t2 > _D**3 else t2 / (3.0 * _D * _D) + 4.0 / 29.0
        out[i, 0] = 116.0 * f1 - 16.0
        out[i, 1] = 500.0 * (f0 - f1)
        out[i, 2] = 200.0 * (f1 - f2)
    return out


def srgb_to_lab_flat(rgb):
    return _srgb_to_lab_flat(np.ascontiguousarray(rgb, dtype=np.float64))


@njit(cache=True)
def _lab_to_srgb_flat(lab):
    n = lab.shape[0]
    out = np.empty((n, 3), dtype=np.float64)
    for i in range(n):
        fy = (lab[i, 0] + 16.0) / 116.0
        fx = fy + lab[i, 1] / 500.0
        fz = fy - lab[i, 2] / 200.0
        tx = fx**3 if fx > _D else 3.0 * _D * _D * (fx - 4.0 / 29.0)
        ty = fy**3 if fy > _D else 3.0 * _D * _D * (fy - 4.0 / 29.0)
        tz = fz**3 if fz > _D else 3.0 * _D * _D * (fz - 4.0 / 29.0)
        x = tx * 0.95047
        y = ty
        z = tz * 1.08883
        r = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z
        g = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z
        b = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z
        lin = np.empty(3)
        lin[0] = r
        lin[1] = g
        lin[2] = b
        for c in range(3):
            v = lin[c]
            if v <= 0.0031308:
                s = 12.92 * v
            else:
                sign = 1.0 if v >= 0.0 else -1.0
                s = 1.055 * sign * abs(v) ** (1.0 / 2.4) - 0.055
            out[i, c] = min(1.0, max(0.0, s))
    return out


def lab_to_srgb_flat(lab):
    return _lab_to_srgb_flat(np.ascontiguousarray(lab, dtype=np.float64))


@njit(cache=True)
def _resize_bilinear(src, out_h, out_w):
    h, w, nc = src.shape
    out = np.empty((out_h, out_w, nc), dtype=np.float64)
    for i in range(out_h):
        sy = (i + 0.5) * (h / out_h) - 0.5
        if sy < 0.0:
            sy = 0.0
        if sy > h - 1.0:
            sy = h - 1.0
        y0 = int(np.floor(sy))
        y1 = min(y0 + 1, h - 1)
        fy = sy - y0
        for j in range(out_w):
            sx = (j + 0.5) * (w / out_w) - 0.5
            if sx < 0.0:
                sx = 0.0
            if sx > w - 1.0:
                sx = w - 1.0
            x0 = int(np.floor(sx))
            x1 = min(x0 + 1, w - 1)
            fx = sx - x0
            for c in range(nc):
                top = src[y0, x0, c] * (1.0 - fx) + src[y0, x1, c] * fx
                bot = src[y1, x0, c] * (1.0 - fx) + src[y1, x1, c] * fx
                out[i, j, c] = top * (1.0 - fy) + bot * fy
    return out


def resize_bilinear(src, out_h, out_w):
    src = np.ascontiguousarray(src, dtype=np.float64)
    squeeze = src.ndim == 2
    if squeeze:
        src = src[:, :, None]
    out = _resize_bilinear(src, out_h, out_w)
    return out[:, :, 0] if squeeze else out


@njit(cache=True)
def _convolve_axis0(src, kern):
    h, w, nc = src.shape
    r = (kern.shape[0] - 1) // 2
    out = np.empty_like(src)
    for i in range(h):
        for j in range(w):
            for c in range(nc):
                acc = 0.0
                for t in range(kern.shape[0]):
                    y = i + t - r
                    if y < 0:
                        y = 0
                    elif y > h - 1:
                        y = h - 1
                    acc += src[y, j, c] * kern[t]
                out[i, j, c] = acc
    return out


@njit(cache=True)
def _convolve_axis1(src, kern):
    h, w, nc = src.shape
    r = (kern.shape[0] - 1) // 2
    out = np.empty_like(src)
    for i in range(h):
        for j in range(w):
            for c in range(nc):
                acc = 0.0
                for t in range(kern.shape[0]):
                    x = j + t - r
                    if x < 0:
                        x = 0
                    elif x > w - 1:
                        x = w - 1
                    acc += src[i, x, c] * kern[t]
                out[i, j, c] = acc
    return out


def convolve_axis(src, kern, axis):
    src = np.ascontiguousarray(src, dtype=np.float64)
    kern = np.ascontiguousarray(kern, dtype=np.float64)
    squeeze = src.ndim == 2
    if squeeze:
        src = src[:, :, None]
    out = _convolve_axis0(src, kern) if axis == 0 else _convolve_axis1(src, kern)
    return out[:, :, 0] if squeeze else out


@njit(cache=True)
def _integral_image(m):
    h, w = m.shape
    out = np.zeros((h + 1, w + 1), dtype=np.float64)
    for i in range(h):
        row = 0.0
        for j in range(w):
            row += m[i, j]
            out[i + 1, j + 1] = out[i, j + 1] + row
    return out


def integral_image(m):
    return _integral_image(np.ascontiguousarray(m, dtype=np.float64))


@njit(cache=True)
def _window_sums(ii, win_h, win_w):
    h = ii.shape[0] - 1
    w = ii.shape[1] - 1
    oh = h - win_h + 1
    ow = w - win_w + 1
    out = np.empty((oh, ow), dtype=np.float64)
    for y in range(oh):
        for x in range(ow):
            out[y, x] = (
                ii[y + win_h, x + win_w]
                - ii[y, x + win_w]
                - ii[y + win_h, x]
                + ii[y, x]
            )
    return out


def window_sums(ii, win_h, win_w):
    return _window_sums(np.ascontiguousarray(ii, dtype=np.float64), win_h, win_w)


@njit(cache=True)
def _diffusion_fill(img, mask, max_iter, tol, seed):
    h, w, nc = img.shape
    cur = img.copy()
    ys = []
    xs = []
    for i in range(h):
        for j in range(w):
            if mask[i, j]:
                ys.append(i)
                xs.append(j)
                for c in range(nc):
                    cur[i, j, c] = seed[c]
    nmask = len(ys)
    if nmask == 0:
        return cur
    new = np.empty((nmask, nc), dtype=np.float64)
    for _ in range(max_iter):
        delta = 0.0
        for p in range(nmask):
            i = ys[p]
            j = xs[p]
            for c in range(nc):
                acc = 0.0
                cnt = 0.0
                if i > 0:
                    acc += cur[i - 1, j, c]
                    cnt += 1.0
                if i < h - 1:
                    acc += cur[i + 1, j, c]
                    cnt += 1.0
                if j > 0:
                    acc += cur[i, j - 1, c]
                    cnt += 1.0
                if j < w - 1:
                    acc += cur[i, j + 1, c]
                    cnt += 1.0
                new[p, c] = acc / cnt
        for p in range(nmask):
            i = ys[p]
            j = xs[p]
            for c in range(nc):
                d = abs(new[p, c] - cur[i, j, c])
                if d > delta:
                    delta = d
                cur[i, j, c] = new[p, c]
        if delta < tol:
            break
    return cur


def diffusion_fill(img, mask, max_iter, tol):
    img = np.ascontiguousarray(img, dtype=np.float64)
    mask = np.ascontiguousarray(mask, dtype=np.bool_)
    if not mask.any():
        return img.copy()
    unmasked = ~mask
    if unmasked.any():
        seed = img[unmasked].reshape(-1, img.shape[2]).mean(axis=0)
    else:
        seed = img.reshape(-1, img.shape[2]).mean(axis=0)
    return _diffusion_fill(img, mask, max_iter, tol, seed)


@njit(cache=True)
def _min_center_dist2(pts, centers):
    m = centers.shape[0]
    best = np.full(m, np.inf)
    for i in range(pts.shape[0]):
        pa = pts[i, 0]
        pb = pts[i, 1]
        for j in range(m):
            da = pa - centers[j, 0]
            db = pb - centers[j, 1]
            d2 = da * da + db * db
            if d2 < best[j]:
                best[j] = d2
    return best


def min_center_dist2(pts, centers):
    return _min_center_dist2(
        np.ascontiguousarray(pts, dtype=np.float64),
        np.ascontiguousarray(centers, dtype=np.float64),
    )


@njit(cache=True)
def _nearest_center(pts, centers):
    n = pts.shape[0]
    m = centers.shape[0]
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        pa = pts[i, 0]
        pb = pts[i, 1]
        best = np.inf
        arg = 0
        for j in range(m):
            da = pa - centers[j, 0]
            db = pb - centers[j, 1]
            d2 = da * da + db * db
            if d2 < best:
                best = d2
                arg = j
        out[i] = arg
    return out


def nearest_center(pts, centers):
    return _nearest_center(
        np.ascontiguousarray(pts, dtype=np.float64),
        np.ascontiguousarray(centers, dtype=np.float64),
    )


@njit(cache=True)
def _im2col(img, k, stride, pad):
    h, w, c = img.shape
    oh = (h + 2 * pad - k) // stride + 1
    ow = (w + 2 * pad - k) // stride + 1
    out = np.zeros((oh * ow, k * k * c), dtype=np.float64)
    for oy in range(oh):
        for ox in range(ow):
            p = oy * ow + ox
            for ky in range(k):
                y = oy * stride + ky - pad
                if y < 0 or y >= h:
                    continue
                for kx in range(k):
                    x = ox * stride + kx - pad
                    if x < 0 or x >= w:
                        continue
                    base = (ky * k + kx) * c
                    for ch in range(c):
                        out[p, base + ch] = img[y, x, ch]
    return out


def im2col(img, k, stride, pad):
    return _im2col(np.ascontiguousarray(img, dtype=np.float64), k, stride, pad)


@njit(cache=True)
def _col2im(dcols, h, w, c, k, stride, pad):
    oh = (h + 2 * pad - k) // stride + 1
    ow = (w + 2 * pad - k) // stride + 1
    out = np.zeros((h, w, c), dtype=np.float64)
    for oy in range(oh):
        for ox in range(ow):
            p = oy * ow + ox
            for ky in range(k):
                y = oy * stride + ky - pad
                if y < 0 or y >= h:
                    continue
                for kx in range(k):
                    x = ox * stride + kx - pad
                    if x < 0 or x >= w:
                        continue
                    base = (ky * k + kx) * c
                    for ch in range(c):
                        out[y, x, ch] += dcols[p, base + ch]
    return out


def col2im(dcols, h, w, c, k, stride, pad):
    return _col2im(np.ascontiguousarray(dcols, dtype=np.float64), h, w, c, k, stride, pad)


@njit(cache=True)
def _polygon_coverage(verts, h, w, ss):
    n = verts.shape[0]
    out = np.zeros((h, w), dtype=np.float64)
    inv = 1.0 / (ss * ss)
    for i in range(h):
        for j in range(w):
            hits = 0
            for sy in range(ss):
                py = i + (sy + 0.5) / ss
                for sx in range(ss):
                    px = j + (sx + 0.5) / ss
                    inside = False
                    for e in range(n):
                        x1 = verts[e, 0]
                        y1 = verts[e, 1]
                        x2 = verts[(e + 1) % n, 0]
                        y2 = verts[(e + 1) % n, 1]
                        if (y1 <= py) != (y2 <= py):
                            t = (py - y1) / (y2 - y1)
                            if px < x1 + t * (x2 - x1):
                                inside = not inside
                    if inside:
                        hits += 1
            out[i, j] = hits * inv
    return out


def polygon_coverage(verts, h, w, ss):
    return _polygon_coverage(np.ascontiguousarray(verts, dtype=np.float64), h, w, ss)
