"""Raster image primitives: load/save, crop, resize, blur.

Images are (H, W, C) float64 arrays with values in [0, 1], C = 1 or 3.
PPM (P6) / PGM (P5) are the lossless interchange formats; PNG (8-bit,
non-interlaced) is supported for input and optionally for output. Any
alpha channel in a PNG is discarded on load. All operations are pure:
they never mutate their inputs.
"""

import struct
import zlib
from dataclasses import dataclass

import numpy as np

from . import kernels


class DecodeError(Exception):
    """Malformed image stream; ``offset`` is the byte position of the fault."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Rect:
    """Pixel-aligned rectangle: top-left (x0, y0), extent (w, h)."""

    x0: int
    y0: int
    w: int
    h: int

    def __post_init__(self):
        if self.w < 1 or self.h < 1:
            raise ValueError(f"rect extent must be >= 1, got {self.w}x{self.h}")


@dataclass
class Image:
    """Raster image; ``data`` is (H, W, C) float64 in [0, 1], read-only."""

    data: np.ndarray

    def __post_init__(self):
        d = self.data
        if d.ndim != 3 or d.shape[2] not in (1, 3):
            raise ValueError(f"image data must be (H, W, 1|3), got {d.shape}")
        if not np.isfinite(d).all():
            raise ValueError("image data contains non-finite values")
        if d.min() < 0.0 or d.max() > 1.0:
            raise ValueError("image data outside [0, 1]")
        d = np.ascontiguousarray(d, dtype=np.float64)
        d.flags.writeable = False
        object.__setattr__(self, "data", d)

    @property
    def width(self):
        return self.data.shape[1]

    @property
    def height(self):
        return self.data.shape[0]

    @property
    def channels(self):
        return self.data.shape[2]


def new_image(arr):
    """Wrap an array as an Image, adding a channel axis to 2D input."""
    arr = np.asarray(arr, dtype=np.float64)
    if arr.ndim == 2:
        arr = arr[:, :, None]
    return Image(arr.copy())


# ---------------------------------------------------------------------------
# PPM / PGM


def _save_ppm(img):
    q = np.clip(np.floor(img.data * 255.0 + 0.5), 0, 255).astype(np.uint8)
    if img.channels == 3:
        header = b"P6\n%d %d\n255\n" % (img.width, img.height)
    else:
        header = b"P5\n%d %d\n255\n" % (img.width, img.height)
        q = q[:, :, 0]
    return header + q.tobytes()


def _read_pnm_token(buf, pos):
    # skip whitespace and '#' comments
    while pos < len(buf):
        ch = buf[pos : pos + 1]
        if ch.isspace():
            pos += 1
        elif ch == b"#":
            nl = buf.find(b"\n", pos)
            if nl < 0:
                raise DecodeError("unterminated comment", pos)
            pos = nl + 1
        else:
            break
    start = pos
    while pos < len(buf) and not buf[pos : pos + 1].isspace():
        pos += 1
    if start == pos:
        raise DecodeError("missing header token", start)
    return buf[start:pos], pos


def _load_pnm(buf):
    magic = buf[:2]
    channels = 3 if magic == b"P6" else 1
    pos = 2
    fields = []
    for _ in range(3):
        tok, pos = _read_pnm_token(buf, pos)
        if not tok.isdigit():
            raise DecodeError(f"non-numeric header field {tok!r}", pos - len(tok))
        fields.append(int(tok))
    w, h, maxval = fields
    if maxval != 255:
        raise DecodeError(f"unsupported maxval {maxval}", pos)
    if w < 1 or h < 1:
        raise DecodeError(f"bad dimensions {w}x{h}", 2)
    pos += 1  # single whitespace byte after maxval
    need = w * h * channels
    raw = buf[pos : pos + need]
    if len(raw) < need:
        raise DecodeError(f"truncated pixel data, need {need} bytes", len(buf))
    arr = np.frombuffer(raw, dtype=np.uint8).astype(np.float64) / 255.0
    return new_image(arr.reshape(h, w, channels))


# ---------------------------------------------------------------------------
# PNG (8-bit, non-interlaced; color types 0, 2, 3, 4, 6)

_PNG_SIG = b"\x89PNG\r\n\x1a\n"


def _paeth(a, b, c):
    p = a + b - c
    pa = abs(p - a)
    pb = abs(p - b)
    pc = abs(p - c)
    if pa <= pb and pa <= pc:
        return a
    if pb <= pc:
        return b
    return c


def _unfilter(raw, h, stride, bpp, data_offset):
    out = np.zeros((h, stride), dtype=np.uint8)
    rowlen = stride + 1
    for y in range(h):
        base = y * rowlen
        ftype = raw[base]
        row = np.frombuffer(raw, dtype=np.uint8, count=stride, offset=base + 1).copy()
        prev = out[y - 1] if y > 0 else np.zeros(stride, dtype=np.uint8)
        if ftype == 0:
            pass
        elif ftype == 2:
            row += prev
        elif ftype == 1:
            for x in range(bpp, stride):
                row[x] += row[x - bpp]
        elif ftype == 3:
            for x in range(stride):
                left = int(row[x - bpp]) if x >= bpp else 0
                row[x] = (int(row[x]) + (left + int(prev[x])) // 2) & 0xFF
        elif ftype == 4:
            for x in range(stride):
                left = int(row[x - bpp]) if x >= bpp else 0
                ul = int(prev[x - bpp]) if x >= bpp else 0
                row[x] = (int(row[x]) + _paeth(left, int(prev[x]), ul)) & 0xFF
        else:
            raise DecodeError(f"bad filter type {ftype}", data_offset)
        out[y] = row
    return out


def _load_png(buf):
    if buf[:8] != _PNG_SIG:
        raise DecodeError("bad PNG signature", 0)
    pos = 8
    ihdr = None
    palette = None
    idat = []
    while pos < len(buf):
        if pos + 8 > len(buf):
            raise DecodeError("truncated chunk header", pos)
        (length,) = struct.unpack(">I", buf[pos : pos + 4])
        ctype = buf[pos + 4 : pos + 8]
        body = buf[pos + 8 : pos + 8 + length]
        if len(body) < length:
            raise DecodeError(f"truncated {ctype!r} chunk", pos + 8)
        if ctype == b"IHDR":
            ihdr = struct.unpack(">IIBBBBB", body)
        elif ctype == b"PLTE":
            palette = np.frombuffer(body, dtype=np.uint8).reshape(-1, 3)
        elif ctype == b"IDAT":
            idat.append(body)
        elif ctype == b"IEND":
            break
        pos += 12 + length  # length + type + body + crc
    if ihdr is None:
        raise DecodeError("missing IHDR", 8)
    w, h, depth, ctype, comp, filt, interlace = ihdr
    if depth != 8:
        raise DecodeError(f"unsupported bit depth {depth}", 8)
    if interlace != 0:
        raise DecodeError("interlaced PNG unsupported", 8)
    if comp != 0 or filt != 0:
        raise DecodeError("bad compression/filter method", 8)
    nch = {0: 1, 2: 3, 3: 1, 4: 2, 6: 4}.get(ctype)
    if nch is None:
        raise DecodeError(f"unsupported color type {ctype}", 8)
    if not idat:
        raise DecodeError("missing IDAT", pos)
    try:
        raw = zlib.decompress(b"".join(idat))
    except zlib.error as e:
        raise DecodeError(f"zlib: {e}", pos) from None
    stride = w * nch
    if len(raw) != h * (stride + 1):
        raise DecodeError(f"IDAT size {len(raw)} != expected {h * (stride + 1)}", pos)
    px = _unfilter(raw, h, stride, nch, pos).reshape(h, w, nch)
    if ctype == 3:
        if palette is None:
            raise DecodeError("palette image without PLTE", pos)
        px = palette[px[:, :, 0]]
    elif ctype == 4:
        px = px[:, :, :1]
    elif ctype == 6:
        px = px[:, :, :3]
    return new_image(px.astype(np.float64) / 255.0)


def _save_png(img):
    data = img.data
    if img.channels == 1:
        ctype, arr = 0, data[:, :, 0]
    else:
        ctype, arr = 2, data
    q = np.clip(np.floor(arr * 255.0 + 0.5), 0, 255).astype(np.uint8)
    q = q.reshape(img.height, -1)
    raw = b"".join(b"\x00" + q[y].tobytes() for y in range(img.height))

    def chunk(tag, body):
        c = struct.pack(">I", len(body)) + tag + body
        return c + struct.pack(">I", zlib.crc32(tag + body) & 0xFFFFFFFF)

    ihdr = struct.pack(">IIBBBBB", img.width, img.height, 8, ctype, 0, 0, 0)
    return (
        _PNG_SIG
        + chunk(b"IHDR", ihdr)
        + chunk(b"IDAT", zlib.compress(raw, 9))
        + chunk(b"IEND", b"")
    )


# ---------------------------------------------------------------------------
# Public operations


def load_image(buf):
    """Decode a PNG or binary PPM/PGM byte stream into an Image."""
    if buf[:8] == _PNG_SIG:
        return _load_png(buf)
    if buf[:2] in (b"P6", b"P5"):
        return _load_pnm(buf)
    raise DecodeError("unrecognized image format", 0)


def save_image(img, fmt="ppm"):
    """Encode an Image to bytes; fmt is 'ppm' (P6/P5) or 'png'."""
    if fmt == "ppm":
        return _save_ppm(img)
    if fmt == "png":
        return _save_png(img)
    raise ValueError(f"unknown format {fmt!r}")


def load_image_file(path):
    with open(path, "rb") as f:
        return load_image(f.read())


def save_image_file(img, path):
    path = str(path)
    fmt = "png" if path.lower().endswith(".png") else "ppm"
    with open(path, "wb") as f:
        f.write(save_image(img, fmt))


def crop(img, r):
    """Extract the subimage covered by ``r``; r must lie inside img."""
    if r.x0 < 0 or r.y0 < 0 or r.x0 + r.w > img.width or r.y0 + r.h > img.height:
        raise ValueError(
            f"rect {r} outside {img.width}x{img.height} image"
        )
    return Image(img.data[r.y0 : r.y0 + r.h, r.x0 : r.x0 + r.w].copy())


def resize_bilinear(img, w, h):
    """Bilinear resample to w x h with half-pixel-center sampling."""
    if w < 1 or h < 1:
        raise ValueError(f"target size must be >= 1, got {w}x{h}")
    out = kernels.resize_bilinear(img.data, h, w)
    return Image(np.clip(out, 0.0, 1.0))


def gaussian_kernel(sigma):
    radius = int(np.ceil(3.0 * sigma))
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return k / k.sum()


def gaussian_blur(img, sigma):
    """Separable Gaussian blur, radius ceil(3*sigma), edge-replicate."""
    if sigma <= 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    k = gaussian_kernel(sigma)
    out = kernels.convolve_axis(img.data, k, 0)
    out = kernels.convolve_axis(out, k, 1)
    return Image(np.clip(out, 0.0, 1.0))
