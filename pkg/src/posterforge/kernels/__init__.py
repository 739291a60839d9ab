"""Hot numeric kernels with two interchangeable backends.

The numba backend (jitted, cached) is the default; set the environment
variable ``POSTERFORGE_BACKEND=numpy`` to force the pure-numpy fallback,
or ``=numba`` to require the jitted path (ImportError if numba is absent).
``benchmarks/bench_kernels.py`` compares the two.
"""

import os

_requested = os.environ.get("POSTERFORGE_BACKEND", "").strip().lower()

if _requested not in ("", "numba", "numpy"):
    raise ValueError(
        f"POSTERFORGE_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )

if _requested == "numpy":
    from . import _numpy_impl as _impl

    BACKEND = "numpy"
elif _requested == "numba":
    from . import _numba_impl as _impl

    BACKEND = "numba"
else:
    try:
        from . import _numba_impl as _impl

        BACKEND = "numba"
    except ImportError:
        from . import _numpy_impl as _impl

        BACKEND = "numpy"

srgb_to_lab_flat = _impl.srgb_to_lab_flat
lab_to_srgb_flat = _impl.lab_to_srgb_flat
resize_bilinear = _impl.resize_bilinear
convolve_axis = _impl.convolve_axis
integral_image = _impl.integral_image
window_sums = _impl.window_sums
diffusion_fill = _impl.diffusion_fill
min_center_dist2 = _impl.min_center_dist2
nearest_center = _impl.nearest_center
im2col = _impl.im2col
col2im = _impl.col2im
polygon_coverage = _impl.polygon_coverage

__all__ = [
    "BACKEND",
    "srgb_to_lab_flat",
    "lab_to_srgb_flat",
    "resize_bilinear",
    "convolve_axis",
    "integral_image",
    "window_sums",
    "diffusion_fill",
    "min_center_dist2",
    "nearest_center",
    "im2col",
    "col2im",
    "polygon_coverage",
]
