"""posterforge: content-aware advertising poster composition."""

__version__ = "0.1.0"
