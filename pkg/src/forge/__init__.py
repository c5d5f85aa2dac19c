"""forge: deterministic vulnerability-benchmark generation for MiniC projects."""

__version__ = "0.1.0"

CATALOG_VERSION = "1"
