from . import duplicate, label, missing, noise, outlier, temporal

__all__ = ["duplicate", "label", "missing", "noise", "outlier", "temporal"]
