"""Exact scalar rings and truncated series."""

from .series import (TruncatedSeries, SeriesError, NonInvertibleError, binomial_series,
                     exp_series)

__all__ = ["TruncatedSeries", "SeriesError", "NonInvertibleError", "binomial_series", "exp_series"]
