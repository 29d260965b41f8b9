"""Volatility change-point detection and dynamic clustering of return series."""

from ._volcp import (
    ChangepointFilter,
    Dendrogram,
    FilterConfig,
    HazardModel,
    Hyperparams,
    InputError,
    InverseGamma,
    Merge,
    NumericError,
    SparsePmf,
    StudentT,
    StudentTMixture,
    average_linkage,
    log_returns,
    pairwise,
    read_returns,
    simulate,
    w1,
)

__all__ = [
    "ChangepointFilter",
    "Dendrogram",
    "FilterConfig",
    "HazardModel",
    "Hyperparams",
    "InputError",
    "InverseGamma",
    "Merge",
    "NumericError",
    "SparsePmf",
    "StudentT",
    "StudentTMixture",
    "average_linkage",
    "log_returns",
    "pairwise",
    "read_returns",
    "simulate",
    "w1",
]
