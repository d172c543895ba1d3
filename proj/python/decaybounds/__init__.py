"""Decay bounds for entries of functions of banded and sparse Hermitian matrices."""

from ._core import (
    bound_column,
    figure,
    figure_ids,
    kron_column,
    oracle_column,
    reconstruct,
    spectral_interval,
)

__all__ = [
    "bound_column",
    "figure",
    "figure_ids",
    "kron_column",
    "oracle_column",
    "reconstruct",
    "spectral_interval",
]
