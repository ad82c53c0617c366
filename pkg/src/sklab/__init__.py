"""Exact and numeric checks for Saito-Kurokawa lifts of square-free level."""

from .report import TOOL_VERSION as __version__  # noqa: F401
