"""Exact verification of a Sigma6-symmetric EPW sextic and the abelian fourfold behind it."""
from __future__ import annotations

__version__ = "0.1.0"
