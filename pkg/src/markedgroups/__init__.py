"""Exact finite-radius computation on marked groups.

Marked groups are presented here by an oracle deciding which words in
the marked generators are trivial; on top of that the package builds
exact Cayley balls, ball-agreement comparisons, small-cancellation
metric checks with Dehn reduction, parametrized group families, and
finite-scale quasi-isometry witnesses.
"""

from __future__ import annotations

__version__ = "0.1.0"
