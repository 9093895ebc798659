"""Deterministic pop-stack sorting, 2-avoidance and characterization pairs.

Permutations are lists of distinct integers in one-line notation; pattern
sets are lists of such lists.
"""

from ._core import *  # noqa: F401,F403
from ._core import BudgetExceeded  # noqa: F401

__version__ = "0.1.0"
