"""Thicket dimension of finite set systems and graphs."""

from ._thicket import *  # noqa: F401,F403
from ._thicket import __version__, BudgetExceeded, ConsistencyError  # noqa: F401
