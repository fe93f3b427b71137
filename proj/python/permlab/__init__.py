"""Permutation advice games: exact counts, strategy evaluation and simulation."""

from ._permlab import *  # noqa: F401,F403
from ._permlab import PermlabError, __version__, run_cli

__all__ = [name for name in dir() if not name.startswith("_")]
