"""Partition-trapdoor analysis for long-key Feistel networks."""

try:
    from ._fpt import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _fpt import *  # noqa: F401,F403  (build-tree layout)

__version__ = "0.1.0"
