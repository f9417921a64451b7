"""Lexicographically-ordered constrained (LOCO) codes.

Submodules: ``alphabet`` (symbols and words), ``generic`` (automaton engine
for any forbidden set), ``families`` (closed-form codecs), ``tdmr`` (grid
mapping, streams and pattern scanners) and ``cli``.
"""

from __future__ import annotations

__version__ = "0.1.0"
