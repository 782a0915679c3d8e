"""Automaton-presented structures.

Thin wrapper over the compiled extension: membership and emptiness for
omega-word and infinite-tree automata, presentation validation, and
first-order decisions, all exchanged as the library's text formats.
"""

try:
    from ._autstr import *  # noqa: F401,F403  (wheel layout)
    from . import _autstr as _impl
except ImportError:  # development layout: extension on sys.path directly
    from _autstr import *  # noqa: F401,F403
    import _autstr as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
del _impl
