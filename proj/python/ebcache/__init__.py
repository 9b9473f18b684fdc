"""Cache-enabled wireless network toolkit (native extension wrapper)."""

try:
    from ._ebcache import *  # noqa: F401,F403  (wheel layout)
except ImportError:
    from _ebcache import *  # noqa: F401,F403  (in-tree build)
