"""Version identifiers embedded in JSON outputs and cache keys."""

__version__ = "0.1.0"

# Bumped whenever certificate/BFS determinism semantics change; part of the
# orbit-table cache key.
MATH_VERSION = "1"

SCHEMA_VERSION = "1"
