"""scrollarlab: scrollar invariants of partitions, resolvent covers and
syzygy splitting types for degree-d covers of the projective line over small
prime fields, computed exactly and cross-checked against closed forms."""

__version__ = "0.1.0"
