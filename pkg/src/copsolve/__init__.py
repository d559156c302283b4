"""Cops and robbers on small graphs.

Exact cop numbers by retrograde analysis, induced-subgraph and flail checks,
clique substitution, deterministic cop strategies with an adversarial
validator, and verification campaigns tying them together.
"""

__version__ = "0.1.0"
