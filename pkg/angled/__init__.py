"""
angled: exact toolkit for angled combinatorial 2-complexes.

Vertex links, the weight test, curvature, free-face collapse, homotopy
invariants, straight-path tracing and angle-assignment search.
"""

__version__ = "0.1.0"
