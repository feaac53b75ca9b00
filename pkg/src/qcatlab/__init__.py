"""qcatlab: desk-scale computations with quasi-categories.

Finite categories and their nerves, strictly undulating squiggles, weighted
limit towers computing quasi-categories of algebras, and exhaustive checks
of terminal-object and limit-creation statements on small instances.
"""

__version__ = "0.1.0"
