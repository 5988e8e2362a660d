"""Workbench for a two-sorted arithmetic of numbers and Baire space points.

Subpackages cover the object language (syntax, parser, printer), prime
power sequence coding, axiom schema construction, the double negation
translation, propositional logic oracles, oracle register machines with a
certified halting registry, the induced jump construction with bar
verification, and a continuous function application layer with a
realizability checker.
"""

__version__ = "0.1.0"
