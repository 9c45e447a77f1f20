"""
geoproof - Geometric Rules in Labelled and Hypersequent Calculi
===============================================================

Generates structural rules from geometric Kripke frame axioms, searches and
checks proofs in the labelled calculus G3I and the simply labelled calculus
LG3ipm, translates labelled proofs into simply labelled proofs of their
transitive unfolding, and cross-checks everything against finite models.
"""

__version__ = "0.1.0"
