"""Finite combinatorial models of equivariant operads: G-sets, span
categories, pointed finite G-sets, discrete T-operads, colored operads and
indexing systems."""

__version__ = "0.1.0"
