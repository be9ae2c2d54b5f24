"""Exact dynatomic and h-tuned dynatomic polynomials of rational maps on P^1."""

__version__ = "0.1.0"
