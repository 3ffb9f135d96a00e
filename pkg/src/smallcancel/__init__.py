"""Toolkit for C'(1/6) small-cancellation presentations: piece conditions,
explicit relator families, intersection profiles, geodesic certification
and ray constructions, all checked exactly at finite scale."""

__version__ = "0.1.0"
