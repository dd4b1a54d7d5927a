"""Automorphism-orbit decision toolkit for free groups and graphs of groups."""

__version__ = "0.1.0"
