"""Executable local-hidden-variable no-go theorems: Bell, Bell without inequalities, pseudo-telepathy."""

__version__ = "0.1.0"
