"""Quiver Grassmannian equations for representations of truncated path algebras."""

__version__ = "0.1.0"
