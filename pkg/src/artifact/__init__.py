"""Exact torus-valued group cohomology for Z^r, its modulus extensions and
Heisenberg resolutions."""

__version__ = "0.1.0"
