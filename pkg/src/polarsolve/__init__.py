"""Polar-variety real solver."""
