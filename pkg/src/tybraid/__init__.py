"""Braidings and Z/2-crossed braidings on Tambara-Yamagami categories, computed exactly."""

__version__ = "0.1.0"
