"""Verification and classification of Kochen-Specker sets and contextuality graphs."""

__version__ = "0.1.0"
