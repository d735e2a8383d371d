"""Utility modules for segre-ulrich."""
