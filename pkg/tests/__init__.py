"""
Test package for qroots.
"""
