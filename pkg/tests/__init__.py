"""
Unit tests for the tree spectra toolkit.
""" 