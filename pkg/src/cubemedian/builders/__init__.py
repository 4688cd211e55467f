"""Constructors for the concrete complexes."""
