"""Exact analysis of Lie algebras given by Maurer-Cartan data."""
