"""Numerical engine: numpy implementations of distances, scaling and classifiers."""
