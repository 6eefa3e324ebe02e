"""Use cases: pure text and feature functions. Zero I/O, zero side effects."""
