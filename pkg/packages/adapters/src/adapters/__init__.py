"""Adapter layer: infrastructure implementations of core Ports."""
