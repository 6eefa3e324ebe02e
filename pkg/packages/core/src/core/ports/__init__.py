"""Ports: Protocol interfaces the adapter layer implements."""
