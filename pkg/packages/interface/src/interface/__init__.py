"""Interface layer: settings, logging setup, `stylo` CLI."""
