"""Report adapters: atomic CSV/JSON result tables and model JSON store."""
