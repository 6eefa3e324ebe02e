"""File-backed corpus adapter: JSON manifest, TSV word tables, experiment spec files."""
