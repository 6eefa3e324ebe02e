"""Domain entities: immutable data classes for documents, features, models and results."""
