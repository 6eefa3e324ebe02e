"""Text adapters: Unicode-property word tokenizer."""
