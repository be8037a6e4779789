"""Source root."""
