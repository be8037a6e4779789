"""Plumbing shared by every subpackage: table cache, paths, report serialization."""
