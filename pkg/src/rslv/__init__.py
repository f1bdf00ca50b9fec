"""Exact local-identity verification engine."""
