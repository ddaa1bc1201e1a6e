"""Structured document IO shared by every stage."""
