"""Shared helper utilities: the structured-text codec used by the CLI and config layers."""
