"""Integration tests for KCO Operator."""
