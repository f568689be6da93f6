"""Unit tests for KCO Operator."""
