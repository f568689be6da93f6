"""Test package for KCO Operator."""
