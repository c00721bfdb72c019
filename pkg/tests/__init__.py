"""Test package for OPC UA Browser."""
