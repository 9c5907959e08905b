"""Test suite for sha-lab."""
