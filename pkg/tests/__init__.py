"""Tests for Pathdiv."""
