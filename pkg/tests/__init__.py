"""Tests for twinspace package."""
