"""Tests for faberhurwitz."""
