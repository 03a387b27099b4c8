"""Command-line surface: JSON schemas, SVG scenes and command handlers."""
