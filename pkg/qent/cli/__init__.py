"""Command-line frontend: simulate, analyze, check and fuzz."""
