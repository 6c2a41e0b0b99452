#!/usr/bin/env python3
"""Entry point for the free-fall feasibility CLI."""

from src.cli.main import cli

if __name__ == '__main__':
    cli()
