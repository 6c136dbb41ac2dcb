#!/usr/bin/env python3
"""
Entry point for running the sgx command line
"""

from .cli import main_sync

if __name__ == "__main__":
    main_sync()
