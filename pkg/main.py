#!/usr/bin/env python3
"""
Run the pyvbs command line from a source checkout.
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

from pyvbs.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
