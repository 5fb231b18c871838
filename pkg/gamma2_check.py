#!/usr/bin/env python3
"""
Command-line launcher for the toric γ₂ checker
Run `python3 gamma2_check.py --help` for the available commands
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / "src"))

from cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
