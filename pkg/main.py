#!/usr/bin/env python3
"""
triweb - Main Entry Point

Triangle presentations, their web fiber functors and Yang-Baxter solutions.
Run any subcommand through this script:

1. Difference sets:     python main.py diffset standardize --N 21 --q 4 --D 0,1,4,14,16
2. Presentations:       python main.py presentation builtin --name 15.1
3. Relation suite:      python main.py functor check --presentation builtin:15.1 --char 2
4. Yang-Baxter checks:  python main.py ybe --presentation builtin:15.1 --char 2

"""

import sys
import os

# Add the project root to the Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from triweb.cli import main

if __name__ == "__main__":
    sys.exit(main())
