#!/usr/bin/env python3
"""
Simple script to run the nomsupport command line without installing it
"""
import sys
from pathlib import Path

# Add the repository root to Python path
sys.path.insert(0, str(Path(__file__).parent))

if __name__ == "__main__":
    from nomsupport.main import main

    sys.exit(main())
