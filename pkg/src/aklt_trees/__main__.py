"""
AKLT trees - Package entry point
"""
import sys
from src.aklt_trees.main import main

if __name__ == '__main__':
    sys.exit(main())
