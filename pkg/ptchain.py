#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
ptchain entry point for running from a source checkout.
"""

import os
import sys

# Ensure the 'ptchain' package directory is in the Python path
# This allows running 'python ptchain.py' from the project root
project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, project_root)

from ptchain.main import main  # noqa: E402

if __name__ == "__main__":
    main()
