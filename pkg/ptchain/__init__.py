"""
ptchain - PT-symmetric gain and loss in the SSH and Kitaev chains.
"""

__version__ = "0.3.0"

# Don't import anything else here to keep startup fast
# Physics modules pull in numpy/scipy and are imported when needed

__all__ = ["__version__"]
