"""
Utility modules for writing ptchain results.
"""
