"""
Model construction, diagonalization and analysis for the PT-symmetric chains.
"""
