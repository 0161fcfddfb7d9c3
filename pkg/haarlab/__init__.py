"""
Numerical laboratory for t-Haar multipliers on finite dyadic grids.
"""
