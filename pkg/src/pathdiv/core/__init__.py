"""
Algorithms: triangulation geometry, colorings, searches, rounding,
certification and the end-to-end pipeline.
"""
