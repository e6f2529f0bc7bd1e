"""
Entities package for the octabilliard project: exact numbers, planar
geometry and orbit outcomes.
"""
