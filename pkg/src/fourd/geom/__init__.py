"""Geometry subsystem: layered 2D model, boolean union, triangulation.

Coordinate-level numerics live in a kernel module with two interchangeable
backends (compiled Cython and pure Python); see ``fourd.geom.kernels``.
"""
