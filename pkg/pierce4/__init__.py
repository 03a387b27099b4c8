"""pierce4 - piercing families of translates of a planar convex body"""

__version__ = "0.1.0"
