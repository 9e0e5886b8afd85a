"""Diagram rendering."""

from boxc.render.dot import RenderOptions, to_dot

__all__ = ["RenderOptions", "to_dot"]
