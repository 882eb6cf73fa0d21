"""Markdown summaries and learning-curve plots."""

from .markdown import render_comparison, render_run_summary, render_sweep

__all__ = ["render_comparison", "render_run_summary", "render_sweep"]
