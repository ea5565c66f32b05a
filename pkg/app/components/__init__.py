"""
Reusable UI components for the verification dashboard.
"""

from app.components.report_view import render_reports

__all__ = ["render_reports"]
