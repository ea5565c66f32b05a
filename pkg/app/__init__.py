"""
Streamlit application package for the verification dashboard.
"""
