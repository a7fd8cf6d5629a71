"""
Shared module for configuration, data models and errors used by every package.
"""
