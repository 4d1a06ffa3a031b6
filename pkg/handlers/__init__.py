"""
Handlers package initialization
"""
from .analytic import register_analytic_handlers
from .monte_carlo import register_monte_carlo_handlers

__all__ = [
    'register_analytic_handlers',
    'register_monte_carlo_handlers'
]
