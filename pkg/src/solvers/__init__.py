"""Root finding for monotone scalar equations."""

from .bisection import expand_bracket, solve_monotone

__all__ = ['expand_bracket', 'solve_monotone']
