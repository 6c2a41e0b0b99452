"""Test particle and initial centre-of-mass state."""

from .model import TestParticle, InitialState, make_particle, make_initial_state

__all__ = ['TestParticle', 'InitialState', 'make_particle', 'make_initial_state']
