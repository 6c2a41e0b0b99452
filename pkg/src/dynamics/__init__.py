"""Free expansion of the centre-of-mass wave packet."""

from .wavepacket import (
    DecoherenceSource,
    DecoherenceSpec,
    NO_DECOHERENCE,
    variance_at,
    coherent_width,
    decoherence_excess,
    combine_decoherence,
)

__all__ = [
    'DecoherenceSource',
    'DecoherenceSpec',
    'NO_DECOHERENCE',
    'variance_at',
    'coherent_width',
    'decoherence_excess',
    'combine_decoherence',
]
