"""Directed triple systems of small order and their l-good sequencings."""

from .design import (
    Block,
    Dts,
    Permutation,
    Sequencing,
    TransitiveTriple,
    Tts,
    ValidationReport,
    apply_permutation,
    arcs_of,
    make_transitive_triple,
    underlying_tts,
    validate_dts,
    validate_tts,
)
from .dts import (
    DtsCatalog,
    direct_all,
    dts_automorphism_group,
    enumerate_dts,
    full_isomorphism_check_dts,
    is_orbit_minimal,
)
from .sequencer import (
    SequencingReport,
    count_good_brute,
    count_good_sequencings,
    is_ell_good,
    least_good_sequencing,
    max_good_ell,
)
from .tts import AutGroup, automorphism_group, canonical_form_tts, enumerate_tts, is_isomorphic_tts

__version__ = "0.1.0"
