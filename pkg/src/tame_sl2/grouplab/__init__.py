"""Group-theoretic constructions on top of the tame group: linearization, resonance, families."""

from tame_sl2.grouplab.families import (
    gen_example_g,
    gen_henon,
    gen_hyperelliptic,
    gen_parabolic,
    parabolic_drift,
)
from tame_sl2.grouplab.linearize import (
    FiniteSubgroup,
    TriangularMap,
    diagonalize_triangular,
    linearize,
    mean_linearize,
)
from tame_sl2.grouplab.resonance import ResonanceWitness, resonant, resonant_poly
from tame_sl2.grouplab.stabilizer import membership_h2, membership_k1, stab_x1_normal_form

__all__ = [
    "FiniteSubgroup",
    "ResonanceWitness",
    "TriangularMap",
    "diagonalize_triangular",
    "gen_example_g",
    "gen_henon",
    "gen_hyperelliptic",
    "gen_parabolic",
    "linearize",
    "mean_linearize",
    "membership_h2",
    "membership_k1",
    "parabolic_drift",
    "resonant",
    "resonant_poly",
    "stab_x1_normal_form",
]
