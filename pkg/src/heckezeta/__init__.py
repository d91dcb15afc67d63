"""Exact Iwahori-Hecke and intertwining-operator machinery for GL(n) over
the p-adics, with Kloosterman-set zeta functions and brute-force oracles."""

from .characters import (UnramifiedCharacter, admissible_character,
                         delta_half_on_cstar, eval_weight, generic_character,
                         make_char, v_ad, weyl_act_char)
from .hecke import (HeckeElement, PrincipalSeriesVector, hecke_mul,
                    involution, t_simple_action, t_word_action)
from .intertwine import (a_simple, a_word, gk_coefficient, subset_expansion,
                         value_at_identity)
from .scalars import Scalar, ScalarField
from .weyl import (Composition, ReducedWord, WeylElement, admissible_elements,
                   beta_enumeration, canonical_reduced_word, compositions,
                   length_and_inversions)
from .zeta import (build_phi, flag_index, kloosterman_zeta,
                   series_coefficients, support_check)

__all__ = [
    "UnramifiedCharacter", "admissible_character", "delta_half_on_cstar",
    "eval_weight", "generic_character", "make_char", "v_ad", "weyl_act_char",
    "HeckeElement", "PrincipalSeriesVector", "hecke_mul", "involution",
    "t_simple_action", "t_word_action",
    "a_simple", "a_word", "gk_coefficient", "subset_expansion",
    "value_at_identity",
    "Scalar", "ScalarField",
    "Composition", "ReducedWord", "WeylElement", "admissible_elements",
    "beta_enumeration", "canonical_reduced_word", "compositions",
    "length_and_inversions",
    "build_phi", "flag_index", "kloosterman_zeta", "series_coefficients",
    "support_check",
]

__version__ = "0.1.0"
