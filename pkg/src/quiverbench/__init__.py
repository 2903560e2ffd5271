"""Bound quiver algebras: strings, bands, pointed modules and skew-gentle constructions."""
from .errors import InputError, UnsupportedError
from .quiver import (Arrow, Classification, Potential, Presentation, Quiver, Relation,
                     SkewGentleTriple, classify, cyclic_derivative, jacobian_presentation)
from .words import (Letter, Word, enumerate_bands, is_band, is_string,
                    nondomestic_witness_search, order_cmp, parse_word, q_generating_pair)
from .modules import (PointedModule, Representation, band_module, hom_space,
                      is_indecomposable_oracle, pointed_hom_exists, pointed_pushout_general,
                      pointed_pushout_string, string_module)
from .lattice import (ChainSpec, dense_chain_verify, independent_pair_verify,
                      nonsymmetric_verify, wide_sample_verify)
from .skew import GroupAction, g_pair, pushdown, sg_pair, skew_target, validate_action
from .brauer import BrauerGraph, brauer_algebra, shadow

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "UnsupportedError",
    "Arrow",
    "Classification",
    "Potential",
    "Presentation",
    "Quiver",
    "Relation",
    "SkewGentleTriple",
    "classify",
    "cyclic_derivative",
    "jacobian_presentation",
    "Letter",
    "Word",
    "enumerate_bands",
    "is_band",
    "is_string",
    "nondomestic_witness_search",
    "order_cmp",
    "parse_word",
    "q_generating_pair",
    "PointedModule",
    "Representation",
    "band_module",
    "hom_space",
    "is_indecomposable_oracle",
    "pointed_hom_exists",
    "pointed_pushout_general",
    "pointed_pushout_string",
    "string_module",
    "ChainSpec",
    "dense_chain_verify",
    "independent_pair_verify",
    "nonsymmetric_verify",
    "wide_sample_verify",
    "GroupAction",
    "g_pair",
    "pushdown",
    "sg_pair",
    "skew_target",
    "validate_action",
    "BrauerGraph",
    "brauer_algebra",
    "shadow",
]
