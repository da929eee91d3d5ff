"""mcadd: mcadd/synth/__init__.py
Circuit constructions: prefix networks and adders, code translators, the
hybrid adder and the exact metastable-closure transform.
"""

from .adder import (
    ADDERS,
    adder_circuit,
    addition_function,
    build_add,
    mc_add_oracle,
)
from .closure import (
    MAX_IMPLICANTS,
    MAX_INPUTS,
    Cube,
    TruthTable,
    mc_transform,
    mux_table,
    prime_implicants,
    xor_table,
)
from .prefix import (
    DIRECTIONS,
    LEFT_TO_RIGHT,
    OPERATORS,
    RIGHT_TO_LEFT,
    ppc,
    prefix_adder,
    ripple_adder,
)
from .translate import bin_to_brgc, bin_to_un, brgc_to_bin, map_circuit, un_to_bin, unary_width


__all__ = [
    "ADDERS",
    "DIRECTIONS",
    "LEFT_TO_RIGHT",
    "MAX_IMPLICANTS",
    "MAX_INPUTS",
    "OPERATORS",
    "RIGHT_TO_LEFT",
    "Cube",
    "TruthTable",
    "adder_circuit",
    "addition_function",
    "bin_to_brgc",
    "bin_to_un",
    "brgc_to_bin",
    "build_add",
    "map_circuit",
    "mc_add_oracle",
    "mc_transform",
    "mux_table",
    "ppc",
    "prefix_adder",
    "prime_implicants",
    "ripple_adder",
    "un_to_bin",
    "unary_width",
    "xor_table",
]
