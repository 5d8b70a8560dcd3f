"""±1 steganography with perfect Z2Z4-additive codes.

The package embeds secret bitstreams into grayscale covers by syndrome
coding over Z2^alpha x Z4^beta, changing at most one symbol per block
by one unit (two at saturated symbols), and ships the matching
rate/distortion analysis against ternary and q-ary Hamming baselines.
"""

from .algebra import (
    MixedVector,
    gray_inverse,
    gray_map,
    inner_product,
    mixed_add,
    mixed_sub,
    scalar_mul,
    syndrome,
)
from .codec import (
    CapacityExceeded,
    DoubleSaturationUnresolvable,
    MalformedHeader,
    direction_to_flip,
    embed_block,
    embed_stream,
    extract_block,
    extract_stream,
    least_digit,
    pack_message,
    plan_changes,
    symbols_to_vector,
    unit_bits,
)
from .construction import (
    CodeParameters,
    CodeSpec,
    Role,
    build_code,
    canonical_rep,
    complement_of,
    decode_gap,
    derive_parameters,
    matrix_dump,
    verify_code,
)
from .media import (
    BadMagic,
    MediaDocument,
    TruncatedPayload,
    UnsupportedMaxval,
    parse_pgm,
    parse_raw,
    write_pgm,
    write_raw,
)
from .rates import (
    Frontier,
    MonteCarloResult,
    RatePoint,
    Theorem1Report,
    emit_rates_csv,
    entropy_bound,
    frontier,
    monte_carlo_distortion,
    qary_rate,
    ternary_baseline_distortion,
    ternary_rate,
    theorem1_check,
    z2z4_rate,
    z2z4_rate_saturating,
)

__version__ = "0.1.0"

__all__ = [
    "MixedVector",
    "gray_map",
    "gray_inverse",
    "mixed_add",
    "mixed_sub",
    "scalar_mul",
    "inner_product",
    "syndrome",
    "CodeParameters",
    "CodeSpec",
    "Role",
    "derive_parameters",
    "canonical_rep",
    "build_code",
    "decode_gap",
    "complement_of",
    "matrix_dump",
    "verify_code",
    "CapacityExceeded",
    "DoubleSaturationUnresolvable",
    "MalformedHeader",
    "least_digit",
    "symbols_to_vector",
    "direction_to_flip",
    "plan_changes",
    "embed_block",
    "extract_block",
    "pack_message",
    "unit_bits",
    "embed_stream",
    "extract_stream",
    "MediaDocument",
    "BadMagic",
    "TruncatedPayload",
    "UnsupportedMaxval",
    "parse_pgm",
    "write_pgm",
    "parse_raw",
    "write_raw",
    "RatePoint",
    "Frontier",
    "Theorem1Report",
    "MonteCarloResult",
    "z2z4_rate",
    "z2z4_rate_saturating",
    "ternary_rate",
    "qary_rate",
    "entropy_bound",
    "frontier",
    "theorem1_check",
    "monte_carlo_distortion",
    "ternary_baseline_distortion",
    "emit_rates_csv",
    "__version__",
]
