"""Exact move calculus on abstract simplicial complexes.

Complexes are immutable facet sets over integer vertex labels.  Moves
(stellar subdivisions and welds, bistellar flips, stellar exchanges,
elementary shellings) are replayable data with a checked legality
report; transcripts of moves serialise to diff-friendly text.  On top
of the calculus sit exact integral homology, ball/sphere recognition
with replayable evidence, seeded bistellar search, and compilers that
expand starrings, exchanges, and shellings into bistellar transcripts.
"""

from .core import (
    AbsentSimplexError,
    BudgetExhaustedError,
    Complex,
    EMPTY,
    FVector,
    JoinCollisionError,
    MalformedSimplexError,
    NotPseudomanifoldError,
    dump_complex,
    dumps_complex,
    fmt_simplex,
    full_simplex,
    is_simplex_boundary,
    isomorphic,
    load_complex,
    loads_complex,
    simplex,
    simplex_boundary,
    standard_sphere,
)
from .moves import (
    Bistellar,
    Exchange,
    IllegalAtStepError,
    IllegalMoveError,
    LegalityReport,
    MOVE_KINDS,
    Shell,
    Star,
    Transcript,
    TranscriptParseError,
    Unshell,
    Weld,
    apply_move,
    apply_transcript,
    check_move,
    derived_subdivision,
    derived_subdivision_transcript,
    dump_transcript,
    dumps_transcript,
    enumerate_moves,
    invert,
    invert_transcript,
    load_transcript,
    loads_transcript,
    parse_move,
    parse_simplex,
)
from .recognize import (
    BALL,
    HomologyProfile,
    MANIFOLD,
    NOT_MANIFOLD,
    OTHER,
    SPHERE,
    ShellingSequence,
    UNKNOWN,
    Verdict,
    boundary_matrix,
    find_shelling,
    homology,
    is_closed_pseudomanifold,
    recognize_ball_or_sphere,
    replay_shelling,
    smith_normal_form,
    verify_combinatorial_manifold,
)
from .flipsearch import (
    Certificate,
    Schedule,
    SplitMix64,
    prove_equivalent,
    reduce,
)
from .expander import (
    ExpansionSession,
    LinkFactorization,
    Witness,
    ball_to_cone_transcript,
    cone_shelling,
    exchange_to_bistellar,
    expand_exchange,
    factor_link,
    join_boundary_shelling,
    search_witness,
    star_move_transcript,
    subdivision_to_bistellar,
)

__version__ = "0.1.0"

__all__ = [
    "AbsentSimplexError",
    "BALL",
    "Bistellar",
    "BudgetExhaustedError",
    "Certificate",
    "Complex",
    "EMPTY",
    "Exchange",
    "ExpansionSession",
    "FVector",
    "HomologyProfile",
    "IllegalAtStepError",
    "IllegalMoveError",
    "JoinCollisionError",
    "LegalityReport",
    "LinkFactorization",
    "MANIFOLD",
    "MOVE_KINDS",
    "MalformedSimplexError",
    "NOT_MANIFOLD",
    "NotPseudomanifoldError",
    "OTHER",
    "SPHERE",
    "Schedule",
    "Shell",
    "ShellingSequence",
    "SplitMix64",
    "Star",
    "Transcript",
    "TranscriptParseError",
    "UNKNOWN",
    "Unshell",
    "Verdict",
    "Weld",
    "Witness",
    "apply_move",
    "apply_transcript",
    "ball_to_cone_transcript",
    "boundary_matrix",
    "check_move",
    "cone_shelling",
    "derived_subdivision",
    "derived_subdivision_transcript",
    "dump_complex",
    "dump_transcript",
    "dumps_complex",
    "dumps_transcript",
    "enumerate_moves",
    "exchange_to_bistellar",
    "expand_exchange",
    "factor_link",
    "find_shelling",
    "fmt_simplex",
    "full_simplex",
    "homology",
    "invert",
    "invert_transcript",
    "is_closed_pseudomanifold",
    "is_simplex_boundary",
    "isomorphic",
    "join_boundary_shelling",
    "load_complex",
    "load_transcript",
    "loads_complex",
    "loads_transcript",
    "parse_move",
    "parse_simplex",
    "prove_equivalent",
    "recognize_ball_or_sphere",
    "reduce",
    "replay_shelling",
    "search_witness",
    "simplex",
    "simplex_boundary",
    "smith_normal_form",
    "standard_sphere",
    "star_move_transcript",
    "subdivision_to_bistellar",
    "verify_combinatorial_manifold",
]
