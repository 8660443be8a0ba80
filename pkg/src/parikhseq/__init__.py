"""Parikh matrices, M-ambiguity of words and M-ambiguity sequences."""

from .diophantine import (
    LinearSystem,
    ResidueStructure,
    WordTemplate,
    ambiguous_parameters,
    build_system,
    consecutive_patterns,
    consistent_projections,
    detect_residue_structure,
    instantiate,
    parse_template,
    solve_fixed,
)
from .errors import ParikhError
from .matrix import ParikhMatrix, count_subword, m_equivalent, parikh_matrix
from .search import AmbiguityVerdict, enumerate_class, is_ambiguous
from .sequences import (
    AmbiguitySequence,
    DuplicationSchedule,
    ambiguity_sequence,
    detect_eventual_period,
    generate_words,
    realize_pattern,
)
from .words import (
    OrderedAlphabet,
    Word,
    duplicate,
    is_duplication,
    one_equivalence_class,
    parse_word,
    print_word,
    project,
    subword_core,
)

__version__ = "0.1.0"
