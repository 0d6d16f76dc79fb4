"""Exact repetition exponents, circular critical exponents, synchronizing
morphisms and exhaustive searches for extremal power-free words."""

from .morphisms import (BUILTINS, MU, PSI, THUE_MORSE, FactorSet, NotProlongableError,
                        PreconditionError, UniformMorphism, apply, check_technical_lemma,
                        factor_set, fixed_point_prefix, is_strongly_synchronizing,
                        is_synchronizing, lift_power_freeness, load_morphism)
from .report import ClaimReport
from .search import (SearchConfig, SearchResult, incremental_violation_check, longest_word,
                     product_exponent, rt, rtc, threshold_evidence)
from .words import (AlphabetError, BoundExceededError, EmptyWordError, PowerThreshold,
                    RepetitionWitness, Verdict, Word, circular_critical_exponent,
                    circular_factors, conjugates, critical_exponent, exponent,
                    is_circularly_power_free, is_power_free, parse_word, shortest_period,
                    verify_conjugate_characterization)

__version__ = "0.1.0"
