"""Curation toolchain for C/C++ vulnerability-detection corpora.

Normalizes function source (comment/whitespace removal, string and
identifier placeholders), removes duplicated and faulty entries, draws
balanced train/validation/test splits, and reports token-budget and
classification statistics for DiverseVul-shaped JSONL datasets.
"""

from .analytics import (
    Averaging,
    ExternalCounter,
    LexicalCounter,
    MetricsReport,
    TokenStats,
    classification_metrics,
    emit_report,
    label_distribution,
    token_stats,
)
from .corpus import (
    EnrichedRecord,
    FunctionRecord,
    content_key,
    enrich,
    load_enriched,
    load_jsonl,
    write_jsonl,
)
from .curator import CurationReport, DuplicateGroup, GroupVerdict, classify_group, group_duplicates, refine
from .lexer import Token, TokenKind, TokenStream, count_lexical_tokens, tokenize
from .normalizer import (
    MacroSuspect,
    NormalizationResult,
    NormalizationStatus,
    SymbolTable,
    anonymize,
    build_symbol_table,
    normalize,
    strip_and_collapse,
    substitute_strings,
)
from .sampler import (
    DatasetSplit,
    InsufficientClass,
    SplitSpec,
    SplitSpecError,
    balance_sample,
    holdout_split,
    split_manifest,
)

__version__ = "0.1.0"
