"""Cross-lingual support-verb-construction mining from parsed, aligned bitext."""

__version__ = "0.1.0"

from svcminer.errors import (
    Diagnostic,
    EmptyUniverseError,
    FormatError,
    PipelineConsistencyError,
    SvcMinerError,
)
from svcminer.extract import (
    AlignedTuple,
    DepPairInstance,
    ExtractionConfig,
    LemmaTuple,
    aggregate_lemma_tuples,
    extract_aligned_tuples,
    extract_alignment_instances,
    extract_dep_pairs,
)
from svcminer.ingest import (
    AlignmentLink,
    BitextCorpus,
    Sentence,
    SentencePair,
    Token,
    assemble_bitext,
    load_bitext,
    parse_alignments,
    parse_conllu,
)
from svcminer.rank import (
    PercentileTable,
    RankedCandidate,
    RankingParams,
    compute_cpr,
    compute_q,
    compute_r,
    q_ratio,
    rank_candidates,
)
from svcminer.stats import (
    ContingencyTable,
    Measure,
    ScoreTable,
    build_tables,
    interlingual_scores,
    intralingual_scores,
    score,
    score_instances,
)
