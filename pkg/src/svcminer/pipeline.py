"""End-to-end orchestration from annotated input files to ranked output.

Stages: ingest the three files, extract per-pair instances (optionally
fanned out over a worker pool), aggregate lemma tuples, build the three
score tables, percentile-rank the interlingual one, rank candidates and
write TSV artifacts. All stage handoffs are plain lemma-pair streams in
corpus order, so results do not depend on the degree of parallelism.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from svcminer.errors import Diagnostic
from svcminer.extract import (
    ExtractionConfig,
    count_lemma_rows,
    extract_alignment_instances,
    extract_dep_pairs,
    join_aligned,
)
from svcminer.ingest import load_bitext
from svcminer.rank import RankingParams, compute_cpr, rank_candidates
from svcminer.stats import score_instances

log = logging.getLogger("svcminer")

RANKED_COLUMNS = ("rank", "l1_verb", "l1_noun", "l2_verb", "l2_noun", "freq",
                  "cpr_noun", "cpr_verb", "q", "am_y_l1", "am_y_l2", "r")
TUPLE_COLUMNS = ("pair_id", "l1_verb_lemma", "l1_noun_lemma", "l2_verb_lemma",
                 "l2_noun_lemma", "d1", "d2")
SCORE_COLUMNS = ("lemma_a", "lemma_b", "o11", "o12", "o21", "o22", "e11",
                 "measure", "score")


def fmt(value):
    """Numeric output format: six significant digits."""
    return f"{value:.6g}"


@dataclass
class PipelineConfig:
    l1: str
    l2: str
    conllu1: str
    conllu2: str
    align: str
    out_dir: str = "."
    extraction: ExtractionConfig = field(default_factory=ExtractionConfig)
    ranking: RankingParams = field(default_factory=RankingParams)
    strict: bool = False
    dump_tuples: bool = False
    dump_scores: bool = False
    jobs: int = 1


@dataclass
class StageStats:
    """Per-stage accounting of one run."""

    sentence_pairs: int = 0
    l1_tokens: int = 0
    l2_tokens: int = 0
    l1_dep_pairs: int = 0
    l2_dep_pairs: int = 0
    aligned_tuples: int = 0
    distinct_lemma_tuples: int = 0

    def as_rows(self):
        return [
            ("sentence_pairs", self.sentence_pairs),
            ("l1_tokens", self.l1_tokens),
            ("l2_tokens", self.l2_tokens),
            ("l1_dep_pairs", self.l1_dep_pairs),
            ("l2_dep_pairs", self.l2_dep_pairs),
            ("aligned_tuples", self.aligned_tuples),
            ("distinct_lemma_tuples", self.distinct_lemma_tuples),
        ]


@dataclass
class ExtractionStreams:
    tuple_rows: list = field(default_factory=list)  # (pair_id, 4 lemmas, d1, d2)
    align_instances: list = field(default_factory=list)
    l1_dep_instances: list = field(default_factory=list)
    l2_dep_instances: list = field(default_factory=list)


@dataclass
class PipelineResult:
    stats: StageStats
    diagnostics: list
    candidates: list
    output_files: list


def _extract_chunk(args):
    pairs, cfg = args
    streams = ExtractionStreams()
    for pair in pairs:
        d1 = extract_dep_pairs(pair.l1_sentence, cfg, "l1", ref_id=pair.pair_id)
        d2 = extract_dep_pairs(pair.l2_sentence, cfg, "l2", ref_id=pair.pair_id)
        for t in join_aligned(pair, d1, d2):
            streams.tuple_rows.append((t.pair_id,) + t.lemma_key
                                      + (t.d1, t.d2))
        streams.align_instances.extend(extract_alignment_instances(pair, cfg))
        streams.l1_dep_instances.extend(
            (d.verb.lemma, d.noun.lemma) for d in d1)
        streams.l2_dep_instances.extend(
            (d.verb.lemma, d.noun.lemma) for d in d2)
    return streams


def extract_corpus(corpus, cfg, jobs=1):
    """Run extraction over all pairs, fanning out when jobs > 1.

    Chunks are merged in corpus order, so the streams are identical for
    every job count.
    """
    if jobs <= 1 or len(corpus.pairs) < 2:
        return _extract_chunk((corpus.pairs, cfg))
    chunk_size = max(1, -(-len(corpus.pairs) // (jobs * 4)))
    parts = [corpus.pairs[i:i + chunk_size]
             for i in range(0, len(corpus.pairs), chunk_size)]
    merged = ExtractionStreams()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for chunk in pool.map(_extract_chunk, [(p, cfg) for p in parts]):
            merged.tuple_rows.extend(chunk.tuple_rows)
            merged.align_instances.extend(chunk.align_instances)
            merged.l1_dep_instances.extend(chunk.l1_dep_instances)
            merged.l2_dep_instances.extend(chunk.l2_dep_instances)
    return merged


def _collect_stats(corpus, streams, lemma_tuples):
    return StageStats(
        sentence_pairs=len(corpus.pairs),
        l1_tokens=sum(len(p.l1_sentence.tokens) for p in corpus.pairs),
        l2_tokens=sum(len(p.l2_sentence.tokens) for p in corpus.pairs),
        l1_dep_pairs=len(streams.l1_dep_instances),
        l2_dep_pairs=len(streams.l2_dep_instances),
        aligned_tuples=len(streams.tuple_rows),
        distinct_lemma_tuples=len(lemma_tuples),
    )


def ranked_to_tsv(candidates):
    lines = ["\t".join(RANKED_COLUMNS)]
    for rank, cand in enumerate(candidates, 1):
        lt = cand.lemmas
        lines.append("\t".join((
            str(rank), lt.l1_verb_lemma, lt.l1_noun_lemma,
            lt.l2_verb_lemma, lt.l2_noun_lemma, str(cand.freq),
            fmt(cand.cpr_noun), fmt(cand.cpr_verb), fmt(cand.q),
            fmt(cand.am_y_l1), fmt(cand.am_y_l2), fmt(cand.r))))
    return "\n".join(lines) + "\n"


def tuples_to_tsv(tuple_rows):
    lines = ["\t".join(TUPLE_COLUMNS)]
    lines.extend("\t".join(row) for row in tuple_rows)
    return "\n".join(lines) + "\n"


def scores_to_tsv(table):
    lines = ["\t".join(SCORE_COLUMNS)]
    ordered = sorted(table.entries.items(),
                     key=lambda item: (-item[1].score, item[0]))
    for (lemma_a, lemma_b), entry in ordered:
        t = entry.table
        lines.append("\t".join((
            lemma_a, lemma_b, str(t.o11), str(t.o12), str(t.o21), str(t.o22),
            fmt(t.e11), table.measure.value, fmt(entry.score))))
    return "\n".join(lines) + "\n"


def _ingest_and_extract(config):
    diagnostics = []
    corpus = load_bitext(config.conllu1, config.conllu2, config.align,
                         config.l1, config.l2, strict=config.strict,
                         diagnostics=diagnostics)
    for diag in diagnostics:
        log.warning("%s", diag)
    streams = extract_corpus(corpus, config.extraction, jobs=config.jobs)
    lemma_tuples = count_lemma_rows(row[1:5] for row in streams.tuple_rows)
    stats = _collect_stats(corpus, streams, lemma_tuples)
    log.info("ingest: %d sentence pairs (%d %s tokens, %d %s tokens)",
             stats.sentence_pairs, stats.l1_tokens, config.l1,
             stats.l2_tokens, config.l2)
    log.info("extract: %d %s and %d %s verb/object pairs",
             stats.l1_dep_pairs, config.l1, stats.l2_dep_pairs, config.l2)
    log.info("join: %d aligned tuples, %d distinct lemma tuples",
             stats.aligned_tuples, stats.distinct_lemma_tuples)
    return corpus, streams, lemma_tuples, stats, diagnostics


def run_pipeline(config):
    """Execute the full pipeline and write output files.

    Raises FormatError / EmptyUniverseError / OSError for the caller to
    map onto exit codes.
    """
    corpus, streams, lemma_tuples, stats, diagnostics = \
        _ingest_and_extract(config)
    params = config.ranking

    inter = score_instances(streams.align_instances, params.x,
                            f"interlingual:{config.l1}-{config.l2}")
    intra1 = score_instances(streams.l1_dep_instances, params.y,
                             f"intralingual:{config.l1}")
    intra2 = score_instances(streams.l2_dep_instances, params.y,
                             f"intralingual:{config.l2}")
    log.info("score: %d interlingual, %d + %d intralingual pairs",
             len(inter.entries), len(intra1.entries), len(intra2.entries))
    cprs = compute_cpr(inter)
    candidates = rank_candidates(lemma_tuples, params, cprs, intra1, intra2)
    log.info("rank: %d candidates at min_freq=%d",
             len(candidates), params.min_freq)

    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files = []

    ranked_path = out_dir / "ranked.tsv"
    ranked_path.write_text(ranked_to_tsv(candidates), encoding="utf-8")
    files.append(ranked_path)

    if config.dump_tuples:
        path = out_dir / "tuples.tsv"
        path.write_text(tuples_to_tsv(streams.tuple_rows), encoding="utf-8")
        files.append(path)
    if config.dump_scores:
        for table, name in ((inter, f"interlingual_{params.x.value}"),
                            (intra1, f"intralingual_{config.l1}_{params.y.value}"),
                            (intra2, f"intralingual_{config.l2}_{params.y.value}")):
            path = out_dir / f"scores_{name}.tsv"
            path.write_text(scores_to_tsv(table), encoding="utf-8")
            files.append(path)
    return PipelineResult(stats, diagnostics, candidates, files)


def stage_stats(config):
    """Ingest and extract only; report the per-stage counts."""
    corpus, _, _, stats, diagnostics = _ingest_and_extract(config)
    if not corpus.pairs:
        log.warning("corpus is empty; all counts are zero")
    return stats, diagnostics
