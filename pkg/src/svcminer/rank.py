"""Percentile normalisation and the final candidate ranking.

Association scores are not comparable across measures or languages, so
interlingual scores are first mapped to cumulative percentile ranks
(cpr). A candidate tuple is then ranked by

    q = (delta + cpr(noun alignment pair)) / (delta + cpr(verb alignment pair))
    r = (alpha * am_l1 + beta * am_l2) * q

where am_l1/am_l2 are the intralingual verb/object scores of the two
languages. A reliable noun translation paired with an unreliable verb
translation drives q above 1, which is the support-verb signal.
"""

from dataclasses import dataclass

from svcminer import kernels
from svcminer.errors import EmptyUniverseError, PipelineConsistencyError
from svcminer.stats import Measure


@dataclass
class PercentileTable:
    """Cumulative percentile ranks for every entry of a score table."""

    source: object  # the ScoreTable the ranks were computed from
    cpr: dict  # (lemma_a, lemma_b) -> float in (0, 1]

    def lookup(self, a, b):
        value = self.cpr.get((a, b))
        if value is None:
            value = self.cpr.get((b, a))
        if value is None:
            raise KeyError((a, b))
        return value


def compute_cpr(scores):
    """Map each score of a table to the fraction of scores <= it.

    Ties share a value, the maximum maps to exactly 1.0 and every value
    is positive, so ranks live in (0, 1].
    """
    if not scores.entries:
        raise EmptyUniverseError("cannot rank an empty score table")
    pairs = list(scores.entries)
    values = [scores.entries[p].score for p in pairs]
    ranks = kernels.cpr_many(values)
    return PercentileTable(scores, {p: float(r) for p, r in zip(pairs, ranks)})


def q_ratio(cpr_noun, cpr_verb, delta):
    """The damped ratio of noun to verb alignment percentile.

    delta bounds the ratio to [delta/(delta+1), (delta+1)/delta]; with
    delta = 1 that is [0.5, 2].
    """
    return (delta + cpr_noun) / (delta + cpr_verb)


@dataclass(frozen=True)
class RankingParams:
    """Measures, weights and filters of one ranking run."""

    x: Measure = Measure.LOCAL_MI  # interlingual measure
    y: Measure = Measure.OE  # intralingual measure
    alpha: float = 1.0
    beta: float = 1.0
    delta: float = 1.0
    min_freq: int = 2

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be non-negative")
        if self.alpha + self.beta <= 0:
            raise ValueError("alpha + beta must be positive")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.min_freq < 1:
            raise ValueError("min_freq must be at least 1")


@dataclass(frozen=True)
class RankedCandidate:
    lemmas: object  # LemmaTuple
    freq: int
    cpr_noun: float
    cpr_verb: float
    q: float
    am_y_l1: float
    am_y_l2: float
    r: float


def compute_q(lemma_tuple, cprs, delta):
    """Percentile ranks of the tuple's two alignment pairs and their q.

    Both pairs are guaranteed present by extraction (tuple components
    are content words); a miss signals a pipeline inconsistency.
    """
    try:
        cpr_noun = cprs.lookup(lemma_tuple.l1_noun_lemma,
                               lemma_tuple.l2_noun_lemma)
        cpr_verb = cprs.lookup(lemma_tuple.l1_verb_lemma,
                               lemma_tuple.l2_verb_lemma)
    except KeyError as exc:
        raise PipelineConsistencyError(
            f"alignment pair {exc.args[0]!r} missing from percentile table"
        ) from None
    return cpr_noun, cpr_verb, q_ratio(cpr_noun, cpr_verb, delta)


def compute_r(lemma_tuple, cpr_noun, cpr_verb, q, intra_l1, intra_l2, params):
    """Assemble the ranked candidate with its final r score."""
    entry1 = intra_l1.entries.get((lemma_tuple.l1_verb_lemma,
                                   lemma_tuple.l1_noun_lemma))
    entry2 = intra_l2.entries.get((lemma_tuple.l2_verb_lemma,
                                   lemma_tuple.l2_noun_lemma))
    if entry1 is None or entry2 is None:
        missing = "L1" if entry1 is None else "L2"
        raise PipelineConsistencyError(
            f"{missing} verb/object pair of {lemma_tuple.lemma_key!r} "
            "missing from intralingual scores")
    r = (params.alpha * entry1.score + params.beta * entry2.score) * q
    return RankedCandidate(lemma_tuple, lemma_tuple.freq, cpr_noun, cpr_verb,
                           q, entry1.score, entry2.score, r)


def rank_candidates(lemma_tuples, params, cprs, intra_l1, intra_l2):
    """Filter by frequency, score and sort all candidate tuples.

    Sorted by r descending; ties break on frequency descending, then on
    the lemma 4-tuple, so equal inputs always produce equal output.
    """
    candidates = []
    for lt in lemma_tuples:
        if lt.freq < params.min_freq:
            continue
        cpr_noun, cpr_verb, q = compute_q(lt, cprs, params.delta)
        candidates.append(compute_r(lt, cpr_noun, cpr_verb, q,
                                    intra_l1, intra_l2, params))
    candidates.sort(key=lambda c: (-c.r, -c.freq, c.lemmas.lemma_key))
    return candidates
