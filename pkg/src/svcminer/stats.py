"""Contingency tables and association measures over lemma-pair samples.

Two kinds of sample feed the same machinery: verb/object pairs within
one language ("intralingual") and aligned lemma pairs across languages
("interlingual"). Each sample of N instances yields one contingency
table per observed pair:

    o11  pair seen together        o12  first without second
    o21  second without first      o22  neither

with marginals r1 = o11+o12, c1 = o11+o21 and the expected joint count
under independence e11 = r1*c1/N.
"""

import enum
from dataclasses import dataclass
from math import log, log2, sqrt

from svcminer import kernels
from svcminer.errors import EmptyUniverseError
from svcminer.extract import extract_alignment_instances, extract_dep_pairs


class Measure(enum.Enum):
    """The six supported association measures."""

    OE = "oe"
    MI = "mi"
    LOCAL_MI = "local-mi"
    Z_SCORE = "z-score"
    T_SCORE = "t-score"
    SIMPLE_LL = "simple-ll"

    @property
    def code(self):
        return _MEASURE_CODES[self]

    @classmethod
    def from_string(cls, name):
        normalized = name.strip().lower().replace("_", "-")
        for measure in cls:
            if measure.value == normalized:
                return measure
        raise ValueError(f"unknown measure {name!r}; expected one of "
                         + ", ".join(m.value for m in cls))


_MEASURE_CODES = {
    Measure.OE: kernels.OE,
    Measure.MI: kernels.MI,
    Measure.LOCAL_MI: kernels.LOCAL_MI,
    Measure.Z_SCORE: kernels.Z_SCORE,
    Measure.T_SCORE: kernels.T_SCORE,
    Measure.SIMPLE_LL: kernels.SIMPLE_LL,
}


@dataclass(frozen=True, slots=True)
class ContingencyTable:
    o11: int
    o12: int
    o21: int
    o22: int

    @property
    def n(self):
        return self.o11 + self.o12 + self.o21 + self.o22

    @property
    def r1(self):
        return self.o11 + self.o12

    @property
    def c1(self):
        return self.o11 + self.o21

    @property
    def e11(self):
        # float conversions first, mirroring the kernel's double arithmetic
        return float(self.r1) * float(self.c1) / float(self.n)


def score(table, measure):
    """One association score for one table.

    Kept expression-identical to the batch kernels so scalar and batch
    paths agree bitwise. Requires o11 >= 1 (scores of unseen pairs are
    undefined).
    """
    if table.o11 < 1:
        raise ValueError("association measures require o11 >= 1")
    of = float(table.o11)
    e = table.e11
    if measure is Measure.OE:
        return of / e
    if measure is Measure.MI:
        return log2(of / e)
    if measure is Measure.LOCAL_MI:
        return of * log2(of / e)
    if measure is Measure.Z_SCORE:
        return (of - e) / sqrt(e)
    if measure is Measure.T_SCORE:
        return (of - e) / sqrt(of)
    if measure is Measure.SIMPLE_LL:
        return 2.0 * (of * log(of / e) - (of - e))
    raise ValueError(f"unknown measure {measure!r}")


@dataclass(frozen=True, slots=True)
class ScoredPair:
    table: ContingencyTable
    score: float


@dataclass
class ScoreTable:
    """Scored contingency tables for every observed pair of one sample."""

    context: str  # e.g. "intralingual:de" or "interlingual:de-en"
    measure: Measure
    entries: dict  # (lemma_a, lemma_b) -> ScoredPair

    def __len__(self):
        return len(self.entries)

    def __contains__(self, pair):
        return pair in self.entries

    def lookup(self, a, b):
        """Score of the pair, accepted in either orientation.

        Tables are keyed in one fixed orientation; association is
        treated as symmetric, so a reversed query answers from the same
        entry.
        """
        entry = self.entries.get((a, b))
        if entry is None:
            entry = self.entries.get((b, a))
        if entry is None:
            raise KeyError((a, b))
        return entry.score


def _count_interned(instances):
    """Intern lemmas to dense ids and run the counting kernel."""
    a_vocab, b_vocab = {}, {}
    a_ids, b_ids = [], []
    for a, b in instances:
        a_ids.append(a_vocab.setdefault(a, len(a_vocab)))
        b_ids.append(b_vocab.setdefault(b, len(b_vocab)))
    ua, ub, o11, r1, c1 = kernels.count_pairs(a_ids, b_ids)
    a_back = list(a_vocab)
    b_back = list(b_vocab)
    return ua, ub, o11, r1, c1, a_back, b_back


def build_tables(instances):
    """Contingency tables for every pair observed in the instance list.

    The sample size is the number of instances; tables exist only for
    pairs with o11 >= 1.
    """
    instances = list(instances)
    if not instances:
        raise EmptyUniverseError("cannot build tables from an empty sample")
    n = len(instances)
    ua, ub, o11, r1, c1, a_back, b_back = _count_interned(instances)
    tables = {}
    for ai, bi, o, r, c in zip(ua, ub, o11, r1, c1):
        o, r, c = int(o), int(r), int(c)
        tables[(a_back[ai], b_back[bi])] = ContingencyTable(
            o, r - o, c - o, n - r - c + o)
    return tables


def score_instances(instances, measure, context):
    """Build and score tables for one sample in a single pass."""
    instances = list(instances)
    if not instances:
        raise EmptyUniverseError(f"empty sample for {context}")
    n = len(instances)
    ua, ub, o11, r1, c1, a_back, b_back = _count_interned(instances)
    values = kernels.score_many(o11, r1, c1, n, measure.code)
    entries = {}
    for ai, bi, o, r, c, v in zip(ua, ub, o11, r1, c1, values):
        o, r, c = int(o), int(r), int(c)
        entries[(a_back[ai], b_back[bi])] = ScoredPair(
            ContingencyTable(o, r - o, c - o, n - r - c + o), float(v))
    return ScoreTable(context, measure, entries)


def intralingual_scores(corpus, cfg, side, measure):
    """Score verb/object lemma pairs of one language side of the corpus.

    The sample covers every dep-pair occurrence of that side, including
    sentences without any alignment links.
    """
    instances = []
    for pair in corpus.pairs:
        sentence = pair.l1_sentence if side == "l1" else pair.l2_sentence
        for dep in extract_dep_pairs(sentence, cfg, side, ref_id=pair.pair_id):
            instances.append((dep.verb.lemma, dep.noun.lemma))
    language = corpus.l1 if side == "l1" else corpus.l2
    return score_instances(instances, measure, f"intralingual:{language}")


def interlingual_scores(corpus, cfg, measure):
    """Score aligned content-word lemma pairs across the whole corpus.

    Keys are oriented (L1 lemma, L2 lemma); lookups work in either
    direction through ScoreTable.lookup.
    """
    instances = []
    for pair in corpus.pairs:
        instances.extend(extract_alignment_instances(pair, cfg))
    return score_instances(instances, measure,
                           f"interlingual:{corpus.l1}-{corpus.l2}")
