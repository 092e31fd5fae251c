"""Verb/direct-object extraction and the cross-lingual tuple join.

A candidate tuple combines a verb+object pair from each language such
that the two verbs and the two nouns are word-aligned within the same
sentence pair. Aggregation over lemmas yields the counted candidate
list that the ranking stage consumes.
"""

from collections import Counter
from dataclasses import dataclass

DEFAULT_OBJECT_LABELS = frozenset({"obj", "dobj"})
DEFAULT_VERB_POS = frozenset({"VERB"})
DEFAULT_NOUN_POS = frozenset({"NOUN"})
DEFAULT_CONTENT_POS = frozenset({"NOUN", "VERB", "ADJ", "ADV"})


@dataclass(frozen=True)
class ExtractionConfig:
    """Label and POS filters for both languages.

    Object label inventories differ between parser models, so each side
    carries its own set. Content POS tags define which alignment links
    enter the interlingual sample.
    """

    l1_object_labels: frozenset = DEFAULT_OBJECT_LABELS
    l2_object_labels: frozenset = DEFAULT_OBJECT_LABELS
    verb_pos: frozenset = DEFAULT_VERB_POS
    noun_pos: frozenset = DEFAULT_NOUN_POS
    content_pos: frozenset = DEFAULT_CONTENT_POS

    def __post_init__(self):
        for name in ("l1_object_labels", "l2_object_labels", "verb_pos",
                     "noun_pos", "content_pos"):
            if not getattr(self, name):
                raise ValueError(f"{name} must not be empty")

    def object_labels(self, side):
        if side == "l1":
            return self.l1_object_labels
        if side == "l2":
            return self.l2_object_labels
        raise ValueError(f"side must be 'l1' or 'l2', got {side!r}")


@dataclass(frozen=True)
class DepPairInstance:
    """One verb + direct-object occurrence on one side of a pair."""

    ref: str  # sentence or pair id
    side: str  # "l1" | "l2"
    verb: object  # Token
    noun: object  # Token

    @property
    def deprel(self):
        return self.noun.deprel


@dataclass(frozen=True)
class AlignedTuple:
    """A verb/object pair per language, joined through alignment links."""

    pair_id: str
    l1_verb: object
    l1_noun: object
    l2_verb: object
    l2_noun: object
    d1: str
    d2: str

    @property
    def lemma_key(self):
        return (self.l1_verb.lemma, self.l1_noun.lemma,
                self.l2_verb.lemma, self.l2_noun.lemma)


@dataclass(frozen=True)
class LemmaTuple:
    """A distinct lemma 4-tuple with its absolute frequency."""

    l1_verb_lemma: str
    l1_noun_lemma: str
    l2_verb_lemma: str
    l2_noun_lemma: str
    freq: int

    @property
    def lemma_key(self):
        return (self.l1_verb_lemma, self.l1_noun_lemma,
                self.l2_verb_lemma, self.l2_noun_lemma)


def extract_dep_pairs(sentence, cfg, side, ref_id=None):
    """All (verb, noun) occurrences where the noun is a direct object.

    The noun must head-attach to the verb, carry an object label of the
    given side and satisfy the POS filters. Output order follows noun
    token order.
    """
    labels = cfg.object_labels(side)
    ref = ref_id if ref_id is not None else sentence.sentence_id
    out = []
    for tok in sentence.tokens:
        if tok.deprel not in labels or tok.upos not in cfg.noun_pos:
            continue
        if tok.head < 1:
            continue
        verb = sentence.tokens[tok.head - 1]
        if verb.upos in cfg.verb_pos:
            out.append(DepPairInstance(ref, side, verb, tok))
    return out


def join_aligned(pair, l1_deps, l2_deps):
    """Cross product of dep pairs restricted by verb and noun alignment."""
    links = {(l.src_index, l.tgt_index) for l in pair.links}
    out = []
    for d1 in l1_deps:
        for d2 in l2_deps:
            if ((d1.verb.index, d2.verb.index) in links
                    and (d1.noun.index, d2.noun.index) in links):
                out.append(AlignedTuple(pair.pair_id, d1.verb, d1.noun,
                                        d2.verb, d2.noun,
                                        d1.noun.deprel, d2.noun.deprel))
    return out


def extract_aligned_tuples(pair, cfg):
    """All aligned verb/object tuples of one sentence pair.

    One-to-many alignments produce every combination; nothing is
    deduplicated within a pair.
    """
    l1_deps = extract_dep_pairs(pair.l1_sentence, cfg, "l1", ref_id=pair.pair_id)
    l2_deps = extract_dep_pairs(pair.l2_sentence, cfg, "l2", ref_id=pair.pair_id)
    return join_aligned(pair, l1_deps, l2_deps)


def count_lemma_rows(rows):
    """Aggregate lemma 4-tuples into counted LemmaTuples.

    Ordered by descending frequency, then lexicographically, so output
    is deterministic regardless of input order.
    """
    counts = Counter(rows)
    ordered = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return [LemmaTuple(*key, freq) for key, freq in ordered]


def aggregate_lemma_tuples(tuples):
    """Aggregate AlignedTuple instances to counted lemma tuples."""
    return count_lemma_rows(t.lemma_key for t in tuples)


def extract_alignment_instances(pair, cfg):
    """Lemma pairs of all content-word alignment links of a pair.

    One pair per link whose both endpoints carry a content POS tag;
    ordered by source then target index.
    """
    s1 = pair.l1_sentence.tokens
    s2 = pair.l2_sentence.tokens
    out = []
    for link in sorted(pair.links, key=lambda l: (l.src_index, l.tgt_index)):
        src = s1[link.src_index - 1]
        tgt = s2[link.tgt_index - 1]
        if src.upos in cfg.content_pos and tgt.upos in cfg.content_pos:
            out.append((src.lemma, tgt.lemma))
    return out
