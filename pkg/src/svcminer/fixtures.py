"""Deterministic synthetic bitext fixtures and a brute-force reference ranking.

The generated corpus plants one support-verb-like tuple: its noun pair
is aligned consistently (every occurrence), while both verbs also occur
in other translations, so the verb alignment is dispersed. A fully
compositional distractor tuple (verb and noun mutually exclusive and
always aligned) and a bed of filler constructions surround it. Filler
verbs either take several objects or occur often, which keeps their
observed/expected ratios below the planted tuple's.

reference_ranking() re-derives the expected result from first
principles: quadruple-loop tuple search, dictionary counting, inline
measure formulas, quadratic percentile ranks. It shares no code with
the extraction, statistics or ranking modules, so it can serve as an
independent oracle for the pipeline.
"""

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

from svcminer.extract import ExtractionConfig, LemmaTuple
from svcminer.ingest import (
    AlignmentLink,
    BitextCorpus,
    Sentence,
    SentencePair,
    Token,
    corpus_to_texts,
)
from svcminer.pipeline import ranked_to_tsv
from svcminer.rank import RankedCandidate, RankingParams


@dataclass(frozen=True)
class WordPair:
    """A verb or verb/noun lemma pattern shared by both languages."""

    l1_verb: str
    l1_noun: str
    l2_verb: str
    l2_noun: str


@dataclass(frozen=True)
class FixtureSpec:
    seed: int = 42
    n_pairs: int = 200
    planted: WordPair = WordPair("schenken", "Aufmerksamkeit",
                                 "pay", "attention")
    distractor: WordPair = WordPair("lesen", "Buch", "read", "book")

    def __post_init__(self):
        if self.n_pairs < 20:
            raise ValueError("a fixture needs at least 20 sentence pairs")


@dataclass(frozen=True)
class _Template:
    name: str
    weight: float  # share of the scalable sentence pairs; 0 = fixed count
    fixed: int
    de: tuple  # rows of (surface, lemma, upos, xpos, head, deprel)
    en: tuple
    links: tuple  # 1-based (src, tgt)
    has_tuple: bool  # contributes one aligned verb/object tuple
    deps_per_side: int


def _svo_de(verb, noun, det=None):
    rows = [("Wir", "wir", "PRON", "PPER", 2, "nsubj"),
            (verb, verb, "VERB", "VVFIN", 0, "root")]
    if det is not None:
        rows.append((det, det, "DET", "ART", 4, "det"))
        rows.append((noun, noun, "NOUN", "NN", 2, "obj"))
        rows.append((".", ".", "PUNCT", "$.", 2, "punct"))
    else:
        rows.append((noun, noun, "NOUN", "NN", 2, "obj"))
        rows.append((".", ".", "PUNCT", "$.", 2, "punct"))
    return tuple(rows)


def _svo_en(verb, noun, det=None, noun_surface=None):
    rows = [("We", "we", "PRON", "PRP", 2, "nsubj"),
            (verb, verb, "VERB", "VBP", 0, "root")]
    if det is not None:
        rows.append((det, det, "DET", "DT", 4, "det"))
        rows.append((noun_surface or noun, noun, "NOUN", "NN", 2, "obj"))
        rows.append((".", ".", "PUNCT", ".", 2, "punct"))
    else:
        rows.append((noun_surface or noun, noun, "NOUN", "NN", 2, "obj"))
        rows.append((".", ".", "PUNCT", ".", 2, "punct"))
    return tuple(rows)


def _svo(name, weight, de_verb, de_noun, en_verb, en_noun, *,
         de_det=None, en_det=None, en_noun_surface=None, fixed=0):
    de = _svo_de(de_verb, de_noun, de_det)
    en = _svo_en(en_verb, en_noun, en_det, en_noun_surface)
    noun_de = 4 if de_det else 3
    noun_en = 4 if en_det else 3
    return _Template(name, weight, fixed, de, en,
                     ((1, 1), (2, 2), (noun_de, noun_en)), True, 1)


def _make_templates(spec):
    planted = spec.planted
    distractor = spec.distractor
    templates = [
        _svo("planted", 0.080, planted.l1_verb, planted.l1_noun,
             planted.l2_verb, planted.l2_noun),
        # disperses the planted L2 verb over a second translation
        _svo("verb2-dispersion", 0.115, "zahlen", "Geld",
             planted.l2_verb, "money"),
        # disperses the planted L1 verb without adding verb/object pairs
        _Template(
            "verb1-dispersion", 0.115, 0,
            (("Wir", "wir", "PRON", "PPER", 2, "nsubj"),
             (planted.l1_verb, planted.l1_verb, "VERB", "VVFIN", 0, "root"),
             ("gern", "gern", "ADV", "ADV", 2, "advmod"),
             (".", ".", "PUNCT", "$.", 2, "punct")),
            (("We", "we", "PRON", "PRP", 2, "nsubj"),
             ("give", "give", "VERB", "VBP", 0, "root"),
             ("gladly", "gladly", "ADV", "RB", 2, "advmod"),
             (".", ".", "PUNCT", ".", 2, "punct")),
            ((1, 1), (2, 2), (3, 3)), False, 0),
        _svo("distractor", 0.125, distractor.l1_verb, distractor.l1_noun,
             distractor.l2_verb, distractor.l2_noun,
             de_det="ein", en_det="a"),
        _svo("cook-soup", 0.065, "kochen", "Suppe", "cook", "soup"),
        _svo("cook-vegetable", 0.055, "kochen", "Gemüse", "cook", "vegetable",
             en_noun_surface="vegetables"),
        _svo("build-house", 0.060, "bauen", "Haus", "build", "house",
             de_det="ein", en_det="a"),
        _svo("build-bridge", 0.050, "bauen", "Brücke", "build", "bridge"),
        _svo("open-door", 0.065, "öffnen", "Tür", "open", "door",
             de_det="die", en_det="the"),
        _svo("open-window", 0.045, "öffnen", "Fenster", "open", "window",
             de_det="das", en_det="the"),
        _svo("sing-song", 0.060, "singen", "Lied", "sing", "song",
             de_det="ein", en_det="a"),
        _svo("sing-hymn", 0.050, "singen", "Hymne", "sing", "hymn",
             de_det="eine", en_det="a"),
        # verb-final subordinate clause: object precedes its head
        _Template(
            "find-solution", 0.115, 0,
            (("dass", "dass", "SCONJ", "KOUS", 5, "mark"),
             ("wir", "wir", "PRON", "PPER", 5, "nsubj"),
             ("eine", "eine", "DET", "ART", 4, "det"),
             ("Lösung", "Lösung", "NOUN", "NN", 5, "obj"),
             ("finden", "finden", "VERB", "VVINF", 0, "root"),
             (".", ".", "PUNCT", "$.", 5, "punct")),
            (("that", "that", "SCONJ", "IN", 3, "mark"),
             ("we", "we", "PRON", "PRP", 3, "nsubj"),
             ("find", "find", "VERB", "VBP", 0, "root"),
             ("a", "a", "DET", "DT", 5, "det"),
             ("solution", "solution", "NOUN", "NN", 3, "obj"),
             (".", ".", "PUNCT", ".", 3, "punct")),
            ((2, 2), (4, 5), (5, 3)), True, 1),
        # exactly one occurrence: exercises the frequency filter
        _svo("singleton", 0.0, "brechen", "Rekord", "break", "record",
             de_det="den", en_det="the", fixed=1),
        # dep pairs without any alignment links
        _Template(
            "unaligned", 0.0, 2,
            _svo_de("sehen", "Film", "einen"),
            _svo_en("see", "film", "a"),
            (), False, 1),
    ]
    return templates


def _allocate_counts(templates, n_pairs):
    """Deterministic largest-remainder allocation of sentence pairs."""
    fixed_total = sum(t.fixed for t in templates if t.weight == 0.0)
    scalable = n_pairs - fixed_total
    if scalable < 1:
        raise ValueError("n_pairs too small for the fixed templates")
    counts = {}
    remainders = []
    assigned = 0
    for t in templates:
        if t.weight == 0.0:
            counts[t.name] = t.fixed
            continue
        exact = t.weight * scalable
        counts[t.name] = int(exact)
        assigned += int(exact)
        remainders.append((-(exact - int(exact)), t.name))
    remainders.sort()
    for _, name in remainders[: scalable - assigned]:
        counts[name] += 1
    while counts["planted"] < 2:  # the planted tuple must pass min_freq
        donor = max((t.name for t in templates if t.weight > 0.0
                     and t.name != "planted"), key=counts.get)
        counts[donor] -= 1
        counts["planted"] += 1
    return counts


@dataclass
class FixtureReport:
    sentence_pairs: int
    l1_tokens: int
    l2_tokens: int
    l1_dep_pairs: int
    l2_dep_pairs: int
    aligned_tuples: int
    distinct_lemma_tuples: int
    template_counts: dict = field(default_factory=dict)


def build_corpus(spec):
    """Build the in-memory fixture corpus plus ground-truth bookkeeping."""
    templates = _make_templates(spec)
    counts = _allocate_counts(templates, spec.n_pairs)
    sequence = [t for t in templates for _ in range(counts[t.name])]
    rng = random.Random(spec.seed)
    rng.shuffle(sequence)

    pairs = []
    for k, template in enumerate(sequence, 1):
        s1 = Sentence("de", f"de-{k}", [
            Token(i, *row) for i, row in enumerate(template.de, 1)])
        s2 = Sentence("en", f"en-{k}", [
            Token(i, *row) for i, row in enumerate(template.en, 1)])
        links = {AlignmentLink(a, b) for a, b in template.links}
        pairs.append(SentencePair(f"de-{k}|en-{k}", s1, s2, links))
    corpus = BitextCorpus("de", "en", pairs)

    report = FixtureReport(
        sentence_pairs=spec.n_pairs,
        l1_tokens=sum(counts[t.name] * len(t.de) for t in templates),
        l2_tokens=sum(counts[t.name] * len(t.en) for t in templates),
        l1_dep_pairs=sum(counts[t.name] * t.deps_per_side for t in templates),
        l2_dep_pairs=sum(counts[t.name] * t.deps_per_side for t in templates),
        aligned_tuples=sum(counts[t.name] for t in templates if t.has_tuple),
        distinct_lemma_tuples=sum(1 for t in templates
                                  if t.has_tuple and counts[t.name] > 0),
        template_counts=dict(counts),
    )
    return corpus, report


# --- independent reference computation ---------------------------------

def brute_force_tuples(pair, cfg):
    """All aligned verb/object tuples of a pair by exhaustive search."""
    links = {(l.src_index, l.tgt_index) for l in pair.links}
    found = []
    for v1 in pair.l1_sentence.tokens:
        for n1 in pair.l1_sentence.tokens:
            for v2 in pair.l2_sentence.tokens:
                for n2 in pair.l2_sentence.tokens:
                    if (v1.upos in cfg.verb_pos
                            and n1.upos in cfg.noun_pos
                            and n1.head == v1.index
                            and n1.deprel in cfg.l1_object_labels
                            and v2.upos in cfg.verb_pos
                            and n2.upos in cfg.noun_pos
                            and n2.head == v2.index
                            and n2.deprel in cfg.l2_object_labels
                            and (v1.index, v2.index) in links
                            and (n1.index, n2.index) in links):
                        found.append((v1, n1, v2, n2))
    return found


def _direct_tables(instances):
    joint, left, right = {}, {}, {}
    for a, b in instances:
        joint[(a, b)] = joint.get((a, b), 0) + 1
        left[a] = left.get(a, 0) + 1
        right[b] = right.get(b, 0) + 1
    return joint, left, right


def _direct_score(o11, r1, c1, n, measure_name):
    e11 = float(r1) * float(c1) / float(n)
    ratio = o11 / e11
    if measure_name == "oe":
        return ratio
    if measure_name == "mi":
        return math.log2(ratio)
    if measure_name == "local-mi":
        return o11 * math.log2(ratio)
    if measure_name == "z-score":
        return (o11 - e11) / math.sqrt(e11)
    if measure_name == "t-score":
        return (o11 - e11) / math.sqrt(o11)
    if measure_name == "simple-ll":
        return 2.0 * (o11 * math.log(ratio) - (o11 - e11))
    raise ValueError(measure_name)


def _direct_scores(instances, measure_name):
    joint, left, right = _direct_tables(instances)
    n = len(instances)
    return {pair: _direct_score(o, left[pair[0]], right[pair[1]], n,
                                measure_name)
            for pair, o in joint.items()}


def _quadratic_cpr(scores):
    values = list(scores.values())
    n = len(values)
    return {pair: sum(1 for v in values if v <= s) / n
            for pair, s in scores.items()}


def reference_ranking(corpus, cfg, params):
    """Expected ranked candidates, computed from first principles."""
    tuple_counts = {}
    align_instances = []
    dep1, dep2 = [], []
    for pair in corpus.pairs:
        for v1, n1, v2, n2 in brute_force_tuples(pair, cfg):
            key = (v1.lemma, n1.lemma, v2.lemma, n2.lemma)
            tuple_counts[key] = tuple_counts.get(key, 0) + 1
        for link in sorted(pair.links,
                           key=lambda l: (l.src_index, l.tgt_index)):
            src = pair.l1_sentence.tokens[link.src_index - 1]
            tgt = pair.l2_sentence.tokens[link.tgt_index - 1]
            if src.upos in cfg.content_pos and tgt.upos in cfg.content_pos:
                align_instances.append((src.lemma, tgt.lemma))
        for side, sentence, out in (("l1", pair.l1_sentence, dep1),
                                    ("l2", pair.l2_sentence, dep2)):
            labels = (cfg.l1_object_labels if side == "l1"
                      else cfg.l2_object_labels)
            for tok in sentence.tokens:
                if (tok.deprel in labels and tok.upos in cfg.noun_pos
                        and tok.head >= 1):
                    head = sentence.tokens[tok.head - 1]
                    if head.upos in cfg.verb_pos:
                        out.append((head.lemma, tok.lemma))

    inter_cpr = _quadratic_cpr(_direct_scores(align_instances, params.x.value))
    intra1 = _direct_scores(dep1, params.y.value)
    intra2 = _direct_scores(dep2, params.y.value)

    candidates = []
    for key, freq in tuple_counts.items():
        if freq < params.min_freq:
            continue
        verb1, noun1, verb2, noun2 = key
        cpr_noun = inter_cpr[(noun1, noun2)]
        cpr_verb = inter_cpr[(verb1, verb2)]
        q = (params.delta + cpr_noun) / (params.delta + cpr_verb)
        am1 = intra1[(verb1, noun1)]
        am2 = intra2[(verb2, noun2)]
        r = (params.alpha * am1 + params.beta * am2) * q
        candidates.append(RankedCandidate(
            LemmaTuple(*key, freq), freq, cpr_noun, cpr_verb, q, am1, am2, r))
    candidates.sort(key=lambda c: (-c.r, -c.freq, c.lemmas.lemma_key))
    return candidates


# --- file generation ----------------------------------------------------

def generate_fixture(spec, out_dir, cfg=None, params=None):
    """Write the fixture corpus, its expected ranking and bookkeeping.

    Output is byte-identical for a given spec. The expected ranking
    comes from reference_ranking, not from the pipeline.
    """
    cfg = cfg if cfg is not None else ExtractionConfig()
    params = params if params is not None else RankingParams()
    corpus, report = build_corpus(spec)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    text1, text2, align_text = corpus_to_texts(corpus)
    paths = {
        "conllu1": out_dir / f"{corpus.l1}.conllu",
        "conllu2": out_dir / f"{corpus.l2}.conllu",
        "align": out_dir / f"{corpus.l1}-{corpus.l2}.align",
        "expected": out_dir / "expected_ranking.tsv",
        "stats": out_dir / "fixture_stats.json",
    }
    paths["conllu1"].write_text(text1, encoding="utf-8")
    paths["conllu2"].write_text(text2, encoding="utf-8")
    paths["align"].write_text(align_text, encoding="utf-8")
    expected = reference_ranking(corpus, cfg, params)
    paths["expected"].write_text(ranked_to_tsv(expected), encoding="utf-8")
    stats_payload = {
        "sentence_pairs": report.sentence_pairs,
        "l1_tokens": report.l1_tokens,
        "l2_tokens": report.l2_tokens,
        "l1_dep_pairs": report.l1_dep_pairs,
        "l2_dep_pairs": report.l2_dep_pairs,
        "aligned_tuples": report.aligned_tuples,
        "distinct_lemma_tuples": report.distinct_lemma_tuples,
        "template_counts": report.template_counts,
    }
    paths["stats"].write_text(
        json.dumps(stats_payload, indent=2, sort_keys=True) + "\n",
        encoding="utf-8")
    return corpus, report, paths


# --- seeded-defect variant ----------------------------------------------

_CONLLU1_BAD_COLUMNS = (5, 30)
_CONLLU1_BAD_HEADS = (55, 80)
_CONLLU2_BAD_COLUMNS = (12, 40)
_CONLLU2_BAD_HEADS = (66,)
_ALIGN_BAD_LINES = ((4, "3-x"), (18, "7_8"), (33, "5-"))


def _corrupt_conllu(text, bad_columns, bad_heads):
    """Corrupt token lines picked by token-line ordinal; returns text and
    the affected (line_no, kind) list."""
    lines = text.splitlines()
    ordinal = 0
    defects = []
    for i, line in enumerate(lines):
        if not line or line.startswith("#"):
            continue
        ordinal += 1
        if ordinal in bad_columns:
            lines[i] = line.rsplit("\t", 1)[0]  # drop the last column
            defects.append((i + 1, "bad-column-count"))
        elif ordinal in bad_heads:
            cols = line.split("\t")
            cols[6] = "99"
            lines[i] = "\t".join(cols)
            defects.append((i + 1, "out-of-range-head"))
    return "\n".join(lines) + "\n", defects


def _corrupt_alignments(text, bad_lines):
    lines = text.splitlines()
    defects = []
    for line_no, junk in bad_lines:
        lines[line_no - 1] = (lines[line_no - 1] + " " + junk).strip()
        defects.append((line_no, "malformed-alignment-pair"))
    return "\n".join(lines) + "\n", defects


def generate_malformed_fixture(out_dir, seed=7, n_pairs=40):
    """A fixture corpus with exactly ten seeded defects.

    Four bad column counts, three out-of-range heads and three malformed
    alignment pairs, each on its own line of its own sentence. Returns
    the paths plus the defect manifest [(file, line_no, kind), ...].
    """
    if n_pairs < 40:  # the corruption line positions must exist
        raise ValueError("the malformed fixture needs at least 40 pairs")
    out_dir = Path(out_dir)
    corpus, _, paths = generate_fixture(FixtureSpec(seed=seed,
                                                    n_pairs=n_pairs), out_dir)
    manifest = []

    text1, defects = _corrupt_conllu(
        paths["conllu1"].read_text(encoding="utf-8"),
        _CONLLU1_BAD_COLUMNS, _CONLLU1_BAD_HEADS)
    paths["conllu1"].write_text(text1, encoding="utf-8")
    manifest += [(paths["conllu1"].name, ln, kind) for ln, kind in defects]

    text2, defects = _corrupt_conllu(
        paths["conllu2"].read_text(encoding="utf-8"),
        _CONLLU2_BAD_COLUMNS, _CONLLU2_BAD_HEADS)
    paths["conllu2"].write_text(text2, encoding="utf-8")
    manifest += [(paths["conllu2"].name, ln, kind) for ln, kind in defects]

    align_text, defects = _corrupt_alignments(
        paths["align"].read_text(encoding="utf-8"), _ALIGN_BAD_LINES)
    paths["align"].write_text(align_text, encoding="utf-8")
    manifest += [(paths["align"].name, ln, kind) for ln, kind in defects]

    # the expected ranking of the clean corpus no longer applies
    paths["expected"].unlink()
    paths["stats"].unlink()
    del paths["expected"], paths["stats"]

    manifest.sort()
    paths["defects"] = out_dir / "defects.json"
    paths["defects"].write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return paths, manifest
