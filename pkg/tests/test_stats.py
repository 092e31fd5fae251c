import math
import random
from collections import Counter

import pytest

from svcminer.errors import EmptyUniverseError
from svcminer.extract import ExtractionConfig
from svcminer.ingest import AlignmentLink, Sentence, SentencePair, Token
from svcminer.stats import (
    ContingencyTable,
    Measure,
    build_tables,
    interlingual_scores,
    intralingual_scores,
    score,
    score_instances,
)

CFG = ExtractionConfig()


def oracle_scores(o11, o12, o21, o22):
    """Direct transcription of the six measure formulas, written
    separately from the implementation under test."""
    n = o11 + o12 + o21 + o22
    e11 = (o11 + o12) * (o11 + o21) / n
    return {
        Measure.OE: o11 / e11,
        Measure.MI: math.log(o11 / e11, 2),
        Measure.LOCAL_MI: o11 * math.log(o11 / e11, 2),
        Measure.Z_SCORE: (o11 - e11) / math.sqrt(e11),
        Measure.T_SCORE: (o11 - e11) / math.sqrt(o11),
        Measure.SIMPLE_LL: 2 * (o11 * math.log(o11 / e11) - (o11 - e11)),
    }


class TestContingencyTable:
    def test_derived_quantities(self):
        t = ContingencyTable(4, 6, 16, 74)
        assert t.n == 100
        assert t.r1 == 10
        assert t.c1 == 20
        assert t.e11 == 2.0

    def test_o11_bounded_by_marginals(self):
        t = ContingencyTable(3, 1, 2, 4)
        assert t.o11 <= min(t.r1, t.c1)


class TestScore:
    def test_reference_table_all_measures(self):
        t = ContingencyTable(4, 6, 16, 74)
        assert score(t, Measure.OE) == pytest.approx(2.0, abs=1e-12)
        assert score(t, Measure.MI) == pytest.approx(1.0, abs=1e-12)
        assert score(t, Measure.LOCAL_MI) == pytest.approx(4.0, abs=1e-12)
        assert score(t, Measure.Z_SCORE) == pytest.approx(
            math.sqrt(2.0), abs=1e-12)
        assert score(t, Measure.T_SCORE) == pytest.approx(1.0, abs=1e-12)
        assert score(t, Measure.SIMPLE_LL) == pytest.approx(
            1.5451774444795623, abs=1e-12)

    def test_independence_point(self):
        t = ContingencyTable(1, 1, 1, 1)
        assert score(t, Measure.OE) == pytest.approx(1.0, abs=1e-12)
        for m in (Measure.MI, Measure.LOCAL_MI, Measure.Z_SCORE,
                  Measure.T_SCORE, Measure.SIMPLE_LL):
            assert score(t, m) == pytest.approx(0.0, abs=1e-12)

    def test_perfect_association_table(self):
        t = ContingencyTable(2, 0, 0, 2)
        assert score(t, Measure.OE) == pytest.approx(2.0, abs=1e-12)
        assert score(t, Measure.MI) == pytest.approx(1.0, abs=1e-12)
        assert score(t, Measure.LOCAL_MI) == pytest.approx(2.0, abs=1e-12)
        assert score(t, Measure.Z_SCORE) == pytest.approx(1.0, abs=1e-12)
        assert score(t, Measure.T_SCORE) == pytest.approx(
            1 / math.sqrt(2), abs=1e-12)
        assert score(t, Measure.SIMPLE_LL) == pytest.approx(
            4 * math.log(2) - 2, abs=1e-12)

    def test_unseen_pair_rejected(self):
        with pytest.raises(ValueError):
            score(ContingencyTable(0, 2, 2, 6), Measure.OE)

    def test_matches_oracle_on_random_tables(self):
        rng = random.Random(99)
        for _ in range(300):
            counts = [rng.randint(1, 10**6) for _ in range(4)]
            t = ContingencyTable(*counts)
            expected = oracle_scores(*counts)
            for m in Measure:
                assert score(t, m) == pytest.approx(
                    expected[m], rel=1e-9, abs=1e-9)

    def test_monotone_in_o11_at_or_above_e11(self):
        # one-sided LOCAL_MI and SIMPLE_LL fold below the expected count,
        # so strict growth only holds from e11 upward
        rng = random.Random(7)
        for _ in range(50):
            r1 = rng.randint(10, 500)
            c1 = rng.randint(10, 500)
            n = rng.randint(r1 + c1, 10**5)
            lo = max(1, math.ceil(r1 * c1 / n))
            upper = min(r1, c1)
            if upper - lo < 2:
                continue
            for m in Measure:
                values = [score(ContingencyTable(o, r1 - o, c1 - o,
                                                 n - r1 - c1 + o), m)
                          for o in range(lo, upper + 1)]
                assert all(a < b for a, b in zip(values, values[1:]))


class TestBuildTables:
    def test_three_instance_example(self):
        tables = build_tables([("a", "x"), ("a", "y"), ("b", "x")])
        t = tables[("a", "x")]
        assert (t.o11, t.o12, t.o21, t.o22) == (1, 1, 1, 0)
        assert t.n == 3
        assert t.e11 == pytest.approx(4 / 3, abs=1e-12)

    def test_single_instance(self):
        tables = build_tables([("a", "x")])
        t = tables[("a", "x")]
        assert (t.o11, t.o12, t.o21, t.o22) == (1, 0, 0, 0)
        assert t.e11 == 1.0

    def test_saturated_marginals(self):
        tables = build_tables([("a", "x"), ("a", "x")])
        t = tables[("a", "x")]
        assert t.o11 == 2
        assert t.e11 == 2.0
        assert score(t, Measure.OE) == 1.0

    def test_empty_sample_rejected(self):
        with pytest.raises(EmptyUniverseError):
            build_tables([])

    def test_marginal_consistency(self):
        rng = random.Random(5)
        instances = [(f"a{rng.randint(0, 20)}", f"b{rng.randint(0, 20)}")
                     for _ in range(500)]
        tables = build_tables(instances)
        n = len(instances)
        assert sum(t.o11 for t in tables.values()) == n
        for t in tables.values():
            assert t.o11 + t.o12 + t.o21 + t.o22 == n
            assert min(t.o11, t.o12, t.o21, t.o22) >= 0

    def test_partitioned_counting_matches_single_pass(self):
        # counting is associative: merging per-partition counters gives
        # bit-identical tables
        rng = random.Random(6)
        instances = [(f"a{rng.randint(0, 9)}", f"b{rng.randint(0, 9)}")
                     for _ in range(400)]
        cut1, cut2 = 137, 305
        parts = [instances[:cut1], instances[cut1:cut2], instances[cut2:]]
        joint, amarg, bmarg = Counter(), Counter(), Counter()
        for part in parts:
            joint += Counter(part)
            amarg += Counter(a for a, _ in part)
            bmarg += Counter(b for _, b in part)
        n = sum(len(p) for p in parts)
        merged = {
            pair: ContingencyTable(
                o, amarg[pair[0]] - o, bmarg[pair[1]] - o,
                n - amarg[pair[0]] - bmarg[pair[1]] + o)
            for pair, o in joint.items()
        }
        assert merged == build_tables(instances)


class TestScoreInstances:
    def test_batch_scores_match_scalar_path(self):
        rng = random.Random(11)
        instances = [(f"a{rng.randint(0, 30)}", f"b{rng.randint(0, 30)}")
                     for _ in range(800)]
        for m in Measure:
            table = score_instances(instances, m, "test")
            for pair, entry in table.entries.items():
                assert entry.score == score(entry.table, m)

    def test_symmetric_lookup(self):
        table = score_instances([("Entscheidung", "decision")] * 2,
                                Measure.OE, "interlingual:de-en")
        assert table.lookup("Entscheidung", "decision") \
            == table.lookup("decision", "Entscheidung")

    def test_missing_pair_raises_keyerror(self):
        table = score_instances([("a", "x")], Measure.OE, "test")
        with pytest.raises(KeyError):
            table.lookup("a", "y")


def fixture_corpus():
    """Four sentence pairs: 3x (treffen, Entscheidung), 1x (spielen, Rolle)."""

    def pair(k, de_verb, de_noun, en_verb, en_noun):
        s1 = Sentence("de", f"d{k}", [
            Token(1, de_verb, de_verb, "VERB", None, 0, "root"),
            Token(2, de_noun, de_noun, "NOUN", None, 1, "obj"),
        ])
        s2 = Sentence("en", f"e{k}", [
            Token(1, en_verb, en_verb, "VERB", None, 0, "root"),
            Token(2, en_noun, en_noun, "NOUN", None, 1, "obj"),
        ])
        return SentencePair(f"p{k}", s1, s2,
                            {AlignmentLink(1, 1), AlignmentLink(2, 2)})

    pairs = [pair(k, "treffen", "Entscheidung", "take", "decision")
             for k in range(3)]
    pairs.append(pair(3, "spielen", "Rolle", "play", "role"))
    from svcminer.ingest import BitextCorpus
    return BitextCorpus("de", "en", pairs)


class TestCorpusScores:
    def test_intralingual_oe_values(self):
        table = intralingual_scores(fixture_corpus(), CFG, "l1", Measure.OE)
        assert table.context == "intralingual:de"
        assert table.lookup("spielen", "Rolle") == pytest.approx(4.0)
        assert table.lookup("treffen", "Entscheidung") \
            == pytest.approx(4 / 3)

    def test_single_distinct_pair_saturates(self):
        corpus = fixture_corpus()
        corpus.pairs = corpus.pairs[:3]
        table = intralingual_scores(corpus, CFG, "l1", Measure.OE)
        assert table.lookup("treffen", "Entscheidung") == pytest.approx(1.0)

    def test_interlingual_hand_count(self):
        # 8 content links; (Entscheidung, decision): o11=3, r1=3, c1=3
        table = interlingual_scores(fixture_corpus(), CFG, Measure.OE)
        assert table.context == "interlingual:de-en"
        assert table.lookup("Entscheidung", "decision") \
            == pytest.approx(3 * 8 / 9)
        assert table.lookup("Rolle", "role") == pytest.approx(8.0)

    def test_single_link_universe(self):
        corpus = fixture_corpus()
        corpus.pairs = corpus.pairs[:1]
        corpus.pairs[0].links = {AlignmentLink(2, 2)}
        table = interlingual_scores(corpus, CFG, Measure.OE)
        assert table.lookup("Entscheidung", "decision") == 1.0

    def test_empty_universe_propagates(self):
        corpus = fixture_corpus()
        for p in corpus.pairs:
            p.links = set()
        with pytest.raises(EmptyUniverseError):
            interlingual_scores(corpus, CFG, Measure.OE)


def test_measure_from_string():
    assert Measure.from_string("local-mi") is Measure.LOCAL_MI
    assert Measure.from_string("LOCAL_MI") is Measure.LOCAL_MI
    assert Measure.from_string("simple-ll") is Measure.SIMPLE_LL
    with pytest.raises(ValueError):
        Measure.from_string("dice")
