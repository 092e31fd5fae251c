import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from svcminer.errors import EmptyUniverseError, PipelineConsistencyError
from svcminer.extract import LemmaTuple
from svcminer.rank import (
    RankingParams,
    compute_cpr,
    compute_q,
    compute_r,
    q_ratio,
    rank_candidates,
)
from svcminer.stats import ContingencyTable, Measure, ScoredPair, ScoreTable


def score_table(values, context="interlingual:de-en", measure=Measure.LOCAL_MI):
    """Build a ScoreTable with given scores; tables are dummies."""
    dummy = ContingencyTable(1, 0, 0, 0)
    entries = {pair: ScoredPair(dummy, s) for pair, s in values.items()}
    return ScoreTable(context, measure, entries)


class TestComputeCpr:
    def test_weak_fraction_with_ties(self):
        table = score_table({("a", "w"): 1.0, ("b", "x"): 2.0,
                             ("c", "y"): 2.0, ("d", "z"): 5.0})
        cprs = compute_cpr(table)
        assert cprs.cpr[("a", "w")] == 0.25
        assert cprs.cpr[("b", "x")] == 0.75
        assert cprs.cpr[("c", "y")] == 0.75
        assert cprs.cpr[("d", "z")] == 1.0

    def test_maximum_maps_to_one(self):
        table = score_table({("a", "x"): -3.0, ("b", "y"): 12.5})
        cprs = compute_cpr(table)
        assert cprs.cpr[("b", "y")] == 1.0

    def test_single_entry(self):
        cprs = compute_cpr(score_table({("a", "x"): 7.0}))
        assert cprs.cpr[("a", "x")] == 1.0

    def test_empty_table_rejected(self):
        with pytest.raises(EmptyUniverseError):
            compute_cpr(score_table({}))

    def test_symmetric_lookup(self):
        cprs = compute_cpr(score_table({("Haus", "house"): 2.0}))
        assert cprs.lookup("house", "Haus") == 1.0

    @given(st.lists(st.floats(min_value=-50, max_value=50),
                    min_size=1, max_size=300))
    def test_monotone_and_tie_consistent(self, values):
        table = score_table({("a", str(i)): v for i, v in enumerate(values)})
        cprs = compute_cpr(table)
        ranked = [(v, cprs.cpr[("a", str(i))]) for i, v in enumerate(values)]
        for v1, c1 in ranked:
            for v2, c2 in ranked:
                if v1 < v2:
                    assert c1 <= c2
                elif v1 == v2:
                    assert c1 == c2
        assert max(c for _, c in ranked) == 1.0
        assert min(c for _, c in ranked) > 0.0

    # scores on a 1e-3 grid: the transforms stay injective at float
    # precision, which the exact-invariance property needs
    @given(st.lists(st.integers(min_value=-3000, max_value=3000)
                    .map(lambda i: i / 1000),
                    min_size=1, max_size=200))
    def test_invariant_under_monotone_transforms(self, values):
        def cpr_of(vals):
            table = score_table({("a", str(i)): v
                                 for i, v in enumerate(vals)})
            return list(compute_cpr(table).cpr.values())

        base = cpr_of(values)
        assert cpr_of([2 * v + 3 for v in values]) == base
        assert cpr_of([v**3 + v for v in values]) == base
        assert cpr_of([math.exp(v) for v in values]) == base


class TestQRatio:
    def test_extremes_at_delta_one(self):
        assert q_ratio(1.0, 0.0, 1.0) == 2.0
        assert q_ratio(0.0, 1.0, 1.0) == 0.5

    def test_equal_ranks_give_one(self):
        for delta in (0.1, 1.0, 7.0):
            assert q_ratio(0.42, 0.42, delta) == 1.0

    def test_small_delta_amplifies(self):
        assert q_ratio(0.9, 0.4, 0.1) == pytest.approx(2.0)

    @given(st.floats(min_value=0.0, max_value=1.0),
           st.floats(min_value=0.0, max_value=1.0),
           st.sampled_from([0.1, 0.5, 1.0, 2.0]))
    def test_bounds(self, cpr_noun, cpr_verb, delta):
        q = q_ratio(cpr_noun, cpr_verb, delta)
        assert delta / (delta + 1) <= q <= (delta + 1) / delta

    @given(st.floats(min_value=0.01, max_value=1.0),
           st.floats(min_value=0.0, max_value=1.0))
    def test_lower_delta_raises_q_when_noun_leads(self, cpr_noun, cpr_verb):
        if cpr_noun > cpr_verb:
            assert q_ratio(cpr_noun, cpr_verb, 0.2) \
                > q_ratio(cpr_noun, cpr_verb, 0.8)


LT = LemmaTuple("schenken", "Aufmerksamkeit", "pay", "attention", 12)


def tables_for(lt, *, am1=3.0, am2=5.0, noun_score=9.0, verb_score=1.0):
    inter = score_table({
        (lt.l1_noun_lemma, lt.l2_noun_lemma): noun_score,
        (lt.l1_verb_lemma, lt.l2_verb_lemma): verb_score,
        ("Geld", "money"): 5.0,
        ("zahlen", "pay"): 4.0,
    })
    intra1 = score_table({(lt.l1_verb_lemma, lt.l1_noun_lemma): am1},
                         "intralingual:de", Measure.OE)
    intra2 = score_table({(lt.l2_verb_lemma, lt.l2_noun_lemma): am2},
                         "intralingual:en", Measure.OE)
    return compute_cpr(inter), intra1, intra2


class TestComputeQAndR:
    def test_q_from_percentiles(self):
        cprs, _, _ = tables_for(LT)
        cpr_noun, cpr_verb, q = compute_q(LT, cprs, 1.0)
        assert cpr_noun == 1.0
        assert cpr_verb == 0.25
        assert q == pytest.approx(2.0 / 1.25)

    def test_missing_pair_is_consistency_error(self):
        cprs, _, _ = tables_for(LT)
        stranger = LemmaTuple("haben", "Zeit", "have", "time", 3)
        with pytest.raises(PipelineConsistencyError):
            compute_q(stranger, cprs, 1.0)

    def test_r_weighted_mean_times_q(self):
        cprs, intra1, intra2 = tables_for(LT)
        params = RankingParams(alpha=1.0, beta=1.0, delta=1.0)
        cand = compute_r(LT, 1.0, 0.0, 2.0, intra1, intra2, params)
        assert cand.r == pytest.approx(16.0)
        assert cand.am_y_l1 == 3.0
        assert cand.am_y_l2 == 5.0
        assert cand.freq == 12

    def test_r_weight_degeneracy(self):
        cprs, intra1, intra2 = tables_for(LT)
        params = RankingParams(alpha=2.0, beta=0.0, delta=1.0)
        cand = compute_r(LT, 0.5, 0.5, 1.0, intra1, intra2, params)
        assert cand.r == pytest.approx(6.0)

    def test_r_linear_in_weights(self):
        cprs, intra1, intra2 = tables_for(LT)
        single = compute_r(LT, 0.7, 0.3, 1.4, intra1, intra2,
                           RankingParams(alpha=1.0, beta=2.0))
        double = compute_r(LT, 0.7, 0.3, 1.4, intra1, intra2,
                           RankingParams(alpha=2.0, beta=4.0))
        assert double.r == pytest.approx(2 * single.r, rel=1e-12)

    def test_missing_intralingual_pair_is_consistency_error(self):
        cprs, intra1, intra2 = tables_for(LT)
        with pytest.raises(PipelineConsistencyError):
            compute_r(LT, 1.0, 0.5, 1.5, intra2, intra1,
                      RankingParams())


class TestRankCandidates:
    def build_population(self):
        lts = [
            LemmaTuple("schenken", "Aufmerksamkeit", "pay", "attention", 5),
            LemmaTuple("zahlen", "Geld", "pay", "money", 2),
            LemmaTuple("brechen", "Rekord", "break", "record", 1),
        ]
        inter = score_table({
            ("Aufmerksamkeit", "attention"): 9.0,
            ("schenken", "pay"): 1.0,
            ("Geld", "money"): 5.0,
            ("zahlen", "pay"): 4.0,
            ("Rekord", "record"): 6.0,
            ("brechen", "break"): 6.0,
        })
        intra1 = score_table({("schenken", "Aufmerksamkeit"): 3.0,
                              ("zahlen", "Geld"): 3.0,
                              ("brechen", "Rekord"): 3.0},
                             "intralingual:de", Measure.OE)
        intra2 = score_table({("pay", "attention"): 3.0,
                              ("pay", "money"): 3.0,
                              ("break", "record"): 3.0},
                             "intralingual:en", Measure.OE)
        return lts, compute_cpr(inter), intra1, intra2

    def test_frequency_filter(self):
        lts, cprs, intra1, intra2 = self.build_population()
        ranked = rank_candidates(lts, RankingParams(min_freq=2), cprs,
                                 intra1, intra2)
        assert all(c.freq >= 2 for c in ranked)
        assert len(ranked) == 2
        ranked_all = rank_candidates(lts, RankingParams(min_freq=1), cprs,
                                     intra1, intra2)
        assert len(ranked_all) == 3

    def test_sorted_by_r_descending(self):
        lts, cprs, intra1, intra2 = self.build_population()
        ranked = rank_candidates(lts, RankingParams(min_freq=1), cprs,
                                 intra1, intra2)
        assert [c.r for c in ranked] \
            == sorted((c.r for c in ranked), reverse=True)
        assert ranked[0].lemmas.lemma_key \
            == ("schenken", "Aufmerksamkeit", "pay", "attention")

    def test_empty_input(self):
        _, cprs, intra1, intra2 = self.build_population()
        assert rank_candidates([], RankingParams(), cprs, intra1, intra2) == []

    def test_deterministic_tie_break(self):
        lts = [LemmaTuple("a", "b", "c", "d", 2),
               LemmaTuple("a", "b", "c", "e", 2)]
        inter = score_table({("b", "d"): 1.0, ("a", "c"): 1.0,
                             ("b", "e"): 1.0})
        intra1 = score_table({("a", "b"): 2.0}, "intralingual:de", Measure.OE)
        intra2 = score_table({("c", "d"): 2.0, ("c", "e"): 2.0},
                             "intralingual:en", Measure.OE)
        ranked = rank_candidates(lts, RankingParams(), compute_cpr(inter),
                                 intra1, intra2)
        assert [c.lemmas.l2_noun_lemma for c in ranked] == ["d", "e"]


class TestRankingParams:
    def test_defaults(self):
        params = RankingParams()
        assert params.x is Measure.LOCAL_MI
        assert params.y is Measure.OE
        assert (params.alpha, params.beta, params.delta) == (1.0, 1.0, 1.0)
        assert params.min_freq == 2

    @pytest.mark.parametrize("kwargs", [
        {"alpha": -1.0},
        {"alpha": 0.0, "beta": 0.0},
        {"delta": 0.0},
        {"delta": -2.0},
        {"min_freq": 0},
    ])
    def test_invalid_params_rejected(self, kwargs):
        with pytest.raises(ValueError):
            RankingParams(**kwargs)


def test_q_invariant_under_score_rescaling():
    rng = random.Random(31)
    values = {("a", str(i)): rng.uniform(-2, 2) for i in range(60)}
    values[("Aufmerksamkeit", "attention")] = 1.5
    values[("schenken", "pay")] = -0.5
    lt = LemmaTuple("schenken", "Aufmerksamkeit", "pay", "attention", 4)

    def q_of(transform):
        table = score_table({k: transform(v) for k, v in values.items()})
        return compute_q(lt, compute_cpr(table), 1.0)

    base = q_of(lambda v: v)
    assert q_of(lambda v: 2 * v + 3) == base
    assert q_of(lambda v: v**3 + v) == base
    assert q_of(math.exp) == base
