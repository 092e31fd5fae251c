"""Parity between the compiled kernels and the pure-Python fallback.

Outputs must match bitwise: backend choice must never change pipeline
results.
"""

import random
import subprocess
import sys

import pytest

from svcminer import _kernels_py as pyk
from svcminer import kernels

ck = pytest.importorskip("svcminer._kernels",
                         reason="compiled kernels not built")

MEASURES = [pyk.OE, pyk.MI, pyk.LOCAL_MI, pyk.Z_SCORE, pyk.T_SCORE,
            pyk.SIMPLE_LL]


def random_ids(rng, n, vocab_a, vocab_b):
    return ([rng.randrange(vocab_a) for _ in range(n)],
            [rng.randrange(vocab_b) for _ in range(n)])


def test_count_pairs_parity():
    rng = random.Random(42)
    for n, va, vb in [(1, 1, 1), (50, 5, 7), (2000, 40, 90), (5000, 400, 3)]:
        a_ids, b_ids = random_ids(rng, n, va, vb)
        py_out = pyk.count_pairs(a_ids, b_ids)
        c_out = ck.count_pairs(a_ids, b_ids)
        for py_col, c_col in zip(py_out, c_out):
            assert list(map(int, c_col)) == py_col


def test_count_pairs_rejects_mismatched_lengths():
    with pytest.raises(ValueError):
        ck.count_pairs([1, 2], [1])
    with pytest.raises(ValueError):
        pyk.count_pairs([1, 2], [1])


def test_count_pairs_empty_input():
    out = ck.count_pairs([], [])
    assert all(len(col) == 0 for col in out)


def test_score_many_parity_bitwise():
    rng = random.Random(43)
    o11 = [rng.randint(1, 10**6) for _ in range(3000)]
    r1 = [o + rng.randint(0, 10**6) for o in o11]
    c1 = [o + rng.randint(0, 10**6) for o in o11]
    n = max(a + b for a, b in zip(r1, c1)) + rng.randint(0, 10**6)
    for measure in MEASURES:
        py_scores = pyk.score_many(o11, r1, c1, n, measure)
        c_scores = ck.score_many(o11, r1, c1, n, measure)
        assert [float(v) for v in c_scores] == py_scores


def test_cpr_many_parity_bitwise():
    rng = random.Random(44)
    for n in (1, 2, 17, 4096):
        scores = [rng.uniform(-100, 100) for _ in range(n)]
        scores += scores[: n // 3]  # force ties
        py_ranks = pyk.cpr_many(scores)
        c_ranks = ck.cpr_many(scores)
        assert [float(v) for v in c_ranks] == py_ranks


def test_dispatcher_exposes_selected_backend():
    assert kernels.BACKEND in ("compiled", "python")
    assert kernels.count_pairs in (ck.count_pairs, pyk.count_pairs)


def test_backend_forced_via_environment():
    code = ("import svcminer.kernels as k; "
            "print(k.BACKEND)")
    out = subprocess.run([sys.executable, "-c", code],
                         env={"SVCMINER_BACKEND": "python", "PATH": "/usr/bin"},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_measure_codes_agree():
    for name in ("OE", "MI", "LOCAL_MI", "Z_SCORE", "T_SCORE", "SIMPLE_LL"):
        assert getattr(pyk, name) == getattr(ck, name)
