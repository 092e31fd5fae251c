"""Pure-Python counting, scoring and percentile kernels.

Fallback for environments where the compiled extension is unavailable
(and reference implementation for parity tests). Float expressions are
kept in exact sync with svcminer/_kernels.pyx so that both backends
produce bit-identical results.
"""

from bisect import bisect_right
from collections import Counter
from math import log, log2, sqrt

# Measure codes shared with the compiled module.
OE = 0
MI = 1
LOCAL_MI = 2
Z_SCORE = 3
T_SCORE = 4
SIMPLE_LL = 5


def count_pairs(a_ids, b_ids):
    """Joint and marginal counts over two parallel id sequences.

    Returns five parallel lists ordered by (a, b): a id, b id, joint
    count, marginal count of a, marginal count of b.
    """
    if len(a_ids) != len(b_ids):
        raise ValueError("id sequences differ in length")
    joint = Counter(zip(a_ids, b_ids))
    a_marg = Counter(a_ids)
    b_marg = Counter(b_ids)
    keys = sorted(joint)
    ua = [k[0] for k in keys]
    ub = [k[1] for k in keys]
    o11 = [joint[k] for k in keys]
    r1 = [a_marg[k[0]] for k in keys]
    c1 = [b_marg[k[1]] for k in keys]
    return ua, ub, o11, r1, c1


def score_many(o11, r1, c1, n, measure):
    """Association scores for parallel count sequences sharing sample size n."""
    nf = float(n)
    out = []
    for o, r, c in zip(o11, r1, c1):
        of = float(o)
        e = float(r) * float(c) / nf
        if measure == OE:
            v = of / e
        elif measure == MI:
            v = log2(of / e)
        elif measure == LOCAL_MI:
            v = of * log2(of / e)
        elif measure == Z_SCORE:
            v = (of - e) / sqrt(e)
        elif measure == T_SCORE:
            v = (of - e) / sqrt(of)
        elif measure == SIMPLE_LL:
            v = 2.0 * (of * log(of / e) - (of - e))
        else:
            raise ValueError(f"unknown measure code {measure}")
        out.append(v)
    return out


def cpr_many(scores):
    """Cumulative percentile rank: fraction of scores <= each score."""
    ordered = sorted(scores)
    n = len(ordered)
    return [bisect_right(ordered, s) / n for s in scores]
