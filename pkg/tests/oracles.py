"""Independent naive reference implementations used to freeze expected values.

Everything here is deliberately brute-force and shares no code with the
package: selectivities are counted over materialized point populations,
cut weights are recomputed edge by edge, satisfiability is decided by
scanning whole integer domains.
"""

from __future__ import annotations

from fractions import Fraction


def integer_population(attr) -> list[tuple[int, Fraction]]:
    """Materialize an integer attribute as (value, mass) pairs summing to 1."""
    if attr.histogram is not None:
        pop = []
        for b in attr.histogram:
            lo, hi = int(b.lo), int(b.hi)
            n = hi - lo + 1
            frac = Fraction(b.fraction).limit_denominator(10**9)
            for v in range(lo, hi + 1):
                pop.append((v, frac / n))
        return pop
    lo, hi = int(attr.min), int(attr.max)
    n = hi - lo + 1
    return [(v, Fraction(1, n)) for v in range(lo, hi + 1)]


def counted_range_selectivity(attr, op: str, value) -> float:
    """Range selectivity by counting the satisfying share of the population."""
    tests = {
        "lt": lambda v: v < value,
        "le": lambda v: v <= value,
        "gt": lambda v: v > value,
        "ge": lambda v: v >= value,
    }
    test = tests[op]
    mass = sum(m for v, m in integer_population(attr) if test(v))
    return float(mass)


def predicate_holds(pred, value) -> bool:
    op = pred.op
    if op == "eq":
        return value == pred.value
    if op == "ne":
        return value != pred.value
    if op == "lt":
        return value < pred.value
    if op == "gt":
        return value > pred.value
    if op == "le":
        return value <= pred.value
    if op == "ge":
        return value >= pred.value
    raise AssertionError(op)


def literal_holds(literal, value) -> bool:
    res = predicate_holds(literal.predicate, value)
    return (not res) if literal.negated else res


def point_satisfies_minterm(minterm, point: dict) -> bool:
    """Evaluate a min-term's literals against a concrete attribute valuation."""
    return all(literal_holds(lit, point[lit.predicate.attr]) for lit in minterm.literals)


def naive_cut_weight(edges, parts) -> int:
    """Sum of weights of edges whose vertices span more than one part."""
    total = 0
    for vertices, weight in edges:
        if len({parts[v] for v in vertices}) > 1:
            total += weight
    return total


def exhaustive_min_cut(edges, vertex_weights, k, cap_size, cap_access):
    """Minimal cut over all k^V labelings (no symmetry pruning), with balance caps.

    Returns (best_cut_balanced_or_None, best_cut_any). The caller decides how
    to treat instances where no labeling satisfies the caps.
    """
    n = len(vertex_weights)
    best_bal = None
    best_any = None
    labels = [0] * n
    while True:
        loads_s = [0] * k
        loads_a = [0] * k
        for v, (ws, wa) in enumerate(vertex_weights):
            loads_s[labels[v]] += ws
            loads_a[labels[v]] += wa
        cut = naive_cut_weight(edges, labels)
        if best_any is None or cut < best_any:
            best_any = cut
        ok = all(s <= cap_size + 1e-9 for s in loads_s) and all(
            a <= cap_access + 1e-9 for a in loads_a
        )
        if ok and (best_bal is None or cut < best_bal):
            best_bal = cut
        # next labeling
        i = 0
        while i < n:
            labels[i] += 1
            if labels[i] < k:
                break
            labels[i] = 0
            i += 1
        if i == n:
            break
    return best_bal, best_any
