"""Buchi acceptors, lasso analysis and the weighted disambiguation,
checked against deterministic-run and exhaustive-assignment oracles."""

import itertools
import random
from fractions import Fraction

import pytest

from imagebinary import (
    CountVector,
    Iba,
    InputError,
    Lasso,
    Matrix,
    Nba,
    OVERFLOW,
    QQ,
    SemanticError,
    binariness_witness,
    check_ambiguity_on_lassos,
    diamond_on_loop,
    iba_lasso_count_final,
    iba_lasso_eval,
    is_ultimately_stable,
    kdis,
    kdis_successor_weights,
    kdis_weight_w,
    nba_lasso_accepts,
    nba_lasso_count_final,
    num_succ,
)
from imagebinary.fixtures import bounded_ambiguity_nba

from goldens import dba_suite, fanout_unary_nba


def cv(pairs):
    return CountVector(dict(pairs))


def all_lassos(alphabet, max_stem, max_cycle):
    for slen in range(max_stem + 1):
        for stem in itertools.product(alphabet, repeat=slen):
            for clen in range(1, max_cycle + 1):
                for cycle in itertools.product(alphabet, repeat=clen):
                    yield Lasso(stem, cycle)


def det_run_accepts(nba, q0, lasso):
    """Follow the unique run of a deterministic total acceptor; accepted
    iff the looping part of the trajectory visits a final state."""
    q = q0
    for a in lasso.stem:
        (q,) = tuple(nba.successors(q, a))
    seen = {}
    hits = []
    pos = 0
    while (q, pos) not in seen:
        seen[q, pos] = len(hits)
        hits.append(q in nba.final)
        (q,) = tuple(nba.successors(q, lasso.cycle[pos]))
        pos = (pos + 1) % len(lasso.cycle)
    return any(hits[seen[q, pos]:])


def jump_nba(final):
    """One-way jump 0 -> 1 with self-loops on both ends."""
    return Nba(2, ("a",), [(0, "a", 0), (0, "a", 1), (1, "a", 1)], [0], final)


# === Acceptor and lasso basics ===


def test_nba_validation():
    with pytest.raises(InputError):
        Nba(2, ("a",), [(0, "a", 1), (0, "a", 1)], [0], [1])
    with pytest.raises(InputError):
        Nba(2, ("a",), [(0, "a", 2)], [0], [1])
    with pytest.raises(InputError):
        Nba(2, ("a",), [(0, "b", 1)], [0], [1])
    nba = jump_nba([1])
    assert nba.successors(0, "a") == {0, 1}
    assert nba.successors(1, "a") == {1}


def test_lasso_needs_cycle():
    with pytest.raises(InputError):
        Lasso("ab", "")
    lasso = Lasso("ab", "ba")
    assert lasso.stem == ("a", "b")
    assert lasso.cycle == ("b", "a")


def test_iba_validation():
    m = Matrix.identity(QQ, 2)
    init = Matrix.row_vector(QQ, [Fraction(1), Fraction(0)])
    iba = Iba(("a",), {"a": m}, init, [1])
    assert iba.n == 2 and iba.final == {1}
    with pytest.raises(InputError):
        Iba(("a",), {"a": m}, init, [2])
    with pytest.raises(InputError):
        Iba(("a", "b"), {"a": m}, init, [1])


# === Counting final runs over lassos ===


def test_fanout_has_four_final_runs():
    nba = fanout_unary_nba()
    lasso = Lasso((), "a")
    assert nba_lasso_accepts(nba, lasso)
    assert nba_lasso_count_final(nba, lasso, cap=10) == 4
    assert nba_lasso_count_final(nba, lasso, cap=3) is OVERFLOW
    assert check_ambiguity_on_lassos(nba, 4, 3, 3)
    assert not check_ambiguity_on_lassos(nba, 3, 3, 3)


def test_jump_counts():
    lasso = Lasso((), "a")
    assert nba_lasso_count_final(jump_nba([1]), lasso, 10 ** 6) is OVERFLOW
    assert nba_lasso_accepts(jump_nba([1]), lasso)
    assert nba_lasso_count_final(jump_nba([0]), lasso, 10) == 1
    assert nba_lasso_count_final(jump_nba([]), lasso, 10) == 0
    assert not nba_lasso_accepts(jump_nba([]), lasso)


def test_stem_runs_multiply():
    # two stem runs reach the loop state, each continuing uniquely
    nba = Nba(
        3,
        ("a", "b"),
        [(0, "a", 1), (0, "a", 2), (1, "b", 1), (2, "b", 1), (1, "a", 1), (2, "a", 2)],
        [0],
        [1],
    )
    assert nba_lasso_count_final(nba, Lasso("ab", "b"), 10) == 2


def test_counts_match_deterministic_components():
    rng = random.Random(3)
    for _ in range(12):
        k = rng.randint(1, 3)
        nba = bounded_ambiguity_nba(rng, k, rng.randint(1, 3), ("a", "b"))
        for lasso in all_lassos(("a", "b"), 2, 2):
            expected = sum(
                1 for q0 in sorted(nba.initial) if det_run_accepts(nba, q0, lasso)
            )
            assert nba_lasso_count_final(nba, lasso, k) == expected
            assert nba_lasso_accepts(nba, lasso) == (expected > 0)


def test_dba_acceptance_matches_run_oracle():
    for dba in dba_suite():
        nba = dba.to_nba()
        for lasso in all_lassos(("a", "b"), 2, 2):
            assert nba_lasso_accepts(nba, lasso) == dba.run_on_lasso(
                lasso.stem, lasso.cycle
            ), (dba.name, lasso)


def test_diamond_on_loop():
    assert not diamond_on_loop(fanout_unary_nba())
    assert not diamond_on_loop(jump_nba([1]))  # never returns, no diamond
    diamond = Nba(
        3,
        ("a",),
        [(0, "a", 1), (0, "a", 2), (1, "a", 0), (2, "a", 0)],
        [0],
        [0],
    )
    assert diamond_on_loop(diamond)
    assert not check_ambiguity_on_lassos(diamond, 5, 2, 2)


# === Weighted automata over infinite words ===


def stable_dag_weight_iba():
    m = Matrix.from_ints(QQ, [[0, 2], [0, 1]])
    init = Matrix.row_vector(QQ, [Fraction(1), Fraction(0)])
    return Iba(("a",), {"a": m}, init, [1])


def test_ultimate_stability():
    assert is_ultimately_stable(stable_dag_weight_iba())
    bad = Iba(
        ("a",),
        {"a": Matrix.from_ints(QQ, [[2]])},
        Matrix.row_vector(QQ, [Fraction(1)]),
        [0],
    )
    assert not is_ultimately_stable(bad)
    with pytest.raises(InputError):
        iba_lasso_eval(bad, Lasso((), "a"))


def test_lasso_eval_multiplies_transient_weights():
    iba = stable_dag_weight_iba()
    assert iba_lasso_eval(iba, Lasso((), "a")) == 2
    assert iba_lasso_count_final(iba, Lasso((), "a"), 10) == 1
    witness = binariness_witness(iba, 2, 2)
    assert witness is not None
    lasso, value = witness
    assert value == 2
    assert (lasso.stem, lasso.cycle) == ((), ("a",))


def test_lasso_eval_on_deterministic_acceptors():
    for dba in dba_suite():
        iba = dba.to_iba()
        for lasso in all_lassos(("a", "b"), 2, 2):
            expected = Fraction(1 if dba.run_on_lasso(lasso.stem, lasso.cycle) else 0)
            assert iba_lasso_eval(iba, lasso) == expected, (dba.name, lasso)
        assert binariness_witness(iba, 2, 2) is None


def test_infinite_final_paths_is_semantic():
    # embed the jump acceptor as weight-1 matrices: infinitely many runs
    m = Matrix.from_ints(QQ, [[1, 1], [0, 1]])
    iba = Iba(("a",), {"a": m}, Matrix.row_vector(QQ, [Fraction(1), Fraction(0)]), [1])
    with pytest.raises(SemanticError):
        iba_lasso_eval(iba, Lasso((), "a"))
    assert iba_lasso_count_final(iba, Lasso((), "a"), 10 ** 9) is OVERFLOW


# === Count vectors ===


def test_count_vector_canonical():
    a = cv([((1, False), 2), ((0, True), 1)])
    b = CountVector([((0, True), 1), ((1, False), 1), ((1, False), 1)])
    assert a == b
    assert hash(a) == hash(b)
    assert a.size == 3
    assert a.get(1, False) == 2
    assert a.get(1, True) == 0
    assert bool(a)
    assert not bool(CountVector({}))
    assert CountVector({(0, False): 0}) == CountVector({})


def test_count_vector_rejects_negative():
    with pytest.raises(InputError):
        CountVector({(0, False): -1})


def test_count_vector_order_and_format():
    small = cv([((5, True), 1)])
    big = cv([((0, False), 2)])
    assert small < big  # size-major ordering
    assert small.format() == "(5,+):1"
    assert small.format(base=1) == "(6,+):1"
    assert cv([((1, True), 1), ((1, False), 2)]).format() == "(1,-):2,(1,+):1"


# === Successor multiplicities ===


def nonempty_subsets(items):
    return [
        sub
        for r in range(1, len(items) + 1)
        for sub in itertools.combinations(items, r)
    ]


def assignment_oracle(n, target):
    """Count assignments of nonempty successor sets to n runs with exact
    per-successor pick counts, by listing every assignment."""
    succ_count = len(target)
    total = 0
    for pick in itertools.product(nonempty_subsets(range(succ_count)), repeat=n):
        counts = [0] * succ_count
        for sub in pick:
            for s in sub:
                counts[s] += 1
        if tuple(counts) == tuple(target):
            total += 1
    return total


def test_num_succ_matches_assignment_oracle():
    for succ_count in (1, 2, 3):
        for n in (0, 1, 2, 3):
            for target in itertools.product(range(n + 1), repeat=succ_count):
                assert num_succ(n, target) == assignment_oracle(n, target), (
                    n,
                    target,
                )


def test_num_succ_goldens():
    # two runs over two successors: both must be covered
    assert num_succ(2, (1, 1)) == 2
    assert num_succ(2, (2, 1)) == 2
    assert num_succ(2, (2, 2)) == 1
    assert num_succ(2, (2, 0)) == 1
    assert num_succ(1, (1, 1)) == 1  # one run picking both successors
    assert num_succ(2, (0, 0)) == 0


# === Concrete prefix-set oracle for the census ===


def concrete_census(nba, items, a):
    """Distinct successor prefix-sets of a concrete prefix set, grouped
    by their count-vector image.  ``items`` is a list of (path, bit)."""
    b2 = not all(b for (_path, b) in items)
    per_item = []
    for path, b in items:
        q = path[-1]
        succs = sorted(nba.successors(q, a))
        if not succs:
            return {}
        nb = (q in nba.final or b) and b2
        per_item.append([(path, nb, sub) for sub in nonempty_subsets(succs)])
    census = {}
    seen = set()
    for pick in itertools.product(*per_item):
        p2 = frozenset(
            (path + (q2,), nb) for (path, nb, sub) in pick for q2 in sub
        )
        if p2 in seen:
            continue
        seen.add(p2)
        image = CountVector(
            [((path[-1], nb), 1) for (path, nb) in p2]
        )
        census[image] = census.get(image, 0) + 1
    return census


def concrete_items(r, tag=0):
    """A concrete prefix set realising the count vector r; ``tag`` varies
    the path shapes without changing the image.  Paths are pairwise
    distinct even across slots that share a state."""
    items = []
    uid = 0
    for (q, b), c in r.items():
        for _ in range(c):
            prefix = (tag,) * (1 + tag) if tag else ()
            items.append((prefix + (uid, q), b))
            uid += 1
    return items


def small_count_vectors(state_count, max_size):
    slots = [(q, b) for q in range(state_count) for b in (False, True)]
    for size in range(1, max_size + 1):
        for combo in itertools.combinations_with_replacement(slots, size):
            counts = {}
            for slot in combo:
                counts[slot] = counts.get(slot, 0) + 1
            yield CountVector(counts)


def random_nba(rng, state_count, alphabet, density=0.5):
    triples = []
    for q in range(state_count):
        for a in alphabet:
            for q2 in range(state_count):
                if rng.random() < density:
                    triples.append((q, a, q2))
    initial = sorted(
        rng.sample(range(state_count), rng.randint(1, state_count))
    )
    final = sorted(rng.sample(range(state_count), rng.randint(1, state_count)))
    return Nba(state_count, alphabet, triples, initial, final)


def test_successor_weights_match_concrete_census():
    rng = random.Random(29)
    for _ in range(4):
        nba = random_nba(rng, 3, ("a", "b"))
        for r in small_count_vectors(3, 2):
            for a in ("a", "b"):
                expected = concrete_census(nba, concrete_items(r), a)
                assert kdis_successor_weights(nba, r, a) == expected, (r, a)


def test_weight_w_is_witness_independent():
    rng = random.Random(47)
    for _ in range(3):
        nba = random_nba(rng, 3, ("a", "b"))
        for r in small_count_vectors(3, 2):
            c1 = concrete_census(nba, concrete_items(r, tag=0), "a")
            c2 = concrete_census(nba, concrete_items(r, tag=2), "a")
            assert c1 == c2, r
            for r2, w in c1.items():
                assert kdis_weight_w(r, "a", r2, nba) == w


def test_weight_w_absent_target_is_zero():
    nba = fanout_unary_nba()
    r = cv([((2, False), 1)])
    unreachable = cv([((0, False), 1)])
    assert kdis_weight_w(r, "a", unreachable, nba) == 0


# === The disambiguation ===


def test_kdis_golden_structure():
    nba = fanout_unary_nba()
    out = kdis(nba, 4)
    assert out.n == 21
    assert out.untrimmed_state_count == 21
    assert is_ultimately_stable(out)

    labels = out.state_labels
    idx = {label: i for i, label in enumerate(labels)}

    one_run_a = cv([((0, False), 1)])
    one_run_b = cv([((1, False), 1)])
    two_runs = cv([((0, False), 1), ((1, False), 1)])
    mid2 = cv([((2, False), 2)])
    both = cv([((3, False), 1), ((4, False), 1)])
    heavy_right = cv([((3, False), 1), ((4, False), 2)])
    heavy_left = cv([((3, False), 2), ((4, False), 1)])

    # alternating initial weights over initial-state subsets
    init = out.init.rows[0]
    assert init[idx[one_run_a]] == 1
    assert init[idx[one_run_b]] == 1
    assert init[idx[two_runs]] == -1

    # signed multiplicities out of the doubled middle vector
    m = out.matrix("a")
    assert m[idx[mid2], idx[both]] == 2
    assert m[idx[mid2], idx[heavy_right]] == -2
    assert m[idx[mid2], idx[heavy_left]] == -2
    assert m[idx[mid2], idx[cv([((3, False), 2)])]] == 1
    assert m[idx[mid2], idx[cv([((3, False), 2), ((4, False), 2)])]] == 1

    # final states are exactly the all-seen vectors, sitting on weight-1
    # two-cycles with their unseen partners
    finals = {labels[i] for i in out.final}
    assert finals == {
        label
        for label in labels
        if all(b for (_q, b), _c in label.items())
    }
    flip = cv([((3, True), 1), ((4, True), 1)])
    assert m[idx[both], idx[flip]] == 1
    assert m[idx[flip], idx[both]] == 1

    assert iba_lasso_eval(out, Lasso((), "a")) == 1
    assert iba_lasso_count_final(out, Lasso((), "a"), 2 ** 4) == 12


def test_kdis_rejects_bad_k():
    with pytest.raises(InputError):
        kdis(fanout_unary_nba(), 0)


def test_kdis_empty_language_collapses():
    nba = Nba(2, ("a",), [(0, "a", 1), (1, "a", 0)], [0], [])
    out = kdis(nba, 2)
    assert out.n == 1
    assert out.final == frozenset()
    assert out.untrimmed_state_count == 2
    assert iba_lasso_eval(out, Lasso((), "a")) == 0


def test_kdis_matches_acceptance_on_deterministic_suite():
    for dba in dba_suite():
        nba = dba.to_nba()
        out = kdis(nba, 1)
        assert out.untrimmed_state_count <= 2 ** (2 * nba.state_count)
        for lasso in all_lassos(("a", "b"), 2, 2):
            expected = Fraction(1 if dba.run_on_lasso(lasso.stem, lasso.cycle) else 0)
            assert iba_lasso_eval(out, lasso) == expected, (dba.name, lasso)


def test_kdis_matches_acceptance_on_bounded_fixtures():
    rng = random.Random(59)
    for _ in range(6):
        k = rng.randint(1, 3)
        nba = bounded_ambiguity_nba(rng, k, 2, ("a", "b"))
        out = kdis(nba, k)
        assert out.untrimmed_state_count <= (k + 1) ** (2 * nba.state_count)
        for lasso in all_lassos(("a", "b"), 2, 2):
            expected = Fraction(1 if nba_lasso_accepts(nba, lasso) else 0)
            assert iba_lasso_eval(out, lasso) == expected
            assert iba_lasso_count_final(out, lasso, 2 ** k) is not OVERFLOW
