"""
Disambiguating a boundedly ambiguous Buchi acceptor
===================================================

A nondeterministic Buchi automaton may admit several accepting runs on
one word.  When the number of such runs is bounded by k everywhere, the
inclusion-exclusion construction below produces a weighted automaton
whose value on every ultimately periodic word equals 0 or 1: it counts
accepting run collections with alternating signs, so the overcount
telescopes away.  States of the output are multisets of (state, bit)
pairs, the bit tracking whether a final visit is still owed.
"""

from imagebinary import (
    Lasso,
    Nba,
    binariness_witness,
    check_ambiguity_on_lassos,
    diamond_on_loop,
    iba_lasso_count_final,
    iba_lasso_eval,
    kdis,
    nba_lasso_accepts,
    nba_lasso_count_final,
)

# A unary Buchi automaton with two initial states that both fan out
# into two accepting loops: the single word a^omega carries four
# accepting runs.
fanout = Nba(
    state_count=5,
    alphabet=("a",),
    transitions=[
        (0, "a", 2),
        (1, "a", 2),
        (2, "a", 3),
        (2, "a", 4),
        (3, "a", 3),
        (4, "a", 4),
    ],
    initial=[0, 1],
    final=[3, 4],
)

aw = Lasso(stem=(), cycle=("a",))
print("accepts a^omega:", nba_lasso_accepts(fanout, aw))
print("accepting runs on a^omega:", nba_lasso_count_final(fanout, aw, 10))

# The ambiguity degree is checked on all short lassos: 3 runs are not
# enough, 4 are.
print("at most 3 runs everywhere:", check_ambiguity_on_lassos(fanout, 3, 3, 3))
print("at most 4 runs everywhere:", check_ambiguity_on_lassos(fanout, 4, 3, 3))

# The construction for k = 4.  Multiset states whose runs cannot reach
# a final state on a cycle are trimmed away.
out = kdis(fanout, 4)
print("output states: %d (untrimmed %d)" % (out.n, out.untrimmed_state_count))

# The weighted value on a^omega is exactly 1 even though signed path
# weights of magnitude 2 occur inside the sum.
print("weighted value on a^omega:", iba_lasso_eval(out, aw))
print("final paths in the output:", iba_lasso_count_final(out, aw, 2 ** 4))

# No short lasso evaluates outside {0, 1}.
print("non-binary witness:", binariness_witness(out, 3, 3))

# A diamond on a loop (two distinct runs over one word from a useful
# state back to itself) pumps the run count beyond every bound.  This
# acceptor loops on 'a' both via the top and via the bottom state.
diamond = Nba(
    state_count=3,
    alphabet=("a",),
    transitions=[
        (0, "a", 1),
        (0, "a", 2),
        (1, "a", 0),
        (2, "a", 0),
    ],
    initial=[0],
    final=[0],
)
print("diamond detected:", diamond_on_loop(diamond))
print("at most 4 runs everywhere:", check_ambiguity_on_lassos(diamond, 4, 3, 3))
