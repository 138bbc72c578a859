"""
Image-binary automata over finite words
=======================================

A weighted automaton over the rationals is image-binary when every word
evaluates to 0 or 1.  Such an automaton defines a regular language, and
the weighted toolkit (equivalence, minimization, Hankel ranks) applies
to it directly.  This script builds one from a DFA, runs the decision
procedures on it, and combines two of them with boolean operations.
"""

from fractions import Fraction

from imagebinary import (
    Dfa,
    Matrix,
    QQ,
    WeightedAutomaton,
    block_rank,
    complement,
    dfa_to_ifa,
    equivalent,
    eval_word,
    hankel_block,
    ifa_to_dfa,
    intersect,
    is_image_binary,
    minimize,
)

# A DFA over {a, b} accepting the words with an even number of a's.
even_a = Dfa(
    state_count=2,
    alphabet=("a", "b"),
    delta={(0, "a"): 1, (0, "b"): 0, (1, "a"): 0, (1, "b"): 1},
    initial=0,
    accepting=[0],
)

# dfa_to_ifa turns it into a rational weighted automaton with the same
# 0/1 language.  eval_word returns exact Fractions.
ifa = dfa_to_ifa(even_a, QQ)
for word in ("", "a", "aa", "abab", "abb"):
    print("value of %-5r = %s" % (word, eval_word(ifa, word)))

# The image-binary check explores the reachable configuration span and
# either certifies the 0/1 property or returns a witness word.
ok, witness = is_image_binary(ifa)
print("even_a image-binary:", ok, "witness:", witness)

# A weighted automaton that doubles its value on every letter is not
# image-binary; the witness is the shortest offending word.
doubling = WeightedAutomaton(
    QQ,
    ("a",),
    {"a": Matrix.from_ints(QQ, [[2]])},
    Matrix.from_ints(QQ, [[1]]),
    Matrix(QQ, [[Fraction(1)]]),
)
ok, witness = is_image_binary(doubling)
print("doubling image-binary:", ok, "witness:", witness)

# Boolean operations stay inside the image-binary class.  Intersecting
# "even number of a's" with its complement gives the empty language.
empty = intersect(ifa, complement(ifa))
print("value of 'ab' in L and not-L:", eval_word(empty, "ab"))

# Equivalence of weighted automata is decided exactly.  The minimized
# automaton has one state per dimension of the Hankel span.
small = minimize(ifa)
print("states after minimization: %d -> %d" % (ifa.n, small.n))
print("minimized equivalent to original:", equivalent(ifa, small))

# A finite Hankel block (rows and columns indexed by short words) gives
# a lower bound on the number of states any equivalent automaton needs.
block = hankel_block(ifa, 3, 3)
print("rank of the 3x3-word Hankel block:", block_rank(block))

# Back to a DFA via subset construction on the configuration vectors.
dfa = ifa_to_dfa(ifa)
print("DFA states recovered:", dfa.state_count)
print("DFA agrees on 'abab':", dfa.accepts("abab") == (eval_word(ifa, "abab") == 1))
