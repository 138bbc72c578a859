"""
Model checking a Markov chain against a weighted Buchi automaton
================================================================

For an image-binary Buchi-style weighted automaton the probability that
a labeled Markov chain produces an accepted word is a single linear
system away: build the product of the chain with the automaton, locate
its recurrent classes by fiber exploration, and solve an eigenvector
equation with one normalizing cut per recurrent class.  Everything is
exact rational arithmetic; the answer for a non-binary automaton is a
refusal, not a number.
"""

from fractions import Fraction

from imagebinary import (
    Iba,
    MarkovChain,
    Matrix,
    QQ,
    SemanticError,
    build_product,
    model_check,
)

# A deterministic Buchi automaton for "the first letter is a", written
# as 0/1 matrices: state 0 starts, state 1 is the accepting sink and
# state 2 the rejecting sink.
first_a = Iba(
    alphabet=("a", "b"),
    trans={
        "a": Matrix.from_ints(QQ, [[0, 1, 0], [0, 1, 0], [0, 0, 1]]),
        "b": Matrix.from_ints(QQ, [[0, 0, 1], [0, 1, 0], [0, 0, 1]]),
    },
    init=Matrix.from_ints(QQ, [[1, 0, 0]]),
    final=[1],
)

# A three-state chain that emits a from one state and b from the other
# two, all transitions uniform: a random letter sequence that starts
# with a with probability 1/3.
third = Fraction(1, 3)
uniform = Matrix(QQ, [[third] * 3 for _ in range(3)])
chain = MarkovChain(uniform, init=(third, third, third), labels=("a", "b", "b"))

print("P[first letter is a] =", model_check(first_a, chain))

# The product system underneath: nodes pair a chain state with an
# automaton state, and the recurrent classes are found by checking
# which automaton fibers survive forever.
product = build_product(first_a, chain)
print("product nodes:", len(product.nodes))
print("recurrent classes:", sum(1 for c in product.classes if c.recurrent))

# An automaton accepting everything gives probability 1 on any chain.
accept_all = Iba(
    alphabet=("a", "b"),
    trans={
        "a": Matrix.from_ints(QQ, [[1]]),
        "b": Matrix.from_ints(QQ, [[1]]),
    },
    init=Matrix.from_ints(QQ, [[1]]),
    final=[0],
)
print("P[accept-all] =", model_check(accept_all, chain))

# A weight of 2 on the edge into the accepting loop makes every word
# evaluate to 2.  The matrices are stable, so the defect is semantic:
# the model checker detects the non-binary value and refuses.
doubled = Matrix.from_ints(QQ, [[0, 2], [0, 1]])
doubling = Iba(
    alphabet=("a", "b"),
    trans={"a": doubled, "b": doubled},
    init=Matrix.from_ints(QQ, [[1, 0]]),
    final=[1],
)
try:
    model_check(doubling, chain)
except SemanticError as err:
    print("refused:", err)
