"""
GF(2) automata and maximal-length shift registers
=================================================

Over the two-element field every weighted automaton is image-binary for
free.  Linear feedback shift registers are the motivating example: the
bit stream of a register is the output of a GF(2) weighted automaton
whose dimension equals the register length.  For maximal-period taps
the associated Hankel matrix has full rank and an exactly computable
inverse square.
"""

from imagebinary import F2, LfsrSpec, dfa_to_ifa, ifa_to_mod2
from imagebinary.mod2 import (
    lfsr_period,
    lfsr_sequence,
    lfsr_to_mod2ma,
    shift_register_rank_report,
)
from imagebinary.wa import eval_word

# Taps (c_1, c_2, c_3) = (0, 1, 1) define s_n = s_(n-2) + s_(n-3) over
# GF(2).  With a nonzero seed this register has the maximal period
# 2^3 - 1 = 7.
spec = LfsrSpec(taps=(0, 1, 1), init=(1, 0, 0))
print("first 14 output bits:", "".join(map(str, lfsr_sequence(spec, 14))))
print("period:", lfsr_period(spec))

# The register as a 3-state GF(2) automaton over a unary alphabet: the
# value of #^n is the n-th output bit.
ma = lfsr_to_mod2ma(spec)
print("automaton dimension:", ma.n)
bits = [eval_word(ma, "#" * n) for n in range(7)]
print("bits recovered from the automaton:", bits)

# The rank report builds the period-wide Hankel block H[i,j] = a_(i+j)
# over the rationals.  For maximal taps H has full rank 2^d - 1, H^2 is
# constant on and off the diagonal, and so is its exact inverse.
report = shift_register_rank_report(spec)
print("Hankel size %dx%d, rank %d" % (report.size, report.size, report.rank))
print("H^2 diagonal %s, off-diagonal %s" % (report.square_diagonal, report.square_off_diagonal))
print(
    "(H^2)^-1 diagonal %s, off-diagonal %s"
    % (report.inverse_diagonal, report.inverse_off_diagonal)
)

# Any rational image-binary automaton projects onto GF(2) entry by
# entry without changing its 0/1 language.  Here: the parity automaton
# from the finite-words demo, reduced mod 2.
from imagebinary import Dfa

even_a = Dfa(
    2,
    ("a", "b"),
    {(0, "a"): 1, (0, "b"): 0, (1, "a"): 0, (1, "b"): 1},
    0,
    [0],
)
mod2 = ifa_to_mod2(dfa_to_ifa(even_a))
print("projected automaton field:", mod2.field is F2)
print("value of 'aa' over GF(2):", eval_word(mod2, "aa"))
