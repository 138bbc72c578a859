"""Seeded fixture generators: reproducibility and the properties the
generated objects promise."""

import random

from imagebinary import (
    MarkovChain,
    Nba,
    QQ,
    WeightedAutomaton,
    check_ambiguity_on_lassos,
    dfa_to_ifa,
    equivalent,
    is_image_binary,
    load_automaton,
    load_markov_chain,
)
from imagebinary.fixtures import (
    bounded_ambiguity_nba,
    conjugated_ifa,
    generate_fixture_files,
    random_dfa,
    random_invertible_int_matrix,
    random_mc,
)


def test_random_dfa_shape():
    rng = random.Random(1)
    for _ in range(5):
        dfa = random_dfa(rng, 4, ("a", "b"))
        assert dfa.state_count == 4
        for q in range(4):
            for a in ("a", "b"):
                assert 0 <= dfa.delta[q, a] < 4


def test_random_invertible_matrix_is_invertible():
    rng = random.Random(2)
    for n in (1, 2, 3, 4):
        m = random_invertible_int_matrix(rng, n)
        assert m.inverse() * m == type(m).identity(QQ, n)


def test_conjugated_ifa_is_disguised_dfa():
    rng = random.Random(3)
    for _ in range(6):
        dfa = random_dfa(rng, rng.randint(1, 4), ("a", "b"))
        twin = conjugated_ifa(rng, dfa)
        assert isinstance(twin, WeightedAutomaton)
        ok, witness = is_image_binary(twin)
        assert ok, witness
        same, witness = equivalent(twin, dfa_to_ifa(dfa, QQ))
        assert same, witness


def test_bounded_nba_respects_bound():
    rng = random.Random(4)
    for k in (1, 2, 3):
        nba = bounded_ambiguity_nba(rng, k, 2, ("a", "b"))
        assert isinstance(nba, Nba)
        assert nba.state_count == 2 * k
        assert len(nba.initial) == k
        assert check_ambiguity_on_lassos(nba, k, 3, 3)


def test_random_mc_is_valid_chain():
    rng = random.Random(5)
    chain = random_mc(rng, 4, ("a", "b"))
    assert isinstance(chain, MarkovChain)  # constructor enforces the rest
    assert chain.alphabet == ("a", "b")


def test_fixture_files_are_deterministic(tmp_path):
    out1 = tmp_path / "one"
    out2 = tmp_path / "two"
    paths1 = generate_fixture_files(99, (4, 3), str(out1))
    paths2 = generate_fixture_files(99, (4, 3), str(out2))
    assert [p.rsplit("/", 1)[-1] for p in paths1] == [
        "source_dfa.wa",
        "conjugated.wa",
        "bounded_k2.nba",
        "chain.mc",
    ]
    for p1, p2 in zip(paths1, paths2):
        with open(p1, "rb") as f1, open(p2, "rb") as f2:
            assert f1.read() == f2.read()
    different = generate_fixture_files(100, (4, 3), str(tmp_path / "three"))
    with open(paths1[0], "rb") as f1, open(different[0], "rb") as f2:
        assert f1.read() != f2.read()


def test_fixture_files_parse_and_relate(tmp_path):
    dfa_p, conj_p, nba_p, mc_p = generate_fixture_files(7, (4, 3), str(tmp_path))
    source = load_automaton(dfa_p)
    twin = load_automaton(conj_p)
    same, witness = equivalent(source, twin)
    assert same, witness
    nba = load_automaton(nba_p)
    assert check_ambiguity_on_lassos(nba, 2, 3, 3)
    chain = load_markov_chain(mc_p)
    assert chain.state_count == 3
