import random

import pytest

from hecke_ade.errors import OrbitTooLarge
from hecke_ade.exact_arith import Monomial, PlaceSymbol
from hecke_ade.root_data import ZERO, dunder, labelling, plain, under, weight_data
from hecke_ade.sequences import (ContentSeq, apply_word, delta_invariant,
                                 enumerate_orbit, reflect, substrings,
                                 trunc_reflect)

from conftest import gl_seq, mono
from oracles import weyl_group_order


def random_seq(lab, rng, places=(1, 2)):
    """Entries drawn from a small pool so that q^2-adjacencies are frequent."""
    entries = {}
    for j in lab.all_labels():
        base = Monomial.place(PlaceSymbol(rng.choice(places)))
        sign = Monomial.one() if rng.random() < 0.8 else mono("-1")
        entries[j] = base * Monomial.q(2 * rng.randint(-2, 2)) * sign
    return ContentSeq(lab, entries)


class TestReflect:
    def test_gl_is_transposition(self):
        s = gl_seq([mono("gamma1"), mono("gamma1*q^4"), mono("gamma2")])
        r = reflect(plain(1), s)
        assert r.values() == [mono("gamma1*q^4"), mono("gamma1"), mono("gamma2")]
        r2 = reflect(plain(2), s)
        assert r2.values() == [mono("gamma1"), mono("gamma2"), mono("gamma1*q^4")]

    def test_branch_example(self, a3_seed):
        r = reflect(plain(2), a3_seed)
        assert r.entries[ZERO] == mono("gamma1")
        assert r.entries[plain(1)] == mono("gamma2")
        assert r.entries[plain(2)] == mono("gamma1*q^-2")
        assert r.entries[under(2)] == mono("gamma1^-1*gamma2^2*q^2")

    def test_involution(self, d4_lab, e6_lab):
        rng = random.Random(19)
        for lab in (d4_lab, e6_lab):
            for _ in range(40):
                s = random_seq(lab, rng)
                for i in lab.vertex_labels():
                    assert reflect(i, reflect(i, s)) == s


class TestTruncated:
    def test_kill_on_adjacent_shift(self):
        s = gl_seq([mono("gamma1"), mono("gamma1*q^2")])
        assert trunc_reflect(plain(1), s) is None
        s2 = gl_seq([mono("gamma1"), mono("gamma1*q^4")])
        assert trunc_reflect(plain(1), s2) == reflect(plain(1), s2)

    def test_absorbing(self):
        assert trunc_reflect(plain(1), None) is None

    def test_word_conventions(self, d4_orbit_seed):
        assert apply_word([], d4_orbit_seed) == d4_orbit_seed
        i = plain(2)
        assert trunc_reflect(i, d4_orbit_seed) is not None
        assert apply_word([i, i], d4_orbit_seed) == d4_orbit_seed

    def test_commuting_pair_dichotomy(self, d4_lab, e6_lab, a3_lab):
        rng = random.Random(23)
        for lab in (a3_lab, d4_lab, e6_lab):
            gens = lab.vertex_labels()
            for _ in range(60):
                s = random_seq(lab, rng)
                for a in range(len(gens)):
                    for b in range(a + 1, len(gens)):
                        i, j = gens[a], gens[b]
                        if lab.coxeter_order(i, j) != 2:
                            continue
                        both = apply_word([i, j], s)
                        assert (both is not None) == (
                            trunc_reflect(i, s) is not None
                            and trunc_reflect(j, s) is not None)
                        assert both == apply_word([j, i], s)

    def test_braid_pair(self, d4_lab, e6_lab, a3_lab):
        rng = random.Random(29)
        for lab in (a3_lab, d4_lab, e6_lab):
            gens = lab.vertex_labels()
            for _ in range(60):
                s = random_seq(lab, rng)
                for a in range(len(gens)):
                    for b in range(a + 1, len(gens)):
                        i, j = gens[a], gens[b]
                        if lab.coxeter_order(i, j) != 3:
                            continue
                        assert apply_word([i, j, i], s) == apply_word([j, i, j], s)

    def test_ratio_preserved(self, e6_lab):
        # the i-step ratio is blind to commuting generators, and matches the
        # j-step ratio after the other reflection when the pair braids
        rng = random.Random(31)
        lab = e6_lab
        gens = lab.vertex_labels()
        for _ in range(40):
            s = random_seq(lab, rng)
            for i in gens:
                for j in gens:
                    if i == j:
                        continue
                    ratio = lambda seq, g: seq.entries[g] / seq.entries[lab.pred(g)]
                    if lab.coxeter_order(i, j) == 2:
                        assert ratio(reflect(j, s), i) == ratio(s, i)
                    else:
                        assert ratio(reflect(j, s), i) == ratio(reflect(i, s), j)


class TestOrbits:
    def test_partition_property(self, d4_lab):
        rng = random.Random(37)
        for _ in range(15):
            s1 = random_seq(d4_lab, rng, places=(1,))
            s2 = random_seq(d4_lab, rng, places=(1,))
            o1 = set(enumerate_orbit(s1).members)
            o2 = set(enumerate_orbit(s2).members)
            assert o1 == o2 or not (o1 & o2)

    def test_bounded_by_weyl_order(self):
        rng = random.Random(41)
        for family, rank, v in (("A", 3, 2), ("D", 4, 1), ("A", 4, 2)):
            lab = labelling(family, rank, v)
            bound = weyl_group_order(family, rank)
            for _ in range(20):
                s = random_seq(lab, rng)
                assert len(enumerate_orbit(s)) <= bound

    def test_deterministic_output(self, d4_orbit_seed):
        o1 = enumerate_orbit(d4_orbit_seed)
        o2 = enumerate_orbit(d4_orbit_seed)
        assert o1.members == o2.members
        assert o1.edges == o2.edges
        assert o1.to_json() == o2.to_json()

    def test_max_size_guard(self, d4_orbit_seed):
        with pytest.raises(OrbitTooLarge):
            enumerate_orbit(d4_orbit_seed, max_size=3)

    def test_edges_are_involutive(self, d4_orbit_seed):
        orbit = enumerate_orbit(d4_orbit_seed)
        edge_set = {(a, g, b) for a, g, b in orbit.edges}
        for a, g, b in orbit.edges:
            assert (b, g, a) in edge_set


class TestSubstrings:
    def test_single_branch(self):
        s = gl_seq([mono("gamma1"), mono("gamma1*q^2"), mono("gamma1*q^4")])
        s1, s2, s3 = substrings(s)
        assert s1 == s.values()
        assert s2 == s.values()[:2]
        assert s3 == s1

    def test_e6_example(self, e6_seed):
        s1, s2, s3 = substrings(e6_seed)
        assert s2 == [mono("gamma1"), mono("gamma1*q^2"), mono("gamma1*q^-2")]
        assert s3 == [mono("gamma1"), mono("gamma1*q^2"), mono("gamma1*q^-2"),
                      mono("gamma1*q^4")]
        assert len(s1) == 5

    def test_d_shape(self, d4_orbit_seed):
        s1, s2, s3 = substrings(d4_orbit_seed)
        e = d4_orbit_seed.entries
        assert s3 == [e[ZERO], e[plain(1)], e[plain(2)], e[dunder(3)]]
        assert s2 == [e[ZERO], e[plain(1)]]


class TestDeltaInvariant:
    def test_gl2_row(self):
        lab = labelling("A", 1, 1)
        wd = weight_data(lab)
        s = gl_seq([mono("gamma1"), mono("gamma1*q^2")])
        assert delta_invariant(s, wd) == mono("gamma1^2*q^2")

    def test_reflection_invariance(self, e6_lab):
        rng = random.Random(43)
        wd = weight_data(e6_lab)
        for _ in range(30):
            s = random_seq(e6_lab, rng)
            for i in e6_lab.vertex_labels():
                assert delta_invariant(reflect(i, s), wd) == delta_invariant(s, wd)

    def test_constant_on_orbit(self, a3_seed, a3_lab):
        wd = weight_data(a3_lab)
        orbit = enumerate_orbit(a3_seed)
        assert len(orbit) == 12
        values = {delta_invariant(s, wd) for s in orbit.members}
        assert len(values) == 1
