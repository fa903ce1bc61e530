import random

import pytest

from hecke_ade.errors import IndexOutOfRange, NotATableau
from hecke_ade.exact_arith import Monomial
from hecke_ade.root_data import ZERO, dunder, labelling, plain, under
from hecke_ade.sequences import ContentSeq, enumerate_orbit, substrings, trunc_reflect
from hecke_ade.tableaux import (PlacedComponent, SkewDiagram, Tableau,
                                classical_content,
                                is_admissible, is_level1, is_level1_by_shapes,
                                reconstruct, render_ascii, seq_of_tableau,
                                top_left_nodes, triplet_from_seq)

from conftest import G1, G2, gl_seq, mono
from oracles import brute_standard_fillings, single_place_shapes, star_condition


class TestSkewDiagram:
    def test_classical_content(self):
        assert classical_content((1, 1)) == 0
        assert classical_content((2, 1)) == -1
        assert classical_content((1, 4)) == 3

    def test_valid_examples(self):
        SkewDiagram({(1, 4), (2, 3), (2, 4), (3, 1), (3, 2), (4, 1), (4, 2)})
        SkewDiagram({(1, 2), (2, 1)})
        SkewDiagram(set())

    def test_invalid_examples(self):
        with pytest.raises(ValueError):
            SkewDiagram({(1, 1), (1, 3)})        # row gap
        with pytest.raises(ValueError):
            SkewDiagram({(1, 1), (3, 1)})        # column gap
        with pytest.raises(ValueError):
            SkewDiagram({(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)})  # left ends grow

    def test_components_by_diagonal_runs(self):
        d = SkewDiagram({(1, 4), (2, 3), (2, 4), (3, 1), (3, 2), (4, 1), (4, 2)})
        comps = d.components()
        assert sorted(len(c) for c in comps) == [3, 4]

    def test_top_left_nodes(self):
        assert top_left_nodes(SkewDiagram({(1, 1), (1, 2), (2, 1)})) == {(1, 1)}
        assert top_left_nodes(SkewDiagram({(1, 2), (2, 1), (2, 2)})) == {(1, 2), (2, 1)}
        assert top_left_nodes(SkewDiagram(set())) == set()


def worked_example_tableau():
    """Two diagrams: a two-component chunk at place gamma1 and a hook at
    gamma2, filled 0..6."""
    c1 = PlacedComponent(Monomial.place(G1),
                         {(2, 1): 0, (1, 3): 1, (2, 2): 2, (2, 3): 5})
    c2 = PlacedComponent(Monomial.place(G2),
                         {(1, 1): 3, (2, 1): 4, (1, 2): 6})
    return Tableau([c1, c2])


class TestTableau:
    def test_worked_example_contents(self):
        t = worked_example_tableau()
        expected = [mono(s) for s in ("gamma1*q^-2", "gamma1*q^4", "gamma1",
                                      "gamma2", "gamma2*q^-2", "gamma1*q^2",
                                      "gamma2*q^2")]
        assert seq_of_tableau(t) == expected
        assert t.is_standard()

    def test_single_box(self):
        t = Tableau([PlacedComponent(Monomial.place(G1), {(1, 1): 0})])
        assert t.seq() == [mono("gamma1")]

    def test_equivalence_preserves_contents(self):
        t = worked_example_tableau()
        moved = []
        for idx, c in enumerate(t.components):
            shift = idx + 1  # translate each component along its diagonal
            moved.append(PlacedComponent(
                c.place, {(x + shift, y + shift): n for (x, y), n in c.nodes.items()}))
        assert Tableau(moved).seq() == t.seq()
        # re-anchoring the place by q^2 while shifting columns back
        c0 = t.components[0]
        re_anchored = PlacedComponent(
            c0.place * Monomial.q(2),
            {(x + 1, y): n for (x, y), n in c0.nodes.items()})
        rest = [c.copy() for c in t.components[1:]]
        assert Tableau([re_anchored] + rest).seq() == t.seq()

    def test_restrict(self):
        t = worked_example_tableau()
        assert t.restrict(t.size - 1) == t
        small = t.restrict(3)
        assert small.size == 4
        assert small.seq() == t.seq()[:4]
        assert small.is_standard()
        with pytest.raises(IndexOutOfRange):
            t.restrict(7)

    def test_restrict_row(self):
        row = Tableau([PlacedComponent(Monomial.place(G1),
                                       {(1, 1): 0, (1, 2): 1, (1, 3): 2})])
        assert row.restrict(1).seq() == [mono("gamma1"), mono("gamma1*q^2")]

    def test_json_roundtrip(self):
        t = worked_example_tableau()
        assert Tableau.from_json(t.to_json()) == t

    def test_rejects_adjacent_components_of_one_place(self):
        c1 = PlacedComponent(Monomial.place(G1), {(1, 1): 0})
        c2 = PlacedComponent(Monomial.place(G1) * Monomial.q(2), {(1, 1): 1})
        with pytest.raises(ValueError):
            Tableau([c1, c2])

    def test_realize_classes_is_valid(self):
        rng = random.Random(61)
        shapes = single_place_shapes(4)
        for components in rng.sample(shapes, 12):
            fillings = brute_standard_fillings(components)
            t = reconstruct(rng.choice(fillings))
            for anchor, nodes in t.realize_classes():
                SkewDiagram(set(nodes))  # validity is checked on construction
                for (x, y), num in nodes.items():
                    assert anchor * Monomial.q(2 * (y - x)) == t.content(num)


class TestReconstruct:
    def test_row_of_two(self):
        t = reconstruct([mono("gamma1"), mono("gamma1*q^2")])
        assert t is not None and t.size == 2
        idx0, n0 = t.position(0)
        idx1, n1 = t.position(1)
        assert idx0 == idx1 and n1 == (n0[0], n0[1] + 1)

    def test_repeat_without_neighbours(self):
        assert reconstruct([mono("gamma1"), mono("gamma1")]) is None
        assert reconstruct([mono("gamma1"), mono("gamma1*q^2"),
                            mono("gamma1")]) is None

    def test_square_closes(self):
        seq = [mono("gamma1"), mono("gamma1*q^2"), mono("gamma1*q^-2"),
               mono("gamma1")]
        t = reconstruct(seq)
        assert t is not None and len(t.components) == 1
        assert t.seq() == seq

    def test_merges_components(self):
        seq = [mono("gamma1"), mono("gamma1*q^4"), mono("gamma1*q^2")]
        t = reconstruct(seq)
        assert t is not None and len(t.components) == 1

    def test_roundtrip_single_place(self):
        for components in single_place_shapes(6):
            for contents in brute_standard_fillings(components):
                t = reconstruct(contents)
                assert t is not None
                assert t.seq() == contents
                assert t.is_standard()

    def test_roundtrip_two_places(self):
        by_size: dict = {}
        for comp in single_place_shapes(5):
            by_size.setdefault(sum(len(nd) for _, nd in comp), []).append(comp)
        relabel = Monomial.place(G2) / Monomial.place(G1)
        for na in range(1, 6):
            for nb in range(1, 6):
                if na + nb > 6:
                    continue
                for comp_a in by_size[na]:
                    for comp_b in by_size[nb]:
                        components = comp_a + [(relabel * anchor, nodes)
                                               for anchor, nodes in comp_b]
                        for contents in brute_standard_fillings(components):
                            t = reconstruct(contents)
                            assert t is not None and t.seq() == contents

    def test_matches_direct_scan(self):
        rng = random.Random(71)
        pool = [mono(s) for s in ("gamma1", "gamma1*q^2", "gamma1*q^4",
                                  "gamma1*q^-2", "gamma2", "gamma2*q^2",
                                  "-gamma1", "gamma1*q^6")]
        for _ in range(500):
            seq = [rng.choice(pool) for _ in range(rng.randint(1, 6))]
            built = reconstruct(seq)
            assert (built is not None) == star_condition(seq)
            if built is not None:
                assert built.seq() == seq


class TestTriplets:
    def test_from_d5_figure(self):
        lab = labelling("D", 5, 1)
        g = Monomial.place(G1)
        q = Monomial.q
        seq = ContentSeq(lab, {ZERO: g * q(-2), plain(1): g, plain(2): g * q(4),
                               plain(3): g * q(6), plain(4): g * q(2),
                               dunder(3): g * q(2)})
        trip = triplet_from_seq(seq)
        assert trip is not None
        assert trip.t1.size == 5 and trip.t2.size == 2 and trip.t3.size == 4
        assert trip.content_seq() == seq

    def test_from_d5_two_places(self):
        lab = labelling("D", 5, 1)
        g1, g2 = Monomial.place(G1), Monomial.place(G2)
        q = Monomial.q
        seq = ContentSeq(lab, {ZERO: g1, plain(1): g1 * q(2), plain(2): g1 * q(4),
                               plain(3): g1 * q(6), plain(4): g2,
                               dunder(3): g1 * q(6)})
        trip = triplet_from_seq(seq)
        assert trip is not None
        assert len(trip.t1.components) == 2

    def test_e6_member_and_failure(self, e6_seed):
        trip = triplet_from_seq(e6_seed)
        assert trip is not None
        bad = trunc_reflect(under(2), e6_seed)
        assert triplet_from_seq(bad) is None
        s1 = substrings(bad)[0]
        assert reconstruct(s1) is None

    def test_prefixes_shared(self, d4_orbit_seed):
        trip = triplet_from_seq(d4_orbit_seed)
        k = d4_orbit_seed.labelling.k
        assert trip.t1.seq()[:k + 1] == trip.t3.seq()[:k + 1]
        assert trip.t1.seq()[:2] == trip.t2.seq()[:2]


class TestOneBranchOrbits:
    def test_orbit_is_the_standard_tableau_set(self):
        # the orbit of any filling of a one-branch shape sweeps out exactly
        # the standard fillings of that shape, all of them admissible
        from conftest import gl_seq
        for components in single_place_shapes(6):
            fillings = brute_standard_fillings(components)
            if len(fillings[0]) < 2:
                continue
            res = is_admissible(gl_seq(fillings[0]), max_size=6000)
            assert res.admissible
            assert len(res.orbit) == len(fillings)
            orbit_contents = {tuple(s.values()) for s in res.orbit.members}
            assert orbit_contents == {tuple(c) for c in fillings}


class TestAdmissibility:
    def test_seed_must_be_tableau(self, a3_lab):
        g1 = Monomial.place(G1)
        bad = ContentSeq(a3_lab, {ZERO: g1, plain(1): g1, plain(2): g1,
                                  under(2): g1})
        with pytest.raises(NotATableau):
            is_admissible(bad)

    def test_d4_example_admissible(self, d4_orbit_seed):
        res = is_admissible(d4_orbit_seed)
        assert res.admissible and len(res.orbit) == 7

    def test_e6_witness(self, e6_seed):
        res = is_admissible(e6_seed)
        assert not res.admissible
        assert res.witness == trunc_reflect(under(2), e6_seed)

    def test_specialized_not_admissible(self, a3_seed):
        bad = a3_seed.substitute({G2: mono("-gamma1*q^-1")})
        res = is_admissible(bad)
        assert not res.admissible
        assert res.witness == trunc_reflect(plain(2), bad)


class TestLevelOne:
    def test_level1_example(self, d4_level1_seed):
        orbit = is_admissible(d4_level1_seed).orbit
        assert len(orbit) == 3
        assert is_level1(orbit) and is_level1_by_shapes(orbit)

    def test_not_level1(self, d4_orbit_seed):
        orbit = is_admissible(d4_orbit_seed).orbit
        assert not is_level1(orbit) and not is_level1_by_shapes(orbit)

    def test_single_member_orbit(self):
        seq = gl_seq([mono("gamma1"), mono("gamma1*q^2")])
        orbit = enumerate_orbit(seq)
        assert len(orbit) == 1 and is_level1(orbit)

    def test_criteria_agree_on_gl(self):
        rng = random.Random(73)
        for components in rng.sample(single_place_shapes(4), 20):
            contents = brute_standard_fillings(components)[0]
            if len(contents) < 2:
                continue
            orbit = enumerate_orbit(gl_seq(contents))
            assert is_level1(orbit) == is_level1_by_shapes(orbit)


class TestGraphicalAction:
    def test_branch_rules(self, d4_orbit_seed, d4_level1_seed, a3_seed):
        # each branch reading either swaps two entries, scales a tail, or is
        # untouched, matching how boxes are said to move
        for seed in (d4_orbit_seed, d4_level1_seed, a3_seed):
            lab = seed.labelling
            chains = [
                [ZERO] + [plain(a) for a in range(1, lab.l + 1)],
                [ZERO, plain(1)] + [under(b) for b in range(2, lab.lp + 1)],
                [ZERO] + [plain(a) for a in range(1, lab.k + 1)]
                + [dunder(c) for c in range(lab.k + 1, lab.lpp + 1)],
            ]
            orbit = is_admissible(seed).orbit
            for s in orbit.members:
                for i in lab.vertex_labels():
                    img = trunc_reflect(i, s)
                    if img is None:
                        continue
                    p = lab.pred(i)
                    ratio = s.entries[i] / s.entries[p]
                    for chain, su, su_new in zip(chains, substrings(s),
                                                 substrings(img)):
                        if i in chain:
                            pos = chain.index(i)
                            expect = list(su)
                            expect[pos - 1], expect[pos] = expect[pos], expect[pos - 1]
                            assert su_new == expect
                        elif p in chain:
                            pos = chain.index(p)
                            assert su_new[:pos] == su[:pos]
                            assert su_new[pos:] == [m * ratio for m in su[pos:]]
                        else:
                            assert su_new == su


class TestRender:
    def test_single_box(self):
        seq = gl_seq([mono("gamma1"), mono("gamma1*q^2")])
        text = render_ascii(triplet_from_seq(seq))
        assert "T1:" in text and "T2:" not in text and "T3:" not in text
        assert "[0][1]" in text

    def test_d4_shows_third_branch(self, d4_orbit_seed):
        text = render_ascii(triplet_from_seq(d4_orbit_seed))
        assert "T1:" in text and "T3:" in text and "T2:" not in text
        assert "3__" in text

    def test_e6_shows_all(self, e6_seed):
        text = render_ascii(triplet_from_seq(e6_seed))
        assert "T1:" in text and "T2:" in text and "T3:" in text
        assert "2_" in text
