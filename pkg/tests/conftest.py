import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hecke_ade.exact_arith import Monomial, PlaceSymbol
from hecke_ade.root_data import ZERO, dunder, labelling, plain, under
from hecke_ade.sequences import ContentSeq

G1 = PlaceSymbol(1)
G2 = PlaceSymbol(2)


def mono(expr: str) -> Monomial:
    from hecke_ade.exact_arith import parse_monomial
    return parse_monomial(expr)


def gl_seq(contents) -> ContentSeq:
    """Wrap a list of N monomials as a sequence for the one-branch labelling
    of rank N-1 with the marked vertex at the end (N >= 2)."""
    n = len(contents)
    assert n >= 2
    lab = labelling("A", n - 1, 1)
    entries = {ZERO: contents[0]}
    for a in range(1, n):
        entries[plain(a)] = contents[a]
    return ContentSeq(lab, entries)


def make_a3_seed() -> ContentSeq:
    """Two-place seed with a doubled branch entry."""
    g1, g2 = Monomial.place(G1), Monomial.place(G2)
    return ContentSeq(labelling("A", 3, 2),
                      {ZERO: g1, plain(1): g1 * Monomial.q(-2),
                       plain(2): g2, under(2): g2})


def make_d4_orbit_seed() -> ContentSeq:
    """Single-place seed whose orbit has seven members."""
    g = Monomial.place(G1)
    q = Monomial.q
    return ContentSeq(labelling("D", 4, 1),
                      {ZERO: g * q(-2), plain(1): g, plain(2): g * q(4),
                       plain(3): g * q(6), dunder(3): g * q(2)})


def make_d4_level1_seed() -> ContentSeq:
    """Single-place seed with a three-member level-1 orbit."""
    g = Monomial.place(G1)
    q = Monomial.q
    return ContentSeq(labelling("D", 4, 1),
                      {ZERO: g, plain(1): g * q(2), plain(2): g * q(4),
                       plain(3): g * q(6), dunder(3): g * q(-2)})


def make_e6_seed() -> ContentSeq:
    """Single-place seed whose orbit is not admissible."""
    g = Monomial.place(G1)
    q = Monomial.q
    return ContentSeq(labelling("E", 6, 3),
                      {ZERO: g, plain(1): g * q(2), plain(2): g * q(-2),
                       plain(3): g * q(4), plain(4): g,
                       under(2): g * q(-2), dunder(3): g * q(4)})


@pytest.fixture
def d4_lab():
    return labelling("D", 4, 1)


@pytest.fixture
def a3_lab():
    return labelling("A", 3, 2)


@pytest.fixture
def e6_lab():
    return labelling("E", 6, 3)


@pytest.fixture
def a3_seed():
    return make_a3_seed()


@pytest.fixture
def d4_orbit_seed():
    return make_d4_orbit_seed()


@pytest.fixture
def d4_level1_seed():
    return make_d4_level1_seed()


@pytest.fixture
def e6_seed():
    return make_e6_seed()
