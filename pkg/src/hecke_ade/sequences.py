"""Label-indexed sequences of contents, the branch reflection action on them,
truncated operators, and orbit enumeration.

A sequence assigns one invertible Monomial to every label of a relabelled
diagram (including 0).  The reflection for a generator i swaps the entries at
i and its predecessor; when the predecessor is a branching point, every entry
strictly inside the *other* branches is additionally multiplied by the ratio
of the swapped entries.  The truncated operator sends a sequence to the
absorbing value None when the two entries to be swapped differ exactly by
q^{+2} or q^{-2}.
"""
from __future__ import annotations

from dataclasses import dataclass
from collections import deque

from .errors import OrbitTooLarge
from .exact_arith import Monomial, q_shift_eq
from .root_data import NewLabelling, VLabel, WeightData, ZERO, label_from_text


class ContentSeq:
    """Immutable mapping label -> Monomial over all labels of a labelling."""

    __slots__ = ("labelling", "entries", "_key")

    def __init__(self, labelling: NewLabelling, entries: dict):
        missing = [j for j in labelling.all_labels() if j not in entries]
        if missing:
            raise ValueError(f"missing entries for labels {missing}")
        self.labelling = labelling
        self.entries = dict(entries)
        self._key = tuple(entries[j].sort_key() for j in labelling.all_labels())

    def __getitem__(self, j: VLabel) -> Monomial:
        return self.entries[j]

    def values(self) -> list[Monomial]:
        return [self.entries[j] for j in self.labelling.all_labels()]

    def sort_key(self):
        return self._key

    def __eq__(self, other):
        return (isinstance(other, ContentSeq)
                and self.labelling == other.labelling
                and self._key == other._key
                and self.entries == other.entries)

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other: "ContentSeq"):
        return self._key < other._key

    def __repr__(self):
        inner = ", ".join(f"{j.text()}: {self.entries[j]}"
                          for j in self.labelling.all_labels())
        return f"ContentSeq({inner})"

    def substitute(self, subs) -> "ContentSeq":
        """Apply a place specialization to every entry."""
        return ContentSeq(self.labelling,
                          {j: m.substitute(subs) for j, m in self.entries.items()})

    def to_json(self) -> dict:
        return {"labelling": self.labelling.to_json(),
                "entries": {j.text(): self.entries[j].to_json()
                            for j in self.labelling.all_labels()}}

    @classmethod
    def from_json(cls, data: dict, labelling: NewLabelling) -> "ContentSeq":
        entries = {label_from_text(k): Monomial.from_json(v)
                   for k, v in data["entries"].items()}
        return cls(labelling, entries)


def reflect(i: VLabel, seq: ContentSeq) -> ContentSeq:
    """Full (untruncated) reflection for the generator i.

    Swap the entries at i and pred(i); entries in sibling branches, strictly
    past the branching point, pick up the factor entry(i)/entry(pred(i)).
    """
    lab = seq.labelling
    p = lab.pred(i)
    new = dict(seq.entries)
    new[i], new[p] = seq.entries[p], seq.entries[i]
    siblings = [c for c in lab.children(p) if c != i]
    if siblings:
        ratio = seq.entries[i] / seq.entries[p]
        for c in siblings:
            for m in lab.subtree(c):
                new[m] = seq.entries[m] * ratio
    return ContentSeq(lab, new)


def trunc_reflect(i: VLabel, seq: ContentSeq | None) -> ContentSeq | None:
    """Truncated operator: absorbing on None, kills q^{+/-2}-adjacent entries."""
    if seq is None:
        return None
    a = seq.entries[i]
    b = seq.entries[seq.labelling.pred(i)]
    if q_shift_eq(a, b, 2) or q_shift_eq(a, b, -2):
        return None
    return reflect(i, seq)


def apply_word(word, seq: ContentSeq | None) -> ContentSeq | None:
    """Left-to-right composition of truncated operators; [] acts as identity.

    The word is not required to be reduced; for two reduced words of the same
    group element the results agree because the truncated operators satisfy
    the braid relations.
    """
    out = seq
    for i in word:
        out = trunc_reflect(i, out)
    return out


@dataclass
class Orbit:
    """Closure of a sequence under all truncated operators.

    Members are sorted by the canonical entrywise monomial order; edges list
    every non-absorbed transition (source index, generator, target index).
    """

    labelling: NewLabelling
    members: list
    edges: list

    def __len__(self):
        return len(self.members)

    def index(self, seq: ContentSeq) -> int:
        return self.members.index(seq)

    def to_json(self) -> dict:
        return {"labelling": self.labelling.to_json(),
                "members": [{"entries": {j.text(): s.entries[j].to_json()
                                         for j in self.labelling.all_labels()}}
                            for s in self.members],
                "edges": [[a, g.text(), b] for a, g, b in self.edges]}


def bfs_orbit(seq: ContentSeq, max_size: int = 5000):
    """Members in breadth-first discovery order, generators scanned in the
    canonical label order."""
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    gens = seq.labelling.vertex_labels()
    found = {seq}
    order = [seq]
    queue = deque([seq])
    while queue:
        s = queue.popleft()
        for g in gens:
            img = trunc_reflect(g, s)
            if img is not None and img not in found:
                found.add(img)
                order.append(img)
                queue.append(img)
                if len(found) > max_size:
                    raise OrbitTooLarge(
                        f"orbit exceeds max_size={max_size}")
    return order


def enumerate_orbit(seq: ContentSeq, max_size: int = 5000) -> Orbit:
    members = sorted(bfs_orbit(seq, max_size))
    index = {s: i for i, s in enumerate(members)}
    edges = []
    for a, s in enumerate(members):
        for g in seq.labelling.vertex_labels():
            img = trunc_reflect(g, s)
            if img is not None:
                edges.append((a, g, index[img]))
    return Orbit(seq.labelling, members, edges)


def substrings(seq: ContentSeq):
    """The three branch readings of a sequence, each a plain Monomial list."""
    lab = seq.labelling
    s = seq.entries
    from .root_data import plain, under, dunder
    s1 = [s[ZERO]] + [s[plain(a)] for a in range(1, lab.l + 1)]
    s2 = [s[ZERO], s[plain(1)]] + [s[under(b)] for b in range(2, lab.lp + 1)]
    s3 = ([s[ZERO]] + [s[plain(a)] for a in range(1, lab.k + 1)]
          + [s[dunder(c)] for c in range(lab.k + 1, lab.lpp + 1)])
    return s1, s2, s3


def delta_invariant(seq: ContentSeq, wd: WeightData) -> Monomial:
    """Product of the entries raised to the central exponents; constant on
    every truncated orbit."""
    out = Monomial.one()
    for j in seq.labelling.all_labels():
        out = out * seq.entries[j] ** wd.kappa[j]
    return out
