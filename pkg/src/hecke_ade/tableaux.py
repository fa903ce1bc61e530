"""Skew diagrams, placed components, standard tableaux and the bijection
between content sequences and tableaux.

Nodes are (row, column) pairs; rows grow downward.  A tableau is stored as a
list of connected components, each in its own coordinate frame together with
an anchor place so that the content of a box at (x, y) is place * q^{2(y-x)}.
Components sharing a place up to an even power of q belong to one placed
diagram; since their diagonal ranges are separated by at least two, any such
family can be stacked into a single valid skew diagram, so nothing is lost by
keeping the frames independent.  Two standard tableaux are equal exactly when
their content sequences are equal, and that is the equality used here.
"""
from __future__ import annotations

from dataclasses import dataclass
from collections import deque

from .errors import IndexOutOfRange, NotAdmissible, NotATableau, OrbitTooLarge
from .exact_arith import Monomial, q_shift_eq
from .root_data import NewLabelling, ZERO, plain, under, dunder
from .sequences import ContentSeq, Orbit, substrings, trunc_reflect


def classical_content(node) -> int:
    x, y = node
    return y - x


def _valid_skew(nodes) -> bool:
    """Rows and columns are intervals and both row endpoints weakly decrease
    from top to bottom over the nonempty rows; this characterizes translated
    difference-of-partition diagrams, internal empty rows included."""
    if not nodes:
        return True
    rows: dict[int, list[int]] = {}
    cols: dict[int, list[int]] = {}
    for x, y in nodes:
        rows.setdefault(x, []).append(y)
        cols.setdefault(y, []).append(x)
    for ys in rows.values():
        if max(ys) - min(ys) + 1 != len(ys):
            return False
    for xs in cols.values():
        if max(xs) - min(xs) + 1 != len(xs):
            return False
    prev = None
    for x in sorted(rows):
        left, right = min(rows[x]), max(rows[x])
        if prev is not None:
            pl, pr = prev
            if left > pl or right > pr:
                return False
        prev = (left, right)
    return True


class SkewDiagram:
    """An immutable set of nodes forming a (translated) skew diagram."""

    __slots__ = ("nodes",)

    def __init__(self, nodes):
        nodes = frozenset((int(x), int(y)) for x, y in nodes)
        if not _valid_skew(nodes):
            raise ValueError(f"not a skew diagram: {sorted(nodes)}")
        object.__setattr__(self, "nodes", nodes)

    def __setattr__(self, *a):
        raise AttributeError("SkewDiagram is immutable")

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(sorted(self.nodes))

    def __contains__(self, node):
        return node in self.nodes

    def __eq__(self, other):
        return isinstance(other, SkewDiagram) and self.nodes == other.nodes

    def __hash__(self):
        return hash(self.nodes)

    def __repr__(self):
        return f"SkewDiagram({sorted(self.nodes)})"

    def components(self) -> list["SkewDiagram"]:
        """Split along gaps of at least two empty diagonals."""
        return [SkewDiagram(part) for part in _diagonal_runs(self.nodes)]


def _diagonal_runs(nodes):
    """Group nodes into maximal runs of consecutive occupied diagonals."""
    if not nodes:
        return []
    by_diag: dict[int, list] = {}
    for nd in nodes:
        by_diag.setdefault(classical_content(nd), []).append(nd)
    runs = []
    current: list = []
    prev_d = None
    for d in sorted(by_diag):
        if prev_d is not None and d > prev_d + 1:
            runs.append(current)
            current = []
        current.extend(by_diag[d])
        prev_d = d
    runs.append(current)
    return runs


def top_left_nodes(diagram: SkewDiagram) -> set:
    """Nodes with nothing above in their column and nothing left in their row."""
    return {(x, y) for (x, y) in diagram.nodes
            if (x - 1, y) not in diagram.nodes and (x, y - 1) not in diagram.nodes}


@dataclass(frozen=True)
class PlacedSkewDiagram:
    """Shapes with places; distinct places must not differ by an even power of q."""

    components: tuple  # ((SkewDiagram, Monomial), ...)

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        places = [p for _, p in comps]
        for i in range(len(places)):
            for j in range(i + 1, len(places)):
                if (places[i] / places[j]).is_even_q_power():
                    raise ValueError(
                        f"places {places[i]} and {places[j]} differ by q^(2a)")

    def size(self) -> int:
        return sum(len(d) for d, _ in self.components)


class PlacedComponent:
    """A connected chunk of boxes in its own frame, with numbers in the boxes."""

    __slots__ = ("place", "nodes")

    def __init__(self, place: Monomial, nodes: dict):
        self.place = place
        self.nodes = dict(nodes)

    def content(self, node) -> Monomial:
        return self.place * Monomial.q(2 * classical_content(node))

    def diagonals(self):
        return {classical_content(nd) for nd in self.nodes}

    def copy(self) -> "PlacedComponent":
        return PlacedComponent(self.place, self.nodes)


class Tableau:
    """A filling of a placed shape by 0..N-1, components in private frames."""

    __slots__ = ("components", "_pos")

    def __init__(self, components):
        comps: list[PlacedComponent] = []
        for c in components:
            if not c.nodes:
                continue
            if not _valid_skew(c.nodes):
                raise ValueError("component is not a skew diagram")
            for part in _diagonal_runs(set(c.nodes)):
                comps.append(PlacedComponent(c.place, {nd: c.nodes[nd] for nd in part}))
        # distinct components sharing a place class must be two diagonals apart
        anchors = []
        for c in comps:
            ds = c.diagonals()
            anchors.append((c.place, min(ds), max(ds)))
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                ratio = anchors[i][0] / anchors[j][0]
                if ratio.is_even_q_power():
                    shift = ratio.q_exp // 2
                    lo_i, hi_i = anchors[i][1] + shift, anchors[i][2] + shift
                    if not (hi_i < anchors[j][1] - 1 or lo_i > anchors[j][2] + 1):
                        raise ValueError("components of one placed diagram must be "
                                         "at least two diagonals apart")
        pos = {}
        for idx, c in enumerate(comps):
            for nd, num in c.nodes.items():
                if num in pos:
                    raise ValueError(f"number {num} used twice")
                pos[num] = (idx, nd)
        if set(pos) != set(range(len(pos))):
            raise ValueError("numbers must be exactly 0..N-1")
        self.components = comps
        self._pos = pos

    @property
    def size(self) -> int:
        return len(self._pos)

    def position(self, num: int):
        return self._pos[num]

    def content(self, num: int) -> Monomial:
        idx, nd = self._pos[num]
        return self.components[idx].content(nd)

    def seq(self) -> list[Monomial]:
        return [self.content(n) for n in range(self.size)]

    def is_standard(self) -> bool:
        for c in self.components:
            for (x, y), num in c.nodes.items():
                for nb in ((x, y + 1), (x + 1, y)):
                    if nb in c.nodes and c.nodes[nb] < num:
                        return False
        return True

    def restrict(self, m: int) -> "Tableau":
        """Keep the boxes numbered 0..m."""
        if not 0 <= m < self.size:
            raise IndexOutOfRange(f"restriction index {m} out of 0..{self.size - 1}")
        comps = [PlacedComponent(c.place,
                                 {nd: n for nd, n in c.nodes.items() if n <= m})
                 for c in self.components]
        return Tableau([c for c in comps if c.nodes])

    def top_left_count(self) -> int:
        total = 0
        for c in self.components:
            total += sum(1 for (x, y) in c.nodes
                         if (x - 1, y) not in c.nodes and (x, y - 1) not in c.nodes)
        return total

    def placed_diagram(self) -> PlacedSkewDiagram:
        """Forget the filling; realize each place class as one skew diagram."""
        return PlacedSkewDiagram(tuple(
            (SkewDiagram(nodes), anchor)
            for anchor, nodes in ((a, dict(nd)) for a, nd in self.realize_classes())))

    def realize_classes(self):
        """Stack the components of each place class into one coordinate plane.

        Components are arranged north-east to south-west in decreasing
        diagonal order, each strictly below and strictly left of the previous
        one, which always yields a valid skew diagram.
        """
        classes: list[list[int]] = []
        anchors: list[Monomial] = []
        for idx, c in enumerate(self.components):
            for ci, anchor in enumerate(anchors):
                if (c.place / anchor).is_even_q_power():
                    classes[ci].append(idx)
                    break
            else:
                classes.append([idx])
                anchors.append(c.place)
        out = []
        for anchor, idxs in zip(anchors, classes):
            # normalize the anchor to the component holding the smallest number
            lead = min(idxs, key=lambda i: min(self.components[i].nodes.values()))
            anchor = self.components[lead].place
            shifted = []
            for i in idxs:
                c = self.components[i]
                shift = (c.place / anchor).q_exp // 2
                shifted.append((i, shift))
            shifted.sort(key=lambda pair: -max(
                classical_content(nd) + pair[1] for nd in self.components[pair[0]].nodes))
            nodes: dict = {}
            next_row = 1
            for i, shift in shifted:
                c = self.components[i]
                xs = [x for x, _ in c.nodes]
                offset = next_row - min(xs)
                for (x, y), num in c.nodes.items():
                    d = classical_content((x, y)) + shift
                    nodes[(x + offset, x + offset + d)] = num
                next_row = max(xs) + offset + 1
            assert _valid_skew(set(nodes))
            out.append((anchor, nodes))
        return out

    def __eq__(self, other):
        return (isinstance(other, Tableau) and self.size == other.size
                and self.seq() == other.seq())

    def __hash__(self):
        return hash(tuple(self.seq()))

    def __repr__(self):
        return f"Tableau(size={self.size}, seq={[str(m) for m in self.seq()]})"

    def to_json(self) -> dict:
        return {"components": [
            {"place": c.place.to_json(),
             "nodes": [[x, y, num] for (x, y), num in sorted(c.nodes.items())]}
            for c in self.components]}

    @classmethod
    def from_json(cls, data: dict) -> "Tableau":
        comps = [PlacedComponent(Monomial.from_json(c["place"]),
                                 {(int(x), int(y)): int(num)
                                  for x, y, num in c["nodes"]})
                 for c in data["components"]]
        return cls(comps)


def seq_of_tableau(t: Tableau) -> list[Monomial]:
    return t.seq()


# ---------------------------------------------------------------------------
# Reconstruction of the unique standard tableau with a given content sequence.


def reconstruct(seq) -> Tableau | None:
    """Build the standard tableau whose contents read off as ``seq``.

    Boxes are added one by one.  If the new content has occupied neighbours
    on both adjacent diagonals, the box closes a corner between them (the two
    components merge when distinct); with a neighbour on one side only, the
    box extends that component to the right or downward; with no neighbour at
    all, it starts a fresh component.  A repeated content is only legal when
    both adjacent diagonals were refilled in between; otherwise there is no
    standard tableau with this sequence and None is returned.
    """
    comps: list[PlacedComponent | None] = []
    pos: list[tuple] = []       # number -> (component index, node)
    contents: list[Monomial] = []

    def add(ci: int, node, num: int):
        assert node not in comps[ci].nodes
        comps[ci].nodes[node] = num
        pos.append((ci, node))

    for t, a in enumerate(seq):
        below = [m for m in range(t) if q_shift_eq(contents[m], a, -2)]
        above = [m for m in range(t) if q_shift_eq(contents[m], a, 2)]
        equal = [m for m in range(t) if contents[m] == a]
        if equal:
            last = max(equal)
            if not below or not above or max(below) < last or max(above) < last:
                return None
        if below and above:
            i, j = max(below), max(above)
            ci, (x, y) = pos[i]
            cj, (x2, y2) = pos[j]
            if ci == cj:
                assert (x2, y2) == (x - 1, y + 1), "corner configuration violated"
            else:
                dx, dy = (x - 1) - x2, (y + 1) - y2
                moved = {(u + dx, v + dy): n for (u, v), n in comps[cj].nodes.items()}
                assert not (set(moved) & set(comps[ci].nodes))
                comps[ci].nodes.update(moved)
                for n, (c, (u, v)) in enumerate(pos):
                    if c == cj:
                        pos[n] = (ci, (u + dx, v + dy))
                comps[cj] = None
            add(ci, (x, y + 1), t)
            assert _valid_skew(set(comps[ci].nodes))
        elif below:
            assert len(below) == 1
            ci, (x, y) = pos[below[0]]
            assert (x - 1, y + 1) not in comps[ci].nodes
            add(ci, (x, y + 1), t)
        elif above:
            assert len(above) == 1
            cj, (x, y) = pos[above[0]]
            assert (x + 1, y - 1) not in comps[cj].nodes
            add(cj, (x + 1, y), t)
        else:
            comps.append(PlacedComponent(a, {}))
            pos.append((len(comps) - 1, (1, 1)))
            comps[-1].nodes[(1, 1)] = t
        contents.append(a)

    out = Tableau([c for c in comps if c is not None])
    assert out.is_standard() and out.seq() == list(seq)
    return out


# ---------------------------------------------------------------------------
# Triplets


class TripletTableau:
    """Three standard tableaux, one per branch, agreeing on shared prefixes."""

    __slots__ = ("labelling", "t1", "t2", "t3")

    def __init__(self, labelling: NewLabelling, t1: Tableau, t2: Tableau, t3: Tableau):
        lab = labelling
        if (t1.size, t2.size, t3.size) != (lab.l + 1, lab.lp + 1, lab.lpp + 1):
            raise ValueError("component tableau sizes do not match the labelling")
        if t1.seq()[:2] != t2.seq()[:2] or t1.seq()[:lab.k + 1] != t3.seq()[:lab.k + 1]:
            raise ValueError("branch tableaux disagree on their shared prefix")
        self.labelling = lab
        self.t1, self.t2, self.t3 = t1, t2, t3

    def content_seq(self) -> ContentSeq:
        lab = self.labelling
        entries = {ZERO: self.t1.content(0)}
        for a in range(1, lab.l + 1):
            entries[plain(a)] = self.t1.content(a)
        for b in range(2, lab.lp + 1):
            entries[under(b)] = self.t2.content(b)
        for c in range(lab.k + 1, lab.lpp + 1):
            entries[dunder(c)] = self.t3.content(c)
        return ContentSeq(lab, entries)

    def tableaux(self):
        return (self.t1, self.t2, self.t3)

    def __eq__(self, other):
        return (isinstance(other, TripletTableau)
                and self.labelling == other.labelling
                and self.content_seq() == other.content_seq())

    def __hash__(self):
        return hash(self.content_seq())

    def to_json(self) -> dict:
        return {"labelling": self.labelling.to_json(),
                "T1": self.t1.to_json(), "T2": self.t2.to_json(),
                "T3": self.t3.to_json()}


def triplet_from_seq(seq: ContentSeq) -> TripletTableau | None:
    """The standard triplet with these contents, or None if any branch
    reading fails to be a standard tableau's content sequence."""
    s1, s2, s3 = substrings(seq)
    t1 = reconstruct(s1)
    if t1 is None:
        return None
    t2 = reconstruct(s2)
    if t2 is None:
        return None
    t3 = reconstruct(s3)
    if t3 is None:
        return None
    return TripletTableau(seq.labelling, t1, t2, t3)


# ---------------------------------------------------------------------------
# Admissibility and level


@dataclass
class AdmissibilityResult:
    admissible: bool
    witness: ContentSeq | None
    orbit: Orbit | None


def is_admissible(seq: ContentSeq, max_size: int = 5000) -> AdmissibilityResult:
    """Scan the truncated orbit in breadth-first order; the witness of failure
    is the first member reached that is not a tableau's content sequence."""
    if triplet_from_seq(seq) is None:
        raise NotATableau("seed sequence is not the content sequence of a "
                          "standard tableau triplet")
    gens = seq.labelling.vertex_labels()
    found = {seq}
    order = [seq]
    queue = deque([seq])
    while queue:
        s = queue.popleft()
        for g in gens:
            img = trunc_reflect(g, s)
            if img is None or img in found:
                continue
            if triplet_from_seq(img) is None:
                return AdmissibilityResult(False, img, None)
            found.add(img)
            order.append(img)
            queue.append(img)
            if len(found) > max_size:
                raise OrbitTooLarge(f"orbit exceeds max_size={max_size}")
    members = sorted(order)
    index = {s: i for i, s in enumerate(members)}
    edges = []
    for a, s in enumerate(members):
        for g in gens:
            img = trunc_reflect(g, s)
            if img is not None:
                edges.append((a, g, index[img]))
    return AdmissibilityResult(True, None, Orbit(seq.labelling, members, edges))


def orbit_triplets(orbit: Orbit) -> list[TripletTableau]:
    out = []
    for s in orbit.members:
        trip = triplet_from_seq(s)
        if trip is None:
            raise NotAdmissible(f"orbit member is not a tableau: {s!r}")
        out.append(trip)
    return out


def is_level1(orbit: Orbit) -> bool:
    """Level 1 means the entry at label 0 is the same in every member."""
    first = orbit.members[0].entries[ZERO]
    return all(s.entries[ZERO] == first for s in orbit.members)


def is_level1_by_shapes(orbit: Orbit) -> bool:
    """The equivalent combinatorial reading: every branch tableau of every
    member has exactly one top-left box, i.e. its shape is a usual partition."""
    for trip in orbit_triplets(orbit):
        if any(t.top_left_count() != 1 for t in trip.tableaux()):
            return False
    return True


# ---------------------------------------------------------------------------
# Rendering


def _render_tableau(t: Tableau, label_of) -> list[str]:
    lines: list[str] = []
    width = max((len(label_of(n)) for n in range(t.size)), default=1)
    for anchor, nodes in t.realize_classes():
        lines.append(str(anchor))
        xs = [x for x, _ in nodes]
        ys = [y for _, y in nodes]
        for x in range(min(xs), max(xs) + 1):
            row = []
            for y in range(min(ys), max(ys) + 1):
                if (x, y) in nodes:
                    row.append("[" + label_of(nodes[(x, y)]).center(width) + "]")
                else:
                    row.append(" " * (width + 2))
            lines.append("".join(row).rstrip())
        lines.append("")
    if lines and not lines[-1]:
        lines.pop()
    return lines


def render_ascii(trip: TripletTableau) -> str:
    """Draw the branch tableaux, skipping the ones that repeat information:
    the under tableau when that branch is empty and the dunder tableau when
    there is no third branch."""
    lab = trip.labelling

    def plain_label(n):
        return str(n)

    def under_label(n):
        return str(n) if n < 2 else f"{n}_"

    def dunder_label(n):
        return str(n) if n <= lab.k else f"{n}__"

    blocks = [("T1", trip.t1, plain_label)]
    if lab.lp > 1:
        blocks.append(("T2", trip.t2, under_label))
    if lab.lpp > lab.k:
        blocks.append(("T3", trip.t3, dunder_label))
    out = []
    for name, t, label_of in blocks:
        out.append(f"{name}:")
        out.extend("  " + line for line in _render_tableau(t, label_of))
        out.append("")
    return "\n".join(out).rstrip() + "\n"
