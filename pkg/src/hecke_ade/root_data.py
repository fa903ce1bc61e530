"""Simply-laced root systems, the marked vertex and its branch relabelling,
and the lattice data behind the central element.

A Dynkin diagram of type A/D/E with a marked vertex is relabelled by walking
the (at most three) branches leaving the marked vertex: a *plain* branch
1..l, an *under* branch 2_..l'_ and, past the trivalent vertex, a *dunder*
branch (k+1)__..l''__.  All downstream combinatorics (sequences, tableaux,
representations) is indexed by these branch labels plus an extra label 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
import re

from .errors import InvalidVertex

EPS = "eps"  # key for the extra lattice generator in {eps, alpha_j} vectors

_BRANCH_RANK = {"zero": 0, "plain": 1, "under": 2, "dunder": 3}
_BRANCH_SUFFIX = {"plain": "", "under": "_", "dunder": "__"}


@dataclass(frozen=True)
class VLabel:
    """Branch label of a vertex: plain a, under b_, dunder c__, or the extra 0."""

    branch: str
    index: int

    def __post_init__(self):
        if self.branch not in _BRANCH_RANK:
            raise ValueError(f"unknown branch {self.branch!r}")
        if self.branch == "zero" and self.index != 0:
            raise ValueError("the zero label has index 0")

    def sort_key(self):
        return (_BRANCH_RANK[self.branch], self.index)

    def __lt__(self, other: "VLabel"):
        return self.sort_key() < other.sort_key()

    def text(self) -> str:
        if self.branch == "zero":
            return "0"
        return f"{self.index}{_BRANCH_SUFFIX[self.branch]}"

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"VLabel({self.text()!r})"

    def to_json(self) -> dict:
        return {"branch": self.branch, "index": self.index}

    @classmethod
    def from_json(cls, data: dict) -> "VLabel":
        return cls(data["branch"], int(data["index"]))


ZERO = VLabel("zero", 0)


def plain(i: int) -> VLabel:
    return VLabel("plain", i)


def under(i: int) -> VLabel:
    return VLabel("under", i)


def dunder(i: int) -> VLabel:
    return VLabel("dunder", i)


_LABEL_RE = re.compile(r"(\d+)(__|_)?")


def label_from_text(text: str) -> VLabel:
    m = _LABEL_RE.fullmatch(text.strip())
    if not m:
        raise ValueError(f"cannot parse label {text!r}")
    idx, suffix = int(m.group(1)), m.group(2)
    if idx == 0 and not suffix:
        return ZERO
    branch = {None: "plain", "_": "under", "__": "dunder"}[suffix]
    return VLabel(branch, idx)


@dataclass(frozen=True)
class RootSystemType:
    """A_n (n>=1), D_n (n>=4) or E_n (n in 6,7,8), with the usual vertex ids."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family == "A":
            ok = self.rank >= 1
        elif self.family == "D":
            ok = self.rank >= 4
        elif self.family == "E":
            ok = self.rank in (6, 7, 8)
        else:
            ok = False
        if not ok:
            raise ValueError(f"no simply-laced system {self.family}_{self.rank}")

    def vertices(self) -> range:
        return range(1, self.rank + 1)

    def edges(self) -> list[tuple[int, int]]:
        n = self.rank
        if self.family == "A":
            return [(i, i + 1) for i in range(1, n)]
        if self.family == "D":
            return [(1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n)]
        return [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, n)]

    def neighbors(self, v: int) -> list[int]:
        out = []
        for a, b in self.edges():
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return sorted(out)

    def extremities(self) -> list[int]:
        return [v for v in self.vertices() if len(self.neighbors(v)) <= 1]

    def trivalent(self) -> int | None:
        for v in self.vertices():
            if len(self.neighbors(v)) == 3:
                return v
        return None

    def weyl_order(self) -> int:
        n = self.rank
        if self.family == "A":
            out = 1
            for i in range(2, n + 2):
                out *= i
            return out
        if self.family == "D":
            out = 2 ** (n - 1)
            for i in range(2, n + 1):
                out *= i
            return out
        return {6: 51840, 7: 2903040, 8: 696729600}[self.rank]

    def __str__(self):
        return f"{self.family}{self.rank}"


def _path_to(rst: RootSystemType, start: int, goal: int) -> list[int]:
    """The unique path between two vertices of the (tree) diagram."""
    parent = {start: None}
    stack = [start]
    while stack:
        v = stack.pop()
        if v == goal:
            break
        for u in rst.neighbors(v):
            if u not in parent:
                parent[u] = v
                stack.append(u)
    path = [goal]
    while path[-1] != start:
        path.append(parent[path[-1]])
    return path[::-1]


class NewLabelling:
    """The branch relabelling of a diagram with marked vertex.

    ``to_standard`` maps every nonzero VLabel to a standard vertex id.  The
    lengths l, l', l'' and the trivalent position k follow the conventions:
    l' = 1 when the marked vertex is an extremity (empty under branch) and
    l'' = k = l in type A (empty dunder branch).
    """

    def __init__(self, rst: RootSystemType, vertex: int,
                 plain_path: list[int], under_path: list[int],
                 dunder_tail: list[int], k: int):
        self.rst = rst
        self.vertex = vertex
        self.l = len(plain_path)
        self.lp = max(len(under_path), 1)
        self.k = k
        self.lpp = k + len(dunder_tail)
        to_standard: dict[VLabel, int] = {}
        for i, std in enumerate(plain_path, start=1):
            to_standard[plain(i)] = std
        for i, std in enumerate(under_path[1:], start=2):
            to_standard[under(i)] = std
        for i, std in enumerate(dunder_tail, start=k + 1):
            to_standard[dunder(i)] = std
        self.to_standard = to_standard
        self._adjacent = frozenset(frozenset(e) for e in rst.edges())
        self._from_standard = {v: k for k, v in to_standard.items()}
        self._children: dict[VLabel, tuple[VLabel, ...]] = {}
        for j in self.all_labels():
            kids = []
            if j == ZERO:
                kids.append(plain(1))
            elif j.branch == "plain":
                a = j.index
                if a < self.l:
                    kids.append(plain(a + 1))
                if a == 1 and self.lp >= 2:
                    kids.append(under(2))
                if a == self.k and self.lpp > self.k:
                    kids.append(dunder(self.k + 1))
            elif j.branch == "under" and j.index < self.lp:
                kids.append(under(j.index + 1))
            elif j.branch == "dunder" and j.index < self.lpp:
                kids.append(dunder(j.index + 1))
            self._children[j] = tuple(kids)
        self._subtree: dict[VLabel, tuple[VLabel, ...]] = {}
        for j in reversed(self.all_labels()):
            acc = [j]
            for c in self._children[j]:
                acc.extend(self._subtree[c])
            self._subtree[j] = tuple(acc)

    # -- label sets ----------------------------------------------------------

    def vertex_labels(self) -> list[VLabel]:
        """Nonzero labels in the canonical (basis) order."""
        out = [plain(a) for a in range(1, self.l + 1)]
        out += [under(b) for b in range(2, self.lp + 1)]
        out += [dunder(c) for c in range(self.k + 1, self.lpp + 1)]
        return out

    def all_labels(self) -> list[VLabel]:
        return [ZERO] + self.vertex_labels()

    # -- structure maps ------------------------------------------------------

    def pred(self, j: VLabel) -> VLabel:
        if j == ZERO:
            raise ValueError("0 has no predecessor")
        if j.branch == "plain":
            return ZERO if j.index == 1 else plain(j.index - 1)
        if j.branch == "under":
            return plain(1) if j.index == 2 else under(j.index - 1)
        return plain(self.k) if j.index == self.k + 1 else dunder(j.index - 1)

    def children(self, j: VLabel) -> tuple[VLabel, ...]:
        return self._children[j]

    def subtree(self, j: VLabel) -> tuple[VLabel, ...]:
        """j together with everything reachable through repeated children."""
        return self._subtree[j]

    def adjacent(self, i: VLabel, j: VLabel) -> bool:
        return frozenset((self.to_standard[i], self.to_standard[j])) in self._adjacent

    def coxeter_order(self, i: VLabel, j: VLabel) -> int:
        if i == j:
            return 1
        return 3 if self.adjacent(i, j) else 2

    def __eq__(self, other):
        return (isinstance(other, NewLabelling)
                and self.rst == other.rst and self.vertex == other.vertex)

    def __hash__(self):
        return hash((self.rst, self.vertex))

    def __repr__(self):
        return f"NewLabelling({self.rst}, v={self.vertex})"

    def to_json(self) -> dict:
        return {"family": self.rst.family, "rank": self.rst.rank,
                "vertex": self.vertex,
                "l": self.l, "lp": self.lp, "lpp": self.lpp, "k": self.k,
                "to_standard": {lab.text(): std for lab, std in
                                sorted(self.to_standard.items(),
                                       key=lambda kv: kv[0].sort_key())}}


def build_labelling(rst: RootSystemType, vertex: int) -> NewLabelling:
    """Label the diagram by the branches leaving the marked vertex.

    The plain branch is the longest path through the trivalent vertex (the
    longest path at all in type A); ties are broken lexicographically by the
    standard labels along the path, smaller first.  The under branch is the
    path avoiding the trivalent vertex, trivial when the marked vertex is an
    extremity.
    """
    if vertex not in rst.vertices():
        raise InvalidVertex(f"{rst} has no vertex {vertex}")
    t = rst.trivalent()
    ext = [e for e in rst.extremities() if e != vertex]
    paths = sorted((_path_to(rst, vertex, e) for e in ext),
                   key=lambda p: (-len(p), p))
    if t is None:
        # type A: at most two branches, plain the longer one
        plain_path = paths[0] if paths else [vertex]
        under_path = paths[1] if len(paths) > 1 else [vertex]
        return NewLabelling(rst, vertex, plain_path, under_path, [], len(plain_path))
    if vertex == t:
        plain_path, under_path, dunder_path = paths
        return NewLabelling(rst, vertex, plain_path, under_path, dunder_path[1:], 1)
    through = [p for p in paths if t in p]
    avoiding = [p for p in paths if t not in p]
    plain_path, dunder_full = through
    under_path = avoiding[0] if avoiding else [vertex]
    k = plain_path.index(t) + 1
    return NewLabelling(rst, vertex, plain_path, under_path, dunder_full[k:], k)


# ---------------------------------------------------------------------------
# Lattice vectors over {eps, alpha_j}


def cartan_pairing(lab: NewLabelling, i: VLabel, x: dict) -> int:
    """Apply the coroot of the vertex i to a vector written in {eps, alpha_j}.

    The coroot takes 2 on its own root, -1 on neighbouring roots, 0 elsewhere,
    and -1 on eps exactly for the marked vertex (plain 1).
    """
    if i == ZERO:
        raise ValueError("0 indexes no coroot")
    total = 0
    eps_coeff = x.get(EPS, 0)
    if eps_coeff and i == plain(1):
        total -= eps_coeff
    for j, c in x.items():
        if j == EPS or not c:
            continue
        if j == i:
            total += 2 * c
        elif lab.adjacent(i, j):
            total -= c
    return total


def delta_basis(lab: NewLabelling) -> list[dict]:
    """The recursive lattice basis: delta_0 = eps, delta_j = delta_pred + alpha_j.

    Returned in the canonical order (0, plain ascending, under, dunder).
    """
    vecs: dict[VLabel, dict] = {ZERO: {EPS: 1}}
    for j in lab.vertex_labels():
        v = dict(vecs[lab.pred(j)])
        v[j] = v.get(j, 0) + 1
        vecs[j] = v
    return [vecs[j] for j in lab.all_labels()]


@dataclass(frozen=True)
class WeightData:
    """Integer data of the invariant lattice vector.

    ``n0`` scales the marked fundamental weight to clear denominators with
    overall gcd 1; ``n`` are the scaled root coefficients; ``kappa`` are the
    exponents expressing the invariant vector in the delta basis.
    """

    n0: int
    n: dict            # nonzero VLabel -> int
    kappa: dict        # VLabel incl ZERO -> int

    def kappa_vector(self, lab: NewLabelling) -> list[int]:
        return [self.kappa[j] for j in lab.all_labels()]


def _solve_fundamental_weight(lab: NewLabelling) -> dict:
    """Coefficients of the marked fundamental weight on the simple roots,
    solved exactly from the Cartan pairings (no tables)."""
    labels = lab.vertex_labels()
    n = len(labels)
    mat = [[Fraction(0)] * (n + 1) for _ in range(n)]
    for r, i in enumerate(labels):
        for c, j in enumerate(labels):
            if i == j:
                mat[r][c] = Fraction(2)
            elif lab.adjacent(i, j):
                mat[r][c] = Fraction(-1)
        mat[r][n] = Fraction(1) if i == plain(1) else Fraction(0)
    # gaussian elimination; the Cartan matrix of a finite type is invertible
    for col in range(n):
        piv = next(r for r in range(col, n) if mat[r][col])
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = 1 / mat[col][col]
        mat[col] = [v * inv for v in mat[col]]
        for r in range(n):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    return {lab_: mat[r][n] for r, lab_ in enumerate(labels)}


def weight_data(lab: NewLabelling) -> WeightData:
    coeffs = _solve_fundamental_weight(lab)
    n0 = 1
    for c in coeffs.values():
        n0 = n0 * c.denominator // gcd(n0, c.denominator)
    n = {j: int(c * n0) for j, c in coeffs.items()}
    assert gcd(n0, *n.values()) == 1 if n else n0 == 1
    kappa = {}
    for j in lab.all_labels():
        nj = n0 if j == ZERO else n[j]
        kappa[j] = nj - sum(n[i] for i in lab.all_labels()
                            if i != ZERO and lab.pred(i) == j)
    return WeightData(n0=n0, n=n, kappa=kappa)


def invariant_vector(lab: NewLabelling, wd: WeightData) -> dict:
    """n0*eps + sum n_j alpha_j as an {eps, alpha} vector."""
    out = {EPS: wd.n0}
    out.update({j: wd.n[j] for j in lab.vertex_labels()})
    return out


@lru_cache(maxsize=None)
def labelling(family: str, rank: int, vertex: int) -> NewLabelling:
    """Cached convenience constructor."""
    return build_labelling(RootSystemType(family, rank), vertex)
