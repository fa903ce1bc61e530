"""Seminormal matrices over an admissible truncated orbit, relation checking,
idempotents, the central element, and the q -> +/-1 limits.

The basis of the representation space is the canonically ordered orbit.  The
label-0 family of diagonal operators together with one operator per nonzero
label is produced by ``build_rep``; every defining relation can then be
verified as an exact matrix identity over rational functions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateSeparation, NotAdmissible, PlaceCollisionAtLimit
from .exact_arith import LaurentPoly, Monomial, RatFunc, SymMatrix
from .root_data import NewLabelling, WeightData, ZERO
from .sequences import Orbit, delta_invariant, reflect, trunc_reflect
from .tableaux import triplet_from_seq


@dataclass
class RelationReport:
    """Outcome of a family of exact identity checks."""

    entries: list = field(default_factory=list)  # (name, ok, detail)

    def record(self, name: str, ok: bool, detail: str = ""):
        self.entries.append((name, ok, detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    def failures(self) -> list:
        return [(n, d) for n, ok, d in self.entries if not ok]

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "checks": [{"name": n, "ok": ok, "detail": d}
                           for n, ok, d in self.entries]}


@dataclass
class SeminormalRep:
    """Diagonal operators X_j and local operators g_i on the orbit basis."""

    orbit: Orbit
    labelling: NewLabelling
    g_mats: dict      # nonzero VLabel -> SymMatrix
    x_mats: dict      # VLabel incl ZERO -> SymMatrix (diagonal)

    @property
    def dim(self) -> int:
        return len(self.orbit.members)

    def to_json(self) -> dict:
        return {"labelling": self.labelling.to_json(),
                "members": self.orbit.to_json()["members"],
                "g": {i.text(): self.g_mats[i].to_json()
                      for i in self.labelling.vertex_labels()},
                "x": {j.text(): self.x_mats[j].to_json()
                      for j in self.labelling.all_labels()}}


def _rf(m: Monomial) -> RatFunc:
    return RatFunc.from_monomial(m)


def _g_coefficients(ci: Monomial, cp: Monomial):
    """Diagonal and off-diagonal coefficients of a generator on one basis
    vector: (q - q^-1) c_i / (c_i - c_p) and (q c_i - q^-1 c_p) / (c_i - c_p)."""
    den = LaurentPoly.from_monomial(ci) - LaurentPoly.from_monomial(cp)
    diag_num = LaurentPoly.q_minus_qinv() * LaurentPoly.from_monomial(ci)
    off_num = (LaurentPoly.from_monomial(ci).mul_monomial(Monomial.q(1))
               - LaurentPoly.from_monomial(cp).mul_monomial(Monomial.q(-1)))
    return RatFunc(diag_num, den), RatFunc(off_num, den)


def build_rep(orbit: Orbit) -> SeminormalRep:
    """Matrices of the defining generators on the orbit basis.

    Every member must be the content sequence of a standard triplet; the
    diagonal operators read off the contents, and each nonzero label mixes a
    basis vector with at most its truncated reflection.
    """
    lab = orbit.labelling
    members = orbit.members
    for s in members:
        if triplet_from_seq(s) is None:
            raise NotAdmissible(f"orbit member is not a tableau: {s!r}")
    index = {s: t for t, s in enumerate(members)}
    n = len(members)
    x_mats = {j: SymMatrix.diagonal([_rf(s.entries[j]) for s in members])
              for j in lab.all_labels()}
    g_mats = {}
    for i in lab.vertex_labels():
        entries = {}
        for col, s in enumerate(members):
            ci, cp = s.entries[i], s.entries[lab.pred(i)]
            diag, off = _g_coefficients(ci, cp)
            entries[(col, col)] = diag
            img = trunc_reflect(i, s)
            if img is not None:
                entries[(index[img], col)] = off
        g_mats[i] = SymMatrix(n, n, entries)
    return SeminormalRep(orbit, lab, g_mats, x_mats)


# ---------------------------------------------------------------------------
# Relation verification


def _check(report: RelationReport, name: str, lhs: SymMatrix, rhs: SymMatrix):
    where = lhs.first_difference(rhs)
    report.record(name, where is None,
                  "" if where is None else f"first difference at {where}")


def verify_relations(rep: SeminormalRep) -> RelationReport:
    """Exact verification of every defining relation on the matrices:
    quadratic relations, braid relations, commutation of the diagonal family,
    and the uniform cross relation

        g_i X_j - X^{r_i(d_j)} g_i = (q - q^-1) (X_j - X^{r_i(d_j)}) / (1 - X_pred(i) X_i^-1),

    the right side evaluated entrywise on the diagonal.  The swap relation
    g_i X_pred(i) g_i = X_i is spot-checked separately.
    """
    lab = rep.labelling
    members = rep.orbit.members
    n = rep.dim
    report = RelationReport()
    q_minus = RatFunc(LaurentPoly.q_minus_qinv())
    one = SymMatrix.identity(n)

    for i in lab.vertex_labels():
        g = rep.g_mats[i]
        _check(report, f"quadratic g_{i.text()}",
               g * g, g.scale(q_minus) + one)

    gens = lab.vertex_labels()
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            i, j = gens[a], gens[b]
            gi, gj = rep.g_mats[i], rep.g_mats[j]
            if lab.coxeter_order(i, j) == 2:
                _check(report, f"braid2 g_{i.text()} g_{j.text()}",
                       gi * gj, gj * gi)
            else:
                _check(report, f"braid3 g_{i.text()} g_{j.text()}",
                       gi * gj * gi, gj * gi * gj)

    labels = lab.all_labels()
    for a in range(len(labels)):
        for b in range(a + 1, len(labels)):
            _check(report, f"xcomm {labels[a].text()},{labels[b].text()}",
                   rep.x_mats[labels[a]] * rep.x_mats[labels[b]],
                   rep.x_mats[labels[b]] * rep.x_mats[labels[a]])

    # cross relations, using the full (untruncated) reflection of each member
    for i in lab.vertex_labels():
        g = rep.g_mats[i]
        p = lab.pred(i)
        reflected = [reflect(i, s) for s in members]
        for j in labels:
            x_j = rep.x_mats[j]
            x_rj = SymMatrix.diagonal([_rf(r.entries[j]) for r in reflected])
            rhs_entries = {}
            for t, s in enumerate(members):
                ci, cp = s.entries[i], s.entries[p]
                if ci == cp:
                    raise NotAdmissible(
                        "equal adjacent contents contradict standardness")
                num = (LaurentPoly.q_minus_qinv()
                       * (LaurentPoly.from_monomial(s.entries[j])
                          - LaurentPoly.from_monomial(reflected[t].entries[j]))
                       * LaurentPoly.from_monomial(ci))
                den = (LaurentPoly.from_monomial(ci)
                       - LaurentPoly.from_monomial(cp))
                rhs_entries[(t, t)] = RatFunc(num, den)
            rhs = SymMatrix(n, n, rhs_entries)
            _check(report, f"cross g_{i.text()} X_{j.text()}",
                   g * x_j - x_rj * g, rhs)

    for i in lab.vertex_labels():
        g = rep.g_mats[i]
        _check(report, f"swap g_{i.text()} X_{lab.pred(i).text()} g_{i.text()}",
               g * rep.x_mats[lab.pred(i)] * g, rep.x_mats[i])
    return report


def verify_gl_embeddings(rep: SeminormalRep) -> RelationReport:
    """The three branch subalgebras carry the one-row-diagram relations
    verbatim: the swap relation along each branch and commutation with every
    non-adjacent diagonal operator of the same branch."""
    lab = rep.labelling
    report = RelationReport()
    from .root_data import plain, under, dunder
    branch_sets = [
        ("plain", [ZERO] + [plain(a) for a in range(1, lab.l + 1)]),
        ("under", [ZERO, plain(1)] + [under(b) for b in range(2, lab.lp + 1)]),
        ("dunder", [ZERO] + [plain(a) for a in range(1, lab.k + 1)]
                  + [dunder(c) for c in range(lab.k + 1, lab.lpp + 1)]),
    ]
    for name, chain in branch_sets:
        for t in range(1, len(chain)):
            g = rep.g_mats[chain[t]]
            _check(report, f"gl[{name}] swap at {chain[t].text()}",
                   g * rep.x_mats[chain[t - 1]] * g, rep.x_mats[chain[t]])
            for u, xlab in enumerate(chain):
                if u in (t - 1, t):
                    continue
                _check(report, f"gl[{name}] comm g_{chain[t].text()} "
                               f"X_{xlab.text()}",
                       g * rep.x_mats[xlab], rep.x_mats[xlab] * g)
    return report


# ---------------------------------------------------------------------------
# Idempotents, central element, quotient


def idempotents(rep: SeminormalRep) -> list:
    """One diagonal projector per basis member, built as a polynomial in the
    diagonal operators; they are orthogonal and sum to the identity."""
    members = rep.orbit.members
    if len(set(members)) != len(members):
        raise DegenerateSeparation("duplicate content sequences in the orbit")
    lab = rep.labelling
    n = len(members)
    out = []
    for t, s in enumerate(members):
        e = SymMatrix.identity(n)
        for j in lab.all_labels():
            cj = s.entries[j]
            for s2 in members:
                c2 = s2.entries[j]
                if c2 == cj:
                    continue
                num = rep.x_mats[j] - SymMatrix.scalar(n, _rf(c2))
                den = _rf(cj) - _rf(c2)
                e = e * num.scale(den.inverse())
        out.append(e)
    return out


def central_element(rep: SeminormalRep, wd: WeightData) -> SymMatrix:
    """Product of the diagonal operators raised to the invariant exponents."""
    lab = rep.labelling
    diag = []
    for s in rep.orbit.members:
        m = Monomial.one()
        for j in lab.all_labels():
            m = m * s.entries[j] ** wd.kappa[j]
        diag.append(_rf(m))
    return SymMatrix.diagonal(diag)


def passes_to_quotient(rep: SeminormalRep, wd: WeightData) -> bool:
    """The representation factors through the central quotient exactly when
    the orbit invariant is 1."""
    return delta_invariant(rep.orbit.members[0], wd) == Monomial.one()


def irreducibility_evidence(rep: SeminormalRep) -> RelationReport:
    """The two ingredients of irreducibility: the diagonal spectra separate
    the basis, and the orbit graph is connected with nonzero mixing
    coefficients along every surviving edge."""
    report = RelationReport()
    members = rep.orbit.members
    lab = rep.labelling
    report.record("separating spectra", len(set(members)) == len(members))
    n = len(members)
    adj: dict[int, set] = {t: set() for t in range(n)}
    all_nonzero = True
    for a, g, b in rep.orbit.edges:
        adj[a].add(b)
        s = members[a]
        ci, cp = s.entries[g], s.entries[lab.pred(g)]
        _, off = _g_coefficients(ci, cp)
        if off.is_zero():
            all_nonzero = False
    seen = {0}
    stack = [0]
    while stack:
        t = stack.pop()
        for u in adj[t]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    report.record("orbit graph connected", len(seen) == n)
    report.record("edge coefficients nonzero", all_nonzero)
    return report


# ---------------------------------------------------------------------------
# Finite restriction and classical limit


@dataclass
class FiniteRestriction:
    """The generator matrices alone, with the level-1 irreducibility flag."""

    orbit: Orbit
    labelling: NewLabelling
    g_mats: dict
    irreducible_by_level1: bool

    @property
    def dim(self) -> int:
        return len(self.orbit.members)


def restrict_to_finite(rep: SeminormalRep) -> FiniteRestriction:
    from .tableaux import is_level1
    return FiniteRestriction(rep.orbit, rep.labelling, dict(rep.g_mats),
                             irreducible_by_level1=is_level1(rep.orbit))


def verify_finite_relations(fin: FiniteRestriction) -> RelationReport:
    """Quadratic and braid relations only."""
    lab = fin.labelling
    n = fin.dim
    report = RelationReport()
    q_minus = RatFunc(LaurentPoly.q_minus_qinv())
    one = SymMatrix.identity(n)
    gens = lab.vertex_labels()
    for i in gens:
        g = fin.g_mats[i]
        _check(report, f"quadratic g_{i.text()}", g * g, g.scale(q_minus) + one)
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            i, j = gens[a], gens[b]
            gi, gj = fin.g_mats[i], fin.g_mats[j]
            if lab.coxeter_order(i, j) == 2:
                _check(report, f"braid2 g_{i.text()} g_{j.text()}", gi * gj, gj * gi)
            else:
                _check(report, f"braid3 g_{i.text()} g_{j.text()}",
                       gi * gj * gi, gj * gi * gj)
    return report


@dataclass
class WeylRep:
    """Reflection matrices over exact rationals, obtained at q = eps."""

    orbit: Orbit
    labelling: NewLabelling
    eps: int
    r_mats: dict      # nonzero VLabel -> list[list[Fraction]]

    @property
    def dim(self) -> int:
        return len(self.orbit.members)


def _same_place(ci: Monomial, cp: Monomial) -> bool:
    return (ci / cp).is_even_q_power()


def classical_limit(src, eps: int) -> WeylRep:
    """Evaluate the generator action at q = eps in {+1, -1}.

    When adjacent boxes carry the same place the matrix entries come from the
    gap of classical contents; when the places differ the generator swaps the
    basis vectors up to the sign eps, provided the place ratio does not
    degenerate to 1 at the evaluation point.  A ratio still containing formal
    place symbols is treated as formally independent, hence never 1.
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    orbit = src.orbit if isinstance(src, SeminormalRep) else src
    lab = orbit.labelling
    members = orbit.members
    index = {s: t for t, s in enumerate(members)}
    n = len(members)
    r_mats = {}
    for i in lab.vertex_labels():
        mat = [[Fraction(0)] * n for _ in range(n)]
        for col, s in enumerate(members):
            ci, cp = s.entries[i], s.entries[lab.pred(i)]
            img = trunc_reflect(i, s)
            if _same_place(ci, cp):
                d = (ci.q_exp - cp.q_exp) // 2
                mat[col][col] = Fraction(eps, d)
                if img is not None:
                    mat[index[img]][col] = eps * (1 + Fraction(1, d))
            else:
                ratio = ci / cp
                if ratio.place_free:
                    value = ratio.sign * (eps if ratio.q_exp % 2 else 1)
                    if value == 1:
                        raise PlaceCollisionAtLimit(
                            f"places with ratio {ratio} collide at q={eps}")
                # distinct places are never q^2-adjacent, so the image exists
                assert img is not None
                mat[index[img]][col] = Fraction(eps)
        r_mats[i] = mat
    return WeylRep(orbit, lab, eps, r_mats)


def _mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def verify_weyl_relations(wrep: WeylRep) -> RelationReport:
    """Involutivity and both braid relations, exactly over the rationals."""
    lab = wrep.labelling
    n = wrep.dim
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    report = RelationReport()
    gens = lab.vertex_labels()
    for i in gens:
        r = wrep.r_mats[i]
        report.record(f"involution r_{i.text()}", _mat_mul(r, r) == ident)
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            i, j = gens[a], gens[b]
            ri, rj = wrep.r_mats[i], wrep.r_mats[j]
            if lab.coxeter_order(i, j) == 2:
                report.record(f"braid2 r_{i.text()} r_{j.text()}",
                              _mat_mul(ri, rj) == _mat_mul(rj, ri))
            else:
                report.record(f"braid3 r_{i.text()} r_{j.text()}",
                              _mat_mul(_mat_mul(ri, rj), ri)
                              == _mat_mul(_mat_mul(rj, ri), rj))
    return report
