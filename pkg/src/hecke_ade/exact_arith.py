"""Exact symbolic arithmetic in q and formal place symbols.

The whole library computes over four layers, all exact and all immutable:

* ``Monomial``     -- sign * prod(gamma_i^e_i) * q^e.  Contents of boxes live
                      here; a monomial is invertible and never zero, which is
                      what makes orbit enumeration a matter of O(1) equality.
* ``LaurentPoly``  -- finitely many monomial keys with ``Fraction`` coefficients.
* ``RatFunc``      -- an unreduced quotient of two Laurent polynomials.
                      Equality is decided by cross-multiplication.
* ``SymMatrix``    -- a matrix of RatFunc entries, stored sparsely.

No floating point appears anywhere.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import SingularEvaluation

# places are keyed internally by their small integer id; the tuple form
# ((id, exp), ...) is always sorted by id and never stores a zero exponent
PlacesTuple = tuple


@dataclass(frozen=True, order=True)
class PlaceSymbol:
    """Formal symbol gamma_i attached to a component of a placed diagram."""

    id: int

    def __str__(self) -> str:
        return f"gamma{self.id}"

    @property
    def json_key(self) -> str:
        return f"g{self.id}"


def _merge_places(a: PlacesTuple, b: PlacesTuple, flip_b: bool = False) -> PlacesTuple:
    """Exponent-wise sum of two sorted place tuples (difference if flip_b)."""
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        pa, ea = a[i]
        pb, eb = b[j]
        if flip_b:
            eb = -eb
        if pa == pb:
            e = ea + eb
            if e:
                out.append((pa, e))
            i += 1
            j += 1
        elif pa < pb:
            out.append((pa, ea))
            i += 1
        else:
            out.append((pb, eb))
            j += 1
    out.extend(a[i:])
    for pb, eb in b[j:]:
        out.append((pb, -eb if flip_b else eb))
    return tuple(out)


class Monomial:
    """An invertible content value: sign times a product of places times q^e.

    Zero is not representable.  Instances are immutable, hashable and totally
    ordered by ``sort_key``; the ordering is the canonical one used to sort
    orbit members.
    """

    __slots__ = ("sign", "q_exp", "places")

    def __init__(self, sign: int = 1, q_exp: int = 0, places=()):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if isinstance(places, dict):
            places = tuple(sorted((p.id if isinstance(p, PlaceSymbol) else p, e)
                                  for p, e in places.items() if e))
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "q_exp", q_exp)
        object.__setattr__(self, "places", tuple(places))

    def __setattr__(self, *args):
        raise AttributeError("Monomial is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def one(cls) -> "Monomial":
        return cls()

    @classmethod
    def q(cls, exp: int = 1) -> "Monomial":
        return cls(1, exp, ())

    @classmethod
    def place(cls, p: PlaceSymbol, exp: int = 1) -> "Monomial":
        return cls(1, 0, ((p.id, exp),) if exp else ())

    # -- group structure ----------------------------------------------------

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.sign * other.sign,
                        self.q_exp + other.q_exp,
                        _merge_places(self.places, other.places))

    def inverse(self) -> "Monomial":
        return Monomial(self.sign, -self.q_exp,
                        tuple((p, -e) for p, e in self.places))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.sign * other.sign,
                        self.q_exp - other.q_exp,
                        _merge_places(self.places, other.places, flip_b=True))

    def __pow__(self, n: int) -> "Monomial":
        return Monomial(self.sign if n % 2 else 1,
                        self.q_exp * n,
                        tuple((p, e * n) for p, e in self.places) if n else ())

    def substitute(self, subs) -> "Monomial":
        """Replace place symbols by monomials; exponents recombine."""
        table = {p.id if isinstance(p, PlaceSymbol) else p: m for p, m in subs.items()}
        out = Monomial(self.sign, self.q_exp, ())
        for pid, e in self.places:
            image = table.get(pid)
            if image is None:
                out = out * Monomial(1, 0, ((pid, e),))
            else:
                out = out * image ** e
        return out

    # -- predicates ---------------------------------------------------------

    @property
    def place_free(self) -> bool:
        return not self.places

    def is_even_q_power(self) -> bool:
        """True iff the monomial is q^{2a}: positive sign, no places, even exponent."""
        return self.sign == 1 and not self.places and self.q_exp % 2 == 0

    # -- ordering, hashing, serialization -----------------------------------

    def sort_key(self):
        return (self.sign, self.places, self.q_exp)

    def __eq__(self, other):
        return (isinstance(other, Monomial)
                and self.sign == other.sign
                and self.q_exp == other.q_exp
                and self.places == other.places)

    def __hash__(self):
        return hash((self.sign, self.q_exp, self.places))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Monomial({self})"

    def __str__(self):
        factors = []
        for pid, e in self.places:
            factors.append(f"gamma{pid}" + (f"^{e}" if e != 1 else ""))
        if self.q_exp:
            factors.append("q" + (f"^{self.q_exp}" if self.q_exp != 1 else ""))
        body = "*".join(factors) if factors else "1"
        return ("-" if self.sign < 0 else "") + body

    def to_json(self) -> dict:
        return {"sign": self.sign, "q": self.q_exp,
                "places": {f"g{pid}": e for pid, e in self.places}}

    @classmethod
    def from_json(cls, data: dict) -> "Monomial":
        places = []
        for key, e in data.get("places", {}).items():
            m = re.fullmatch(r"(?:g|gamma)(\d+)", key)
            if not m:
                raise ValueError(f"bad place key {key!r}")
            places.append((int(m.group(1)), int(e)))
        return cls(int(data.get("sign", 1)), int(data.get("q", 0)), tuple(sorted(places)))


def q_shift_eq(a: Monomial, b: Monomial, s: int) -> bool:
    """True iff a = q^s * b exactly (same sign and places, q exponents differ by s)."""
    return (a.sign == b.sign and a.places == b.places
            and a.q_exp == b.q_exp + s)


_TOKEN = re.compile(r"\s*(?:(?:g|gamma)(\d+)|(q)|(-?\d+))\s*(?:\^\s*(-?\d+))?\s*")


def parse_monomial(text: str) -> Monomial:
    """Parse expressions like ``-gamma1*q^-2`` or ``g2^2*q`` or ``1``."""
    s = text.strip()
    sign = 1
    if s.startswith("-"):
        sign = -1
        s = s[1:]
    q_exp = 0
    places: dict[int, int] = {}
    for factor in s.split("*"):
        m = _TOKEN.fullmatch(factor)
        if not m:
            raise ValueError(f"cannot parse monomial factor {factor!r}")
        pid, is_q, const, exp = m.groups()
        e = int(exp) if exp is not None else 1
        if pid is not None:
            places[int(pid)] = places.get(int(pid), 0) + e
        elif is_q:
            q_exp += e
        else:
            c = int(const)
            if c == 1:
                pass
            elif c == -1:
                sign = -sign
            else:
                raise ValueError(f"monomial constant must be +/-1, got {const}")
    return Monomial(sign, q_exp, {p: e for p, e in places.items() if e})


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Multivariate Laurent polynomial in q and the place symbols.

    ``terms`` maps (q_exp, places_tuple) to a nonzero rational coefficient;
    integer coefficients are kept as plain ints and only promote to Fraction
    when a genuine fraction enters, which keeps the arithmetic fast.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {k: v for k, v in terms.items() if v}

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({(0, ()): 1})

    @classmethod
    def from_monomial(cls, m: Monomial, coeff=1) -> "LaurentPoly":
        return cls({(m.q_exp, m.places): coeff * m.sign})

    @classmethod
    def q_minus_qinv(cls) -> "LaurentPoly":
        return cls({(1, ()): 1, (-1, ()): -1})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict = {}
        for (qa, pa), ca in self.terms.items():
            for (qb, pb), cb in other.terms.items():
                if not pa:
                    k = (qa + qb, pb)
                elif not pb:
                    k = (qa + qb, pa)
                else:
                    k = (qa + qb, _merge_places(pa, pb))
                s = out.get(k, 0) + ca * cb
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
        return LaurentPoly(out)

    def scale(self, c: Fraction) -> "LaurentPoly":
        if not c:
            return LaurentPoly()
        return LaurentPoly({k: v * c for k, v in self.terms.items()})

    def mul_monomial(self, m: Monomial) -> "LaurentPoly":
        return LaurentPoly({(q + m.q_exp, _merge_places(p, m.places)): v * m.sign
                            for (q, p), v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (qe, places), c in self.sorted_terms():
            mono = Monomial(1, qe, places)
            if c == 1:
                parts.append(str(mono))
            elif c == -1:
                parts.append(f"-{mono}")
            elif mono == Monomial.one():
                parts.append(str(c))
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- normalization helpers ----------------------------------------------

    def q_content(self) -> int:
        """The largest s with q^s dividing every term; 0 for the zero poly."""
        return min((q for q, _ in self.terms), default=0)

    def eval_univariate(self, place_values) -> dict:
        """Substitute exact rationals for every place; returns {q_exp: Fraction}."""
        table = {p.id if isinstance(p, PlaceSymbol) else p: Fraction(v)
                 for p, v in place_values.items()}
        out: dict[int, Fraction] = {}
        for (qe, places), c in self.terms.items():
            val = c
            for pid, e in places:
                if pid not in table:
                    raise ValueError(f"no value supplied for gamma{pid}")
                val *= table[pid] ** e
            s = out.get(qe, 0) + val
            if s:
                out[qe] = s
            elif qe in out:
                del out[qe]
        return out

    def to_json(self) -> list:
        return [{"coeff": str(c), "q": qe, "places": {f"g{p}": e for p, e in places}}
                for (qe, places), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list) -> "LaurentPoly":
        terms = {}
        for t in data:
            m = Monomial.from_json({"sign": 1, "q": t["q"], "places": t.get("places", {})})
            terms[(m.q_exp, m.places)] = Fraction(t["coeff"])
        return cls(terms)


# ---------------------------------------------------------------------------
# Rational functions


def _eps_pow(eps: int, e: int) -> int:
    return eps if e % 2 else 1


def _vanishing_order(poly: dict, eps: int):
    """For a nonzero univariate Laurent poly P, returns (ord, val, corr) with
    P(q) = (q-eps)^ord * R(q) and R(eps) = corr * val.

    Exponents are shifted to be >= 0 before deflating by (q - eps); corr is
    the value of the dropped q-power at eps.  (None, None, 1) for P = 0.
    """
    if not poly:
        return None, None, Fraction(1)
    shift = min(poly)
    coeffs: dict[int, Fraction] = {e - shift: c for e, c in poly.items()}
    correction = Fraction(_eps_pow(eps, shift))
    order = 0
    while coeffs:
        value = sum(c * _eps_pow(eps, e) for e, c in coeffs.items())
        if value != 0:
            return order, value, correction
        # synthetic division by (q - eps); remainder is the value, known zero
        deg = max(coeffs)
        new: dict[int, Fraction] = {}
        carry = Fraction(0)
        for e in range(deg, 0, -1):
            carry = coeffs.get(e, Fraction(0)) + carry * eps
            if carry:
                new[e - 1] = carry
        coeffs = new
        order += 1
    return None, None, correction


class RatFunc:
    """Quotient of Laurent polynomials, deliberately kept unreduced; no
    multivariate gcd is ever taken.  Equality is exact, decided by
    cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.one()
        if den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")
        if num.is_zero():
            den = LaurentPoly.one()
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls(LaurentPoly.zero())

    @classmethod
    def one(cls) -> "RatFunc":
        return cls(LaurentPoly.one())

    @classmethod
    def from_monomial(cls, m: Monomial) -> "RatFunc":
        return cls(LaurentPoly.from_monomial(m))

    @classmethod
    def fraction(cls, c) -> "RatFunc":
        return cls(LaurentPoly.one().scale(Fraction(c)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    # -- field operations ----------------------------------------------------

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        if self.den == other.den:
            return RatFunc(self.num - other.num, self.den)
        return RatFunc(self.num * other.den - other.num * self.den,
                       self.den * other.den)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.num == other.den:
            return RatFunc(other.num, self.den)
        if other.num == self.den:
            return RatFunc(self.num, other.den)
        return RatFunc(self.num * other.num, self.den * other.den)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero RatFunc")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RatFunc is unreduced and not hashable")

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        # for display only, pull the shared power of q out of both sides
        shift = min(self.num.q_content(), self.den.q_content())
        num, den = self.num, self.den
        if shift:
            power = Monomial.q(-shift)
            num, den = num.mul_monomial(power), den.mul_monomial(power)
        if den == LaurentPoly.one():
            return str(num)
        return f"({num}) / ({den})"

    # -- evaluation -----------------------------------------------------------

    def eval_q(self, eps: int, place_values=None) -> Fraction:
        """Exact value at q=eps in {+1,-1} after substituting place values.

        Common (q - eps) factors are cancelled, so removable singularities
        evaluate to the limit; a genuine pole raises SingularEvaluation.
        """
        if eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        place_values = place_values or {}
        num = self.num.eval_univariate(place_values)
        den = self.den.eval_univariate(place_values)
        den_ord, den_val, den_corr = _vanishing_order(den, eps)
        if den_ord is None:
            raise SingularEvaluation("denominator is identically zero after substitution")
        num_ord, num_val, num_corr = _vanishing_order(num, eps)
        if num_ord is None:
            return Fraction(0)
        if num_ord < den_ord:
            raise SingularEvaluation(f"pole of order {den_ord - num_ord} at q={eps}")
        if num_ord > den_ord:
            return Fraction(0)
        return (num_corr * num_val) / (den_corr * den_val)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RatFunc":
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


def ratfunc_eval_q(f: RatFunc, eps: int, place_values=None) -> Fraction:
    return f.eval_q(eps, place_values)


# ---------------------------------------------------------------------------
# Matrices


class SymMatrix:
    """Matrix over RatFunc, stored as a sparse {(row, col): entry} dict."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows <= 0 or cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for k, v in entries.items():
                if not v.is_zero():
                    self.entries[k] = v

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls(n, n, {(i, i): RatFunc.one() for i in range(n)})

    @classmethod
    def diagonal(cls, values) -> "SymMatrix":
        values = list(values)
        return cls(len(values), len(values),
                   {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def scalar(cls, n: int, value: RatFunc) -> "SymMatrix":
        return cls(n, n, {(i, i): value for i in range(n)})

    def get(self, i: int, j: int) -> RatFunc:
        entry = self.entries.get((i, j))
        return RatFunc.zero() if entry is None else entry

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self.entries)

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        self._check_same_shape(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out[k] + v if k in out else v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return SymMatrix(self.rows, self.cols, out)

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        self._check_same_shape(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out[k] - v if k in out else -v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return SymMatrix(self.rows, self.cols, out)

    def __mul__(self, other: "SymMatrix") -> "SymMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * "
                             f"{other.rows}x{other.cols}")
        by_row: dict[int, list] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                key = (i, j)
                prod = a * b
                if key in out:
                    s = out[key] + prod
                    if s.is_zero():
                        del out[key]
                    else:
                        out[key] = s
                elif not prod.is_zero():
                    out[key] = prod
        return SymMatrix(self.rows, other.cols, out)

    def scale(self, value: RatFunc) -> "SymMatrix":
        return SymMatrix(self.rows, self.cols,
                         {k: v * value for k, v in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        for k in set(self.entries) | set(other.entries):
            if self.get(*k) != other.get(*k):
                return False
        return True

    def __hash__(self):
        raise TypeError("SymMatrix is not hashable")

    def first_difference(self, other: "SymMatrix"):
        """Coordinates of the first entry where the matrices differ, or None."""
        for k in sorted(set(self.entries) | set(other.entries)):
            if self.get(*k) != other.get(*k):
                return k
        return None

    def _check_same_shape(self, other: "SymMatrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __repr__(self):
        return f"SymMatrix({self.rows}x{self.cols}, {len(self.entries)} nonzero)"

    def to_json(self) -> list:
        return [[self.get(i, j).to_json() for j in range(self.cols)]
                for i in range(self.rows)]
