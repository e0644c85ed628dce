"""Finitely presented graded-commutative rings over Z and F_p.

A :class:`RingPresentation` is a set of generators with integer degrees
(negative degrees allowed) and homogeneous relations. The leading terms of the
relations, under graded-lex order (total exponent first, then lex by declared
generator order), form a rewrite system. The constructor checks that every
critical pair of that system resolves, so normal forms are canonical and
:meth:`RingPresentation.basis_in_degree` is a basis.

Elements are :class:`GradedElement` instances: a sparse map from exponent
vectors to nonzero coefficients, always kept in normal form.

Over Z and odd p, odd-degree generators anticommute and square to zero. In
characteristic 2 there are no signs and no automatic exterior relations.
"""

from __future__ import annotations

import itertools
import json
import os
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import (
    ConfluenceError,
    DegreeBoundError,
    MixedRingError,
    PresentationError,
)

Monomial = tuple[int, ...]
Terms = dict[Monomial, int]

DEFAULT_DEGREE_BOUND = 16


def default_degree_bound() -> int:
    """Default confluence/enumeration bound, overridable by ``STROPS_DEGREE_BOUND``."""
    raw = os.environ.get("STROPS_DEGREE_BOUND")
    if raw is None:
        return DEFAULT_DEGREE_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise PresentationError(f"STROPS_DEGREE_BOUND must be an integer, got {raw!r}")
    if value < 0:
        raise PresentationError("STROPS_DEGREE_BOUND must be non-negative")
    return value


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class Coefficients:
    """Z when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise PresentationError(f"F_{self.p}: {self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> Coefficients:
        t = text.strip().upper()
        if t in ("Z", "INTEGERS"):
            return cls(0)
        m = re.fullmatch(r"(?:F|Z/|Z)(\d+)", t)
        if not m:
            raise PresentationError(f"unknown coefficient ring {text!r}")
        return cls(int(m.group(1)))

    @property
    def label(self) -> str:
        return f"F{self.p}" if self.p else "Z"

    @property
    def characteristic(self) -> int:
        return self.p

    def reduce(self, c: int) -> int:
        return c % self.p if self.p else c

    def is_unit(self, c: int) -> bool:
        c = self.reduce(c)
        return c in (1, -1) if not self.p else c != 0

    def inverse(self, c: int) -> int:
        if not self.is_unit(c):
            raise ZeroDivisionError(f"{c} is not a unit in {self.label}")
        return pow(c, -1, self.p) if self.p else c

    def __str__(self) -> str:
        return self.label


ZZ = Coefficients(0)
F2 = Coefficients(2)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def _add_into(acc: Terms, mono: Monomial, c: int) -> None:
    v = acc.get(mono, 0) + c
    if v:
        acc[mono] = v
    else:
        acc.pop(mono, None)


def _order_key(m: Monomial) -> tuple[int, Monomial]:
    return (sum(m), m)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


class RingPresentation:
    """A graded-commutative ring given by generators and homogeneous relations.

    Parameters
    ----------
    generators:
        ``(name, degree)`` pairs or :class:`Generator` objects; declaration order
        fixes the monomial order.
    relations:
        polynomial strings (``"w1^4 + w1^2*w2 + w2^2"``) or ``{exponents: coeff}``
        maps, each asserted to be zero.
    coefficients:
        :class:`Coefficients` or a label such as ``"Z"`` / ``"F2"``.
    degree_bound:
        critical pairs are checked, and bases enumerated, for ``|degree| <= bound``.
    """

    def __init__(
        self,
        generators: Iterable[Union[Generator, tuple[str, int]]],
        relations: Iterable[Union[str, Mapping[Monomial, int]]] = (),
        coefficients: Union[Coefficients, str] = ZZ,
        degree_bound: int | None = None,
    ):
        if isinstance(coefficients, str):
            coefficients = Coefficients.parse(coefficients)
        self.coefficients = coefficients
        self.generators: tuple[Generator, ...] = tuple(
            g if isinstance(g, Generator) else Generator(str(g[0]), int(g[1])) for g in generators
        )
        self.degree_bound = default_degree_bound() if degree_bound is None else int(degree_bound)
        names = [g.name for g in self.generators]
        for n in names:
            if not _NAME.match(n):
                raise PresentationError(f"invalid generator name {n!r}")
        if len(set(names)) != len(names):
            raise PresentationError(f"duplicate generator names in {names}")
        self._index = {n: i for i, n in enumerate(names)}
        self._degrees = tuple(g.degree for g in self.generators)
        self._exterior = tuple(
            coefficients.p != 2 and g.degree % 2 == 1 for g in self.generators
        )
        self._nf_cache: dict[Monomial, Terms] = {}

        rels: list[Terms] = []
        for r in relations:
            terms = self._parse_terms(r) if isinstance(r, str) else self._clean(r)
            if not terms:
                raise PresentationError(f"relation {r!r} is zero")
            degs = {self.degree(m) for m in terms}
            if len(degs) > 1:
                raise PresentationError(
                    f"relation {self._format(terms)} is not homogeneous (degrees {sorted(degs)})"
                )
            rels.append(terms)
        self.relations: tuple[Terms, ...] = tuple(rels)

        rules = []
        self._rule_relations: list[Terms] = []
        for declared in rels:
            # relations already implied by the exterior rule contribute no rewrite rule
            terms = {m: c for m, c in declared.items() if not self._killed(m)}
            if not terms:
                continue
            self._rule_relations.append(terms)
            lead = max(terms, key=_order_key)
            lc = terms[lead]
            if not coefficients.is_unit(lc):
                raise PresentationError(
                    f"leading coefficient {lc} of {self._format(terms)} is not a unit"
                )
            inv = coefficients.inverse(lc)
            tail = {m: coefficients.reduce(-c * inv) for m, c in terms.items() if m != lead}
            rules.append((lead, {m: c for m, c in tail.items() if c}))
        self._rules: tuple[tuple[Monomial, Terms], ...] = tuple(rules)
        self._check_confluence()

    # -- basic data -------------------------------------------------------

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PresentationError(f"unknown generator {name!r} (have {list(self.names)})")

    def degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self._degrees))

    @property
    def key(self) -> tuple:
        rels = tuple(sorted(tuple(sorted(r.items())) for r in self.relations))
        return (self.coefficients, self.generators, rels, self.degree_bound)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingPresentation):
            return NotImplemented
        return self is other or self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        rels = ", ".join(self._format(r) for r in self.relations)
        return f"RingPresentation[{self.coefficients}]({gens} | {rels})"

    # -- monomial arithmetic ----------------------------------------------

    def _killed(self, m: Monomial) -> bool:
        return any(ext and e > 1 for ext, e in zip(self._exterior, m))

    def _mul_monomials(self, a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
        """``a * b = sign * (a+b)``, or None when an exterior square appears."""
        prod = tuple(x + y for x, y in zip(a, b))
        if self._killed(prod):
            return None
        sign = 1
        if any(self._exterior):
            # each odd factor of b moves left past the odd factors of a with larger index
            swaps = 0
            after = 0
            for i in range(len(a) - 1, -1, -1):
                if self._exterior[i]:
                    swaps += b[i] * after
                    after += a[i]
            if swaps % 2:
                sign = -1
        return sign, prod

    def _nf_monomial(self, m: Monomial) -> Terms:
        cached = self._nf_cache.get(m)
        if cached is not None:
            return cached
        out: Terms
        if self._killed(m):
            out = {}
        else:
            out = {m: 1}
            for lead, tail in self._rules:
                if _divides(lead, m):
                    q = tuple(x - y for x, y in zip(m, lead))
                    s, _ = self._mul_monomials(lead, q)
                    out = {}
                    for u, c in tail.items():
                        r = self._mul_monomials(u, q)
                        if r is None:
                            continue
                        s2, prod = r
                        for v, d in self._nf_monomial(prod).items():
                            _add_into(out, v, s * s2 * c * d)
                    out = self._clean(out)
                    break
        self._nf_cache[m] = out
        return out

    def _clean(self, terms: Mapping[Monomial, int]) -> Terms:
        red = self.coefficients.reduce
        out: Terms = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != self.ngens:
                raise PresentationError(f"monomial {m} has wrong length for {self.ngens} generators")
            _add_into(out, m, red(c))
        return {m: red(c) for m, c in out.items() if red(c)}

    def normal_form_terms(self, terms: Mapping[Monomial, int]) -> Terms:
        out: Terms = {}
        for m, c in terms.items():
            for v, d in self._nf_monomial(tuple(m)).items():
                _add_into(out, v, c * d)
        return self._clean(out)

    def _mul_terms(self, a: Mapping[Monomial, int], b: Mapping[Monomial, int]) -> Terms:
        raw: Terms = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                r = self._mul_monomials(ma, mb)
                if r is not None:
                    _add_into(raw, r[1], r[0] * ca * cb)
        return self.normal_form_terms(raw)

    def is_standard(self, m: Monomial) -> bool:
        return not self._killed(m) and not any(_divides(lead, m) for lead, _ in self._rules)

    # -- confluence -------------------------------------------------------

    def _sign_definite(self) -> bool:
        return all(d > 0 for d in self._degrees) or all(d < 0 for d in self._degrees)

    def _check_confluence(self) -> None:
        check_all = not self._sign_definite()
        for (l1, t1), (l2, t2) in itertools.combinations(self._rules, 2):
            lcm = tuple(max(x, y) for x, y in zip(l1, l2))
            if self._killed(lcm):
                continue
            if not check_all and abs(self.degree(lcm)) > self.degree_bound:
                continue
            if self._reduct(lcm, l1, t1) != self._reduct(lcm, l2, t2):
                raise ConfluenceError(
                    f"critical pair ({self.format_monomial(l1)}, {self.format_monomial(l2)}) "
                    f"at {self.format_monomial(lcm)} does not resolve",
                    (self.format_monomial(l1), self.format_monomial(l2)),
                )
        # overlaps of explicit rules with the implicit exterior rule x^2 -> 0
        for (lead, tail), rel in zip(self._rules, self._rule_relations):
            for i, ext in enumerate(self._exterior):
                if not ext or lead[i] == 0:
                    continue
                if not check_all and abs(self.degree(lead) + self._degrees[i]) > self.degree_bound:
                    continue
                unit = tuple(int(j == i) for j in range(self.ngens))
                if self._mul_terms({unit: 1}, rel):
                    name = self.generators[i].name
                    raise ConfluenceError(
                        f"exterior overlap of {name} with {self.format_monomial(lead)} does not resolve",
                        (name + "^2", self.format_monomial(lead)),
                    )

    def _reduct(self, m: Monomial, lead: Monomial, tail: Terms) -> Terms:
        q = tuple(x - y for x, y in zip(m, lead))
        s, _ = self._mul_monomials(lead, q)
        raw: Terms = {}
        for u, c in tail.items():
            r = self._mul_monomials(u, q)
            if r is not None:
                _add_into(raw, r[1], s * r[0] * c)
        return self.normal_form_terms(raw)

    # -- enumeration ------------------------------------------------------

    def _exponent_caps(self, n: int) -> list[int]:
        caps: list[int | None] = []
        for i, g in enumerate(self.generators):
            cap = 1 if self._exterior[i] else None
            for lead, _ in self._rules:
                if lead[i] and all(e == 0 for j, e in enumerate(lead) if j != i):
                    cap = lead[i] - 1 if cap is None else min(cap, lead[i] - 1)
            caps.append(cap)
        free = [i for i, c in enumerate(caps) if c is None]
        if not free:
            return caps  # type: ignore[return-value]
        signs = {(self._degrees[i] > 0) - (self._degrees[i] < 0) for i in free}
        if 0 in signs or len(signs) > 1:
            raise PresentationError(
                "ring is not finite-dimensional in a fixed degree: generators "
                f"{[self.generators[i].name for i in free]} are neither nilpotent nor of one sign"
            )
        lo = sum(min(0, caps[i] * d) for i, d in enumerate(self._degrees) if caps[i] is not None)
        hi = sum(max(0, caps[i] * d) for i, d in enumerate(self._degrees) if caps[i] is not None)
        for i in free:
            d = self._degrees[i]
            caps[i] = max(0, (n - lo) // d) if d > 0 else max(0, (n - hi) // d)
        return caps  # type: ignore[return-value]

    def _check_bound(self, n: int) -> None:
        if abs(n) > self.degree_bound:
            raise DegreeBoundError(
                f"degree {n} exceeds the verified bound {self.degree_bound}"
            )

    def monomials_in_degree(self, n: int, caps: Sequence[int] | None = None) -> Iterator[Monomial]:
        """All exponent vectors of degree ``n`` within ``caps`` (no reduction)."""
        caps = list(self._exponent_caps(n) if caps is None else caps)
        degs = self._degrees
        k = len(degs)
        # remaining-degree range reachable by the suffix i.. for pruning
        suffix_lo = [0] * (k + 1)
        suffix_hi = [0] * (k + 1)
        for i in range(k - 1, -1, -1):
            suffix_lo[i] = suffix_lo[i + 1] + min(0, caps[i] * degs[i])
            suffix_hi[i] = suffix_hi[i + 1] + max(0, caps[i] * degs[i])

        def rec(i: int, rest: int, acc: list[int]):
            if i == k:
                if rest == 0:
                    yield tuple(acc)
                return
            for e in range(caps[i] + 1):
                r = rest - e * degs[i]
                if suffix_lo[i + 1] <= r <= suffix_hi[i + 1]:
                    acc.append(e)
                    yield from rec(i + 1, r, acc)
                    acc.pop()

        yield from rec(0, n, [])

    def basis_in_degree(self, n: int) -> list[Monomial]:
        """Standard monomials of degree ``n``, largest first in graded-lex order."""
        self._check_bound(n)
        out = [m for m in self.monomials_in_degree(n) if self.is_standard(m)]
        return sorted(out, key=_order_key, reverse=True)

    def basis_elements(self, n: int) -> list[GradedElement]:
        return [GradedElement(self, {m: 1}, normal=True) for m in self.basis_in_degree(n)]

    def dimension(self, n: int) -> int:
        return len(self.basis_in_degree(n))

    def is_finite(self) -> bool:
        return all(
            self._exterior[i]
            or any(lead[i] and sum(lead) == lead[i] for lead, _ in self._rules)
            for i in range(self.ngens)
        )

    def degree_range(self) -> tuple[int, int]:
        """Smallest and largest degree with nonzero basis (finite rings only)."""
        if not self.is_finite():
            raise PresentationError("degree_range needs a finite-dimensional ring")
        caps = self._exponent_caps(0)
        degs = [
            self.degree(m)
            for m in itertools.product(*(range(c + 1) for c in caps))
            if self.is_standard(m)
        ]
        return min(degs), max(degs)

    def all_basis(self) -> dict[int, list[Monomial]]:
        lo, hi = self.degree_range()
        return {n: b for n in range(lo, hi + 1) if (b := self.basis_in_degree(n))}

    # -- elements ---------------------------------------------------------

    def element(self, terms: Mapping[Monomial, int]) -> GradedElement:
        return GradedElement(self, self.normal_form_terms(self._clean(terms)), normal=True)

    def zero(self) -> GradedElement:
        return GradedElement(self, {}, normal=True)

    def one(self) -> GradedElement:
        return self.scalar(1)

    def scalar(self, c: int) -> GradedElement:
        return self.element({(0,) * self.ngens: c})

    def gen(self, name: str) -> GradedElement:
        i = self.index(name)
        return self.element({tuple(int(j == i) for j in range(self.ngens)): 1})

    def gens(self) -> tuple[GradedElement, ...]:
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, m: Monomial) -> GradedElement:
        return self.element({tuple(m): 1})

    def parse(self, text: str) -> GradedElement:
        return self.element(self._parse_terms(text))

    def __call__(self, value: Union[str, int, GradedElement]) -> GradedElement:
        if isinstance(value, GradedElement):
            _same_ring(self, value.ring)
            return value
        if isinstance(value, int):
            return self.scalar(value)
        return self.parse(value)

    def _parse_terms(self, text: str) -> Terms:
        s = text.strip()
        if not s:
            raise PresentationError("empty polynomial string")
        pos = 0
        out: Terms = {}
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos:
                raise PresentationError(f"cannot parse polynomial {text!r} at position {pos}")
            sign = -1 if m.group(1) == "-" else 1
            coeff, mono = self._parse_term(m.group(2).strip(), text)
            _add_into(out, mono, sign * coeff)
            pos = m.end()
        return self._clean(out)

    def _parse_term(self, term: str, text: str) -> tuple[int, Monomial]:
        coeff = 1
        exps = [0] * self.ngens
        for factor in term.split("*"):
            f = factor.strip()
            if not f:
                raise PresentationError(f"empty factor in {text!r}")
            if re.fullmatch(r"\d+", f):
                coeff *= int(f)
                continue
            base, _, power = f.partition("^")
            base = base.strip()
            k = int(power) if power else 1
            if k < 0:
                raise PresentationError(f"negative exponent in {text!r}")
            exps[self.index(base)] += k
        return coeff, tuple(exps)

    # -- formatting / serialization ----------------------------------------

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for g, e in zip(self.generators, m):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts) if parts else "1"

    def _format(self, terms: Mapping[Monomial, int]) -> str:
        if not terms:
            return "0"
        out = []
        for m in sorted(terms, key=_order_key, reverse=True):
            c = terms[m]
            mono = self.format_monomial(m)
            mag = abs(c)
            body = mono if mag == 1 else (str(mag) if mono == "1" else f"{mag}*{mono}")
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def to_dict(self) -> dict:
        return {
            "coefficients": self.coefficients.label,
            "generators": [{"name": g.name, "degree": g.degree} for g in self.generators],
            "relations": [self._format(r) for r in self.relations],
            "degree_bound": self.degree_bound,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, doc: Mapping) -> RingPresentation:
        try:
            gens = [(g["name"], int(g["degree"])) for g in doc["generators"]]
            return cls(
                gens,
                list(doc.get("relations", [])),
                Coefficients.parse(str(doc["coefficients"])),
                doc.get("degree_bound"),
            )
        except (KeyError, TypeError) as exc:
            raise PresentationError(f"malformed ring document: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> RingPresentation:
        return cls.from_dict(json.loads(text))


def _same_ring(a: RingPresentation, b: RingPresentation) -> None:
    if a is not b and a != b:
        raise MixedRingError(f"operands live in different rings: {a!r} vs {b!r}")


class GradedElement:
    """An element of a :class:`RingPresentation`, stored in normal form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingPresentation, terms: Mapping[Monomial, int], normal: bool = False):
        self.ring = ring
        self.terms: Terms = dict(terms) if normal else ring.normal_form_terms(terms)

    def _coerce(self, other) -> GradedElement | None:
        if isinstance(other, GradedElement):
            _same_ring(self.ring, other.ring)
            return other
        if isinstance(other, int):
            return self.ring.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            _add_into(out, m, c)
        return GradedElement(self.ring, self.ring._clean(out), normal=True)

    __radd__ = __add__

    def __neg__(self):
        return GradedElement(self.ring, self.ring._clean({m: -c for m, c in self.terms.items()}), normal=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GradedElement(
                self.ring, self.ring._clean({m: c * other for m, c in self.terms.items()}), normal=True
            )
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GradedElement(self.ring, self.ring._mul_terms(self.terms, o.terms), normal=True)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return self.ring._format(self.terms)

    __str__ = __repr__

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {self.ring.degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """Degree of a homogeneous element; None for zero."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError(f"{self} is not homogeneous")
        return ds.pop()

    def homogeneous_part(self, n: int) -> GradedElement:
        return GradedElement(
            self.ring, {m: c for m, c in self.terms.items() if self.ring.degree(m) == n}, normal=True
        )

    def coefficient(self, m: Monomial) -> int:
        return self.terms.get(tuple(m), 0)

    def coordinates(self, basis: Sequence[Monomial]) -> list[int]:
        """Coefficients along ``basis``; raises if a term falls outside it."""
        idx = {m: i for i, m in enumerate(basis)}
        out = [0] * len(basis)
        for m, c in self.terms.items():
            if m not in idx:
                raise ValueError(f"{self.ring.format_monomial(m)} is not in the given basis")
            out[idx[m]] = c
        return out


# -- tensor products and ring maps ------------------------------------------


@dataclass(frozen=True)
class TensorProduct:
    """``left (x) right`` with the bookkeeping to split and join monomials."""

    ring: RingPresentation
    left: RingPresentation
    right: RingPresentation

    @property
    def split_at(self) -> int:
        return self.left.ngens

    def split(self, m: Monomial) -> tuple[Monomial, Monomial]:
        return m[: self.split_at], m[self.split_at :]

    def join(self, a: Monomial, b: Monomial) -> Monomial:
        return tuple(a) + tuple(b)

    def include_left(self, x: GradedElement) -> GradedElement:
        pad = (0,) * self.right.ngens
        return self.ring.element({m + pad: c for m, c in x.terms.items()})

    def include_right(self, y: GradedElement) -> GradedElement:
        pad = (0,) * self.left.ngens
        return self.ring.element({pad + m: c for m, c in y.terms.items()})

    def pure(self, x: GradedElement, y: GradedElement) -> GradedElement:
        """``x (x) y``; no sign since left generators precede right ones."""
        return self.include_left(x) * self.include_right(y)


def tensor_product(a: RingPresentation, b: RingPresentation) -> TensorProduct:
    if a.coefficients != b.coefficients:
        raise PresentationError(
            f"cannot tensor rings over {a.coefficients} and {b.coefficients}"
        )
    taken = set(a.names)
    gens = list(a.generators)
    for g in b.generators:
        name = g.name
        while name in taken:
            name += "_2"
        taken.add(name)
        gens.append(Generator(name, g.degree))
    pad_b = (0,) * b.ngens
    pad_a = (0,) * a.ngens
    rels = [{m + pad_b: c for m, c in r.items()} for r in a.relations]
    rels += [{pad_a + m: c for m, c in r.items()} for r in b.relations]
    ring = RingPresentation(gens, rels, a.coefficients, max(a.degree_bound, b.degree_bound))
    return TensorProduct(ring, a, b)


def tensor(a: RingPresentation, b: RingPresentation) -> RingPresentation:
    """Graded tensor product; clashing generator names of ``b`` get a ``_2`` suffix."""
    return tensor_product(a, b).ring


class RingMap:
    """A ring map given on generators; applied by substitution."""

    def __init__(
        self,
        source: RingPresentation,
        target: RingPresentation,
        images: Mapping[str, Union[GradedElement, str, int]],
    ):
        self.source = source
        self.target = target
        missing = set(source.names) - set(images)
        if missing:
            raise PresentationError(f"ring map lacks images for {sorted(missing)}")
        self.images = tuple(target(images[n]) for n in source.names)
        self._powers: dict[tuple[int, int], GradedElement] = {}

    def _power(self, i: int, e: int) -> GradedElement:
        key = (i, e)
        if key not in self._powers:
            self._powers[key] = self.images[i] ** e
        return self._powers[key]

    def __call__(self, x: Union[GradedElement, str]) -> GradedElement:
        return self._apply_raw(self.source(x).terms)

    def relation_failures(self) -> list[str]:
        """Relations of the source not sent to zero (empty list: well defined)."""
        return [self.source._format(r) for r in self.source.relations if self._apply_raw(r)]

    def _apply_raw(self, terms: Mapping[Monomial, int]) -> GradedElement:
        out = self.target.zero()
        for m, c in terms.items():
            term = self.target.scalar(c)
            for i, e in enumerate(m):
                if e:
                    term = term * self._power(i, e)
            out = out + term
        return out

    def degree_shift(self) -> int | None:
        """Common degree shift of the generator images (None if all images vanish)."""
        shifts = set()
        for g, img in zip(self.source.generators, self.images):
            if img:
                if not img.is_homogeneous():
                    raise ValueError(f"image of {g.name} is not homogeneous")
                shifts.add(img.degree - g.degree)
        if len(shifts) > 1:
            raise ValueError(f"generator images have inconsistent degree shifts {shifts}")
        return shifts.pop() if shifts else None


# -- functional interface ---------------------------------------------------------


def make_ring(
    gens: Iterable[Union[Generator, tuple[str, int]]],
    rels: Iterable[Union[str, Mapping[Monomial, int]]],
    coeffs: Union[Coefficients, str] = ZZ,
    degree_bound: int | None = None,
) -> RingPresentation:
    return RingPresentation(gens, rels, coeffs, degree_bound)


def arith(a: GradedElement, b, op: str) -> GradedElement:
    """``op`` is ``"add"``, ``"mul"`` or ``"scale"`` (``b`` an integer)."""
    if op == "scale":
        if not isinstance(b, int):
            raise TypeError("scale needs an integer factor")
        return a * b
    if not isinstance(b, GradedElement):
        raise TypeError(f"{op} needs two ring elements")
    _same_ring(a.ring, b.ring)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def basis_in_degree(ring: RingPresentation, n: int) -> list[Monomial]:
    return ring.basis_in_degree(n)


def equal(a: GradedElement, b: GradedElement) -> bool:
    _same_ring(a.ring, b.ring)
    return a.terms == b.terms


def ground_ring(coeffs: Union[Coefficients, str] = ZZ) -> RingPresentation:
    """The coefficient ring as a presentation with no generators."""
    return RingPresentation([], [], coeffs)


def reduce_coefficients(ring: RingPresentation, coeffs: Coefficients) -> RingPresentation:
    """Base change Z -> F_p of a presentation (relations reduced mod p)."""
    if ring.coefficients == coeffs:
        return ring
    if ring.coefficients.p != 0:
        raise PresentationError(f"cannot change coefficients {ring.coefficients} -> {coeffs}")
    rels = []
    for r in ring.relations:
        red = {m: coeffs.reduce(c) for m, c in r.items() if coeffs.reduce(c)}
        if red:
            rels.append(red)
    if coeffs.p == 2:
        # the exterior rule for odd generators is implicit over Z; make it explicit
        for i, g in enumerate(ring.generators):
            sq = tuple(2 * int(j == i) for j in range(ring.ngens))
            if g.degree % 2 and sq not in (max(r, key=_order_key) for r in rels):
                rels.append({sq: 1})
    return RingPresentation(ring.generators, rels, coeffs, ring.degree_bound)
