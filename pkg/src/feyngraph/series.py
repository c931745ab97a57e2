"""Truncated multivariate power series with exact rational coefficients.

Each variable carries a nonnegative integer weight and a series keeps only
monomials of weighted degree at most its ``order``.  By default ``x_k``
weighs ``k`` (one unit per half-edge), ``hbar`` and ``t`` weigh 1 and
everything else (``N``, ``y_*``, ...) weighs 0.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction

from .errors import DomainError

__all__ = ["MultiSeries", "default_weight", "ring"]

Exponent = tuple[int, ...]


def default_weight(name: str) -> int:
    m = re.fullmatch(r"x_?(\d+)", name)
    if m:
        return int(m.group(1))
    return 1 if name in ("hbar", "t") else 0


class MultiSeries:
    __slots__ = ("variables", "weights", "order", "terms")

    def __init__(
        self,
        variables: Sequence[str],
        order: int,
        terms: Mapping[Exponent, object] = (),
        weights: Sequence[int] | None = None,
    ):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise DomainError("repeated series variable")
        self.weights = tuple(weights) if weights is not None else tuple(map(default_weight, self.variables))
        if len(self.weights) != len(self.variables) or any(w < 0 for w in self.weights):
            raise DomainError("weights must be nonnegative, one per variable")
        if order < 0:
            raise DomainError("truncation order must be nonnegative")
        self.order = order
        clean: dict[Exponent, Fraction] = {}
        for e, c in dict(terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != len(self.variables) or any(x < 0 for x in e):
                raise DomainError(f"bad exponent vector {e}")
            c = Fraction(c)
            if c and self.degree(e) <= order:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    # -- construction ---------------------------------------------------

    def _like(self, terms: Mapping[Exponent, object], order: int | None = None) -> MultiSeries:
        return MultiSeries(self.variables, self.order if order is None else order, terms, self.weights)

    def constant(self, c) -> MultiSeries:
        return self._like({(0,) * len(self.variables): c})

    def zero(self) -> MultiSeries:
        return self._like({})

    def var(self, name: str) -> MultiSeries:
        e = [0] * len(self.variables)
        e[self.variables.index(name)] = 1
        return self._like({tuple(e): 1})

    def monomial(self, coeff=1, **powers: int) -> MultiSeries:
        return self._like({self.exponent(**powers): coeff})

    def exponent(self, **powers: int) -> Exponent:
        unknown = set(powers) - set(self.variables)
        if unknown:
            raise DomainError(f"unknown variables {sorted(unknown)}")
        return tuple(powers.get(v, 0) for v in self.variables)

    def degree(self, e: Exponent) -> int:
        return sum(a * w for a, w in zip(e, self.weights))

    # -- access ---------------------------------------------------------

    def coeff(self, **powers: int) -> Fraction:
        return self.terms.get(self.exponent(**powers), Fraction(0))

    def __getitem__(self, e: Exponent) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiSeries):
            return (self.variables, self.weights, self.order, self.terms) == (
                other.variables, other.weights, other.order, other.terms)
        if isinstance(other, (int, Fraction)):
            return self == self.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, self.order, frozenset(self.terms.items())))

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: MultiSeries):
        if (self.variables, self.weights) != (other.variables, other.weights):
            raise DomainError(f"series over {self.variables} and {other.variables} do not mix")

    def _coerce(self, other) -> MultiSeries:
        if isinstance(other, MultiSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return self._like(out, min(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._like({e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self.terms.items():
            da = self.degree(ea)
            if da > order:
                continue
            for eb, cb in other.terms.items():
                if da + self.degree(eb) > order:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return self._like(out, order)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiSeries:
        if n < 0:
            raise DomainError("negative powers are not supported")
        out = self.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def truncate(self, order: int) -> MultiSeries:
        return self._like(self.terms, min(order, self.order))

    def _nilpotent_check(self, what: str):
        for e in self.terms:
            if any(e) and self.degree(e) == 0:
                raise DomainError(f"{what} needs every non-constant term to have positive weight")

    def exp(self) -> MultiSeries:
        """``sum a^k / k!``; the constant term must vanish."""
        if self.constant_term:
            raise DomainError("exp needs a zero constant term")
        self._nilpotent_check("exp")
        out, term = self.constant(1), self.constant(1)
        for k in range(1, self.order + 1):
            term = term * self * Fraction(1, k)
            if not term.terms:
                break
            out = out + term
        return out

    def log(self) -> MultiSeries:
        """``sum (-1)^{k+1} (a-1)^k / k``; the constant term must be 1."""
        if self.constant_term != 1:
            raise DomainError("log needs constant term 1")
        u = self - 1
        u._nilpotent_check("log")
        out, power = self.zero(), self.constant(1)
        for k in range(1, self.order + 1):
            power = power * u
            if not power.terms:
                break
            out = out + power * Fraction((-1) ** (k + 1), k)
        return out

    def substitute(self, values: Mapping[str, MultiSeries | int | Fraction], target: MultiSeries | None = None
                   ) -> MultiSeries:
        """Replace variables by series (all over ``target``'s ring) or numbers.

        Variables not mentioned are carried over unchanged, which requires
        them to exist in the target ring.
        """
        if target is None:
            target = self.constant(1)
        result = target.zero()
        subs = []
        for v in self.variables:
            if v in values:
                val = values[v]
                subs.append(val if isinstance(val, MultiSeries) else target.constant(val))
            else:
                subs.append(target.var(v))
        powers: dict[tuple[int, int], MultiSeries] = {}

        def power(i, k):
            if (i, k) not in powers:
                powers[(i, k)] = target.constant(1) if k == 0 else power(i, k - 1) * subs[i]
            return powers[(i, k)]

        for e, c in self.terms.items():
            term = target.constant(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    # -- output ---------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (self.degree(t[0]), t[0]))

    def dump(self) -> str:
        """One ``<exponents> <coefficient>`` line per term, after a header."""
        lines = ["# " + " ".join(f"{v}:{w}" for v, w in zip(self.variables, self.weights)) + f" order={self.order}"]
        for e, c in self.sorted_terms():
            lines.append(" ".join(map(str, e)) + f" {c}")
        return "\n".join(lines)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = " ".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            parts.append(f"{c}" + (f" * {mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MultiSeries({self.variables}, order={self.order}, {self})"

    @classmethod
    def parse_dump(cls, text: str) -> MultiSeries:
        lines = [l for l in text.strip().splitlines() if l.strip()]
        header = lines[0].lstrip("#").split()
        order = int(header[-1].split("=")[1])
        names, weights = zip(*(h.split(":") for h in header[:-1])) if len(header) > 1 else ((), ())
        terms = {}
        for l in lines[1:]:
            *exps, c = l.split()
            terms[tuple(map(int, exps))] = Fraction(c)
        return cls(names, order, terms, [int(w) for w in weights])


def ring(variables: Iterable[str], order: int, weights: Sequence[int] | None = None) -> MultiSeries:
    """The zero series, useful as a template for building others."""
    return MultiSeries(tuple(variables), order, {}, weights)
