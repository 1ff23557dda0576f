"""Exact sparse integer polynomials"""
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from app.domain.exceptions import PolynomialError

Monomial = Tuple[int, ...]


def _order_key(monomial: Monomial) -> Tuple[int, Tuple[int, ...]]:
    # graded lex: higher degree first, then lexicographically larger exponent vector
    return (-sum(monomial), tuple(-x for x in monomial))


@dataclass(frozen=True)
class SparsePoly:
    """Polynomial over Z in variables a1..a_nvars

    Terms are stored as a canonical tuple of (exponent vector, coefficient)
    pairs in graded-lex order with no zero coefficients. Variables are
    addressed by their 1-based edge id.
    """
    nvars: int
    terms: Tuple[Tuple[Monomial, int], ...] = ()

    # Construction

    @classmethod
    def from_dict(cls, data: Mapping[Monomial, int], nvars: int) -> "SparsePoly":
        items = []
        for monomial, coeff in data.items():
            if coeff == 0:
                continue
            if len(monomial) != nvars:
                raise PolynomialError(f"monomial {monomial} does not have {nvars} exponents")
            items.append((tuple(monomial), coeff))
        items.sort(key=lambda item: _order_key(item[0]))
        return cls(nvars, tuple(items))

    @classmethod
    def zero(cls, nvars: int) -> "SparsePoly":
        return cls(nvars, ())

    @classmethod
    def constant(cls, value: int, nvars: int) -> "SparsePoly":
        return cls.from_dict({(0,) * nvars: value}, nvars)

    @classmethod
    def variable(cls, var: int, nvars: int) -> "SparsePoly":
        return cls.monomial([var], nvars)

    @classmethod
    def monomial(cls, variables: Iterable[int], nvars: int, coeff: int = 1) -> "SparsePoly":
        exps = [0] * nvars
        for var in variables:
            if not 1 <= var <= nvars:
                raise PolynomialError(f"variable a{var} outside a1..a{nvars}")
            exps[var - 1] += 1
        return cls.from_dict({tuple(exps): coeff}, nvars)

    @cached_property
    def _dict(self) -> Dict[Monomial, int]:
        return dict(self.terms)

    # Inspection

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self.terms)

    def coefficient(self, monomial: Monomial) -> int:
        return self._dict.get(tuple(monomial), 0)

    def constant_term(self) -> int:
        return self._dict.get((0,) * self.nvars, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial"""
        return max((sum(m) for m, _ in self.terms), default=-1)

    def variables(self) -> Tuple[int, ...]:
        used = set()
        for monomial, _ in self.terms:
            used.update(i + 1 for i, x in enumerate(monomial) if x)
        return tuple(sorted(used))

    def is_multilinear(self) -> bool:
        return all(x <= 1 for m, _ in self.terms for x in m)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m, _ in self.terms}) <= 1

    def support(self) -> frozenset:
        return frozenset(m for m, _ in self.terms)

    # Arithmetic

    def _check_universe(self, other: "SparsePoly") -> None:
        if self.nvars != other.nvars:
            raise PolynomialError(
                f"variable universes differ: a1..a{self.nvars} vs a1..a{other.nvars}"
            )

    def _check_var(self, var: int) -> None:
        if not 1 <= var <= self.nvars:
            raise PolynomialError(f"variable a{var} outside a1..a{self.nvars}")

    def _coerce(self, other) -> "SparsePoly":
        if isinstance(other, int):
            return SparsePoly.constant(other, self.nvars)
        if isinstance(other, SparsePoly):
            self._check_universe(other)
            return other
        return NotImplemented

    def __add__(self, other) -> "SparsePoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = dict(self.terms)
        for monomial, coeff in other.terms:
            result[monomial] = result.get(monomial, 0) + coeff
        return SparsePoly.from_dict(result, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.nvars, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other) -> "SparsePoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "SparsePoly":
        return (-self) + other

    def __mul__(self, other) -> "SparsePoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result: Dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                monomial = tuple(x + y for x, y in zip(m1, m2))
                result[monomial] = result.get(monomial, 0) + c1 * c2
        return SparsePoly.from_dict(result, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "SparsePoly":
        if exponent < 0:
            raise PolynomialError("negative powers are not polynomials")
        result = SparsePoly.constant(1, self.nvars)
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, factor: int) -> "SparsePoly":
        return SparsePoly.from_dict({m: c * factor for m, c in self.terms}, self.nvars)

    # Substitution and splitting

    def substitute_zero(self, var: int) -> "SparsePoly":
        """f with a_var = 0"""
        self._check_var(var)
        index = var - 1
        return SparsePoly(self.nvars, tuple((m, c) for m, c in self.terms if m[index] == 0))

    def substitute_zeros(self, variables: Iterable[int]) -> "SparsePoly":
        indices = set()
        for var in variables:
            self._check_var(var)
            indices.add(var - 1)
        if not indices:
            return self
        kept = tuple((m, c) for m, c in self.terms if not any(m[i] for i in indices))
        return SparsePoly(self.nvars, kept)

    def linear_split(self, var: int) -> Tuple["SparsePoly", "SparsePoly"]:
        """(f^e, f_e) with f = f^e * a_e + f_e and neither part involving a_e"""
        self._check_var(var)
        index = var - 1
        upper: Dict[Monomial, int] = {}
        lower: Dict[Monomial, int] = {}
        for monomial, coeff in self.terms:
            power = monomial[index]
            if power > 1:
                raise PolynomialError(f"polynomial has degree {power} in a{var}")
            if power == 1:
                reduced = monomial[:index] + (0,) + monomial[index + 1:]
                upper[reduced] = coeff
            else:
                lower[monomial] = coeff
        return SparsePoly.from_dict(upper, self.nvars), SparsePoly.from_dict(lower, self.nvars)

    def cremona(self, variables: Optional[Sequence[int]] = None) -> "SparsePoly":
        """Replace every monomial by its complement inside the given variable set

        Equals (prod a_i) * f(1/a_1, ..., 1/a_n) for multilinear homogeneous f.
        """
        if variables is None:
            variables = range(1, self.nvars + 1)
        indices = sorted({v - 1 for v in variables})
        for index in indices:
            self._check_var(index + 1)
        if not self.is_multilinear():
            raise PolynomialError("Cremona transformation needs a multilinear polynomial")
        if not self.is_homogeneous():
            raise PolynomialError("Cremona transformation needs a homogeneous polynomial")
        inside = set(indices)
        result: Dict[Monomial, int] = {}
        for monomial, coeff in self.terms:
            if any(x and i not in inside for i, x in enumerate(monomial)):
                raise PolynomialError("polynomial uses variables outside the Cremona set")
            complement = tuple(
                (1 - x) if i in inside else 0 for i, x in enumerate(monomial)
            )
            result[complement] = coeff
        return SparsePoly.from_dict(result, self.nvars)

    # Reduction and evaluation

    def evaluate_mod(self, values: Mapping[int, int], p: int) -> int:
        """Value mod p at a_var = values[var]; missing variables count as 0"""
        total = 0
        for monomial, coeff in self.terms:
            term = coeff % p
            for i, x in enumerate(monomial):
                if x:
                    term = term * pow(values.get(i + 1, 0), x, p) % p
                    if term == 0:
                        break
            total = (total + term) % p
        return total

    def evaluate(self, values: Mapping[int, int]) -> int:
        """Exact integer value; missing variables count as 0"""
        total = 0
        for monomial, coeff in self.terms:
            term = coeff
            for i, x in enumerate(monomial):
                if x:
                    term *= values.get(i + 1, 0) ** x
            total += term
        return total

    # Serialization

    def to_text(self) -> str:
        """Canonical text, e.g. `+a1*a2 -2*a3 +1`; the zero polynomial prints as `0`"""
        if not self.terms:
            return "0"
        parts: List[str] = []
        for monomial, coeff in self.terms:
            factors = []
            for i, x in enumerate(monomial):
                if x == 1:
                    factors.append(f"a{i + 1}")
                elif x > 1:
                    factors.append(f"a{i + 1}^{x}")
            sign = "+" if coeff > 0 else "-"
            magnitude = abs(coeff)
            if not factors:
                parts.append(f"{sign}{magnitude}")
            elif magnitude == 1:
                parts.append(sign + "*".join(factors))
            else:
                parts.append(f"{sign}{magnitude}*" + "*".join(factors))
        return " ".join(parts)

    def to_json(self) -> List[list]:
        return [[list(m), c] for m, c in self.terms]

    @classmethod
    def from_json(cls, data: Sequence[Sequence], nvars: int) -> "SparsePoly":
        return cls.from_dict({tuple(m): int(c) for m, c in data}, nvars)

    def __str__(self) -> str:
        return self.to_text()


def resultant(f: SparsePoly, g: SparsePoly, var: int) -> SparsePoly:
    """f^e * g_e - f_e * g^e for f, g linear in a_var"""
    f_upper, f_lower = f.linear_split(var)
    g_upper, g_lower = g.linear_split(var)
    return f_upper * g_lower - f_lower * g_upper
