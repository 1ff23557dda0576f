"""Finite field GF(p^k) with table arithmetic"""
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import factorint, primefactors

from app.domain.exceptions import PreconditionError

MAX_ORDER = 2 ** 16

# Fixed defining polynomials, coefficients from the constant term up
KNOWN_MODULI: Dict[Tuple[int, int], Tuple[int, ...]] = {
    (2, 2): (1, 1, 1),                      # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),                   # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),                # x^4 + x + 1
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),    # x^8 + x^4 + x^3 + x^2 + 1 (0x11d)
    (3, 2): (2, 2, 1),                      # x^2 + 2x + 2
}

# Odd characteristic addition tables are built up to this order
_ADD_TABLE_LIMIT = 729


def _poly_mod(a: List[int], modulus: Sequence[int], p: int) -> List[int]:
    """Remainder of a by a monic modulus over F_p"""
    a = list(a)
    k = len(modulus) - 1
    for i in range(len(a) - 1, k - 1, -1):
        c = a[i] % p
        if c:
            for j in range(k + 1):
                a[i - k + j] = (a[i - k + j] - c * modulus[j]) % p
    return [x % p for x in a[:k]] + [0] * max(0, k - len(a))


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    result = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                result[i + j] = (result[i + j] + x * y) % p
    return result


def _divides(divisor: Sequence[int], a: Sequence[int], p: int) -> bool:
    return not any(_poly_mod(list(a), divisor, p))


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= k/2"""
    k = len(modulus) - 1
    if k < 1 or modulus[-1] % p != 1:
        return False
    for degree in range(1, k // 2 + 1):
        for lower in product(range(p), repeat=degree):
            if _divides(tuple(lower) + (1,), modulus, p):
                return False
    return True


def find_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """Fixed modulus for (p, k): the table entry, else the first irreducible in lex order"""
    if (p, k) in KNOWN_MODULI:
        return KNOWN_MODULI[(p, k)]
    for lower in product(range(p), repeat=k):
        candidate = tuple(lower) + (1,)
        if candidate[0] and is_irreducible(candidate, p):
            return candidate
    raise PreconditionError(f"no irreducible polynomial of degree {k} over F_{p}")


def _decode(x: int, p: int, k: int) -> List[int]:
    digits = []
    for _ in range(k):
        digits.append(x % p)
        x //= p
    return digits


def _encode(digits: Sequence[int], p: int) -> int:
    value = 0
    for d in reversed(digits):
        value = value * p + d
    return value


@dataclass(frozen=True)
class FieldSpec:
    """GF(q), q = p^k, with elements encoded as integers 0..q-1

    An element's base-p digits are its coordinates in the polynomial basis, so
    the prime subfield is 0..p-1 and an integer n maps to n mod p.
    Multiplication goes through exp/log tables of a primitive element.
    """
    p: int
    k: int
    modulus: Tuple[int, ...]
    exp: Tuple[int, ...] = field(repr=False)
    log: Tuple[int, ...] = field(repr=False)
    add_table: Optional[Tuple[Tuple[int, ...], ...]] = field(default=None, repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def is_prime(self) -> bool:
        return self.k == 1

    @classmethod
    def make(cls, q: int) -> "FieldSpec":
        """Build GF(q); raises PreconditionError unless q is a prime power <= 2^16"""
        if not isinstance(q, int) or q < 2:
            raise PreconditionError(f"q={q} is not a prime power")
        if q > MAX_ORDER:
            raise PreconditionError(f"q={q} exceeds the supported maximum {MAX_ORDER}")
        factors = factorint(q)
        if len(factors) != 1:
            raise PreconditionError(f"q={q} is not a prime power")
        (p, k), = factors.items()
        modulus = (0, 1) if k == 1 else find_irreducible(p, k)
        if k > 1 and not is_irreducible(modulus, p):
            raise PreconditionError(f"modulus {modulus} is reducible over F_{p}")

        def multiply(a: int, b: int) -> int:
            if k == 1:
                return a * b % p
            return _encode(_poly_mod(_poly_mul(_decode(a, p, k), _decode(b, p, k), p), modulus, p), p)

        order = q - 1
        exp_table: List[int] = []
        for candidate in range(1, q):
            if all(cls._power(candidate, order // r, multiply) != 1 for r in primefactors(order)):
                x = 1
                for _ in range(order):
                    exp_table.append(x)
                    x = multiply(x, candidate)
                break
        log_table = [-1] * q
        for i, x in enumerate(exp_table):
            log_table[x] = i

        add_table = None
        if k > 1 and p != 2 and q <= _ADD_TABLE_LIMIT:
            digits = [_decode(x, p, k) for x in range(q)]
            add_table = tuple(
                tuple(_encode([(u + v) % p for u, v in zip(digits[a], digits[b])], p) for b in range(q))
                for a in range(q)
            )
        return cls(p, k, modulus, tuple(exp_table), tuple(log_table), add_table)

    @staticmethod
    def _power(base: int, exponent: int, multiply) -> int:
        result = 1
        while exponent:
            if exponent & 1:
                result = multiply(result, base)
            base = multiply(base, base)
            exponent >>= 1
        return result

    # Arithmetic

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.add_table is not None:
            return self.add_table[a][b]
        p, k = self.p, self.k
        return _encode([(u + v) % p for u, v in zip(_decode(a, p, k), _decode(b, p, k))], p)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return _encode([-u % self.p for u in _decode(a, self.p, self.k)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp[-self.log[a] % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            return 0
        return self.exp[self.log[a] * n % (self.q - 1)]

    def scalar(self, n: int, a: int) -> int:
        """n * a for an integer n, computed in the prime subfield"""
        return self.mul(self.from_int(n), a)

    def elements(self) -> range:
        return range(self.q)

    def describe(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        terms = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(("" if c == 1 and mono else str(c)) + mono)
        return f"GF({self.q}) = F_{self.p}[x]/({' + '.join(terms)})"
