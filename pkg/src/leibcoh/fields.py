"""Exact scalar arithmetic over Q and prime fields F_p.

Rational scalars are gmpy2.mpq when available (fractions.Fraction otherwise);
both keep numerator/denominator in lowest terms with positive denominator.
Prime-field scalars are plain ints stored as canonical residues in [0, p).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # exact fallback, just slower
    _mpq = Fraction


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond any usable modulus."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Rationals:
    """The field Q. Scalars are mpq/Fraction objects."""

    kind = "Q"
    char = 0
    p = None

    def zero(self):
        return _mpq(0)

    def one(self):
        return _mpq(1)

    def from_int(self, k):
        return _mpq(k)

    def canon(self, x):
        return x if isinstance(x, type(_mpq(0))) else _mpq(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / _mpq(a)

    def div(self, a, b):
        return _mpq(a) / b

    def is_zero(self, a):
        return not a

    def parse(self, s):
        try:
            if isinstance(s, int):
                return _mpq(s)
            return _mpq(Fraction(str(s).strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational scalar {s!r}") from exc

    def fmt(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The field F_p for a prime p. Scalars are ints in [0, p)."""

    kind = "Fp"

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise ParseError(f"modulus {p!r} is not prime")
        self.p = p
        self.char = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, k):
        return k % self.p

    def canon(self, x):
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def parse(self, s):
        try:
            if isinstance(s, int):
                return s % self.p
            s = str(s).strip()
            if "/" in s:
                num, den = s.split("/")
                return self.div(int(num) % self.p, int(den) % self.p)
            return int(s) % self.p
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar {s!r} over F_{self.p}") from exc

    def fmt(self, a):
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"


QQ = Rationals()


def parse_field(spec) -> Rationals | PrimeField:
    """Accept "Q", "F<p>", or the JSON form {"kind": "Q"|"Fp", "p": p}."""
    if isinstance(spec, (Rationals, PrimeField)):
        return spec
    if isinstance(spec, dict):
        kind = spec.get("kind")
        if kind == "Q":
            return QQ
        if kind == "Fp":
            return PrimeField(spec.get("p"))
        raise ParseError(f"unknown field kind {kind!r}")
    s = str(spec).strip()
    if s in ("Q", "QQ", "rationals"):
        return QQ
    if s.startswith("F"):
        try:
            return PrimeField(int(s[1:]))
        except ValueError as exc:
            raise ParseError(f"bad field spec {spec!r}") from exc
    raise ParseError(f"bad field spec {spec!r}")


def field_to_json(field) -> dict:
    if field.kind == "Q":
        return {"kind": "Q"}
    return {"kind": "Fp", "p": field.p}
