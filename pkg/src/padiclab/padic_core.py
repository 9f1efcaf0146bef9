"""Exact p-adic numbers at fixed digit precision.

A nonzero value is stored in normalized form ``p**v * (unit[0] + unit[1]*p +
... + unit[r-1]*p**(r-1))`` with ``unit[0] != 0``, so the valuation and the
norm are O(1) reads.  The value is known modulo ``p**(v+r)``; ``r`` is the
number of guaranteed digits.  Zero is canonical: infinite valuation and an
all-zero digit vector.

Arithmetic tracks precision honestly.  Multiplication and inversion keep the
minimum of the operand precisions; addition may lose digits when leading
digits cancel, and the result reports only the digits actually guaranteed.
A zero result of ``+`` means "indistinguishable from zero at the tracked
precision".

Valuations and norms of exact rationals are computed exactly: norms are
``Fraction`` powers of ``1/p``, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering

from .errors import (
    DomainError,
    ExpansionFormatError,
    ExpansionParseError,
    MixedPrimesError,
    NotPrimeError,
    ResourceLimitError,
    ZeroInversionError,
)

#: Alias for the exact rational type used throughout the package.
Rational = Fraction


class _Archimedean:
    """Marker for the archimedean place of the rationals."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ARCHIMEDEAN"


#: Pass this instead of a prime to select the usual absolute value.
ARCHIMEDEAN = _Archimedean()


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    """Deterministic trial-division primality test for p < 2**32."""
    if not isinstance(p, int):
        raise NotPrimeError(f"prime expected, got {p!r}")
    if p >= 1 << 32:
        raise ResourceLimitError(f"primality gate is limited to p < 2**32, got {p}")
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int) -> int:
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    return p


def _int_valuation(n: int, p: int) -> int:
    # n != 0
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@total_ordering
@dataclass(frozen=True)
class Valuation:
    """Additive valuation: a finite integer, or infinity exactly for zero.

    ``value=None`` encodes infinity.  Ordering puts infinity above every
    finite value, and addition absorbs it, so ``min`` and sums behave like
    the extended integers.
    """

    value: int | None

    @classmethod
    def finite(cls, n: int) -> "Valuation":
        return cls(int(n))

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __add__(self, other: "Valuation") -> "Valuation":
        if self.is_infinite or other.is_infinite:
            return INFINITY
        return Valuation(self.value + other.value)

    def __neg__(self) -> "Valuation":
        if self.is_infinite:
            raise DomainError("cannot negate the infinite valuation")
        return Valuation(-self.value)

    def __lt__(self, other: "Valuation") -> bool:
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.value < other.value

    def __int__(self) -> int:
        if self.is_infinite:
            raise DomainError("infinite valuation has no integer value")
        return self.value

    def __str__(self) -> str:
        return "infinity" if self.is_infinite else str(self.value)


#: The valuation of zero.
INFINITY = Valuation(None)


def nu(a, p: int | None = None) -> Valuation:
    """p-adic valuation of an integer, Fraction, or PadicNumber.

    For rationals the exponent of p in the decomposition ``a = p**n * b/c``
    with b, c coprime to p; infinity for zero.
    """
    if isinstance(a, PadicNumber):
        if p is not None and p != a.p:
            raise MixedPrimesError(f"value is {a.p}-adic, asked for p={p}")
        return a.v
    if p is None:
        raise DomainError("a prime is required to take the valuation of a rational")
    require_prime(p)
    a = Fraction(a)
    if a == 0:
        return INFINITY
    return Valuation(_int_valuation(a.numerator, p) - _int_valuation(a.denominator, p))


def norm(a, p) -> Fraction:
    """Exact absolute value of a rational at the place p.

    For a finite prime this is ``(1/p) ** nu(a, p)`` with ``norm(0) == 0``;
    for ``ARCHIMEDEAN`` it is the usual absolute value.
    """
    a = Fraction(a)
    if p is ARCHIMEDEAN:
        return abs(a)
    require_prime(p)
    if a == 0:
        return Fraction(0)
    n = int(nu(a, p))
    return Fraction(1, p) ** n


def _digits(value: int, p: int, r: int) -> tuple[int, ...]:
    # value reduced mod p**r, little-endian base-p digits, length exactly r
    out = []
    for _ in range(r):
        value, d = divmod(value, p)
        out.append(d)
    return tuple(out)


@dataclass(frozen=True)
class PadicNumber:
    """A p-adic number known to ``r = len(unit)`` digits past its valuation."""

    p: int
    v: Valuation
    unit: tuple[int, ...]

    def __post_init__(self):
        require_prime(self.p)
        if len(self.unit) < 1:
            raise DomainError("precision must be at least one digit")
        if any(not (0 <= d < self.p) for d in self.unit):
            raise DomainError(f"digits must lie in [0, {self.p})")
        if self.v.is_infinite:
            if any(self.unit):
                raise DomainError("zero must carry an all-zero digit vector")
        elif self.unit[0] == 0:
            raise DomainError("nonzero unit part must start with a nonzero digit")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p: int, r: int) -> "PadicNumber":
        return cls(p, INFINITY, (0,) * r)

    @classmethod
    def from_integer(cls, n: int, p: int, r: int) -> "PadicNumber":
        require_prime(p)
        if r < 1:
            raise DomainError("precision must be at least one digit")
        if n == 0:
            return cls.zero(p, r)
        v = _int_valuation(n, p)
        u = (n // p**v) % p**r
        return cls(p, Valuation(v), _digits(u, p, r))

    @classmethod
    def from_rational(cls, a, p: int, r: int) -> "PadicNumber":
        require_prime(p)
        if r < 1:
            raise DomainError("precision must be at least one digit")
        a = Fraction(a)
        if a == 0:
            return cls.zero(p, r)
        vn = _int_valuation(a.numerator, p)
        vd = _int_valuation(a.denominator, p)
        b = a.numerator // p**vn
        c = a.denominator // p**vd
        u = b * pow(c, -1, p**r) % p**r
        return cls(p, Valuation(vn - vd), _digits(u, p, r))

    # -- structure ---------------------------------------------------------

    @property
    def r(self) -> int:
        """Number of guaranteed digits."""
        return len(self.unit)

    @property
    def is_zero(self) -> bool:
        return self.v.is_infinite

    @property
    def unit_value(self) -> int:
        """The unit part as an integer in [0, p**r)."""
        return sum(d * self.p**i for i, d in enumerate(self.unit))

    @property
    def tracked_modulus(self) -> int:
        """The value is known modulo this power of p (nonzero numbers only)."""
        if self.is_zero:
            raise DomainError("zero is exact; it has no finite tracked modulus")
        return self.p ** (int(self.v) + self.r)

    def truncate(self, r: int) -> "PadicNumber":
        """Forget digits beyond the first ``r``."""
        if not 1 <= r <= self.r:
            raise DomainError(f"cannot truncate {self.r}-digit value to {r} digits")
        if self.is_zero:
            return PadicNumber.zero(self.p, r)
        return PadicNumber(self.p, self.v, self.unit[:r])

    def agrees_with(self, other: "PadicNumber") -> bool:
        """Whether the two precision-limited claims are mutually consistent.

        Nonzero values carry an exact valuation plus unit digits modulo
        p**r; a zero tracked to w digits is the weaker claim "valuation at
        least w" (all digits that were guaranteed cancelled).
        """
        if self.p != other.p:
            return False
        if self.is_zero and other.is_zero:
            return True
        if self.is_zero:
            return int(other.v) >= self.r
        if other.is_zero:
            return int(self.v) >= other.r
        if self.v != other.v:
            return False
        r = min(self.r, other.r)
        return self.unit[:r] == other.unit[:r]

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other: "PadicNumber") -> None:
        if not isinstance(other, PadicNumber):
            raise DomainError(f"expected a PadicNumber, got {other!r}")
        if self.p != other.p:
            raise MixedPrimesError(f"mixed primes {self.p} and {other.p}")

    def add(self, other: "PadicNumber") -> "PadicNumber":
        """Sum, reported at the number of digits actually guaranteed.

        Both operands are known modulo a power of p; the sum is known modulo
        the smaller one.  If leading digits cancel, the lost digits are not
        reported back.
        """
        self._check_compatible(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        p = self.p
        vx, vy = int(self.v), int(other.v)
        vmin = min(vx, vy)
        known = min(vx + self.r, vy + other.r)  # sum known mod p**known
        window = known - vmin
        total = (
            self.unit_value * p ** (vx - vmin) + other.unit_value * p ** (vy - vmin)
        ) % p**window
        if total == 0:
            return PadicNumber.zero(p, window)
        shift = _int_valuation(total, p)
        return PadicNumber(
            p, Valuation(vmin + shift), _digits(total // p**shift, p, window - shift)
        )

    def neg(self) -> "PadicNumber":
        if self.is_zero:
            return self
        u = (-self.unit_value) % self.p**self.r
        return PadicNumber(self.p, self.v, _digits(u, self.p, self.r))

    def mul(self, other: "PadicNumber") -> "PadicNumber":
        self._check_compatible(other)
        r = min(self.r, other.r)
        if self.is_zero or other.is_zero:
            return PadicNumber.zero(self.p, r)
        u = self.unit_value * other.unit_value % self.p**r
        return PadicNumber(self.p, self.v + other.v, _digits(u, self.p, r))

    def inv(self) -> "PadicNumber":
        if self.is_zero:
            raise ZeroInversionError("zero has no p-adic inverse")
        u = pow(self.unit_value, -1, self.p**self.r)
        return PadicNumber(self.p, -self.v, _digits(u, self.p, self.r))

    def sub(self, other: "PadicNumber") -> "PadicNumber":
        self._check_compatible(other)
        return self.add(other.neg())

    __add__ = add
    __mul__ = mul
    __neg__ = neg
    __sub__ = sub

    def __repr__(self):
        if self.is_zero:
            return f"PadicNumber(p={self.p}, 0, r={self.r})"
        return f"PadicNumber(p={self.p}, v={self.v}, unit={list(self.unit)})"


# -- digit-expansion notation ----------------------------------------------
#
# Grammar (documented in the README): the first digit of the plain expansion,
# a comma, then the remaining digits ascending by power with trailing zeros
# trimmed.  Digits are single decimal characters for p <= 10; for larger p
# each digit is a decimal number and digits are separated by apostrophes.
# Zero renders as "0,".


def to_expansion_string(x: PadicNumber) -> str:
    """Render an integer p-adic expansion as ``a0,a1a2...``."""
    if x.is_zero:
        return "0,"
    if int(x.v) < 0:
        raise ExpansionFormatError(
            "only non-negative valuations have a plain digit expansion"
        )
    plain = [0] * int(x.v) + list(x.unit)
    while len(plain) > 1 and plain[-1] == 0:
        plain.pop()
    head, tail = plain[0], plain[1:]
    if x.p <= 10:
        return f"{head}," + "".join(str(d) for d in tail)
    return f"{head}," + "'".join(str(d) for d in tail)


def parse_expansion_string(s: str, p: int, r: int) -> PadicNumber:
    """Inverse of :func:`to_expansion_string` at precision ``r``."""
    require_prime(p)
    if "," not in s:
        raise ExpansionParseError(f"missing comma in expansion string {s!r}")
    head, _, tail = s.partition(",")
    if p <= 10:
        parts = [head] + list(tail)
    else:
        parts = [head] + (tail.split("'") if tail else [])
    digits = []
    for part in parts:
        if not part.isdigit():
            raise ExpansionParseError(f"bad digit {part!r} in {s!r}")
        d = int(part)
        if d >= p:
            raise ExpansionParseError(f"digit {d} is not a base-{p} digit")
        digits.append(d)
    value = sum(d * p**i for i, d in enumerate(digits))
    return PadicNumber.from_integer(value, p, r)


# -- polynomials over the rationals and the Gauss norm ----------------------


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial with exact rational coefficients, index i = coeff of x**i.

    Trailing zeros are trimmed; the zero polynomial is the empty tuple.
    """

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if self.coefficients and self.coefficients[-1] == 0:
            raise DomainError("trailing zero coefficients must be trimmed")

    @classmethod
    def of(cls, *coeffs) -> "RationalPolynomial":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return RationalPolynomial.of(
            *(c + (b[i] if i < len(b) else 0) for i, c in enumerate(a))
        )

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        if self.is_zero or other.is_zero:
            return RationalPolynomial(())
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return RationalPolynomial.of(*out)

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial.of(
            *(i * c for i, c in enumerate(self.coefficients) if i >= 1)
        )

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in reversed(range(len(self.coefficients))):
            c = self.coefficients[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}x" if abs(c) != 1 else ("x" if c > 0 else "-x"))
            else:
                parts.append(f"{c}x^{i}" if abs(c) != 1 else (f"x^{i}" if c > 0 else f"-x^{i}"))
        s = " + ".join(parts).replace("+ -", "- ")
        return s


def gauss_norm(f: RationalPolynomial, p: int) -> Fraction:
    """max over coefficients of |.|_p; multiplicative by Gauss's lemma."""
    require_prime(p)
    if f.is_zero:
        return Fraction(0)
    return max(norm(c, p) for c in f.coefficients)


@dataclass(frozen=True)
class AxiomResult:
    axiom: str
    passed: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class SeminormReport:
    results: tuple[AxiomResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __str__(self) -> str:
        lines = []
        for r in self.results:
            status = "pass" if r.passed else f"FAIL  witness={r.witness}"
            lines.append(f"{r.axiom}: {status}")
        return "\n".join(lines)


def check_seminorm_axioms(norm_fn, samples, *, zero, one) -> SeminormReport:
    """Test |0|=0, |1|=1, multiplicativity and the triangle bound on samples.

    ``samples`` must be a finite sequence of ring elements supporting ``+``
    and ``*``; all ordered pairs are tested.  On failure each axiom entry
    carries the first witness found.
    """
    results = []

    results.append(
        AxiomResult("zero_norm", norm_fn(zero) == 0, None if norm_fn(zero) == 0 else (zero,))
    )
    results.append(
        AxiomResult("unit_norm", norm_fn(one) == 1, None if norm_fn(one) == 1 else (one,))
    )

    mult_witness = None
    for f in samples:
        for g in samples:
            if norm_fn(f * g) != norm_fn(f) * norm_fn(g):
                mult_witness = (f, g)
                break
        if mult_witness:
            break
    results.append(AxiomResult("multiplicative", mult_witness is None, mult_witness))

    tri_witness = None
    for f in samples:
        for g in samples:
            if norm_fn(f + g) > norm_fn(f) + norm_fn(g):
                tri_witness = (f, g)
                break
        if tri_witness:
            break
    results.append(AxiomResult("triangle", tri_witness is None, tri_witness))

    return SeminormReport(tuple(results))
