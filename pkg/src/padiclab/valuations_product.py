"""Product formula over the places of Q and of F_p(x), verified exactly.

For a nonzero rational the local norms at the finitely many primes dividing
numerator or denominator, together with the usual absolute value, multiply
to exactly 1.  The function-field analogue replaces primes by monic
irreducible polynomials over F_p plus the degree place, with
``|f|_P = p**(-deg(P) * v_P(f))`` and ``|f|_inf = p**(deg num - deg den)``
— the unique normalization (base p = residue-field size) that makes the
product telescope to 1.

Everything is computed as exact ``Fraction`` values in a single pass; no
logarithms.  Integer factorization is exact and self-verifying (each factor
passes a deterministic primality test and the product reconstructs the
input); polynomial factorization is trial division against monic
irreducibles enumerated by an ascending-degree sieve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, NotPrimeError, ResourceLimitError
from .padic_core import Valuation, require_prime

#: Integers beyond this are rejected rather than silently taking minutes.
FACTOR_LIMIT = 10**18
#: Polynomials beyond this degree are rejected by the factoring routines.
POLY_DEGREE_LIMIT = 16
# enumerate_irreducibles sieves p**d monic candidates of degree d
_IRREDUCIBLE_ENUM_LIMIT = 10**6


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * limit
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytes(len(flags[i * i :: i]))
    return [i for i in range(limit) if flags[i]]


_SMALL_PRIMES = _sieve(10**4)

# Deterministic Miller-Rabin: this base set is exact below 3.3e24, far
# beyond FACTOR_LIMIT.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime_big(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def _brent_rho(n: int) -> int:
    """A nontrivial factor of an odd composite n (Brent's cycle method)."""
    for c in range(1, 1000):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r <<= 1
        if g == n:
            # batched gcd overshot; replay one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    raise ResourceLimitError(f"factorization of {n} did not terminate")


@dataclass(frozen=True)
class PrimeFactorization:
    """sign * product of prime powers; factors sorted by prime."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise DomainError("sign must be +1 or -1")
        for p, e in self.factors:
            if e <= 0:
                raise DomainError(f"exponent of {p} must be positive")
            if not _is_prime_big(p):
                raise DomainError(f"factor {p} is not prime")

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def value(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n


def factor(n: int) -> PrimeFactorization:
    """Exact factorization of a nonzero integer with |n| <= 10**18.

    Small primes come off by trial division; any remaining cofactor is
    split recursively by Brent's rho method with deterministic
    Miller-Rabin certifying the leaves.
    """
    if n == 0:
        raise DomainError("zero has no prime factorization")
    if abs(n) > FACTOR_LIMIT:
        raise ResourceLimitError(f"|n| exceeds the factoring limit {FACTOR_LIMIT}")
    sign = -1 if n < 0 else 1
    m = abs(n)
    counts: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        while m % p == 0:
            m //= p
            counts[p] = counts.get(p, 0) + 1
    if m > 1:
        stack = [m]
        while stack:
            v = stack.pop()
            if _is_prime_big(v):
                counts[v] = counts.get(v, 0) + 1
                continue
            d = _brent_rho(v)
            stack.append(d)
            stack.append(v // d)
    return PrimeFactorization(sign, tuple(sorted(counts.items())))


# -- places of Q -------------------------------------------------------------


@dataclass(frozen=True)
class Place:
    """A place of Q or of F_p(x).

    ``kind`` is one of ``finite`` (a prime), ``archimedean``,
    ``finite_poly`` (a monic irreducible over F_p), ``degree_infinity``.
    """

    kind: str
    prime: int | None = None
    poly: "FqPolynomial | None" = None

    def __post_init__(self):
        if self.kind not in ("finite", "archimedean", "finite_poly", "degree_infinity"):
            raise DomainError(f"unknown place kind {self.kind!r}")
        if self.kind == "finite":
            # factor() can emit primes far past the desk-scale trial-division
            # gate; the 12-base Miller-Rabin here is exact below 3.3e24
            if not isinstance(self.prime, int) or not _is_prime_big(self.prime):
                raise NotPrimeError(f"{self.prime} is not prime")
        if self.kind == "finite_poly":
            if not (self.poly.is_monic and _is_irreducible(self.poly)):
                raise DomainError(f"{self.poly} is not monic irreducible")

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls("finite", prime=p)

    @classmethod
    def archimedean(cls) -> "Place":
        return cls("archimedean")

    @classmethod
    def finite_poly(cls, g: "FqPolynomial") -> "Place":
        return cls("finite_poly", poly=g)

    @classmethod
    def degree_infinity(cls) -> "Place":
        return cls("degree_infinity")

    def __str__(self) -> str:
        if self.kind == "finite":
            return str(self.prime)
        if self.kind == "finite_poly":
            return str(self.poly)
        return "infinity"


def local_norms(a) -> list[tuple[Place, Fraction]]:
    """Every place of Q where |a| differs from 1, plus the archimedean one.

    Norms are read off the factorizations of numerator and denominator, a
    path independent of ``padic_core.norm`` (the two are cross-checked in
    the tests).
    """
    a = Fraction(a)
    if a == 0:
        raise DomainError("zero is outside the product formula")
    exps: dict[int, int] = {}
    for p, e in factor(a.numerator).factors:
        exps[p] = exps.get(p, 0) + e
    for p, e in factor(a.denominator).factors:
        exps[p] = exps.get(p, 0) - e
    out = [
        (Place.finite(p), Fraction(1, p) ** e) for p, e in sorted(exps.items()) if e != 0
    ]
    out.append((Place.archimedean(), abs(a)))
    return out


def product_formula_check(a) -> Fraction:
    """The exact product of |a| over all places; equals 1 for nonzero a."""
    prod = Fraction(1)
    for _, v in local_norms(a):
        prod *= v
    return prod


# -- polynomials over F_p and places of F_p(x) -------------------------------


@dataclass(frozen=True)
class FqPolynomial:
    """Polynomial over F_p; coefficients[i] is the coefficient of x**i."""

    p: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        require_prime(self.p)
        if any(not (0 <= c < self.p) for c in self.coefficients):
            raise DomainError(f"coefficients must be residues in [0, {self.p})")
        if self.coefficients and self.coefficients[-1] == 0:
            raise DomainError("leading coefficient must be nonzero")

    @classmethod
    def of(cls, p: int, *coeffs: int) -> "FqPolynomial":
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(p, tuple(cs))

    @classmethod
    def x(cls, p: int) -> "FqPolynomial":
        return cls(p, (0, 1))

    @classmethod
    def one(cls, p: int) -> "FqPolynomial":
        return cls(p, (1,))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coefficients[-1]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.leading == 1

    def _same_field(self, other: "FqPolynomial") -> None:
        if self.p != other.p:
            raise DomainError(f"mixed fields F_{self.p} and F_{other.p}")

    def __add__(self, other: "FqPolynomial") -> "FqPolynomial":
        self._same_field(other)
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return FqPolynomial.of(
            self.p, *(c + (b[i] if i < len(b) else 0) for i, c in enumerate(a))
        )

    def __neg__(self) -> "FqPolynomial":
        return FqPolynomial(self.p, tuple((-c) % self.p for c in self.coefficients))

    def __sub__(self, other: "FqPolynomial") -> "FqPolynomial":
        return self + (-other)

    def __mul__(self, other: "FqPolynomial") -> "FqPolynomial":
        self._same_field(other)
        if self.is_zero or other.is_zero:
            return FqPolynomial(self.p, ())
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return FqPolynomial.of(self.p, *out)

    def __divmod__(self, other: "FqPolynomial") -> tuple["FqPolynomial", "FqPolynomial"]:
        self._same_field(other)
        if other.is_zero:
            raise DomainError("polynomial division by zero")
        p = self.p
        rem = list(self.coefficients)
        q = [0] * max(0, len(rem) - other.degree)
        inv_lead = pow(other.leading, -1, p)
        for i in range(len(rem) - 1, other.degree - 1, -1):
            c = rem[i] * inv_lead % p
            if c:
                q[i - other.degree] = c
                for j, b in enumerate(other.coefficients):
                    rem[i - other.degree + j] = (rem[i - other.degree + j] - c * b) % p
        return FqPolynomial.of(p, *q), FqPolynomial.of(p, *rem)

    def __mod__(self, other: "FqPolynomial") -> "FqPolynomial":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "FqPolynomial") -> "FqPolynomial":
        return divmod(self, other)[0]

    def monic(self) -> "FqPolynomial":
        if self.is_zero or self.is_monic:
            return self
        inv = pow(self.leading, -1, self.p)
        return FqPolynomial(self.p, tuple(c * inv % self.p for c in self.coefficients))

    def gcd(self, other: "FqPolynomial") -> "FqPolynomial":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = (acc * x + c) % self.p
        return acc

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
                parts.append("x" if c == 1 else f"{c}x")
            else:
                parts.append(f"x^{i}" if c == 1 else f"{c}x^{i}")
        return "+".join(parts)

    def _counter(self) -> int:
        # integer whose base-p digits are the coefficients; enumeration order
        return sum(c * self.p**i for i, c in enumerate(self.coefficients))


@lru_cache(maxsize=None)
def enumerate_irreducibles(p: int, max_degree: int) -> tuple[FqPolynomial, ...]:
    """All monic irreducibles over F_p of degree <= max_degree.

    Sieve: a monic polynomial of degree d is irreducible iff no irreducible
    of degree <= d//2 divides it.  Output is ordered by degree, then by the
    base-p integer of the coefficient vector.
    """
    require_prime(p)
    if max_degree < 1:
        raise DomainError("max_degree must be at least 1")
    if max_degree > POLY_DEGREE_LIMIT or p**max_degree > _IRREDUCIBLE_ENUM_LIMIT:
        raise ResourceLimitError(
            f"enumerating irreducibles needs p**d <= {_IRREDUCIBLE_ENUM_LIMIT}"
        )
    irr: list[FqPolynomial] = []
    for d in range(1, max_degree + 1):
        small = [g for g in irr if g.degree <= d // 2]
        for counter in range(p**d):
            low = []
            c = counter
            for _ in range(d):
                c, digit = divmod(c, p)
                low.append(digit)
            f = FqPolynomial(p, (*low, 1))
            if all(not (f % g).is_zero for g in small):
                irr.append(f)
    return tuple(irr)


def _is_irreducible(g: FqPolynomial) -> bool:
    if g.degree < 1:
        return False
    m = g.monic()
    if m.degree == 1:
        return True
    for cand in enumerate_irreducibles(g.p, m.degree // 2):
        if (m % cand).is_zero:
            return False
    return True


def factor_poly(g: FqPolynomial) -> tuple[int, dict[FqPolynomial, int]]:
    """(unit, {monic irreducible: multiplicity}) with unit in F_p^*."""
    if g.is_zero:
        raise DomainError("zero polynomial has no factorization")
    if g.degree > POLY_DEGREE_LIMIT:
        raise ResourceLimitError(f"degree exceeds the limit {POLY_DEGREE_LIMIT}")
    unit = g.leading
    rem = g.monic()
    counts: dict[FqPolynomial, int] = {}
    if rem.degree >= 2:
        for cand in enumerate_irreducibles(g.p, rem.degree // 2):
            if 2 * cand.degree > rem.degree:
                break
            while True:
                q, r = divmod(rem, cand)
                if not r.is_zero:
                    break
                rem = q
                counts[cand] = counts.get(cand, 0) + 1
            if rem.degree < 2:
                break
    if rem.degree >= 1:
        counts[rem] = counts.get(rem, 0) + 1
    return unit, counts


@dataclass(frozen=True)
class RationalFunction:
    """Element of F_p(x) in lowest terms with monic denominator."""

    num: FqPolynomial
    den: FqPolynomial

    def __post_init__(self):
        self.num._same_field(self.den)
        if self.den.is_zero:
            raise DomainError("denominator must be nonzero")
        if not self.den.is_monic:
            raise DomainError("denominator must be monic (use RationalFunction.of)")
        if not self.num.is_zero and self.num.gcd(self.den).degree > 0:
            raise DomainError("numerator and denominator must be coprime")

    @classmethod
    def of(cls, num: FqPolynomial, den: FqPolynomial | None = None) -> "RationalFunction":
        if den is None:
            den = FqPolynomial.one(num.p)
        if den.is_zero:
            raise DomainError("denominator must be nonzero")
        if num.is_zero:
            return cls(num, FqPolynomial.one(num.p))
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num // g, den // g
        inv = pow(den.leading, -1, den.p)
        scale = FqPolynomial(den.p, (inv,))
        return cls(num * scale, den * scale)

    @property
    def p(self) -> int:
        return self.num.p

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _as_function(f) -> RationalFunction:
    if isinstance(f, RationalFunction):
        return f
    if isinstance(f, FqPolynomial):
        return RationalFunction.of(f)
    raise DomainError(f"expected a polynomial or rational function, got {f!r}")


def _multiplicity(g: FqPolynomial, pi: FqPolynomial) -> int:
    count = 0
    while True:
        q, r = divmod(g, pi)
        if not r.is_zero:
            return count
        g = q
        count += 1


def poly_valuation(f, place: Place) -> Valuation:
    """Order of vanishing of f in F_p(x) at a finite-poly or degree place."""
    f = _as_function(f)
    if f.is_zero:
        raise DomainError("the zero function is outside the place calculus")
    if place.kind == "finite_poly":
        place.poly._same_field(f.num)
        return Valuation(
            _multiplicity(f.num, place.poly) - _multiplicity(f.den, place.poly)
        )
    if place.kind == "degree_infinity":
        return Valuation(f.den.degree - f.num.degree)
    raise DomainError(f"{place} is not a place of F_p(x)")


def local_norms_ff(f) -> list[tuple[Place, Fraction]]:
    """Places of F_p(x) where |f| differs from 1, plus the degree place."""
    f = _as_function(f)
    if f.is_zero:
        raise DomainError("zero is outside the product formula")
    p = f.p
    exps: dict[FqPolynomial, int] = {}
    for pi, e in factor_poly(f.num)[1].items():
        exps[pi] = exps.get(pi, 0) + e
    for pi, e in factor_poly(f.den)[1].items():
        exps[pi] = exps.get(pi, 0) - e
    ordered = sorted(exps.items(), key=lambda kv: (kv[0].degree, kv[0]._counter()))
    out = [
        (Place.finite_poly(pi), Fraction(p) ** (-pi.degree * e))
        for pi, e in ordered
        if e != 0
    ]
    out.append((Place.degree_infinity(), Fraction(p) ** (f.num.degree - f.den.degree)))
    return out


def product_formula_check_ff(f) -> Fraction:
    """The exact product of |f| over all places of F_p(x); equals 1."""
    prod = Fraction(1)
    for _, v in local_norms_ff(f):
        prod *= v
    return prod
