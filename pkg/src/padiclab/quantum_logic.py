"""Exact Pauli-group algebra and finite-lattice quantum logic.

Pauli elements live in the symplectic representation ``i**phase *
(tensor over j of X**xbits[j] Z**zbits[j])`` with the phase tracked mod 4;
multiplication is bitwise XOR plus the commutation phase ``2 * sum(z_left *
x_right)``.  Matrices over the Gaussian rationals (exact rational real and
imaginary parts) are kept alongside as an independent oracle: the symplectic
product must agree entrywise with the matrix product, and Clifford
membership (normalizer of the Pauli group) is decided by exact conjugation
and Pauli-basis decomposition, never numerically.  Unitaries are accepted up
to an exact global scalar, so Hadamard-like matrices avoid any 1/sqrt(2).

Lattices are finite and explicit: the partial order is validated, meet and
join are derived as the unique bounds and precomputed, so the modular and
distributive laws can be checked over all triples with witnesses on
failure.  Subspace lattices of F_q^d realize quantum logic exactly: they
are modular, and from dimension 2 on never distributive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .errors import DomainError, ResourceLimitError
from .padic_core import require_prime

# -- exact complex scalars and matrices --------------------------------------


@dataclass(frozen=True)
class GaussianRational:
    """a + b*i with exact rational a, b."""

    re: Fraction
    im: Fraction

    @classmethod
    def of(cls, re, im=0) -> "GaussianRational":
        return cls(Fraction(re), Fraction(im))

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise DomainError("division by zero")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        mag = "" if abs(self.im) == 1 else str(abs(self.im))
        if self.re == 0:
            return f"-{mag}i" if self.im < 0 else f"{mag}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{mag}i"


G_ZERO = GaussianRational.of(0)
G_ONE = GaussianRational.of(1)
G_I = GaussianRational.of(0, 1)
#: i**k for k mod 4
_I_POWERS = (G_ONE, G_I, -G_ONE, -G_I)


@dataclass(frozen=True)
class GaussianMatrix:
    """Square matrix of exact complex rationals; equality is entrywise."""

    rows: tuple[tuple[GaussianRational, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n == 0 or any(len(row) != n for row in self.rows):
            raise DomainError("matrix must be square and nonempty")

    @classmethod
    def of(cls, entries) -> "GaussianMatrix":
        def lift(v):
            if isinstance(v, GaussianRational):
                return v
            if isinstance(v, tuple):
                return GaussianRational.of(*v)
            return GaussianRational.of(v)

        return cls(tuple(tuple(lift(v) for v in row) for row in entries))

    @classmethod
    def identity(cls, dim: int) -> "GaussianMatrix":
        return cls(
            tuple(
                tuple(G_ONE if i == j else G_ZERO for j in range(dim))
                for i in range(dim)
            )
        )

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: "GaussianMatrix") -> "GaussianMatrix":
        if self.dim != other.dim:
            raise DomainError("dimension mismatch")
        n = self.dim
        return GaussianMatrix(
            tuple(
                tuple(
                    sum(
                        (self.rows[i][k] * other.rows[k][j] for k in range(n)),
                        G_ZERO,
                    )
                    for j in range(n)
                )
                for i in range(n)
            )
        )

    def __add__(self, other: "GaussianMatrix") -> "GaussianMatrix":
        if self.dim != other.dim:
            raise DomainError("dimension mismatch")
        return GaussianMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def scale(self, c: GaussianRational) -> "GaussianMatrix":
        return GaussianMatrix(tuple(tuple(c * v for v in row) for row in self.rows))

    def conjugate_transpose(self) -> "GaussianMatrix":
        n = self.dim
        return GaussianMatrix(
            tuple(
                tuple(self.rows[j][i].conjugate() for j in range(n)) for i in range(n)
            )
        )

    def trace(self) -> GaussianRational:
        t = G_ZERO
        for i in range(self.dim):
            t = t + self.rows[i][i]
        return t

    def kron(self, other: "GaussianMatrix") -> "GaussianMatrix":
        n, m = self.dim, other.dim
        return GaussianMatrix(
            tuple(
                tuple(
                    self.rows[i // m][j // m] * other.rows[i % m][j % m]
                    for j in range(n * m)
                )
                for i in range(n * m)
            )
        )

    def scalar_multiple_of_identity(self) -> GaussianRational | None:
        """The scalar c with self == c*I, or None."""
        c = self.rows[0][0]
        for i in range(self.dim):
            for j in range(self.dim):
                expect = c if i == j else G_ZERO
                if self.rows[i][j] != expect:
                    return None
        return c


_MAT_1Q = {
    (0, 0): GaussianMatrix.of([[1, 0], [0, 1]]),
    (1, 0): GaussianMatrix.of([[0, 1], [1, 0]]),
    (0, 1): GaussianMatrix.of([[1, 0], [0, -1]]),
    (1, 1): GaussianMatrix.of([[0, -1], [1, 0]]),  # XZ
}


# -- the Pauli group ----------------------------------------------------------


@dataclass(frozen=True)
class PauliElement:
    """i**phase times the tensor product of X**x Z**z over the qubits."""

    phase: int
    xbits: tuple[int, ...]
    zbits: tuple[int, ...]

    def __post_init__(self):
        if len(self.xbits) != len(self.zbits) or not self.xbits:
            raise DomainError("xbits and zbits must have equal positive length")
        if not 0 <= self.phase < 4:
            raise DomainError("phase must be reduced mod 4")
        if any(b not in (0, 1) for b in self.xbits + self.zbits):
            raise DomainError("bit vectors must be 0/1")

    @property
    def n(self) -> int:
        return len(self.xbits)

    @classmethod
    def identity(cls, n: int = 1) -> "PauliElement":
        return cls(0, (0,) * n, (0,) * n)

    @classmethod
    def single(cls, letter: str, j: int = 0, n: int = 1) -> "PauliElement":
        """X, Y, or Z acting on qubit j; Y carries the phase i of X Z."""
        x = [0] * n
        z = [0] * n
        phase = 0
        if letter == "X":
            x[j] = 1
        elif letter == "Z":
            z[j] = 1
        elif letter == "Y":
            x[j] = z[j] = 1
            phase = 1
        elif letter != "I":
            raise DomainError(f"unknown Pauli letter {letter!r}")
        return cls(phase, tuple(x), tuple(z))

    def to_matrix(self) -> GaussianMatrix:
        m = _MAT_1Q[(self.xbits[0], self.zbits[0])]
        for x, z in zip(self.xbits[1:], self.zbits[1:]):
            m = m.kron(_MAT_1Q[(x, z)])
        return m.scale(_I_POWERS[self.phase])

    def __str__(self) -> str:
        # render (1,1) bit pairs as Y, folding the i of each XZ into the phase
        letters = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
        word = "".join(letters[(x, z)] for x, z in zip(self.xbits, self.zbits))
        ys = word.count("Y")
        prefix = {0: "", 1: "i", 2: "-", 3: "-i"}[(self.phase - ys) % 4]
        return prefix + word


SIGMA_0 = PauliElement.single("I")
SIGMA_X = PauliElement.single("X")
SIGMA_Y = PauliElement.single("Y")
SIGMA_Z = PauliElement.single("Z")


def pauli_mul(x: PauliElement, y: PauliElement) -> PauliElement:
    """Symplectic product; agrees entrywise with the matrix product."""
    if x.n != y.n:
        raise DomainError(f"mixed qubit counts {x.n} and {y.n}")
    # moving each right-hand X past a left-hand Z costs a factor -1
    swaps = sum(zl * xr for zl, xr in zip(x.zbits, y.xbits))
    return PauliElement(
        (x.phase + y.phase + 2 * swaps) % 4,
        tuple(a ^ b for a, b in zip(x.xbits, y.xbits)),
        tuple(a ^ b for a, b in zip(x.zbits, y.zbits)),
    )


def pauli_generators(n: int) -> list[PauliElement]:
    """i*I together with X_j and Z_j for each qubit."""
    gens = [PauliElement(1, (0,) * n, (0,) * n)]
    for j in range(n):
        gens.append(PauliElement.single("X", j, n))
        gens.append(PauliElement.single("Z", j, n))
    return gens


def pauli_group_order(n: int) -> int:
    """Order of the closure of the generators; equals 4**(n+1)."""
    if n not in (1, 2):
        raise ResourceLimitError("group closure is enumerated only for n in {1, 2}")
    gens = pauli_generators(n)
    seen = {PauliElement.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for u in frontier:
            for g in gens:
                w = pauli_mul(u, g)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return len(seen)


def pauli_basis(n: int = 1) -> list[PauliElement]:
    """All 4**n phase-free tensor words in sigma_0,x,y,z (Y as i*XZ)."""
    out = []
    for bits in product((0, 1), repeat=2 * n):
        x, z = bits[:n], bits[n:]
        ys = sum(a & b for a, b in zip(x, z))
        out.append(PauliElement(ys % 4, x, z))
    return out


def decompose_in_pauli_basis(m: GaussianMatrix, n: int = 1) -> dict[PauliElement, GaussianRational]:
    """Coefficients of m in the sigma basis via the trace inner product."""
    if m.dim != 2**n:
        raise DomainError(f"expected a {2**n}x{2**n} matrix")
    dim_inv = GaussianRational.of(Fraction(1, 2**n))
    out = {}
    for b in pauli_basis(n):
        coeff = (b.to_matrix().conjugate_transpose() @ m).trace() * dim_inv
        if not coeff.is_zero:
            out[b] = coeff
    return out


@dataclass(frozen=True)
class BasisReport:
    independent: bool
    spanning: bool

    @property
    def passed(self) -> bool:
        return self.independent and self.spanning

    def __str__(self) -> str:
        return (
            f"independent: {'yes' if self.independent else 'NO'}, "
            f"spanning: {'yes' if self.spanning else 'NO'}"
        )


def _rank(vectors: list[list[GaussianRational]]) -> int:
    rows = [list(v) for v in vectors]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next(
            (i for i in range(rank, len(rows)) if not rows[i][col].is_zero), None
        )
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = G_ONE / rows[rank][col]
        rows[rank] = [inv * v for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not rows[i][col].is_zero:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def pauli_basis_check(n: int = 1) -> BasisReport:
    """Exact rank check: the 4**n sigma words are a basis of the 2**n matrices."""
    vectors = []
    for b in pauli_basis(n):
        m = b.to_matrix()
        vectors.append([m.rows[i][j] for i in range(m.dim) for j in range(m.dim)])
    rank = _rank(vectors)
    full = 4**n
    return BasisReport(independent=rank == full, spanning=rank == full)


@dataclass(frozen=True)
class NormalizerCheck:
    member: bool
    failing_generator: PauliElement | None = None

    def __bool__(self) -> bool:
        return self.member

    def __str__(self) -> str:
        if self.member:
            return "in the normalizer"
        return f"not in the normalizer: conjugation of {self.failing_generator} leaves the Pauli set"


def is_in_normalizer(u: GaussianMatrix, n: int | None = None) -> NormalizerCheck:
    """Clifford membership by exact conjugation of the X_j, Z_j generators.

    ``u`` must be unitary up to a nonzero exact scalar (u @ u† = c*I); the
    conjugate u g u**-1 is then (u g u†)/c, and membership requires its
    Pauli-basis support to be a single word for every generator.
    """
    if n is None:
        n = u.dim.bit_length() - 1
    if u.dim != 2**n:
        raise DomainError(f"expected a {2**n}x{2**n} matrix")
    if n > 2:
        raise ResourceLimitError("normalizer checking is supported for n <= 2")
    udag = u.conjugate_transpose()
    c = (u @ udag).scalar_multiple_of_identity()
    if c is None:
        raise DomainError("matrix is not unitary up to an exact scalar")
    if c.is_zero:
        raise DomainError("matrix is not invertible")
    c_inv = G_ONE / c
    for g in pauli_generators(n)[1:]:  # skip i*I: central, always fine
        image = (u @ g.to_matrix() @ udag).scale(c_inv)
        if len(decompose_in_pauli_basis(image, n)) != 1:
            return NormalizerCheck(False, g)
    return NormalizerCheck(True)


# -- finite lattices ----------------------------------------------------------


class FiniteLattice:
    """A finite lattice given by its order relation.

    The relation is validated (reflexive, antisymmetric, transitive) and
    meet/join are derived as the unique greatest lower / least upper bounds
    and precomputed for every pair; construction fails if any pair lacks
    one.  Instances are immutable after construction.
    """

    def __init__(self, elements, leq_fn, labels=None):
        self._elements = tuple(elements)
        if len(set(self._elements)) != len(self._elements):
            raise DomainError("elements must be distinct")
        self._labels = dict(labels) if labels else {e: str(e) for e in self._elements}
        self._leq = {
            (a, b) for a in self._elements for b in self._elements if leq_fn(a, b)
        }
        self._validate_order()
        self._meet = {}
        self._join = {}
        for a in self._elements:
            for b in self._elements:
                self._meet[(a, b)] = self._bound(a, b, lower=True)
                self._join[(a, b)] = self._bound(a, b, lower=False)

    def _validate_order(self):
        els = self._elements
        for a in els:
            if (a, a) not in self._leq:
                raise DomainError(f"order is not reflexive at {self.label(a)}")
        for a, b in self._leq:
            if a != b and (b, a) in self._leq:
                raise DomainError(
                    f"order is not antisymmetric on {self.label(a)}, {self.label(b)}"
                )
        for a, b in self._leq:
            for c in els:
                if (b, c) in self._leq and (a, c) not in self._leq:
                    raise DomainError("order is not transitive")

    def _bound(self, a, b, lower: bool):
        if lower:
            cands = [x for x in self._elements if self.leq(x, a) and self.leq(x, b)]
            best = [x for x in cands if all(self.leq(y, x) for y in cands)]
        else:
            cands = [x for x in self._elements if self.leq(a, x) and self.leq(b, x)]
            best = [x for x in cands if all(self.leq(x, y) for y in cands)]
        if len(best) != 1:
            kind = "meet" if lower else "join"
            raise DomainError(
                f"not a lattice: {self.label(a)}, {self.label(b)} have no unique {kind}"
            )
        return best[0]

    @property
    def elements(self) -> tuple:
        return self._elements

    def label(self, e) -> str:
        return self._labels[e]

    def leq(self, a, b) -> bool:
        return (a, b) in self._leq

    def meet(self, a, b):
        return self._meet[(a, b)]

    def join(self, a, b):
        return self._join[(a, b)]

    @property
    def bottom(self):
        return next(
            e for e in self._elements if all(self.leq(e, x) for x in self._elements)
        )

    @property
    def top(self):
        return next(
            e for e in self._elements if all(self.leq(x, e) for x in self._elements)
        )


@dataclass(frozen=True)
class LawCheck:
    """Outcome of a lattice-law scan with a witness triple on failure."""

    law: str
    holds: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.holds

    def as_json(self) -> dict:
        out = {"law": self.law, "holds": self.holds}
        if self.witness:
            out.update(self.witness)
        return out


def is_modular(lat: FiniteLattice) -> LawCheck:
    """b <= a implies a meet (b join c) == b join (a meet c), all triples."""
    for a in lat.elements:
        for b in lat.elements:
            if not lat.leq(b, a):
                continue
            for c in lat.elements:
                lhs = lat.meet(a, lat.join(b, c))
                rhs = lat.join(b, lat.meet(a, c))
                if lhs != rhs:
                    return LawCheck(
                        "modular",
                        False,
                        {
                            "a": lat.label(a),
                            "b": lat.label(b),
                            "c": lat.label(c),
                            "lhs": lat.label(lhs),
                            "rhs": lat.label(rhs),
                        },
                    )
    return LawCheck("modular", True)


def is_distributive(lat: FiniteLattice) -> LawCheck:
    """a meet (b join c) == (a meet b) join (a meet c) over all triples."""
    for a in lat.elements:
        for b in lat.elements:
            for c in lat.elements:
                lhs = lat.meet(a, lat.join(b, c))
                rhs = lat.join(lat.meet(a, b), lat.meet(a, c))
                if lhs != rhs:
                    return LawCheck(
                        "distributive",
                        False,
                        {
                            "a": lat.label(a),
                            "b": lat.label(b),
                            "c": lat.label(c),
                            "lhs": lat.label(lhs),
                            "rhs": lat.label(rhs),
                        },
                    )
    return LawCheck("distributive", True)


def pentagon_lattice() -> FiniteLattice:
    """N5: 0 < x < z < 1 with y incomparable to both; fails modularity."""
    order = {
        ("0", "0"), ("x", "x"), ("y", "y"), ("z", "z"), ("1", "1"),
        ("0", "x"), ("0", "y"), ("0", "z"), ("0", "1"),
        ("x", "z"), ("x", "1"), ("y", "1"), ("z", "1"),
    }
    return FiniteLattice("0xyz1", lambda a, b: (a, b) in order)


def diamond_lattice() -> FiniteLattice:
    """M3: three incomparable atoms; modular but not distributive."""
    atoms = ("a", "b", "c")
    order = {(e, e) for e in "0abc1"} | {("0", e) for e in "abc1"} | {
        (e, "1") for e in atoms
    } | {("0", "1")}
    return FiniteLattice("0abc1", lambda a, b: (a, b) in order)


def chain_lattice(k: int) -> FiniteLattice:
    if k < 1:
        raise DomainError("a chain needs at least one element")
    return FiniteLattice(range(k), lambda a, b: a <= b)


def boolean_lattice(k: int) -> FiniteLattice:
    """Subsets of a k-set under inclusion; the distributive benchmark."""
    if k < 0 or 2**k > 2**14:
        raise ResourceLimitError("boolean lattice supported for 2**k <= 2**14")
    ground = range(k)
    elements = []
    for size in range(k + 1):
        for sub in combinations(ground, size):
            elements.append(frozenset(sub))
    labels = {e: "{" + ",".join(map(str, sorted(e))) + "}" for e in elements}
    return FiniteLattice(elements, frozenset.issubset, labels)


class SubspaceLattice(FiniteLattice):
    """All subspaces of F_q^d ordered by inclusion.

    Elements are the full vector sets (frozensets of tuples), enumerated
    once each via row-reduced echelon bases; meet is set intersection and
    join is the sum space, both recovered here by the generic unique-bound
    construction and cross-checked in the tests.
    """

    def __init__(self, q: int, d: int):
        require_prime(q)
        if d < 1:
            raise DomainError("dimension must be at least 1")
        if q**d > 2**14:
            raise ResourceLimitError("subspace lattices need q**d <= 2**14")
        self.q = q
        self.d = d
        elements = []
        labels = {}
        for basis in _rref_bases(q, d):
            space = _span(basis, q, d)
            elements.append(space)
            if basis:
                labels[space] = "span{" + ",".join(_vec_str(v) for v in basis) + "}"
            else:
                labels[space] = "0"
        super().__init__(elements, frozenset.issubset, labels)


def _vec_str(v: tuple[int, ...]) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def _rref_bases(q: int, d: int):
    """Every subspace of F_q^d exactly once, as a row-reduced basis."""
    for k in range(d + 1):
        for pivots in combinations(range(d), k):
            free_cells = [
                (i, j)
                for i in range(k)
                for j in range(pivots[i] + 1, d)
                if j not in pivots
            ]
            for values in product(range(q), repeat=len(free_cells)):
                rows = []
                for i in range(k):
                    row = [0] * d
                    row[pivots[i]] = 1
                    rows.append(row)
                for (i, j), v in zip(free_cells, values):
                    rows[i][j] = v
                yield tuple(tuple(r) for r in rows)


def _span(basis, q: int, d: int) -> frozenset:
    vectors = set()
    for coeffs in product(range(q), repeat=len(basis)):
        vec = [0] * d
        for c, row in zip(coeffs, basis):
            if c:
                for j in range(d):
                    vec[j] = (vec[j] + c * row[j]) % q
        vectors.add(tuple(vec))
    return frozenset(vectors)


def subspace_lattice(q: int, d: int) -> SubspaceLattice:
    return SubspaceLattice(q, d)
