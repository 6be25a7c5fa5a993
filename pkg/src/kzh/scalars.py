"""Exact arithmetic over Q and over Q(kappa), exact dense linear algebra,
and reproducible generic-point sampling.

The global coefficient field of the whole package is Q(kappa): rational
functions in one formal parameter kappa with rational coefficients.  Working
over this field turns every "for generic kappa" statement into an exact rank
statement.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence


# ---------------------------------------------------------------------------
# univariate polynomials over Q, represented as tuples of Fractions
# (index = degree, trailing zeros stripped; () is the zero polynomial)
# ---------------------------------------------------------------------------

def _poly_trim(cs):
    n = len(cs)
    while n > 0 and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def poly_from_fraction(c: Fraction):
    c = Fraction(c)
    return (c,) if c != 0 else ()


def poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _poly_trim(out)


def poly_neg(a):
    return tuple(-c for c in a)


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _poly_trim(out)


def poly_divmod(a, b):
    """Exact division with remainder over Q[kappa]; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        if c != 0:
            q[i] = c
            for j, cb in enumerate(b):
                a[i + j] -= c * cb
    return _poly_trim(q), _poly_trim(a)


def poly_gcd(a, b):
    """Monic gcd over Q[kappa]."""
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return ()
    lead = a[-1]
    return tuple(c / lead for c in a)


def poly_eval(a, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_str(a, var: str = "k") -> str:
    if not a:
        return "0"
    parts = []
    for d in range(len(a) - 1, -1, -1):
        c = a[d]
        if c == 0:
            continue
        if d == 0:
            parts.append(str(c))
        elif d == 1:
            parts.append(f"{c}*{var}" if c != 1 else var)
        else:
            parts.append(f"{c}*{var}^{d}" if c != 1 else f"{var}^{d}")
    return " + ".join(parts).replace("+ -", "- ")


_POLY_ONE = (Fraction(1),)


class KappaScalar:
    """An element of Q(kappa): a reduced fraction of polynomials in the
    formal parameter kappa, with monic denominator.

    Immutable and hashable.  Arithmetic accepts int and Fraction on either
    side and coerces them.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=_POLY_ONE, _reduced=False):
        if not _reduced:
            if not den:
                raise ZeroDivisionError("zero denominator in KappaScalar")
            if num:
                g = poly_gcd(num, den)
                if len(g) > 1 or g[0] != 1:
                    num = poly_divmod(num, g)[0]
                    den = poly_divmod(den, g)[0]
                lead = den[-1]
                if lead != 1:
                    num = tuple(c / lead for c in num)
                    den = tuple(c / lead for c in den)
            else:
                den = _POLY_ONE
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_fraction(c) -> "KappaScalar":
        return KappaScalar(poly_from_fraction(Fraction(c)), _POLY_ONE, _reduced=True)

    @staticmethod
    def zero() -> "KappaScalar":
        return _KS_ZERO

    @staticmethod
    def one() -> "KappaScalar":
        return _KS_ONE

    @staticmethod
    def kappa() -> "KappaScalar":
        return _KS_KAPPA

    @staticmethod
    def coerce(x) -> "KappaScalar":
        if isinstance(x, KappaScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return KappaScalar.from_fraction(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to KappaScalar")

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and self.den == _POLY_ONE

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant rational")
        return self.num[0] if self.num else Fraction(0)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = KappaScalar.coerce(other)
        return KappaScalar(
            poly_add(poly_mul(self.num, o.den), poly_mul(o.num, self.den)),
            poly_mul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return KappaScalar(poly_neg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-KappaScalar.coerce(other))

    def __rsub__(self, other):
        return KappaScalar.coerce(other) + (-self)

    def __mul__(self, other):
        o = KappaScalar.coerce(other)
        return KappaScalar(poly_mul(self.num, o.num), poly_mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = KappaScalar.coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero in Q(kappa)")
        return KappaScalar(poly_mul(self.num, o.den), poly_mul(self.den, o.num))

    def __rtruediv__(self, other):
        return KappaScalar.coerce(other) / self

    def inverse(self) -> "KappaScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(kappa)")
        return KappaScalar(self.den, self.num)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        acc = _KS_ONE
        for _ in range(n):
            acc = acc * self
        return acc

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        try:
            o = KappaScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.num[0] if self.num else Fraction(0))
        return hash((self.num, self.den))

    # -- specialization -------------------------------------------------------

    def specialize(self, kappa0) -> Fraction:
        """Evaluate at a rational kappa0; raises if kappa0 is a pole."""
        kappa0 = Fraction(kappa0)
        d = poly_eval(self.den, kappa0)
        if d == 0:
            raise ZeroDivisionError(f"kappa0 = {kappa0} is a pole of {self}")
        return poly_eval(self.num, kappa0) / d

    def __repr__(self):
        return f"KappaScalar({self})"

    def __str__(self):
        ns = poly_str(self.num)
        if self.den == _POLY_ONE:
            return ns
        return f"({ns})/({poly_str(self.den)})"


_KS_ZERO = KappaScalar((), _POLY_ONE, _reduced=True)
_KS_ONE = KappaScalar(_POLY_ONE, _POLY_ONE, _reduced=True)
_KS_KAPPA = KappaScalar((Fraction(0), Fraction(1)), _POLY_ONE, _reduced=True)

KS = KappaScalar  # short alias used throughout the package


# ---------------------------------------------------------------------------
# exact dense matrices over Q(kappa)
# ---------------------------------------------------------------------------

class ExactMatrix:
    """Dense matrix with KappaScalar entries and exact linear algebra."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        self.entries = [[KappaScalar.coerce(e) for e in row] for row in entries]
        self.rows = len(self.entries)
        if self.rows:
            self.cols = len(self.entries[0])
        else:
            self.cols = 0 if cols is None else cols
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    @staticmethod
    def zero(rows: int, cols: int) -> "ExactMatrix":
        return ExactMatrix([[_KS_ZERO] * cols for _ in range(rows)], cols=cols)

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix(
            [[_KS_ONE if i == j else _KS_ZERO for j in range(n)] for i in range(n)]
        )

    def copy_entries(self):
        return [row[:] for row in self.entries]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
            cols=self.cols,
        )

    def __sub__(self, other):
        return self + other.scale(KappaScalar.from_fraction(-1))

    def scale(self, c) -> "ExactMatrix":
        c = KappaScalar.coerce(c)
        return ExactMatrix(
            [[c * e for e in row] for row in self.entries], cols=self.cols
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matmul")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = _KS_ZERO
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.is_zero():
                        continue
                    acc = acc + a * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return ExactMatrix(out, cols=other.cols)

    def apply(self, vec: Sequence) -> list:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        vec = [KappaScalar.coerce(v) for v in vec]
        out = []
        for i in range(self.rows):
            acc = _KS_ZERO
            for k in range(self.cols):
                a = self.entries[i][k]
                if not a.is_zero() and not vec[k].is_zero():
                    acc = acc + a * vec[k]
            out.append(acc)
        return out

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def commutator(self, other: "ExactMatrix") -> "ExactMatrix":
        return (self @ other) - (other @ self)

    # -- elimination ----------------------------------------------------------

    def rref(self):
        """Reduced row echelon form over the field Q(kappa).

        Returns (matrix entries, pivot column list).
        """
        m = self.copy_entries()
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = None
            for i in range(r, self.rows):
                if not m[i][c].is_zero():
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = m[r][c].inverse()
            m[r] = [e * inv for e in m[r]]
            for i in range(self.rows):
                if i != r and not m[i][c].is_zero():
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots

    def rank(self) -> int:
        """Rank over Q(kappa).

        Constant matrices go through integer fraction-free elimination with
        row-content stripping; polynomial matrices through Bareiss; general
        rational-function matrices through field elimination.
        """
        if all(e.is_constant() for row in self.entries for e in row):
            return _int_rank(
                [[e.as_fraction() for e in row] for row in self.entries]
            )
        cleared = self._cleared_rows()
        if cleared is not None:
            return _bareiss_rank(cleared)
        return len(self.rref()[1])

    def _cleared_rows(self):
        """Rows rescaled to polynomial entries, or None if impractical."""
        rows = []
        for row in self.entries:
            dens = [e.den for e in row]
            acc = _POLY_ONE
            for d in dens:
                g = poly_gcd(acc, d)
                acc = poly_mul(acc, poly_divmod(d, g)[0])
                if len(acc) > 12:
                    return None
            rows.append([poly_mul(e.num, poly_divmod(acc, e.den)[0]) for e in row])
        return rows

    def kernel_basis(self) -> list:
        """Basis of the right null space over Q(kappa), as lists of scalars."""
        m, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [_KS_ZERO] * self.cols
            v[fc] = _KS_ONE
            for r, pc in enumerate(pivots):
                v[pc] = -m[r][fc]
            basis.append(v)
        return basis

    def solve(self, rhs: Sequence):
        """One exact solution x of self @ x = rhs, or None if inconsistent."""
        rhs = [KappaScalar.coerce(v) for v in rhs]
        if len(rhs) != self.rows:
            raise ValueError("rhs length mismatch")
        aug = ExactMatrix(
            [self.entries[i] + [rhs[i]] for i in range(self.rows)]
        )
        m, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [_KS_ZERO] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = m[r][self.cols]
        return x

    def specialize(self, kappa0) -> "ExactMatrix":
        return ExactMatrix(
            [
                [KappaScalar.from_fraction(e.specialize(kappa0)) for e in row]
                for row in self.entries
            ]
        )

    def __repr__(self):
        body = "; ".join(
            " ".join(str(e) for e in row) for row in self.entries
        )
        return f"ExactMatrix[{self.rows}x{self.cols}: {body}]"


def _int_rank(rows) -> int:
    """Exact rank of a matrix of Fractions via integer elimination.

    Rows are rescaled to integers; after every elimination round each row
    is divided by its content, which keeps entry growth near minor size.
    """
    import math

    m = []
    for row in rows:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        ints = [int(x * lcm) for x in row]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        if any(ints):
            m.append(ints)
    nr = len(m)
    if nr == 0:
        return 0
    nc = len(m[0])
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nr):
            f = m[i][c]
            if not f:
                continue
            row = [piv * a - f * b for a, b in zip(m[i], m[r])]
            g = 0
            for v in row:
                g = math.gcd(g, v)
            if g > 1:
                row = [v // g for v in row]
            m[i] = row
        r += 1
        if r == nr:
            break
    return r


def _bareiss_rank(rows) -> int:
    """Rank of a matrix of polynomials via fraction-free elimination."""
    m = [row[:] for row in rows]
    nr = len(m)
    if nr == 0:
        return 0
    nc = len(m[0])
    prev = _POLY_ONE
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                num = poly_add(
                    poly_mul(piv, m[i][j]), poly_neg(poly_mul(m[i][c], m[r][j]))
                )
                m[i][j] = poly_divmod(num, prev)[0]
            m[i][c] = ()
        prev = piv
        r += 1
        if r == nr:
            break
    return r


def rank(m: ExactMatrix) -> int:
    return m.rank()


def kernel_basis(m: ExactMatrix) -> list:
    return m.kernel_basis()


# ---------------------------------------------------------------------------
# reproducible generic points
# ---------------------------------------------------------------------------

class SamplerExhausted(RuntimeError):
    """Rejection sampling failed; the coordinate bound is too small."""


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


class SeededSampler:
    """Deterministic stream of generic rational points.

    Same seed means the identical sample stream.  A sampler is a
    single-owner stream; concurrent consumers should each take a child
    sampler via ``child(tag)``.
    """

    MAX_ATTEMPTS = 1000

    def __init__(self, seed: int, bound: int = 997):
        if bound < 2:
            raise ValueError("bound must be at least 2")
        self.seed = seed & 0xFFFFFFFFFFFFFFFF
        self.bound = bound
        self._rng = random.Random(_splitmix64(self.seed))

    def child(self, tag: int) -> "SeededSampler":
        return SeededSampler(_splitmix64(self.seed ^ _splitmix64(tag + 1)), self.bound)

    def fraction(self) -> Fraction:
        num = self._rng.randint(-self.bound, self.bound)
        den = self._rng.randint(1, self.bound)
        return Fraction(num, den)

    def nonzero_fraction(self) -> Fraction:
        for _ in range(self.MAX_ATTEMPTS):
            f = self.fraction()
            if f != 0:
                return f
        raise SamplerExhausted("could not sample a nonzero rational")

    def point(self, n: int, N: int):
        """Coordinates (z_1..z_n, t_1..t_N) with all defining differences
        z_i - z_j, z_i - t_a, t_a - t_b nonzero."""
        for _ in range(self.MAX_ATTEMPTS):
            zs = [self.fraction() for _ in range(n)]
            ts = [self.fraction() for _ in range(N)]
            coords = zs + ts
            if len(set(coords)) == len(coords):
                return tuple(zs), tuple(ts)
        raise SamplerExhausted(
            f"rejection sampling failed {self.MAX_ATTEMPTS} times; "
            f"increase the bound (currently {self.bound})"
        )


def sample_point(sampler: SeededSampler, n: int, N: int):
    return sampler.point(n, N)
