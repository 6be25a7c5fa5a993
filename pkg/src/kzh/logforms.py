"""Logarithmic differential forms on the configuration space of n marked
points z and N auxiliary points t: wedge monomials in dln of coordinate
differences, skew-symmetrization, the standard weight forms, the Coulomb
interaction one-form, exact evaluation at rational points, and
evaluation-based span, relation, and fiber-complex computation.

Identities between log forms (Arnold-type relations) are decided by exact
evaluation at seeded generic points, certified by re-evaluation at fresh
points, never by symbolic normal forms.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .liealg import ColorMap, RootData
from .scalars import KS, ExactMatrix, KappaScalar, SeededSampler

# generators: ("zz", i, j) for dln(z_i - z_j), i < j
#             ("zt", i, a) for dln(t_a - z_i)
#             ("tt", a, b) for dln(t_a - t_b), a < b
# all indices 0-based; display adds 1
Generator = Tuple[str, int, int]
Monomial = Tuple[Generator, ...]

_KIND_ORDER = {"zz": 0, "zt": 1, "tt": 2}


def gen_zz(i: int, j: int) -> Generator:
    if i == j:
        raise ValueError("coincident z indices")
    return ("zz", min(i, j), max(i, j))


def gen_zt(i: int, a: int) -> Generator:
    return ("zt", i, a)


def gen_tt(a: int, b: int) -> Generator:
    if a == b:
        raise ValueError("coincident t indices")
    return ("tt", min(a, b), max(a, b))


def _gen_key(g: Generator):
    return (_KIND_ORDER[g[0]], g[1], g[2])


def generator_str(g: Generator) -> str:
    kind, x, y = g
    if kind == "zz":
        return f"dln(z{x+1}-z{y+1})"
    if kind == "zt":
        return f"dln(t{y+1}-z{x+1})"
    return f"dln(t{x+1}-t{y+1})"


def _sort_monomial(gens: Sequence[Generator]):
    """Sort generators into canonical order; return (sign, monomial) or
    None when a generator repeats."""
    gens = list(gens)
    sign = 1
    for i in range(1, len(gens)):
        j = i
        while j > 0 and _gen_key(gens[j - 1]) > _gen_key(gens[j]):
            gens[j - 1], gens[j] = gens[j], gens[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(gens)):
        if gens[i] == gens[i - 1]:
            return None
    return sign, tuple(gens)


class LogForm:
    """Finite Q(kappa)-combination of wedge monomials in dln generators."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, KappaScalar] | None = None):
        self.terms = {}
        for m, c in (terms or {}).items():
            c = KS.coerce(c)
            if not c.is_zero():
                self.terms[m] = c

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero() -> "LogForm":
        return LogForm()

    @staticmethod
    def constant(c) -> "LogForm":
        c = KS.coerce(c)
        return LogForm({(): c}) if not c.is_zero() else LogForm()

    @staticmethod
    def generator(g: Generator) -> "LogForm":
        return LogForm({(g,): KS.one()})

    # -- algebra ---------------------------------------------------------------

    def __add__(self, other: "LogForm") -> "LogForm":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, KS.zero()) + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return LogForm(out)

    def __sub__(self, other: "LogForm") -> "LogForm":
        return self + other.scale(-1)

    def __neg__(self) -> "LogForm":
        return self.scale(-1)

    def scale(self, c) -> "LogForm":
        c = KS.coerce(c)
        if c.is_zero():
            return LogForm()
        return LogForm({m: c * x for m, x in self.terms.items()})

    def wedge(self, other: "LogForm") -> "LogForm":
        out: Dict[Monomial, KappaScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sorted_ = _sort_monomial(m1 + m2)
                if sorted_ is None:
                    continue
                sign, mono = sorted_
                c = c1 * c2 * KS.coerce(sign)
                s = out.get(mono, KS.zero()) + c
                if s.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = s
        return LogForm(out)

    def is_zero_formally(self) -> bool:
        """No stored terms.  A formally nonzero form may still vanish as a
        form; that is decided by evaluation."""
        return not self.terms

    def degrees(self) -> set:
        return {len(m) for m in self.terms}

    def permute_t(self, sigma: Sequence[int]) -> "LogForm":
        """Apply a permutation of the t-indices (sigma[a] is the image of a)."""
        out: Dict[Monomial, KappaScalar] = {}
        for m, c in self.terms.items():
            gens = []
            for kind, x, y in m:
                if kind == "zz":
                    gens.append((kind, x, y))
                elif kind == "zt":
                    gens.append(("zt", x, sigma[y]))
                else:
                    a, b = sigma[x], sigma[y]
                    gens.append(gen_tt(a, b))
            sorted_ = _sort_monomial(gens)
            if sorted_ is None:
                continue
            sign, mono = sorted_
            s = out.get(mono, KS.zero()) + c * KS.coerce(sign)
            if s.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = s
        return LogForm(out)

    def __eq__(self, other):
        return isinstance(other, LogForm) and self.terms == other.terms

    def canonical_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda mono: tuple(_gen_key(g) for g in mono)):
            c = self.terms[m]
            mono = "^".join(generator_str(g) for g in m) if m else "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LogForm({self.canonical_str()})"


def wedge_list(forms: Iterable[LogForm]) -> LogForm:
    acc = LogForm.constant(1)
    for f in forms:
        acc = acc.wedge(f)
    return acc


# ---------------------------------------------------------------------------
# skew-symmetrization and the standard weight forms
# ---------------------------------------------------------------------------

def _permutation_sign(sigma: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(sigma)
    for i in range(len(sigma)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alt(w: LogForm, N: int) -> LogForm:
    """Skew-symmetrization over the symmetric group permuting t_1..t_N."""
    out = LogForm()
    for sigma in itertools.permutations(range(N)):
        out = out + w.permute_t(sigma).scale(_permutation_sign(sigma))
    return out


def _block_product(offsets: Sequence[int], sizes: Sequence[int]) -> LogForm:
    factors = []
    for s, (off, size) in enumerate(zip(offsets, sizes)):
        for j in range(size):
            factors.append(LogForm.generator(gen_zt(s, off + j)))
    return wedge_list(factors)


def build_u_a(a: Sequence[int]) -> LogForm:
    """The product over blocks of dln(t - z_s), block s consuming the next
    a_s consecutive t-variables starting from t_1."""
    offsets = []
    acc = 0
    for size in a:
        offsets.append(acc)
        acc += size
    return _block_product(offsets, list(a))


def build_u_b(b: Sequence[int]) -> LogForm:
    """Like build_u_a but starting from t_2 and carrying the -kappa factor."""
    offsets = []
    acc = 1
    for size in b:
        offsets.append(acc)
        acc += size
    return _block_product(offsets, list(b)).scale(-KS.kappa())


def _factorial_product(ks: Sequence[int]) -> Fraction:
    out = 1
    for k in ks:
        for j in range(2, k + 1):
            out *= j
    return Fraction(out)


def build_w_a(a: Sequence[int]) -> LogForm:
    N = sum(a)
    return alt(build_u_a(a), N).scale(KS.from_fraction(1 / _factorial_product(a)))


def build_w_b(b: Sequence[int]) -> LogForm:
    N = sum(b) + 1
    return alt(build_u_b(b), N).scale(KS.from_fraction(1 / _factorial_product(b)))


# ---------------------------------------------------------------------------
# the Coulomb interaction one-form
# ---------------------------------------------------------------------------

def omega_coulomb(rd: RootData, pi: ColorMap) -> LogForm:
    """The closed logarithmic one-form pairing weights across z-z, z-t and
    t-t differences, colored by pi on the t side."""
    n = rd.n
    N = len(pi)
    terms: Dict[Monomial, KappaScalar] = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = rd.weight_pairing(i, j)
            if not c.is_zero():
                terms[(gen_zz(i, j),)] = c
    for i in range(n):
        for k in range(N):
            c = -rd.weight_alpha_pairing(i, pi.colors[k])
            if not c.is_zero():
                terms[(gen_zt(i, k),)] = c
    for k in range(N):
        for l in range(k + 1, N):
            c = rd.alpha_pairing(pi.colors[k], pi.colors[l])
            if not c.is_zero():
                terms[(gen_tt(k, l),)] = c
    return LogForm(terms)


def omega_coulomb_split(rd: RootData, pi: ColorMap):
    """Partition of the Coulomb form by generator kind: (pure z-z part,
    t-touching part).  The t-touching part restricts on a fiber to the
    twisted fiber differential form."""
    full = omega_coulomb(rd, pi)
    zpart = LogForm({m: c for m, c in full.terms.items() if m[0][0] == "zz"})
    tpart = LogForm({m: c for m, c in full.terms.items() if m[0][0] != "zz"})
    return zpart, tpart


# ---------------------------------------------------------------------------
# exact evaluation
# ---------------------------------------------------------------------------

class EvaluatedForm:
    """Element of the exterior algebra on the covectors dz_1..dz_n,
    dt_1..dt_N with Q(kappa) coefficients.  Keys are increasing tuples of
    covector indices; indices below n are dz, the rest dt."""

    __slots__ = ("n", "N", "terms")

    def __init__(self, n: int, N: int, terms: Dict[tuple, KappaScalar] | None = None):
        self.n = n
        self.N = N
        self.terms = {}
        for k, c in (terms or {}).items():
            c = KS.coerce(c)
            if not c.is_zero():
                self.terms[k] = c

    @staticmethod
    def constant(n: int, N: int, c) -> "EvaluatedForm":
        return EvaluatedForm(n, N, {(): KS.coerce(c)})

    def __add__(self, other: "EvaluatedForm") -> "EvaluatedForm":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, KS.zero()) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return EvaluatedForm(self.n, self.N, out)

    def scale(self, c) -> "EvaluatedForm":
        c = KS.coerce(c)
        return EvaluatedForm(self.n, self.N, {k: c * x for k, x in self.terms.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def wedge(self, other: "EvaluatedForm") -> "EvaluatedForm":
        out: Dict[tuple, KappaScalar] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                merged = _merge_covectors(k1, k2)
                if merged is None:
                    continue
                sign, key = merged
                s = out.get(key, KS.zero()) + c1 * c2 * KS.coerce(sign)
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return EvaluatedForm(self.n, self.N, out)

    def is_zero(self) -> bool:
        return not self.terms

    def dz_filter(self, min_dz: int | None = None, exact_dz: int | None = None):
        """Keep only covector monomials by their dz-count."""
        out = {}
        for k, c in self.terms.items():
            cnt = sum(1 for i in k if i < self.n)
            if exact_dz is not None and cnt != exact_dz:
                continue
            if min_dz is not None and cnt < min_dz:
                continue
            out[k] = c
        return EvaluatedForm(self.n, self.N, out)

    def specialize(self, kappa0) -> "EvaluatedForm":
        return EvaluatedForm(
            self.n,
            self.N,
            {k: KS.from_fraction(c.specialize(kappa0)) for k, c in self.terms.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, EvaluatedForm)
            and (self.n, self.N) == (other.n, other.N)
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"EvaluatedForm({self.terms})"


def _merge_covectors(k1: tuple, k2: tuple):
    if set(k1) & set(k2):
        return None
    merged = tuple(sorted(k1 + k2))
    # count transpositions needed to interleave k2 into k1
    sign = 1
    for pos2, v in enumerate(k2):
        passed = sum(1 for u in k1 if u > v)
        if passed % 2:
            sign = -sign
    return sign, merged


class HyperplaneHit(ZeroDivisionError):
    """The evaluation point lies on one of the singular hyperplanes."""


def _gen_value_and_covectors(g: Generator, zs, ts, n):
    kind, x, y = g
    if kind == "zz":
        d = zs[x] - zs[y]
        if d == 0:
            raise HyperplaneHit(f"z{x+1} == z{y+1}")
        return [(Fraction(1, 1) / d, (x,)), (-Fraction(1, 1) / d, (y,))]
    if kind == "zt":
        d = ts[y] - zs[x]
        if d == 0:
            raise HyperplaneHit(f"t{y+1} == z{x+1}")
        return [(Fraction(1, 1) / d, (n + y,)), (-Fraction(1, 1) / d, (x,))]
    d = ts[x] - ts[y]
    if d == 0:
        raise HyperplaneHit(f"t{x+1} == t{y+1}")
    return [(Fraction(1, 1) / d, (n + x,)), (-Fraction(1, 1) / d, (n + y,))]


def evaluate(w: LogForm, zs: Sequence[Fraction], ts: Sequence[Fraction]) -> EvaluatedForm:
    """Exact evaluation: each generator becomes its covector expansion at
    the point; monomials wedge-expand; evaluation is multiplicative."""
    n, N = len(zs), len(ts)
    total = EvaluatedForm(n, N)
    for m, c in w.terms.items():
        acc = EvaluatedForm.constant(n, N, 1)
        for g in m:
            pieces = _gen_value_and_covectors(g, zs, ts, n)
            one_form = EvaluatedForm(
                n, N, {cov: KS.from_fraction(v) for v, cov in pieces}
            )
            acc = acc.wedge(one_form)
        total = total + acc.scale(c)
    return total


def evaluate_fiber(w: LogForm, zs, ts) -> EvaluatedForm:
    """Evaluation composed with the fiber restriction: freeze z and project
    the dz covector components away (an algebra map)."""
    n, N = len(zs), len(ts)
    total = EvaluatedForm(n, N)
    for m, c in w.terms.items():
        acc = EvaluatedForm.constant(n, N, 1)
        for g in m:
            pieces = _gen_value_and_covectors(g, zs, ts, n)
            one_form = EvaluatedForm(
                n,
                N,
                {cov: KS.from_fraction(v) for v, cov in pieces if cov[0] >= n},
            )
            acc = acc.wedge(one_form)
            if acc.is_zero():
                break
        total = total + acc.scale(c)
    return total


# ---------------------------------------------------------------------------
# evaluation-based spans, ranks, relations
# ---------------------------------------------------------------------------

class CertificationError(RuntimeError):
    """A sampled linear relation failed re-certification at fresh points;
    reseed the sampler and retry."""


def default_trials(n: int, N: int) -> int:
    return n + N + 4


def _evaluation_matrix(forms: List[LogForm], points, fiber: bool) -> ExactMatrix:
    evaluator = evaluate_fiber if fiber else evaluate
    evaluated = [[evaluator(f, zs, ts) for (zs, ts) in points] for f in forms]
    keys = sorted(
        {
            (p_idx, cov)
            for col in evaluated
            for p_idx, ev in enumerate(col)
            for cov in ev.terms
        }
    )
    key_index = {k: i for i, k in enumerate(keys)}
    rows = [[KS.zero()] * len(forms) for _ in keys]
    for j, col in enumerate(evaluated):
        for p_idx, ev in enumerate(col):
            for cov, c in ev.terms.items():
                rows[key_index[(p_idx, cov)]][j] = c
    return ExactMatrix(rows, cols=len(forms))


def _combination(forms: List[LogForm], coeffs) -> LogForm:
    acc = LogForm()
    for f, c in zip(forms, coeffs):
        acc = acc + f.scale(c)
    return acc


def _certify_zero(form: LogForm, n: int, N: int, sampler: SeededSampler, fiber: bool):
    evaluator = evaluate_fiber if fiber else evaluate
    for _ in range(3):
        zs, ts = sampler.point(n, N)
        if not evaluator(form, zs, ts).is_zero():
            return False
    return True


def span_dim(
    forms: List[LogForm],
    n: int,
    N: int,
    sampler: SeededSampler,
    trials: int | None = None,
    fiber: bool = False,
) -> int:
    """Dimension of the span, decided by stacked evaluations at seeded
    points with relation re-certification."""
    return len(
        _span_data(forms, n, N, sampler, trials, fiber)[1]
    )


def relations(
    forms: List[LogForm],
    n: int,
    N: int,
    sampler: SeededSampler,
    trials: int | None = None,
    fiber: bool = False,
) -> list:
    """Certified basis of the space of linear relations among the forms."""
    return _span_data(forms, n, N, sampler, trials, fiber)[0]


def _points_for(forms, n, N, sampler, trials, fiber):
    """Enough sample points that the stacked evaluation system is
    overdetermined: at least len(forms) + 4 scalar rows."""
    if trials is None:
        trials = default_trials(n, N)
    probe = sampler.point(n, N)
    evaluator = evaluate_fiber if fiber else evaluate
    coords = len(
        {cov for f in forms for cov in evaluator(f, probe[0], probe[1]).terms}
    )
    coords = max(coords, 1)
    need = -(-(len(forms) + 4) // coords)
    count = max(trials, need)
    return [probe] + [sampler.point(n, N) for _ in range(count - 1)]


def _span_data(forms, n, N, sampler, trials, fiber):
    forms = list(forms)
    if not forms:
        return [], []
    points = _points_for(forms, n, N, sampler, trials, fiber)
    mat = _evaluation_matrix(list(forms), points, fiber)
    rels = mat.kernel_basis()
    fresh = sampler.child(0xA11CE)
    for rel in rels:
        if not _certify_zero(_combination(list(forms), rel), n, N, fresh, fiber):
            raise CertificationError(
                "sampled relation failed certification at fresh points; "
                "reseed and retry"
            )
    _, pivots = mat.rref()
    return rels, pivots


def express_in_span(
    target: LogForm,
    basis_forms: List[LogForm],
    n: int,
    N: int,
    sampler: SeededSampler,
    trials: int | None = None,
    fiber: bool = False,
    points=None,
    certify_points=None,
):
    """Certified coefficients expressing the target in the given spanning
    forms, or None if the target is outside the span."""
    if points is None:
        if trials is None:
            trials = default_trials(n, N)
        points = [sampler.point(n, N) for _ in range(trials)]
    mat = _evaluation_matrix(list(basis_forms) + [target], points, fiber)
    cols = len(basis_forms)
    lhs = ExactMatrix([row[:cols] for row in mat.entries], cols=cols)
    rhs = [row[cols] for row in mat.entries]
    sol = lhs.solve(rhs)
    if sol is None:
        return None
    residual = target - _combination(list(basis_forms), sol)
    evaluator = evaluate_fiber if fiber else evaluate
    if certify_points is not None:
        ok = all(evaluator(residual, zs, ts).is_zero() for zs, ts in certify_points)
    else:
        ok = _certify_zero(residual, n, N, sampler.child(0xBEEF), fiber)
    if not ok:
        raise CertificationError(
            "solved coefficients failed certification at fresh points; "
            "reseed and retry"
        )
    return sol


# ---------------------------------------------------------------------------
# fiber complexes
# ---------------------------------------------------------------------------

def fiber_log_monomials(n: int, N: int, degree: int) -> List[LogForm]:
    """All degree-p wedge monomials in the fiber generators (t-z and t-t)."""
    gens = [gen_zt(i, a) for i in range(n) for a in range(N)] + [
        gen_tt(a, b) for a in range(N) for b in range(a + 1, N)
    ]
    gens.sort(key=_gen_key)
    out = []
    for combo in itertools.combinations(gens, degree):
        out.append(LogForm({tuple(combo): KS.one()}))
    return out


def compositions(total: int, parts: int) -> List[Tuple[int, ...]]:
    """Compositions of total into parts nonnegative summands, first part
    largest first (matching the module basis enumeration)."""
    if parts == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def fiber_points(zs, N: int, sampler: SeededSampler, count: int):
    """Points of the fiber over the frozen z coordinates: fresh t values
    avoiding every hyperplane."""
    zs = tuple(Fraction(z) for z in zs)
    out = []
    for _ in range(count):
        for _ in range(SeededSampler.MAX_ATTEMPTS):
            _, ts = sampler.point(0, N)
            coords = list(zs) + list(ts)
            if len(set(coords)) == len(coords):
                out.append((zs, ts))
                break
        else:
            raise CertificationError(
                "could not sample a fiber point off the hyperplanes"
            )
    return out


class AomotoComplex:
    """The two-term fiber complex spanned by restrictions of the weight
    forms, with the multiplication differential, over Q(kappa) or at a
    rational kappa value."""

    def __init__(self, rd: RootData, zs, N: int, sampler: SeededSampler, kappa_mode="formal"):
        if rd.r != 1:
            raise ValueError("fiber weight-form complexes need rank-one data")
        self.rd = rd
        self.zs = tuple(Fraction(z) for z in zs)
        if len(set(self.zs)) != len(self.zs):
            raise ValueError("base point must have distinct z coordinates")
        self.kappa_mode = kappa_mode
        self.n = rd.n
        self.N = N
        n = self.n
        self.a_list = compositions(N, n)
        self.b_list = compositions(N - 1, n)
        self.w_a = [build_w_a(a) for a in self.a_list]
        self.w_b = [build_w_b(b) for b in self.b_list]
        omega = omega_coulomb(self.rd, ColorMap.standard((N,)))

        points = fiber_points(self.zs, N, sampler.child(0xF1B), default_trials(n, N))
        mat_a = _evaluation_matrix(self.w_a, points, fiber=True)
        if mat_a.rank() != len(self.w_a):
            raise CertificationError(
                "restricted top weight forms are dependent at this base point; "
                "reseed or move the base point"
            )
        mat_b = _evaluation_matrix(self.w_b, points, fiber=True)
        if mat_b.rank() != len(self.w_b):
            raise CertificationError(
                "restricted shifted weight forms are dependent at this base point"
            )

        inv_kappa = KS.one() / KS.kappa()
        certify = fiber_points(self.zs, N, sampler.child(0xCE87), 3)
        cols = []
        for idx, wb in enumerate(self.w_b):
            image = omega.wedge(wb).scale(inv_kappa)
            sol = express_in_span(
                image,
                self.w_a,
                n,
                N,
                sampler,
                fiber=True,
                points=points,
                certify_points=certify,
            )
            if sol is None:
                raise CertificationError(
                    "fiber differential image escapes the top weight-form span"
                )
            cols.append(sol)
        self.differential = ExactMatrix(
            [[cols[j][i] for j in range(len(self.w_b))] for i in range(len(self.w_a))],
            cols=len(self.w_b),
        )

    def dims(self):
        return {self.N - 1: len(self.w_b), self.N: len(self.w_a)}

    def matrix(self) -> ExactMatrix:
        if self.kappa_mode == "formal":
            return self.differential
        return self.differential.specialize(Fraction(self.kappa_mode))

    def cohomology_dims(self):
        d = self.matrix()
        r = d.rank()
        return {self.N - 1: len(self.w_b) - r, self.N: len(self.w_a) - r}


def aomoto_complex(
    rd: RootData,
    zs,
    N: int,
    sampler: SeededSampler,
    kappa_mode="formal",
) -> AomotoComplex:
    return AomotoComplex(rd, zs, N, sampler, kappa_mode)


def skew_span_dims(n: int, N: int, zs, sampler: SeededSampler, degrees) -> Dict[int, int]:
    """Dimensions of the skew-symmetric part of the full fiber log-monomial
    spaces, via evaluation ranks of symmetrized monomials."""
    out = {}
    for p in degrees:
        monos = fiber_log_monomials(n, N, p)
        skews = [alt(m, N) for m in monos]
        skews = [s for s in skews if not s.is_zero_formally()]
        if not skews:
            out[p] = 0
            continue
        pts = fiber_points(zs, N, sampler.child(0x5E1F ^ p), default_trials(n, N))
        mat = _evaluation_matrix(skews, pts, fiber=True)
        out[p] = mat.rank()
    return out
