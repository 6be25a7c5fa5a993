"""Root data, the free Lie algebra on lowering generators with Lyndon bases,
Verma-type modules with exact operator matrices on weight components, their
contragredient duals, and the sl2 two-site Casimir action.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .scalars import KS, ExactMatrix, KappaScalar

Word = Tuple[int, ...]          # associative word in the lowering generators
MultiDegree = Tuple[int, ...]   # letter counts per color, length r


def multidegree_of_word(w: Word, r: int) -> MultiDegree:
    k = [0] * r
    for letter in w:
        k[letter] += 1
    return tuple(k)


def md_add(a: MultiDegree, b: MultiDegree) -> MultiDegree:
    return tuple(x + y for x, y in zip(a, b))


def md_sub(a: MultiDegree, b: MultiDegree) -> MultiDegree:
    out = tuple(x - y for x, y in zip(a, b))
    if any(x < 0 for x in out):
        raise ValueError(f"negative multidegree {out}")
    return out


def md_total(a: MultiDegree) -> int:
    return sum(a)


def unit_md(r: int, i: int) -> MultiDegree:
    return tuple(1 if j == i else 0 for j in range(r))


def multidegrees_of_total(r: int, total: int) -> List[MultiDegree]:
    """All multidegrees with the given total, lexicographically."""
    if r == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        for rest in multidegrees_of_total(r - 1, total - first):
            out.append((first,) + rest)
    return sorted(out)


class RootData:
    """Symmetrized Cartan data plus the module weights and all pairings.

    b[i][j] = (alpha_i, alpha_j), mu_alpha[s][i] = (mu_s, alpha_i),
    mu_mu[s][u] = (mu_s, mu_u).  Entries live in Q(kappa); ordinary
    rationals are coerced.
    """

    def __init__(self, r: int, b, n: int, mu_alpha, mu_mu):
        if r < 1 or n < 1:
            raise ValueError("need r >= 1 and n >= 1")
        self.r = r
        self.n = n
        self.b = [[KS.coerce(x) for x in row] for row in b]
        self.mu_alpha = [[KS.coerce(x) for x in row] for row in mu_alpha]
        self.mu_mu = [[KS.coerce(x) for x in row] for row in mu_mu]
        if len(self.b) != r or any(len(row) != r for row in self.b):
            raise ValueError("b must be r x r")
        if len(self.mu_alpha) != n or any(len(row) != r for row in self.mu_alpha):
            raise ValueError("mu_alpha must be n x r")
        if len(self.mu_mu) != n or any(len(row) != n for row in self.mu_mu):
            raise ValueError("mu_mu must be n x n")
        for i in range(r):
            for j in range(r):
                if self.b[i][j] != self.b[j][i]:
                    raise ValueError("b must be symmetric")
        for s in range(n):
            for u in range(n):
                if self.mu_mu[s][u] != self.mu_mu[u][s]:
                    raise ValueError("mu_mu must be symmetric")

    @staticmethod
    def sl2(ms: Sequence) -> "RootData":
        """Rank-one data for weights m_1..m_n with the standard pairings
        (alpha, alpha) = 2, (mu_s, alpha) = m_s, (mu_s, mu_u) = m_s m_u / 2."""
        ms = [KS.coerce(m) for m in ms]
        n = len(ms)
        half = KS.from_fraction(Fraction(1, 2))
        return RootData(
            r=1,
            b=[[KS.coerce(2)]],
            n=n,
            mu_alpha=[[m] for m in ms],
            mu_mu=[[half * ms[s] * ms[u] for u in range(n)] for s in range(n)],
        )

    def is_sl2(self) -> bool:
        return self.r == 1 and self.b[0][0] == KS.coerce(2)

    def sl2_weights(self) -> list:
        if self.r != 1:
            raise ValueError("rank-one data required")
        return [self.mu_alpha[s][0] for s in range(self.n)]

    def alpha_pairing(self, i: int, j: int) -> KappaScalar:
        return self.b[i][j]

    def weight_alpha_pairing(self, s: int, i: int) -> KappaScalar:
        return self.mu_alpha[s][i]

    def weight_pairing(self, s: int, u: int) -> KappaScalar:
        return self.mu_mu[s][u]


class ColorMap:
    """A surjection-with-multiplicities [N] -> [r] assigning a simple root
    color to each t-coordinate; fibers have prescribed sizes."""

    def __init__(self, colors: Sequence[int], k: MultiDegree):
        self.colors = tuple(colors)
        self.k = tuple(k)
        counts = [0] * len(k)
        for c in self.colors:
            if not (0 <= c < len(k)):
                raise ValueError(f"color {c} out of range")
            counts[c] += 1
        if tuple(counts) != self.k:
            raise ValueError(
                f"fiber sizes {tuple(counts)} do not match multidegree {self.k}"
            )

    @staticmethod
    def standard(k: MultiDegree) -> "ColorMap":
        colors = []
        for i, ki in enumerate(k):
            colors.extend([i] * ki)
        return ColorMap(colors, k)

    def __len__(self):
        return len(self.colors)


# ---------------------------------------------------------------------------
# Lyndon words and the free Lie algebra
# ---------------------------------------------------------------------------

def is_lyndon(w: Word) -> bool:
    if not w:
        return False
    for i in range(1, len(w)):
        if w[i:] <= w:
            return False
    return True


def words_of_content(content: MultiDegree) -> List[Word]:
    """All distinct words with the given letter counts, lexicographically."""
    letters = []
    for i, c in enumerate(content):
        letters.extend([i] * c)
    return sorted(set(itertools.permutations(letters)))


def lyndon_words_of_content(content: MultiDegree) -> List[Word]:
    return [w for w in words_of_content(content) if is_lyndon(w)]


def standard_factorization(w: Word) -> Tuple[Word, Word]:
    """w = uv with v the longest proper Lyndon suffix."""
    if len(w) < 2:
        raise ValueError("cannot factor a single letter")
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} is not factorable")  # unreachable for Lyndon input


_EXPANSION_CACHE: Dict[Word, Dict[Word, Fraction]] = {}


def expand_lyndon(w: Word) -> Dict[Word, Fraction]:
    """Expansion of the standard bracketing of a Lyndon word in the free
    associative algebra."""
    if w in _EXPANSION_CACHE:
        return _EXPANSION_CACHE[w]
    if len(w) == 1:
        out = {w: Fraction(1)}
    else:
        u, v = standard_factorization(w)
        out = _assoc_commutator(expand_lyndon(u), expand_lyndon(v))
    _EXPANSION_CACHE[w] = out
    return out


def _assoc_mul(a: Dict[Word, Fraction], b: Dict[Word, Fraction]):
    out: Dict[Word, Fraction] = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            key = wa + wb
            c = out.get(key, Fraction(0)) + ca * cb
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return out


def _assoc_commutator(a, b):
    ab = _assoc_mul(a, b)
    ba = _assoc_mul(b, a)
    for k, c in ba.items():
        c2 = ab.get(k, Fraction(0)) - c
        if c2:
            ab[k] = c2
        elif k in ab:
            del ab[k]
    return ab


class LieElement:
    """A finite Q(kappa)-combination of Lyndon basis words."""

    def __init__(self, terms: Dict[Word, KappaScalar] | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    @staticmethod
    def generator(i: int) -> "LieElement":
        return LieElement({(i,): KS.one()})

    @staticmethod
    def basis_word(w: Word) -> "LieElement":
        return LieElement({tuple(w): KS.one()})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, KS.zero()) + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return LieElement(out)

    def scale(self, c) -> "LieElement":
        c = KS.coerce(c)
        return LieElement({w: c * x for w, x in self.terms.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.terms

    def expand(self) -> Dict[Word, KappaScalar]:
        """Image in the free associative algebra."""
        out: Dict[Word, KappaScalar] = {}
        for w, c in self.terms.items():
            for aw, ac in expand_lyndon(w).items():
                s = out.get(aw, KS.zero()) + c * KS.from_fraction(ac)
                if s.is_zero():
                    out.pop(aw, None)
                else:
                    out[aw] = s
        return out

    def __eq__(self, other):
        return isinstance(other, LieElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "LieElement(0)"
        return "LieElement(" + " + ".join(
            f"({c})*{w}" for w, c in sorted(self.terms.items())
        ) + ")"


_REWRITE_CACHE: Dict[MultiDegree, Tuple[List[Word], List[Word], ExactMatrix]] = {}


def _rewrite_setup(content: MultiDegree):
    if content in _REWRITE_CACHE:
        return _REWRITE_CACHE[content]
    basis = lyndon_words_of_content(content)
    words = words_of_content(content)
    widx = {w: i for i, w in enumerate(words)}
    cols = []
    for bw in basis:
        col = [KS.zero()] * len(words)
        for aw, c in expand_lyndon(bw).items():
            col[widx[aw]] = KS.from_fraction(c)
        cols.append(col)
    mat = ExactMatrix([[cols[j][i] for j in range(len(basis))] for i in range(len(words))])
    _REWRITE_CACHE[content] = (basis, words, mat)
    return _REWRITE_CACHE[content]


def to_lyndon_basis(assoc: Dict[Word, KappaScalar], r: int) -> LieElement:
    """Rewrite a Lie element given by its associative expansion in the
    Lyndon basis.  Raises if the input is not in the Lie subspace."""
    by_content: Dict[MultiDegree, Dict[Word, KappaScalar]] = {}
    for w, c in assoc.items():
        by_content.setdefault(multidegree_of_word(w, r), {})[w] = c
    total: Dict[Word, KappaScalar] = {}
    for content, part in by_content.items():
        basis, words, mat = _rewrite_setup(content)
        rhs = [part.get(w, KS.zero()) for w in words]
        sol = mat.solve(rhs)
        if sol is None:
            raise ValueError("element is not in the free Lie algebra")
        for bw, c in zip(basis, sol):
            if not c.is_zero():
                total[bw] = total.get(bw, KS.zero()) + c
    return LieElement(total)


def bracket(x: LieElement, y: LieElement, r: int) -> LieElement:
    """Lie bracket, expanded in the Lyndon basis."""
    return to_lyndon_basis(_assoc_commutator_ks(x.expand(), y.expand()), r)


def _assoc_commutator_ks(a: Dict[Word, KappaScalar], b: Dict[Word, KappaScalar]):
    out: Dict[Word, KappaScalar] = {}

    def acc(w, c):
        s = out.get(w, KS.zero()) + c
        if s.is_zero():
            out.pop(w, None)
        else:
            out[w] = s

    for wa, ca in a.items():
        for wb, cb in b.items():
            acc(wa + wb, ca * cb)
            acc(wb + wa, -(ca * cb))
    return out


def lyndon_basis(rd: RootData, content: MultiDegree) -> List[Word]:
    """Lyndon basis of the multidegree component of the free Lie algebra."""
    if len(content) != rd.r:
        raise ValueError("multidegree length must equal the rank")
    return lyndon_words_of_content(content)


def bracket_span_dim(r: int, content: MultiDegree) -> int:
    """Brute-force oracle: rank of the span of all bracket monomials of the
    given multidegree inside the free associative algebra."""
    spans: Dict[MultiDegree, List[Dict[Word, Fraction]]] = {}

    def span(c: MultiDegree) -> List[Dict[Word, Fraction]]:
        if c in spans:
            return spans[c]
        total = md_total(c)
        out: List[Dict[Word, Fraction]] = []
        if total == 1:
            i = c.index(1)
            out = [{(i,): Fraction(1)}]
        else:
            seen = set()
            lowers = [
                m
                for t in range(1, total)
                for m in multidegrees_of_total(r, t)
                if all(mi <= ci for mi, ci in zip(m, c))
            ]
            for c1 in lowers:
                c2 = md_sub(c, c1)
                if md_total(c2) == 0 or (c2, c1) in seen:
                    continue
                seen.add((c1, c2))
                for a in span(c1):
                    for b in span(c2):
                        v = _assoc_commutator(a, b)
                        if v:
                            out.append(v)
        spans[c] = out
        return out

    vectors = span(tuple(content))
    if not vectors:
        return 0
    words = words_of_content(tuple(content))
    widx = {w: i for i, w in enumerate(words)}
    rows = []
    for v in vectors:
        row = [KS.zero()] * len(words)
        for w, cf in v.items():
            row[widx[w]] = KS.from_fraction(cf)
        rows.append(row)
    return ExactMatrix(rows).rank()


# ---------------------------------------------------------------------------
# Verma tensor products with exact operator matrices
# ---------------------------------------------------------------------------

class TensorVerma:
    """The tensor product of Verma-type modules over the algebra generated
    by e_i, f_i, h with relations [e_i, f_j] = delta_ij h_i,
    [h, e_i] = alpha_i(h) e_i, [h, f_i] = -alpha_i(h) f_i.

    Basis of the multidegree-k component: tuples of one word per factor with
    the letter counts summing to k.  f_i prepends a letter; e_i deletes
    letters with coefficients read off the pairings.
    """

    def __init__(self, rd: RootData):
        self.rd = rd
        self._basis_cache: Dict[MultiDegree, List[Tuple[Word, ...]]] = {}

    def basis(self, k: MultiDegree) -> List[Tuple[Word, ...]]:
        k = tuple(k)
        if k not in self._basis_cache:
            n = self.rd.n
            out = []
            for distribution in self._distributions(k, n):
                word_choices = [words_of_content(c) for c in distribution]
                for combo in itertools.product(*word_choices):
                    out.append(tuple(combo))
            self._basis_cache[k] = out
        return self._basis_cache[k]

    def _distributions(self, k: MultiDegree, n: int):
        """All ways to split the multidegree k into n factor multidegrees,
        earlier factors carrying higher degree first."""
        if n == 1:
            return [(k,)]
        out = []
        ranges = [range(ki, -1, -1) for ki in k]
        for head in itertools.product(*ranges):
            rest = tuple(ki - hi for ki, hi in zip(k, head))
            for tail in self._distributions(rest, n - 1):
                out.append((tuple(head),) + tail)
        return out

    def dim(self, k: MultiDegree) -> int:
        return len(self.basis(k))

    # -- generator actions as sparse maps on basis elements ------------------

    def act_f_basis(self, i: int, el: Tuple[Word, ...]):
        """f_i on a basis tensor: sum over factors of letter prepension."""
        out = []
        for s in range(self.rd.n):
            new = el[:s] + (((i,) + el[s]),) + el[s + 1 :]
            out.append((new, KS.one()))
        return out

    def act_e_basis(self, i: int, el: Tuple[Word, ...]):
        """e_i on a basis tensor: per factor, delete matching letters with
        the pairing coefficient of the remaining tail weight."""
        rd = self.rd
        out = []
        for s in range(rd.n):
            w = el[s]
            for p, letter in enumerate(w):
                if letter != i:
                    continue
                coeff = rd.weight_alpha_pairing(s, i)
                for q in range(p + 1, len(w)):
                    coeff = coeff - rd.alpha_pairing(w[q], i)
                if coeff.is_zero():
                    continue
                new = el[:s] + (w[:p] + w[p + 1 :],) + el[s + 1 :]
                out.append((new, coeff))
        return out

    def weight_eigenvalue(self, el: Tuple[Word, ...], i: int) -> KappaScalar:
        """Pairing of the weight of a basis tensor with alpha_i."""
        rd = self.rd
        acc = KS.zero()
        for s in range(rd.n):
            acc = acc + rd.weight_alpha_pairing(s, i)
            for letter in el[s]:
                acc = acc - rd.alpha_pairing(letter, i)
        return acc

    # -- matrices on weight components ---------------------------------------

    def _as_matrix(self, images, src: List, dst: List) -> ExactMatrix:
        idx = {b: j for j, b in enumerate(dst)}
        cols = []
        for el in src:
            col = [KS.zero()] * len(dst)
            for tgt, c in images(el):
                col[idx[tgt]] = col[idx[tgt]] + c
            cols.append(col)
        return ExactMatrix(
            [[cols[j][i] for j in range(len(src))] for i in range(len(dst))]
        )

    def f_matrix(self, i: int, k: MultiDegree) -> ExactMatrix:
        """Matrix of f_i from component k to component k + alpha_i count."""
        src = self.basis(k)
        dst = self.basis(md_add(tuple(k), unit_md(self.rd.r, i)))
        return self._as_matrix(lambda el: self.act_f_basis(i, el), src, dst)

    def e_matrix(self, i: int, k: MultiDegree) -> ExactMatrix:
        src = self.basis(k)
        if k[i] == 0:
            return ExactMatrix.zero(0, len(src))
        dst = self.basis(md_sub(tuple(k), unit_md(self.rd.r, i)))
        return self._as_matrix(lambda el: self.act_e_basis(i, el), src, dst)

    def h_matrix(self, i: int, k: MultiDegree) -> ExactMatrix:
        """Diagonal action of h_i on the component k."""
        src = self.basis(k)
        return ExactMatrix(
            [
                [
                    self.weight_eigenvalue(src[j], i) if j == l else KS.zero()
                    for j in range(len(src))
                ]
                for l in range(len(src))
            ]
        )


class ContragredientTensor:
    """The tensor of restricted duals with the Cartan-involution transpose
    action: f_i acts as the transpose of e_i on the plain tensor, e_i as the
    transpose of f_i, h with the same diagonal weights."""

    def __init__(self, rd: RootData):
        self.rd = rd
        self.plain = TensorVerma(rd)

    def basis(self, k: MultiDegree):
        return self.plain.basis(k)

    def dim(self, k: MultiDegree) -> int:
        return self.plain.dim(k)

    def f_matrix(self, i: int, k: MultiDegree) -> ExactMatrix:
        up = md_add(tuple(k), unit_md(self.rd.r, i))
        return self.plain.e_matrix(i, up).transpose()

    def e_matrix(self, i: int, k: MultiDegree) -> ExactMatrix:
        if k[i] == 0:
            return ExactMatrix.zero(0, self.dim(k))
        down = md_sub(tuple(k), unit_md(self.rd.r, i))
        return self.plain.f_matrix(i, down).transpose()

    def h_matrix(self, i: int, k: MultiDegree) -> ExactMatrix:
        return self.plain.h_matrix(i, k)


def lie_action_matrix(module, w: Word, k: MultiDegree) -> ExactMatrix:
    """Matrix of the standard bracketing of a Lyndon word acting on the
    component k of a module with f_i generator matrices."""
    if len(w) == 1:
        return module.f_matrix(w[0], k)
    u, v = standard_factorization(tuple(w))
    r = module.rd.r
    ku = multidegree_of_word(u, r)
    kv = multidegree_of_word(v, r)
    uv = lie_action_matrix(module, u, md_add(tuple(k), kv)) @ lie_action_matrix(
        module, v, k
    )
    vu = lie_action_matrix(module, v, md_add(tuple(k), ku)) @ lie_action_matrix(
        module, u, k
    )
    return uv - vu


# ---------------------------------------------------------------------------
# sl2 Casimir
# ---------------------------------------------------------------------------

def casimir_sl2(rd: RootData, i: int, j: int, k: MultiDegree) -> ExactMatrix:
    """Matrix of the two-site sl2 Casimir (h x h)/2 + e x f + f x e acting
    through factors i and j on the weight-k component of the plain Verma
    tensor.  Requires rank-one data with (alpha, alpha) = 2."""
    if not rd.is_sl2():
        raise ValueError("sl2 Casimir needs rank-one data with (alpha,alpha)=2")
    if i == j:
        raise ValueError("the two factors must differ")
    k = tuple(k)
    module = TensorVerma(rd)
    basis = module.basis(k)
    ms = rd.sl2_weights()
    idx = {b: p for p, b in enumerate(basis)}
    half = KS.from_fraction(Fraction(1, 2))
    cols = []
    for el in basis:
        col = [KS.zero()] * len(basis)
        a, b = len(el[i]), len(el[j])
        hi = ms[i] - KS.coerce(2 * a)
        hj = ms[j] - KS.coerce(2 * b)
        col[idx[el]] = half * hi * hj
        # e on factor i, f on factor j
        if a >= 1:
            ce = KS.coerce(a) * (ms[i] - KS.coerce(a - 1))
            tgt = _sl2_shift(el, i, a - 1, j, b + 1)
            col[idx[tgt]] = col[idx[tgt]] + ce
        # f on factor i, e on factor j
        if b >= 1:
            ce = KS.coerce(b) * (ms[j] - KS.coerce(b - 1))
            tgt = _sl2_shift(el, i, a + 1, j, b - 1)
            col[idx[tgt]] = col[idx[tgt]] + ce
        cols.append(col)
    return ExactMatrix(
        [[cols[c][r_] for c in range(len(basis))] for r_ in range(len(basis))]
    )


def _sl2_shift(el, i, new_a, j, new_b):
    out = list(el)
    out[i] = (0,) * new_a
    out[j] = (0,) * new_b
    return tuple(out)
