"""Chain complexes of the free lowering algebra with coefficients in tensor
products of contragredient Verma-type modules, graded by multidegree, with
exact differentials, dual cochain complexes, and homology dimensions.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Tuple

from .liealg import (
    ContragredientTensor,
    RootData,
    Word,
    MultiDegree,
    bracket,
    LieElement,
    lie_action_matrix,
    lyndon_words_of_content,
    md_add,
    md_sub,
    md_total,
    multidegree_of_word,
    multidegrees_of_total,
)
from .scalars import KS, ExactMatrix


Wedge = Tuple[Word, ...]  # strictly increasing tuple of Lyndon words


def lyndon_sort_key(w: Word):
    return (len(w), w)


class ChainBasisElement:
    """A wedge of Lyndon basis words tensored with a module basis tuple."""

    __slots__ = ("wedge", "module")

    def __init__(self, wedge: Wedge, module: Tuple[Word, ...]):
        self.wedge = tuple(tuple(w) for w in wedge)
        self.module = tuple(tuple(w) for w in module)

    def key(self):
        return (self.wedge, self.module)

    def __eq__(self, other):
        return isinstance(other, ChainBasisElement) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Chain({self.wedge} (x) {self.module})"


def wedge_insert(word: Word, wedge: Wedge):
    """Insert a Lyndon word into a strictly increasing wedge.

    Returns (sign, new_wedge) or None when the word repeats."""
    key = lyndon_sort_key(word)
    pos = 0
    for i, w in enumerate(wedge):
        k = lyndon_sort_key(w)
        if k == key:
            return None
        if k < key:
            pos = i + 1
    sign = -1 if pos % 2 else 1
    return sign, wedge[:pos] + (tuple(word),) + wedge[pos:]


class GradedComplex:
    """A finite complex with indexed bases and exact differential matrices.

    ``kind`` is "chain" (d lowers the degree) or "cochain" (d raises it).
    Bases are stored per degree; ``diff[q]`` is the matrix out of degree q.
    """

    def __init__(self, kind: str, basis: Dict[int, list], diff: Dict[int, ExactMatrix]):
        if kind not in ("chain", "cochain"):
            raise ValueError("kind must be chain or cochain")
        self.kind = kind
        self.basis = dict(basis)
        self.diff = dict(diff)
        self._check_composition()

    def degrees(self) -> List[int]:
        return sorted(self.basis)

    def dim(self, q: int) -> int:
        return len(self.basis.get(q, []))

    def dims(self) -> Dict[int, int]:
        return {q: self.dim(q) for q in self.degrees()}

    def _next_degree(self, q: int) -> int:
        return q - 1 if self.kind == "chain" else q + 1

    def differential(self, q: int) -> ExactMatrix:
        if q in self.diff:
            return self.diff[q]
        return ExactMatrix.zero(self.dim(self._next_degree(q)), self.dim(q))

    def _check_composition(self):
        for q in self.degrees():
            d1 = self.differential(q)
            d2 = self.differential(self._next_degree(q))
            if d1.rows != d2.cols:
                raise ValueError(f"differential shapes disagree at degree {q}")
            if not (d2 @ d1).is_zero():
                raise ValueError(f"d o d != 0 out of degree {q}")

    def homology_dims(self) -> Dict[int, int]:
        out = {}
        for q in self.degrees():
            d_out = self.differential(q)
            rank_out = d_out.rank()
            prev = q + 1 if self.kind == "chain" else q - 1
            rank_in = self.differential(prev).rank() if prev in self.basis else 0
            out[q] = self.dim(q) - rank_out - rank_in
        return out

    def kernel_bases(self) -> Dict[int, list]:
        return {q: self.differential(q).kernel_basis() for q in self.degrees()}

    def euler_characteristic(self) -> int:
        sign = lambda q: -1 if q % 2 else 1
        return sum(sign(q) * self.dim(q) for q in self.degrees())

    def reported_degrees(self) -> Dict[int, int]:
        """Map from internal degrees to reporting labels: chain degrees are
        reported as nonpositive integers, cochain degrees as written."""
        if self.kind == "chain":
            return {q: -q for q in self.degrees()}
        return {q: q for q in self.degrees()}


def _wedge_choices(lam: MultiDegree, l: int) -> List[Wedge]:
    """All strictly increasing l-tuples of Lyndon words whose total content
    fits inside lam."""
    r = len(lam)
    pool: List[Word] = []
    for total in range(1, md_total(lam) + 1):
        for content in multidegrees_of_total(r, total):
            if all(c <= lam[i] for i, c in enumerate(content)):
                pool.extend(lyndon_words_of_content(content))
    pool.sort(key=lyndon_sort_key)
    out = []
    for combo in itertools.combinations(pool, l):
        tot = [0] * r
        for w in combo:
            for letter in w:
                tot[letter] += 1
        if all(t <= lam[i] for i, t in enumerate(tot)):
            out.append(tuple(combo))
    return out


def _wedge_content(wedge: Wedge, r: int) -> MultiDegree:
    tot = [0] * r
    for w in wedge:
        for letter in w:
            tot[letter] += 1
    return tuple(tot)


def build_chain_complex(rd: RootData, lam: MultiDegree) -> GradedComplex:
    """The multidegree-lam component of the chain complex of the free
    lowering algebra with coefficients in the contragredient tensor module.

    Degrees run 0..total(lam); the differential follows
    d(g (x) x) = g x and
    d(g1 ^ g2 (x) x) = g1 (x) g2 x - g2 (x) g1 x - [g1,g2] (x) x,
    extended by the alternating-sum rule consistent with both displays.
    """
    lam = tuple(lam)
    r = rd.r
    N = md_total(lam)
    module = ContragredientTensor(rd)

    basis: Dict[int, List[ChainBasisElement]] = {}
    index: Dict[int, Dict[tuple, int]] = {}
    for l in range(0, N + 1):
        els = []
        for wedge in _wedge_choices(lam, l):
            mod_content = md_sub(lam, _wedge_content(wedge, r))
            for tup in module.basis(mod_content):
                els.append(ChainBasisElement(wedge, tup))
        basis[l] = els
        index[l] = {el.key(): i for i, el in enumerate(els)}

    # cache of module action matrices per (word, source component)
    act_cache: Dict[tuple, ExactMatrix] = {}

    def action(word: Word, comp: MultiDegree) -> ExactMatrix:
        key = (tuple(word), tuple(comp))
        if key not in act_cache:
            act_cache[key] = lie_action_matrix(module, tuple(word), tuple(comp))
        return act_cache[key]

    bracket_cache: Dict[tuple, LieElement] = {}

    def lyndon_bracket(u: Word, v: Word) -> LieElement:
        key = (tuple(u), tuple(v))
        if key not in bracket_cache:
            bracket_cache[key] = bracket(
                LieElement.basis_word(u), LieElement.basis_word(v), r
            )
        return bracket_cache[key]

    diff: Dict[int, ExactMatrix] = {}
    for l in range(1, N + 1):
        src = basis[l]
        dst = basis[l - 1]
        dst_idx = index[l - 1]
        cols = []
        for el in src:
            col = [KS.zero()] * len(dst)
            wedge, tup = el.wedge, el.module
            comp = md_sub(lam, _wedge_content(wedge, r))
            ll = len(wedge)
            # module action terms
            for p in range(ll):
                gp = wedge[p]
                rest = wedge[:p] + wedge[p + 1 :]
                sign = -1 if (ll - (p + 1)) % 2 else 1
                mat = action(gp, comp)
                src_basis = module.basis(comp)
                tgt_basis = module.basis(md_add(comp, multidegree_of_word(gp, r)))
                j = src_basis.index(tup)
                for i_row, tgt in enumerate(tgt_basis):
                    c = mat.entries[i_row][j]
                    if c.is_zero():
                        continue
                    key = (rest, tgt)
                    col[dst_idx[key]] = col[dst_idx[key]] + KS.coerce(sign) * c
            # bracket terms
            for p in range(ll):
                for q in range(p + 1, ll):
                    sign_pq = -1 if ((p + 1) + (q + 1) + ll) % 2 else 1
                    rest = tuple(
                        w for idx, w in enumerate(wedge) if idx not in (p, q)
                    )
                    br = lyndon_bracket(wedge[p], wedge[q])
                    for bw, bc in br.terms.items():
                        ins = wedge_insert(bw, rest)
                        if ins is None:
                            continue
                        s2, new_wedge = ins
                        key = (new_wedge, tup)
                        col[dst_idx[key]] = col[dst_idx[key]] + KS.coerce(
                            sign_pq * s2
                        ) * bc
            cols.append(col)
        diff[l] = ExactMatrix(
            [[cols[c][i] for c in range(len(src))] for i in range(len(dst))],
            cols=len(src),
        )

    return GradedComplex("chain", basis, diff)


def dual_complex(c: GradedComplex) -> GradedComplex:
    """Transpose all differentials; chain becomes cochain and conversely.
    Bases are kept as the same index sets (interpreted as dual bases)."""
    if c.kind == "chain":
        new_diff = {}
        for l, d in c.diff.items():
            new_diff[l - 1] = d.transpose()
        return GradedComplex("cochain", dict(c.basis), new_diff)
    new_diff = {}
    for q, d in c.diff.items():
        new_diff[q + 1] = d.transpose()
    return GradedComplex("chain", dict(c.basis), new_diff)


def homology_dims(c: GradedComplex) -> Dict[int, int]:
    return c.homology_dims()
