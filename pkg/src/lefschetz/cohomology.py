"""Chevalley-Eilenberg cohomology of the nilradical, graded by Cartan weight.

Cochains C^q = V ⊗ ∧^q n* are indexed by (module basis index, q-subset of
n-roots); the differential preserves the h-weight, so all rank computations
happen blockwise per weight.  An independent prediction of the cohomology
(minimal coset representatives acting on the shifted highest weight, with
Levi weight multiplicities from Freudenthal's recursion) serves as an oracle,
and homology is computed from chains V ⊗ ∧^p n for the duality check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .algebra import ParabolicSplit, WeightModule, _add, _neg, _sub
from .exact import ExactMatrix, LaurentCharacter, Weight, rank_and_kernel
from .roots import RootDatum, WeylElement


# ---------------------------------------------------------------------------
# Weight multiplicities via Freudenthal's recursion (independent oracle)


def _half_sum(datum: RootDatum, roots) -> tuple[Fraction, ...]:
    total = [Fraction(0)] * datum.rank
    for r in roots:
        for j, c in enumerate(r):
            total[j] += Fraction(c, 2)
    return tuple(total)


def levi_positive_roots(datum: RootDatum, levi) -> list[Weight]:
    """Positive roots supported on the given simple-root subset."""
    levi = set(levi)
    out = []
    for r in datum.positive_roots:
        coords = datum.root_coordinates(r)
        if all(coords[i] == 0 for i in range(datum.rank) if i not in levi):
            out.append(r)
    return out


def weight_multiplicities(datum: RootDatum, lam, levi=None) -> dict[Weight, int]:
    """Weight multiplicities of the irreducible module with highest weight lam
    for the (sub)system spanned by the `levi` simple roots (default: all),
    computed by Freudenthal's recursion."""
    if levi is None:
        levi = range(datum.rank)
    levi = sorted(set(levi))
    lam = tuple(int(c) for c in lam)
    if any(lam[i] < 0 for i in levi):
        raise ValueError(f"weight {lam} is not dominant for the subsystem")
    if not levi:
        return {lam: 1}
    pos = levi_positive_roots(datum, levi)
    rho_l = _half_sum(datum, pos)

    def shifted_norm(mu):
        v = tuple(Fraction(a) + b for a, b in zip(mu, rho_l))
        return datum.inner(v, v)

    top = shifted_norm(lam)
    mult: dict[Weight, int] = {lam: 1}
    level = [lam]
    while level:
        candidates = set()
        for mu in level:
            for i in levi:
                candidates.add(_sub(mu, datum.simple_roots[i]))
        nxt = []
        for mu in sorted(candidates):
            if mu in mult:
                continue
            rhs = Fraction(0)
            for alpha in pos:
                k = 1
                nu = _add(mu, alpha)
                while nu in mult:
                    rhs += 2 * mult[nu] * datum.inner(nu, alpha)
                    k += 1
                    nu = _add(mu, tuple(k * c for c in alpha))
            denom = top - shifted_norm(mu)
            if rhs == 0:
                continue
            val = rhs / denom
            assert val.denominator == 1 and val >= 0
            if val:
                mult[mu] = int(val)
                nxt.append(mu)
        level = nxt
    return mult


def irreducible_character(datum: RootDatum, lam, levi=None) -> LaurentCharacter:
    return LaurentCharacter(datum.rank, weight_multiplicities(datum, lam, levi))


# ---------------------------------------------------------------------------
# The Chevalley-Eilenberg complex


class CEComplex:
    """Cochain complex of V ⊗ ∧^q n*, stored blockwise per h-weight."""

    def __init__(self, split: ParabolicSplit, mod: WeightModule):
        self.split = split
        self.module = mod
        self.n_roots = list(split.n_roots)
        self.top = len(self.n_roots)
        # bases[q]: weight -> list of (module index, sorted tuple of root indices)
        self.bases: list[dict[Weight, list[tuple[int, tuple[int, ...]]]]] = []
        for q in range(self.top + 1):
            blocks: dict[Weight, list] = {}
            for subset in combinations(range(self.top), q):
                shift = (0,) * len(mod.highest_weight)
                for k in subset:
                    shift = _sub(shift, self.n_roots[k])
                for j, wt in enumerate(mod.basis_weights):
                    blocks.setdefault(_add(wt, shift), []).append((j, subset))
            self.bases.append(blocks)
        self.differentials: list[dict[Weight, ExactMatrix]] = [
            self._differential(q) for q in range(self.top)
        ]

    def cochain_dimension(self, q: int) -> int:
        if not 0 <= q <= self.top:
            return 0
        return sum(len(v) for v in self.bases[q].values())

    def _differential(self, q: int) -> dict[Weight, ExactMatrix]:
        """Blocks of d_q : C^q -> C^{q+1}."""
        mod = self.module
        sc = self.split.algebra.constants
        n_index = {r: k for k, r in enumerate(self.n_roots)}
        src = self.bases[q]
        dst = self.bases[q + 1]
        dst_pos = {
            wt: {lab: i for i, lab in enumerate(labels)} for wt, labels in dst.items()
        }
        out: dict[Weight, ExactMatrix] = {}
        for wt, labels in src.items():
            rows = sum(len(v) for k, v in dst.items() if k == wt)
            mat = ExactMatrix(len(dst.get(wt, [])), len(labels))
            pos = dst_pos.get(wt, {})
            for col, (j, subset) in enumerate(labels):
                # module-action part: insert a new root factor
                for k in range(self.top):
                    if k in subset:
                        continue
                    new = tuple(sorted(subset + (k,)))
                    sign = (-1) ** new.index(k)
                    act = mod.action[("e", self.n_roots[k])]
                    for jp in range(mod.dimension):
                        c = act[jp, j]
                        if c:
                            mat[pos[(jp, new)], col] += sign * c
                # bracket part: split one factor into a bracketing pair
                for t, kg in enumerate(subset):
                    gamma = self.n_roots[kg]
                    rest = subset[:t] + subset[t + 1 :]
                    sign_g = (-1) ** t
                    for ka, kb in combinations(range(self.top), 2):
                        if ka in rest or kb in rest:
                            continue
                        if _add(self.n_roots[ka], self.n_roots[kb]) != gamma:
                            continue
                        nval = sc.n(self.n_roots[ka], self.n_roots[kb])
                        if nval == 0:
                            continue
                        new = tuple(sorted(rest + (ka, kb)))
                        i_a = new.index(ka)
                        i_b = new.index(kb)
                        coeff = sign_g * ((-1) ** (i_a + i_b)) * nval
                        mat[pos[(j, new)], col] += coeff
            out[wt] = mat
        return out

    def verify_complex(self) -> bool:
        """d_{q+1} ∘ d_q = 0 on every weight block."""
        for q in range(self.top - 1):
            for wt, d0 in self.differentials[q].items():
                d1 = self.differentials[q + 1].get(wt)
                if d1 is None or d1.cols == 0 or d0.cols == 0:
                    continue
                if not (d1 @ d0).is_zero():
                    return False
        return True


def build_ce_complex(split: ParabolicSplit, mod: WeightModule) -> CEComplex:
    return CEComplex(split, mod)


# ---------------------------------------------------------------------------
# Dimension tables


@dataclass
class CohomologyTable:
    """Weight-graded dimensions per degree, with the a-weight pushforward."""

    split: ParabolicSplit
    degrees: list[dict[Weight, int]]  # h-weight -> dimension, per degree

    def dimension(self, q: int) -> int:
        if not 0 <= q < len(self.degrees):
            return 0
        return sum(self.degrees[q].values())

    def a_degrees(self) -> list[dict[tuple[Fraction, ...], int]]:
        out = []
        for table in self.degrees:
            block: dict[tuple[Fraction, ...], int] = {}
            for wt, d in table.items():
                key = self.split.restrict_to_a(wt)
                block[key] = block.get(key, 0) + d
            out.append(block)
        return out

    def euler_character(self) -> LaurentCharacter:
        rank = self.split.datum.rank
        total = LaurentCharacter.zero(rank)
        for q, table in enumerate(self.degrees):
            ch = LaurentCharacter(rank, dict(table))
            total = total + ch if q % 2 == 0 else total - ch
        return total

    def degree_character(self, q: int) -> LaurentCharacter:
        rank = self.split.datum.rank
        if not 0 <= q < len(self.degrees):
            return LaurentCharacter.zero(rank)
        return LaurentCharacter(rank, dict(self.degrees[q]))

    def __eq__(self, other):
        if not isinstance(other, CohomologyTable):
            return NotImplemented
        n = max(len(self.degrees), len(other.degrees))
        for q in range(n):
            a = self.degrees[q] if q < len(self.degrees) else {}
            b = other.degrees[q] if q < len(other.degrees) else {}
            if a != b:
                return False
        return True

    def to_json_obj(self) -> dict:
        def fmt_a(key):
            return [str(x) for x in key]

        return {
            "degrees": [
                {
                    "q": q,
                    "dimension": self.dimension(q),
                    "h_weights": [
                        {"w": list(w), "dim": d} for w, d in sorted(table.items())
                    ],
                    "a_weights": [
                        {"lambda": fmt_a(k), "dim": d}
                        for k, d in sorted(self.a_degrees()[q].items())
                    ],
                }
                for q, table in enumerate(self.degrees)
            ],
        }


def cohomology_table(cx: CEComplex) -> CohomologyTable:
    degrees: list[dict[Weight, int]] = []
    for q in range(cx.top + 1):
        table: dict[Weight, int] = {}
        for wt, labels in cx.bases[q].items():
            dim_c = len(labels)
            r_out = 0
            if q < cx.top:
                d = cx.differentials[q].get(wt)
                if d is not None and d.cols:
                    r_out, _ = rank_and_kernel(d)
            r_in = 0
            if q > 0:
                d = cx.differentials[q - 1].get(wt)
                if d is not None and d.cols:
                    r_in, _ = rank_and_kernel(d)
            h = dim_c - r_out - r_in
            if h:
                table[wt] = h
        degrees.append(table)
    return CohomologyTable(cx.split, degrees)


def kostant_prediction(
    datum: RootDatum, split: ParabolicSplit, lam
) -> CohomologyTable:
    """Predicted cohomology: for each minimal coset representative w of
    length q, the subsystem module with highest weight w(lam+rho)-rho."""
    lam = tuple(int(c) for c in lam)
    if not datum.is_dominant(lam):
        raise ValueError(f"weight {lam} is not dominant")
    levi = sorted(split.levi)
    simple = [datum.simple_roots[i] for i in levi]
    degrees: list[dict[Weight, int]] = [
        {} for _ in range(len(split.n_roots) + 1)
    ]
    for w in datum.weyl_group():
        inv = w.matrix.inverse()
        if not all(
            datum._is_positive(tuple(int(x) for x in inv.apply(list(a))))
            for a in simple
        ):
            continue
        mu = datum.dot_action(w, lam)
        table = degrees[w.length]
        for wt, m in weight_multiplicities(datum, mu, levi).items():
            table[wt] = table.get(wt, 0) + m
    return CohomologyTable(split, degrees)


# ---------------------------------------------------------------------------
# Homology and duality


class ChainComplex:
    """Chains V ⊗ ∧^p n with the Koszul boundary, blockwise per h-weight."""

    def __init__(self, split: ParabolicSplit, mod: WeightModule):
        self.split = split
        self.module = mod
        self.n_roots = list(split.n_roots)
        self.top = len(self.n_roots)
        self.bases: list[dict[Weight, list[tuple[int, tuple[int, ...]]]]] = []
        for p in range(self.top + 1):
            blocks: dict[Weight, list] = {}
            for subset in combinations(range(self.top), p):
                shift = (0,) * len(mod.highest_weight)
                for k in subset:
                    shift = _add(shift, self.n_roots[k])
                for j, wt in enumerate(mod.basis_weights):
                    blocks.setdefault(_add(wt, shift), []).append((j, subset))
            self.bases.append(blocks)
        self.boundaries: list[dict[Weight, ExactMatrix]] = [
            self._boundary(p) for p in range(1, self.top + 1)
        ]

    def _boundary(self, p: int) -> dict[Weight, ExactMatrix]:
        """Blocks of ∂_p : C_p -> C_{p-1}."""
        mod = self.module
        sc = self.split.algebra.constants
        src = self.bases[p]
        dst = self.bases[p - 1]
        dst_pos = {
            wt: {lab: i for i, lab in enumerate(labels)} for wt, labels in dst.items()
        }
        out: dict[Weight, ExactMatrix] = {}
        for wt, labels in src.items():
            mat = ExactMatrix(len(dst.get(wt, [])), len(labels))
            pos = dst_pos.get(wt, {})
            for col, (j, subset) in enumerate(labels):
                for t, k in enumerate(subset):
                    rest = subset[:t] + subset[t + 1 :]
                    sign = (-1) ** t
                    act = mod.action[("e", self.n_roots[k])]
                    for jp in range(mod.dimension):
                        c = act[jp, j]
                        if c:
                            mat[pos[(jp, rest)], col] += sign * c
                for t, u in combinations(range(p), 2):
                    ka, kb = subset[t], subset[u]
                    gamma = _add(self.n_roots[ka], self.n_roots[kb])
                    if gamma not in sc.index:
                        continue
                    kg = self.n_roots.index(gamma)
                    rest = tuple(x for x in subset if x not in (ka, kb))
                    if kg in rest:
                        continue
                    nval = sc.n(self.n_roots[ka], self.n_roots[kb])
                    if nval == 0:
                        continue
                    new = tuple(sorted(rest + (kg,)))
                    coeff = -((-1) ** (t + u)) * ((-1) ** new.index(kg)) * nval
                    mat[pos[(j, new)], col] += coeff
            out[wt] = mat
        return out

    def verify_complex(self) -> bool:
        for p in range(2, self.top + 1):
            for wt, dp in self.boundaries[p - 1].items():
                dpm = self.boundaries[p - 2].get(wt)
                if dpm is None or dp.cols == 0:
                    continue
                if not (dpm @ dp).is_zero():
                    return False
        return True

    def table(self) -> CohomologyTable:
        degrees: list[dict[Weight, int]] = []
        for p in range(self.top + 1):
            table: dict[Weight, int] = {}
            for wt, labels in self.bases[p].items():
                dim_c = len(labels)
                r_in = 0
                if p < self.top:
                    d = self.boundaries[p].get(wt)
                    if d is not None and d.cols:
                        r_in, _ = rank_and_kernel(d)
                r_out = 0
                if p > 0:
                    d = self.boundaries[p - 1].get(wt)
                    if d is not None and d.cols:
                        r_out, _ = rank_and_kernel(d)
                h = dim_c - r_in - r_out
                if h:
                    table[wt] = h
            degrees.append(table)
        return CohomologyTable(self.split, degrees)


def homology_table(
    split: ParabolicSplit, mod: WeightModule
) -> tuple[CohomologyTable, bool]:
    """Homology dimensions plus the duality flag: the graded character of H_p
    must equal that of H^{top-p} shifted by the ∧^top n weight."""
    chains = ChainComplex(split, mod)
    assert chains.verify_complex(), "boundary does not square to zero"
    hom = chains.table()
    coh = cohomology_table(build_ce_complex(split, mod))
    top_weight = (0,) * split.datum.rank
    for r in split.n_roots:
        top_weight = _add(top_weight, r)
    top = len(split.n_roots)
    holds = True
    for p in range(top + 1):
        shifted = {
            _add(wt, top_weight): d for wt, d in coh.degrees[top - p].items()
        }
        if shifted != hom.degrees[p]:
            holds = False
            break
    return hom, holds


def euler_character_check(cx: CEComplex) -> bool:
    """Σ_q (-1)^q ch H^q = ch V · Π_{α in n} (1 - x^{-α}), exactly."""
    table = cohomology_table(cx)
    lhs = table.euler_character()
    rank = cx.split.datum.rank
    rhs = cx.module.character()
    one = LaurentCharacter.one(rank)
    for r in cx.n_roots:
        rhs = rhs * (one - LaurentCharacter.monomial(_neg(r)))
    return lhs == rhs
