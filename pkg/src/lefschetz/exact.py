"""Exact scalars, Laurent characters on lattice tori, and exact linear algebra.

Everything here is rational-exact: scalars are `fractions.Fraction`, matrix
rank/kernel computations use fraction-free (Bareiss) elimination on integer
rows, and characters are finite integer-weighted multisets of lattice points.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Scalar = Fraction
Weight = tuple[int, ...]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


# ---------------------------------------------------------------------------
# Laurent characters


@dataclass(frozen=True)
class LaurentCharacter:
    """Virtual character on a rank-r lattice torus.

    `terms` maps lattice points (length `rank`) to nonzero integer
    multiplicities.  `scale` is the lattice denominator: the stored key `w`
    represents the weight w/scale.  Half-integral spin weights use scale 2.
    """

    rank: int
    terms: Mapping[Weight, int] = field(default_factory=dict)
    scale: int = 1

    def __post_init__(self):
        if self.scale < 1:
            raise ValueError("scale must be positive")
        clean = {}
        for w, m in self.terms.items():
            if len(w) != self.rank:
                raise ValueError(f"weight {w} has wrong length for rank {self.rank}")
            if m != 0:
                clean[tuple(int(c) for c in w)] = int(m)
        object.__setattr__(self, "terms", clean)

    # -- constructors

    @classmethod
    def zero(cls, rank: int) -> "LaurentCharacter":
        return cls(rank, {})

    @classmethod
    def one(cls, rank: int) -> "LaurentCharacter":
        return cls(rank, {(0,) * rank: 1})

    @classmethod
    def monomial(cls, w: Sequence[int], mult: int = 1, scale: int = 1) -> "LaurentCharacter":
        return cls(len(w), {tuple(w): mult}, scale)

    @classmethod
    def from_weights(cls, rank: int, weights: Iterable[Sequence[int]], scale: int = 1) -> "LaurentCharacter":
        terms: dict[Weight, int] = {}
        for w in weights:
            key = tuple(w)
            terms[key] = terms.get(key, 0) + 1
        return cls(rank, terms, scale)

    # -- scale handling

    def rescaled(self, new_scale: int) -> "LaurentCharacter":
        if new_scale == self.scale:
            return self
        if new_scale % self.scale != 0:
            raise ValueError("new scale must be a multiple of the current scale")
        f = new_scale // self.scale
        return LaurentCharacter(
            self.rank, {tuple(c * f for c in w): m for w, m in self.terms.items()}, new_scale
        )

    def normalized(self) -> "LaurentCharacter":
        """Reduce the scale to the smallest one representing all terms."""
        g = self.scale
        for w in self.terms:
            for c in w:
                g = gcd(g, c)
            if g == 1:
                return self
        if g == self.scale:
            # all keys divisible by scale
            pass
        return LaurentCharacter(
            self.rank,
            {tuple(c // g for c in w): m for w, m in self.terms.items()},
            self.scale // g,
        )

    def _common(self, other: "LaurentCharacter") -> tuple["LaurentCharacter", "LaurentCharacter"]:
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
        s = lcm(self.scale, other.scale)
        return self.rescaled(s), other.rescaled(s)

    # -- ring operations

    def __add__(self, other: "LaurentCharacter") -> "LaurentCharacter":
        a, b = self._common(other)
        terms = dict(a.terms)
        for w, m in b.terms.items():
            terms[w] = terms.get(w, 0) + m
        return LaurentCharacter(a.rank, terms, a.scale)

    def __sub__(self, other: "LaurentCharacter") -> "LaurentCharacter":
        return self + (-other)

    def __neg__(self) -> "LaurentCharacter":
        return LaurentCharacter(self.rank, {w: -m for w, m in self.terms.items()}, self.scale)

    def __mul__(self, other) -> "LaurentCharacter":
        if isinstance(other, int):
            return LaurentCharacter(
                self.rank, {w: m * other for w, m in self.terms.items()}, self.scale
            )
        a, b = self._common(other)
        terms: dict[Weight, int] = {}
        for u, mu in a.terms.items():
            for v, mv in b.terms.items():
                w = tuple(x + y for x, y in zip(u, v))
                terms[w] = terms.get(w, 0) + mu * mv
        return LaurentCharacter(a.rank, terms, a.scale)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentCharacter):
            return NotImplemented
        if self.rank != other.rank:
            return False
        a, b = self._common(other)
        return a.terms == b.terms

    def __hash__(self):
        n = self.normalized()
        return hash((n.rank, n.scale, frozenset(n.terms.items())))

    # -- queries

    def is_effective(self) -> bool:
        return all(m > 0 for m in self.terms.values())

    def dimension(self) -> int:
        """Sum of multiplicities (the value at the identity point)."""
        return sum(self.terms.values())

    def dual(self) -> "LaurentCharacter":
        return LaurentCharacter(
            self.rank, {tuple(-c for c in w): m for w, m in self.terms.items()}, self.scale
        )

    def weight_list(self) -> list[Weight]:
        """Weights repeated with multiplicity; requires an effective character."""
        if not self.is_effective():
            raise ValueError("weight_list requires nonnegative multiplicities")
        out = []
        for w in sorted(self.terms):
            out.extend([w] * self.terms[w])
        return out

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        """Evaluate at a point t of the torus given by t_i = point_i, i.e.
        sum m_w * prod point_i^(w_i).  Keys are used unscaled, so the point
        refers to the stored (scaled) lattice."""
        total = Fraction(0)
        for w, m in self.terms.items():
            v = Fraction(1)
            for c, p in zip(w, point):
                v *= _as_fraction(p) ** c
            total += m * v
        return total

    # -- serialization

    def to_json_obj(self) -> dict:
        return {
            "rank": self.rank,
            "scale": self.scale,
            "terms": [
                {"w": list(w), "m": m} for w, m in sorted(self.terms.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "LaurentCharacter":
        return cls(
            obj["rank"],
            {tuple(t["w"]): t["m"] for t in obj["terms"]},
            obj.get("scale", 1),
        )


def character_product(a: LaurentCharacter, b: LaurentCharacter) -> LaurentCharacter:
    """Tensor-product (convolution) of two virtual characters."""
    return a * b


def exterior_power_character(ch: LaurentCharacter, p: int) -> LaurentCharacter:
    """Character of the p-th exterior power of an effective character.

    Elementary symmetric polynomial of degree p in the monomials x^w, one
    variable per multiplicity unit.
    """
    if p < 0:
        raise ValueError("exterior power degree must be nonnegative")
    if not ch.is_effective():
        raise ValueError("exterior power requires an effective character")
    weights = ch.weight_list()
    # dp[k] = e_k of the weights processed so far
    dp: list[LaurentCharacter | None] = [LaurentCharacter.one(ch.rank)] + [None] * p
    for w in weights:
        mono = LaurentCharacter.monomial(w, 1, ch.scale)
        for k in range(min(p, len(weights)), 0, -1):
            if dp[k - 1] is not None:
                term = dp[k - 1] * mono
                dp[k] = term if dp[k] is None else dp[k] + term
    return dp[p] if dp[p] is not None else LaurentCharacter.zero(ch.rank)


def alternating_exterior_sum(ch: LaurentCharacter) -> LaurentCharacter:
    """Sum_p (-1)^p Lambda^p(ch) = prod_w (1 - x^w) over the weight list."""
    out = LaurentCharacter.one(ch.rank)
    one = LaurentCharacter.one(ch.rank)
    for w in ch.weight_list():
        out = out * (one - LaurentCharacter.monomial(w, 1, ch.scale))
    return out


# ---------------------------------------------------------------------------
# Exact matrices


class ExactMatrix:
    """Dense matrix of Fractions with exact rank/kernel computations."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence | None = None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            self.entries = [Fraction(0)] * (rows * cols)
        else:
            if len(entries) != rows * cols:
                raise ValueError("entry count must equal rows * cols")
            self.entries = [_as_fraction(x) for x in entries]

    @classmethod
    def from_rows(cls, rows_data: Sequence[Sequence]) -> "ExactMatrix":
        r = len(rows_data)
        c = len(rows_data[0]) if r else 0
        flat = [x for row in rows_data for x in row]
        return cls(r, c, flat)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        m = cls(n, n)
        for i in range(n):
            m[i, i] = Fraction(1)
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __setitem__(self, ij, v):
        i, j = ij
        self.entries[i * self.cols + j] = _as_fraction(v)

    def row(self, i: int) -> list[Fraction]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)]
        )

    def scale_by(self, c) -> "ExactMatrix":
        c = _as_fraction(c)
        return ExactMatrix(self.rows, self.cols, [c * x for x in self.entries])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        out = ExactMatrix(self.rows, other.cols)
        for i in range(self.rows):
            ri = self.row(i)
            for k, a in enumerate(ri):
                if a == 0:
                    continue
                base = k * other.cols
                obase = i * other.cols
                for j in range(other.cols):
                    out.entries[obase + j] += a * other.entries[base + j]
        return out

    def transpose(self) -> "ExactMatrix":
        out = ExactMatrix(self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                out[j, i] = self[i, j]
        return out

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [
            sum((a * _as_fraction(v) for a, v in zip(self.row(i), vec)), Fraction(0))
            for i in range(self.rows)
        ]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def trace(self) -> Fraction:
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def rank(self) -> int:
        return rank_and_kernel(self)[0]

    def inverse(self) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = [self.row(i) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise ValueError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return ExactMatrix.from_rows([row[n:] for row in aug])

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"


def _integer_rows(m: ExactMatrix, col_order: Sequence[int]) -> list[list[int]]:
    """Rows of m with columns permuted, cleared to integers per row."""
    out = []
    for i in range(m.rows):
        row = [m[i, j] for j in col_order]
        d = 1
        for x in row:
            d = lcm(d, x.denominator)
        out.append([int(x * d) for x in row])
    return out


def rank_and_kernel(
    m: ExactMatrix, col_order: Sequence[int] | None = None
) -> tuple[int, list[list[Fraction]]]:
    """Exact rank and a kernel basis via fraction-free (Bareiss) elimination.

    `col_order` permutes the columns before elimination; the returned kernel
    vectors are always expressed in the original column order.  Passing a
    different order gives an independent elimination path for cross-checks.
    """
    if col_order is None:
        col_order = list(range(m.cols))
    rows = [r for r in _integer_rows(m, col_order) if any(r)]
    n_cols = m.cols
    # Bareiss fraction-free elimination to row echelon form
    pivots: list[int] = []  # column index (in permuted order) per pivot row
    piv_r = 0
    prev_piv = 1
    for col in range(n_cols):
        sel = None
        for r in range(piv_r, len(rows)):
            if rows[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        rows[piv_r], rows[sel] = rows[sel], rows[piv_r]
        p = rows[piv_r][col]
        for r in range(piv_r + 1, len(rows)):
            f = rows[r][col]
            rows[r] = [
                (p * rows[r][c] - f * rows[piv_r][c]) // prev_piv for c in range(n_cols)
            ]
        prev_piv = p
        pivots.append(col)
        piv_r += 1
        if piv_r == len(rows):
            break
    rank = len(pivots)
    # Back substitution for kernel vectors (over Fractions)
    echelon = [[Fraction(x) for x in rows[r]] for r in range(rank)]
    free_cols = [c for c in range(n_cols) if c not in set(pivots)]
    kernel: list[list[Fraction]] = []
    for fc in free_cols:
        vec = [Fraction(0)] * n_cols
        vec[fc] = Fraction(1)
        for r in range(rank - 1, -1, -1):
            pc = pivots[r]
            s = sum(
                (echelon[r][c] * vec[c] for c in range(pc + 1, n_cols)),
                Fraction(0),
            )
            vec[pc] = -s / echelon[r][pc]
        # un-permute back to original column order
        orig = [Fraction(0)] * n_cols
        for pos, j in enumerate(col_order):
            orig[j] = vec[pos]
        kernel.append(orig)
    return rank, kernel
