"""The empirical association scheme of a generator catalog.

Relations are stored as packed bit rows (Python ints), one row per generator
per codimension class.  Verification against the closed-form spectral data is
exact: the annihilating-polynomial products run in int64 after an a-priori
overflow bound check, idempotent projections run in Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geom import GeneratorCatalog
from .qcount import EigenData

INT64_SAFE = 1 << 62


class SchemeError(ValueError):
    """An association-scheme axiom or spectral identity failed."""


@dataclass(eq=False)
class RelationData:
    """Adjacency bit-matrices A_0..A_d of one catalog plus their valencies."""

    cat: GeneratorCatalog
    rows: tuple[tuple[int, ...], ...]  # rows[i][x] = bitmask of {y : codim(x,y) = i}
    valencies: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.cat.n

    @property
    def d(self) -> int:
        return self.cat.space.d

    def matrix(self, i: int) -> np.ndarray:
        """A_i as a dense int64 array."""
        n = self.n
        nbytes = (n + 7) // 8
        raw = b"".join(row.to_bytes(nbytes, "little") for row in self.rows[i])
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8).reshape(n, nbytes), axis=1, bitorder="little")
        return bits[:, :n].astype(np.int64)


def build_relations(cat: GeneratorCatalog) -> RelationData:
    n = cat.n
    d = cat.space.d
    masks = cat.point_masks
    dim_of = cat._dim_of_count
    rows = [[0] * n for _ in range(d + 1)]
    for x in range(n):
        mx = masks[x]
        for y in range(x, n):
            i = d - dim_of[(mx & masks[y]).bit_count()]
            rows[i][x] |= 1 << y
            rows[i][y] |= 1 << x
    full = (1 << n) - 1
    valencies = []
    for i in range(d + 1):
        deg = rows[i][0].bit_count()
        if any(r.bit_count() != deg for r in rows[i]):
            raise SchemeError(f"relation {i} is not regular")
        valencies.append(deg)
    for x in range(n):
        acc = 0
        total = 0
        for i in range(d + 1):
            acc |= rows[i][x]
            total += rows[i][x].bit_count()
        if acc != full or total != n:
            raise SchemeError(f"relations do not partition the pairs at generator {x}")
    if any(rows[0][x] != 1 << x for x in range(n)):
        raise SchemeError("A_0 is not the identity relation")
    return RelationData(cat=cat, rows=tuple(tuple(r) for r in rows), valencies=tuple(valencies))


def check_intersection_numbers(rel: RelationData):
    """Exhaustive homogeneity check; returns the table p[i][j][k].

    Raises SchemeError naming the first violating triple (i, j, k) together
    with the witnessing pair.
    """
    d = rel.d
    n = rel.n
    rows = rel.rows
    p = [[[None] * (d + 1) for _ in range(d + 1)] for _ in range(d + 1)]
    for x in range(n):
        for i in range(d + 1):
            rx = rows[i][x]
            for k in range(d + 1):
                m = rows[k][x]
                while m:
                    lsb = m & -m
                    m ^= lsb
                    y = lsb.bit_length() - 1
                    for j in range(d + 1):
                        cnt = (rx & rows[j][y]).bit_count()
                        if p[i][j][k] is None:
                            p[i][j][k] = cnt
                        elif p[i][j][k] != cnt:
                            raise SchemeError(
                                f"p[{i}][{j}]^{k} inhomogeneous: {cnt} at pair ({x},{y}), "
                                f"expected {p[i][j][k]}"
                            )
    return p


def verify_spectrum(rel: RelationData, eig: EigenData) -> bool:
    """Annihilating-polynomial and product-expansion checks in exact arithmetic.

    For each relation i the product over r of (A_i - P[r][i] I) must vanish,
    and A_i A_j must equal sum_k p_ij^k A_k (equivalently: the entries of
    A_i A_j are constant on every relation class).  Intermediate entries are
    bounded by prod_r (n_i + |P[r][i]|), so int64 is exact once that bound
    clears 2^62; otherwise the slow object-dtype path is taken.
    """
    d = rel.d
    n = rel.n
    if eig.n != n or eig.d != d:
        raise ValueError("eigen data does not match the relation data")
    mats = [rel.matrix(i) for i in range(d + 1)]
    if not np.array_equal(mats[0], np.eye(n, dtype=np.int64)):
        raise SchemeError("A_0 is not the identity matrix")
    for i in range(1, d + 1):
        evs = [eig.P[r][i] for r in range(d + 1)]
        bound = 1
        for ev in evs:
            bound *= rel.valencies[i] + abs(ev)
        A = mats[i] if bound < INT64_SAFE else mats[i].astype(object)
        M = A - evs[0] * np.eye(n, dtype=A.dtype)
        for ev in evs[1:]:
            M = A @ M - ev * M
        if M.any():
            raise SchemeError(f"relation {i} is not annihilated by its P-column {evs}")
    for i in range(d + 1):
        for j in range(d + 1):
            B = mats[i] @ mats[j]
            for k in range(d + 1):
                vals = B[mats[k] == 1]
                if vals.size and (vals != vals[0]).any():
                    raise SchemeError(
                        f"A_{i} A_{j} is not constant on relation {k}: product identity fails"
                    )
    return True


def _apply_relation(rel: RelationData, i: int, v) -> list:
    """A_i v for an exact (int/Fraction) vector v."""
    out = []
    rows = rel.rows[i]
    for x in range(rel.n):
        m = rows[x]
        acc = 0
        while m:
            lsb = m & -m
            m ^= lsb
            acc += v[lsb.bit_length() - 1]
        out.append(acc)
    return out


def eigenspace_support(v, rel: RelationData, eig: EigenData) -> frozenset[int]:
    """Indices j with E_j v != 0, via the exact expansion E_j = (1/n) sum_i Q[i][j] A_i.

    Also checks sum_j E_j v = v, which must hold identically.
    """
    n = rel.n
    if len(v) != n:
        raise ValueError(f"vector length {len(v)} != {n}")
    d = rel.d
    images = [_apply_relation(rel, i, v) for i in range(d + 1)]
    support = set()
    total = [Fraction(0)] * n
    for j in range(d + 1):
        proj = [Fraction(0)] * n
        for i in range(d + 1):
            qij = eig.Q[i][j]
            if qij:
                for x in range(n):
                    if images[i][x]:
                        proj[x] += qij * images[i][x]
        if any(proj):
            support.add(j)
        for x in range(n):
            total[x] += proj[x]
    for x in range(n):
        if total[x] != n * Fraction(v[x]):
            raise SchemeError("sum of idempotent projections does not reproduce the vector")
    return frozenset(support)


def idempotent(rel: RelationData, eig: EigenData, j: int):
    """E_j as a dense matrix of Fractions (desk-scale instances only)."""
    n = rel.n
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(rel.d + 1):
        qij = Fraction(eig.Q[i][j], n)
        if not qij:
            continue
        rows = rel.rows[i]
        for x in range(n):
            m = rows[x]
            while m:
                lsb = m & -m
                m ^= lsb
                out[x][lsb.bit_length() - 1] += qij
    return out
