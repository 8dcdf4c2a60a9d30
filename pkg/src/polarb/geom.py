"""Finite classical polar spaces over small fields.

Builds the six families in their standard coordinate forms, decides
singularity / total isotropy, computes perps and quotient geometries, and
enumerates complete generator catalogs with a codimension oracle.

Vectors are tuples of field codes.  Subspaces are canonical reduced
row-echelon bases (pivot-normalized, reduced above and below, rows ordered by
pivot), so equal subspaces compare equal and catalogs are reproducible
byte-for-byte.  All dimensions are vector space dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .families import HERMITIAN, ORTHOGONAL, TAU, ambient_dim
from .ff import FieldSpec, field_of_order
from .qcount import nbracket, num_generators, num_points

Vector = tuple[int, ...]

ENUM_LIMIT_DEFAULT = 200_000


# ---------------------------------------------------------------------------
# Linear algebra over a FieldSpec
# ---------------------------------------------------------------------------


def vec_add(fld: FieldSpec, u: Vector, v: Vector) -> Vector:
    if fld.p == 2:
        return tuple(a ^ b for a, b in zip(u, v))
    return tuple(fld.add(a, b) for a, b in zip(u, v))


def vec_scale(fld: FieldSpec, c: int, v: Vector) -> Vector:
    if c == 0:
        return (0,) * len(v)
    if c == 1:
        return tuple(v)
    return tuple(fld.mul(c, a) for a in v)


def vec_submul(fld: FieldSpec, u: Vector, c: int, v: Vector) -> Vector:
    """u - c*v."""
    if c == 0:
        return tuple(u)
    return tuple(fld.sub(a, fld.mul(c, b)) for a, b in zip(u, v))


def normalize_point(fld: FieldSpec, v: Vector) -> Vector:
    """Scale so the first nonzero coordinate is 1 (projective representative)."""
    for c in v:
        if c:
            return v if c == 1 else vec_scale(fld, fld.inv(c), v)
    raise ValueError("zero vector has no projective representative")


def rref(fld: FieldSpec, rows) -> tuple[Vector, ...]:
    """Canonical reduced row-echelon basis of the row space."""
    work = [list(r) for r in rows]
    if not work:
        return ()
    ncols = len(work[0])
    out: list[list[int]] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = fld.inv(work[r][c])
        if inv != 1:
            work[r] = [fld.mul(inv, x) for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                coef = work[i][c]
                work[i] = [fld.sub(x, fld.mul(coef, y)) for x, y in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    out = [row for row in work[:r]]
    return tuple(tuple(row) for row in out)


def rref_insert(fld: FieldSpec, basis: tuple[Vector, ...], v: Vector):
    """Extend a canonical basis by one vector; None if v is already in the span."""
    vv = list(v)
    pivots = [next(i for i, x in enumerate(row) if x) for row in basis]
    for row, p in zip(basis, pivots):
        if vv[p]:
            coef = vv[p]
            vv = [fld.sub(x, fld.mul(coef, y)) for x, y in zip(vv, row)]
    p_new = next((i for i, x in enumerate(vv) if x), None)
    if p_new is None:
        return None
    inv = fld.inv(vv[p_new])
    if inv != 1:
        vv = [fld.mul(inv, x) for x in vv]
    new_rows = []
    inserted = False
    for row, p in zip(basis, pivots):
        if not inserted and p_new < p:
            new_rows.append(vv)
            inserted = True
        reduced = list(row)
        if reduced[p_new]:
            coef = reduced[p_new]
            reduced = [fld.sub(x, fld.mul(coef, y)) for x, y in zip(reduced, vv)]
        new_rows.append(reduced)
    if not inserted:
        new_rows.append(vv)
    return tuple(tuple(row) for row in new_rows)


def in_span(fld: FieldSpec, basis: tuple[Vector, ...], v: Vector) -> bool:
    vv = list(v)
    for row in basis:
        p = next(i for i, x in enumerate(row) if x)
        if vv[p]:
            coef = vv[p]
            vv = [fld.sub(x, fld.mul(coef, y)) for x, y in zip(vv, row)]
    return not any(vv)


def rank_of(fld: FieldSpec, rows) -> int:
    return len(rref(fld, rows))


def nullspace(fld: FieldSpec, rows, ncols: int) -> tuple[Vector, ...]:
    """Canonical basis of {v : sum_t row[t]*v[t] = 0 for every row}."""
    R = rref(fld, rows) if rows else ()
    pivots = [next(i for i, x in enumerate(row) if x) for row in R]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(R, pivots):
            v[p] = fld.neg(row[f])
        basis.append(tuple(v))
    return rref(fld, basis)


def solve_in_rows(fld: FieldSpec, rows: tuple[Vector, ...], target: Vector):
    """Coefficients a with sum a_i rows_i = target, or None if inconsistent."""
    m = len(rows)
    if m == 0:
        return () if not any(target) else None
    n = len(target)
    aug = [[rows[i][c] for i in range(m)] + [target[c]] for c in range(n)]
    red = rref(fld, aug)
    coeffs = [0] * m
    for row in red:
        p = next(i for i, x in enumerate(row) if x)
        if p == m:
            return None
        coeffs[p] = row[m]
        if any(row[i] for i in range(p + 1, m)):
            # rows dependent; generic solve below is not needed at our call sites
            raise ValueError("solve_in_rows requires independent rows")
    return tuple(coeffs)


def intersect_bases(fld: FieldSpec, A: tuple[Vector, ...], B: tuple[Vector, ...]) -> tuple[Vector, ...]:
    """Zassenhaus intersection of two row spaces."""
    if not A or not B:
        return ()
    n = len(A[0])
    rows = [tuple(v) + tuple(v) for v in A] + [tuple(v) + (0,) * n for v in B]
    red = rref(fld, rows)
    out = [r[n:] for r in red if not any(r[:n])]
    return rref(fld, out)


@dataclass(frozen=True)
class Subspace:
    """A subspace held as its canonical reduced row-echelon basis."""

    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @staticmethod
    def from_vectors(fld: FieldSpec, vectors) -> "Subspace":
        return Subspace(rref(fld, vectors))


# ---------------------------------------------------------------------------
# Polar spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PolarSpace:
    """One classical polar space with its standard (or quotient-induced) form.

    ``gram`` is the matrix of the reflexive sesquilinear form used for perps;
    for orthogonal families it is the polarization of ``quad`` and singularity
    is decided by ``quad`` (the correct treatment in characteristic 2).
    """

    family: str
    d: int
    field: FieldSpec
    nv: int
    tau: int
    gram: tuple[Vector, ...]
    quad: tuple[Vector, ...] | None

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def is_hermitian(self) -> bool:
        return self.family in HERMITIAN

    @property
    def is_orthogonal(self) -> bool:
        return self.family in ORTHOGONAL

    @property
    def label(self) -> str:
        from .families import space_label

        return space_label(self.family, self.d, self.q)


def bilinear(ps: PolarSpace, u: Vector, v: Vector) -> int:
    """B(u, v) = u . G . sigma(v), sigma = conjugation for Hermitian families."""
    if len(u) != ps.nv or len(v) != ps.nv:
        raise ValueError("vector length does not match the ambient dimension")
    fld = ps.field
    if ps.is_hermitian:
        v = tuple(fld.conjugate(x) for x in v)
    total = 0
    for i, ui in enumerate(u):
        if not ui:
            continue
        row = ps.gram[i]
        acc = 0
        for j, vj in enumerate(v):
            if vj and row[j]:
                acc = fld.add(acc, fld.mul(row[j], vj))
        total = fld.add(total, fld.mul(ui, acc))
    return total


def quad_value(ps: PolarSpace, v: Vector) -> int:
    if ps.quad is None:
        raise ValueError(f"{ps.family} has no quadratic form")
    fld = ps.field
    total = 0
    for i in range(ps.nv):
        if not v[i]:
            continue
        for j in range(i, ps.nv):
            c = ps.quad[i][j]
            if c and v[j]:
                total = fld.add(total, fld.mul(c, fld.mul(v[i], v[j])))
    return total


def is_singular(v: Vector, ps: PolarSpace) -> bool:
    """True iff the quadratic (orthogonal) or sesquilinear form vanishes on v."""
    if len(v) != ps.nv:
        raise ValueError("vector length does not match the ambient dimension")
    if ps.is_orthogonal:
        return quad_value(ps, v) == 0
    return bilinear(ps, v, v) == 0


def is_totally_isotropic(S: Subspace, ps: PolarSpace) -> bool:
    rows = S.basis
    for i, u in enumerate(rows):
        if not is_singular(u, ps):
            return False
        for v in rows[i + 1 :]:
            if bilinear(ps, u, v) != 0:
                return False
    return True


def perp(S: Subspace, ps: PolarSpace) -> Subspace:
    """{v : B(v, s) = 0 for all s in S}."""
    fld = ps.field
    constraints = []
    for s in S.basis:
        sig = tuple(fld.conjugate(x) for x in s) if ps.is_hermitian else s
        row = []
        for t in range(ps.nv):
            acc = 0
            g = ps.gram[t]
            for j in range(ps.nv):
                if g[j] and sig[j]:
                    acc = fld.add(acc, fld.mul(g[j], sig[j]))
            row.append(acc)
        constraints.append(tuple(row))
    return Subspace(nullspace(fld, constraints, ps.nv))


def _validate_nondegenerate(ps: PolarSpace) -> None:
    fld = ps.field
    rad = nullspace(fld, ps.gram, ps.nv)
    if ps.is_orthogonal and fld.p == 2:
        # Radical of the polarization may contain the nucleus; it must carry
        # no singular point (else the quadric itself is degenerate).
        for coeffs in product(range(fld.order), repeat=len(rad)):
            if not any(coeffs):
                continue
            v = (0,) * ps.nv
            for c, row in zip(coeffs, rad):
                v = vec_add(fld, v, vec_scale(fld, c, row))
            if quad_value(ps, v) == 0:
                raise ValueError("degenerate quadratic form: singular radical vector")
        if len(rad) > 1:
            raise ValueError("polarization radical has dimension > 1")
    elif rad:
        raise ValueError("degenerate form: nonzero radical")


def _space_from_forms(family, d, fld, gram, quad) -> PolarSpace:
    ps = PolarSpace(
        family=family,
        d=d,
        field=fld,
        nv=len(gram),
        tau=TAU[family],
        gram=tuple(tuple(r) for r in gram),
        quad=None if quad is None else tuple(tuple(r) for r in quad),
    )
    _validate_nondegenerate(ps)
    return ps


def _polarization(fld: FieldSpec, quad) -> list[list[int]]:
    n = len(quad)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = fld.mul(fld.add(1, 1), quad[i][i])  # 2*quad[i][i]; vanishes in char 2
        for j in range(i + 1, n):
            g[i][j] = quad[i][j]
            g[j][i] = quad[i][j]
    return g


def _irreducible_quadratic(fld: FieldSpec) -> tuple[int, int]:
    """(c1, c0) with t^2 + c1 t + c0 irreducible over the field, least (c1, c0)."""
    q = fld.order
    for c1 in range(q):
        for c0 in range(q):
            if all(fld.add(fld.add(fld.mul(a, a), fld.mul(c1, a)), c0) != 0 for a in range(q)):
                return c1, c0
    raise ValueError("no irreducible quadratic found")  # impossible over a finite field


def polar_space_make(family: str, d: int, q: int) -> PolarSpace:
    """Standard model of the polar space of the given family, rank and field order.

    For the Hermitian families q is the full (square) field order, e.g.
    polar_space_make("Hodd", 2, 4) is H(3,4) over GF(4).
    """
    if d < 0:
        raise ValueError(f"rank must be >= 0, got {d}")
    if family not in TAU:
        raise ValueError(f"unknown family {family!r}")
    fld = field_of_order(q)
    if family in HERMITIAN and fld.k % 2 != 0:
        raise ValueError(f"Hermitian families need a square field order, got {q}")
    nv = ambient_dim(family, d)
    z = [[0] * nv for _ in range(nv)]

    if family == "W":
        gram = [row[:] for row in z]
        for i in range(d):
            gram[2 * i][2 * i + 1] = 1
            gram[2 * i + 1][2 * i] = fld.neg(1)
        return _space_from_forms(family, d, fld, gram, None)

    if family in HERMITIAN:
        gram = [row[:] for row in z]
        for i in range(nv):
            gram[i][nv - 1 - i] = 1
        return _space_from_forms(family, d, fld, gram, None)

    quad = [row[:] for row in z]
    if family == "Qplus":
        for i in range(d):
            quad[2 * i][2 * i + 1] = 1
    elif family == "Qparabolic":
        quad[0][0] = 1
        for i in range(1, d + 1):
            quad[2 * i - 1][2 * i] = 1
    elif family == "Qminus":
        c1, c0 = _irreducible_quadratic(fld)
        quad[0][0] = 1
        quad[0][1] = c1
        quad[1][1] = c0
        for i in range(1, d + 1):
            quad[2 * i][2 * i + 1] = 1
    return _space_from_forms(family, d, fld, _polarization(fld, quad), quad)


# ---------------------------------------------------------------------------
# Point and generator enumeration
# ---------------------------------------------------------------------------


def enumerate_points(ps: PolarSpace) -> tuple[Vector, ...]:
    """All singular/isotropic projective points, lexicographically ordered."""
    fld = ps.field
    pts = []
    for v in product(range(fld.order), repeat=ps.nv):
        lead = next((c for c in v if c), None)
        if lead != 1:  # one representative per point
            continue
        if is_singular(v, ps):
            pts.append(v)
    return tuple(pts)


def subspace_points(ps: PolarSpace, basis: tuple[Vector, ...]) -> list[Vector]:
    """Normalized representatives of the points of a subspace."""
    fld = ps.field
    seen = set()
    out = []
    for coeffs in product(range(fld.order), repeat=len(basis)):
        if not any(coeffs):
            continue
        v = (0,) * len(basis[0]) if basis else ()
        for c, row in zip(coeffs, basis):
            if c:
                v = vec_add(fld, v, vec_scale(fld, c, row))
        v = normalize_point(fld, v)
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _enumerate_generator_bases(ps: PolarSpace, limit: int) -> list[tuple[Vector, ...]]:
    expected = num_generators(ps.family, ps.d, ps.q)
    if expected > limit:
        raise ValueError(
            f"{ps.label} has {expected} generators, above the enumeration limit {limit}"
        )
    if ps.d == 0:
        return [()]
    fld = ps.field
    pts = enumerate_points(ps)
    npts = len(pts)
    # Orthogonality masks: bit j of orth[i] <=> B(pts[i], pts[j]) = 0.
    sig = (
        [tuple(fld.conjugate(x) for x in v) for v in pts] if ps.is_hermitian else list(pts)
    )
    transformed = []
    for v in sig:
        transformed.append(
            tuple(
                _dot_row(fld, ps.gram[t], v)
                for t in range(ps.nv)
            )
        )
    orth = [0] * npts
    for i in range(npts):
        u = pts[i]
        ti = transformed[i]
        mask = 0
        for j in range(i, npts):
            if _dot(fld, pts[j], ti) == 0:
                mask |= 1 << j
                if j != i:
                    orth[j] |= 1 << i
        orth[i] |= mask
    full = (1 << npts) - 1
    found: list[tuple[Vector, ...]] = []
    seen: set[tuple[Vector, ...]] = set()
    d = ps.d

    def extend(basis: tuple[Vector, ...], mask: int) -> None:
        if len(basis) == d:
            found.append(basis)
            return
        m = mask
        while m:
            lsb = m & -m
            m ^= lsb
            idx = lsb.bit_length() - 1
            nb = rref_insert(fld, basis, pts[idx])
            if nb is None or nb in seen:
                continue
            seen.add(nb)
            extend(nb, mask & orth[idx])

    extend((), full)
    found.sort()
    if len(found) != expected:
        raise AssertionError(
            f"enumeration bug: found {len(found)} generators of {ps.label}, expected {expected}"
        )
    return found


def _dot(fld: FieldSpec, u: Vector, v: Vector) -> int:
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = fld.add(acc, fld.mul(a, b))
    return acc


def _dot_row(fld: FieldSpec, row: Vector, v: Vector) -> int:
    acc = 0
    for a, b in zip(row, v):
        if a and b:
            acc = fld.add(acc, fld.mul(a, b))
    return acc


@dataclass(eq=False)
class GeneratorCatalog:
    """Complete, deterministically ordered catalog of the generators of one space.

    ``point_masks[i]`` is the bitmask (over the point list) of the points of
    generator i; the codimension oracle compares popcounts of mask
    intersections against the Gaussian point counts [j]_q.
    """

    space: PolarSpace
    generators: tuple[Subspace, ...]
    index: dict
    points: tuple[Vector, ...]
    point_index: dict
    point_masks: tuple[int, ...]
    _dim_of_count: dict

    @property
    def n(self) -> int:
        return len(self.generators)

    def mask_of_subspace(self, basis: tuple[Vector, ...]) -> int:
        """Bitmask of catalog points lying in the span of ``basis``."""
        mask = 0
        for v in subspace_points(self.space, basis):
            idx = self.point_index.get(v)
            if idx is not None:
                mask |= 1 << idx
        return mask

    def mask_of_points_in_span(self, basis: tuple[Vector, ...]) -> int:
        """Bitmask of catalog points inside an arbitrary (not nec. t.i.) span."""
        fld = self.space.field
        mask = 0
        for j, v in enumerate(self.points):
            if in_span(fld, basis, v):
                mask |= 1 << j
        return mask


def enumerate_generators(ps: PolarSpace, limit: int = ENUM_LIMIT_DEFAULT) -> GeneratorCatalog:
    bases = _enumerate_generator_bases(ps, limit)
    return catalog_from_bases(ps, bases)


def catalog_from_bases(ps: PolarSpace, bases) -> GeneratorCatalog:
    pts = enumerate_points(ps)
    pt_index = {v: i for i, v in enumerate(pts)}
    npoints_expected = num_points(ps.family, ps.d, ps.q) if ps.d > 0 else 0
    if ps.d > 0 and len(pts) != npoints_expected:
        raise AssertionError(
            f"point count mismatch for {ps.label}: {len(pts)} vs {npoints_expected}"
        )
    masks = []
    for basis in bases:
        mask = 0
        for v in subspace_points(ps, basis):
            mask |= 1 << pt_index[v]
        masks.append(mask)
    dim_of_count = {nbracket(j, ps.q): j for j in range(ps.d + 1)}
    gens = tuple(Subspace(b) for b in bases)
    return GeneratorCatalog(
        space=ps,
        generators=gens,
        index={g.basis: i for i, g in enumerate(gens)},
        points=pts,
        point_index=pt_index,
        point_masks=tuple(masks),
        _dim_of_count=dim_of_count,
    )


def codim_intersection(i: int, j: int, cat: GeneratorCatalog) -> int:
    """d - dim(g_i ∩ g_j), read off the shared point count."""
    common = (cat.point_masks[i] & cat.point_masks[j]).bit_count()
    return cat.space.d - cat._dim_of_count[common]


# ---------------------------------------------------------------------------
# Quotient geometry
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class QuotientGeometry:
    """The polar space perp(L)/L with explicit project/lift maps."""

    base: PolarSpace
    L: Subspace
    lift_rows: tuple[Vector, ...]  # complement of L inside perp(L)
    space: PolarSpace

    def project_vector(self, v: Vector) -> Vector:
        """Coordinates of v + L over the complement basis (v must lie in perp(L))."""
        rows = self.L.basis + self.lift_rows
        coeffs = solve_in_rows(self.base.field, rows, v)
        if coeffs is None:
            raise ValueError("vector is not in perp(L)")
        return coeffs[self.L.dim :]

    def lift_vector(self, w: Vector) -> Vector:
        fld = self.base.field
        v = (0,) * self.base.nv
        for c, row in zip(w, self.lift_rows):
            if c:
                v = vec_add(fld, v, vec_scale(fld, c, row))
        return v

    def lift_generator(self, g_quotient: Subspace) -> Subspace:
        rows = list(self.L.basis) + [self.lift_vector(w) for w in g_quotient.basis]
        return Subspace.from_vectors(self.base.field, rows)


def quotient_geometry(L: Subspace, ps: PolarSpace) -> QuotientGeometry:
    if not is_totally_isotropic(L, ps):
        raise ValueError("quotients are defined over totally isotropic subspaces only")
    if L.dim > ps.d:
        raise ValueError("subspace dimension exceeds the rank")
    fld = ps.field
    P = perp(L, ps)
    comp: list[Vector] = []
    cur = L.basis
    for row in P.basis:
        nb = rref_insert(fld, cur, row)
        if nb is not None:
            cur = nb
            comp.append(row)
    comp_t = tuple(comp)
    m = len(comp_t)
    gram_q = [[bilinear(ps, comp_t[i], comp_t[j]) for j in range(m)] for i in range(m)]
    quad_q = None
    if ps.is_orthogonal:
        quad_q = [[0] * m for _ in range(m)]
        for i in range(m):
            quad_q[i][i] = quad_value(ps, comp_t[i])
            for j in range(i + 1, m):
                quad_q[i][j] = gram_q[i][j]
    qs = _space_from_forms(ps.family, ps.d - L.dim, fld, gram_q, quad_q)
    return QuotientGeometry(base=ps, L=L, lift_rows=comp_t, space=qs)


def quotient_map(L: Subspace, g: Subspace, ps: PolarSpace) -> Subspace:
    """Image of g in perp(L)/L, i.e. ((g ∩ perp(L)) + L)/L in complement coordinates."""
    if L.dim >= ps.d and L.basis == g.basis:
        return Subspace(())
    qg = quotient_geometry(L, ps)
    W = intersect_bases(ps.field, g.basis, perp(L, ps).basis)
    rows = [qg.project_vector(w) for w in W]
    return Subspace.from_vectors(ps.field, rows)


def generators_through(S: Subspace, ps: PolarSpace, limit: int = ENUM_LIMIT_DEFAULT) -> list[Subspace]:
    """All generators containing S, via enumeration of the quotient polar space."""
    if not is_totally_isotropic(S, ps):
        raise ValueError("generators_through requires a totally isotropic subspace")
    if S.dim == ps.d:
        return [S]
    qg = quotient_geometry(S, ps)
    out = []
    for basis in _enumerate_generator_bases(qg.space, limit):
        lifted = qg.lift_generator(Subspace(basis))
        if lifted.dim != ps.d:
            raise AssertionError("quotient lift produced a defective generator")
        out.append(lifted)
    out.sort(key=lambda s: s.basis)
    return out
