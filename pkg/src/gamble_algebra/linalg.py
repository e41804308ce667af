"""Exact rational linear algebra.

Everything in the core runs on exact arithmetic: integer vectors where a
positive rescaling is harmless (rays, constraint normals) and Fractions
where actual values matter (simplex tableaus, solved coefficients).  No
floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IVec = tuple[int, ...]


def prim_int(vec: Sequence[int]) -> IVec:
    """Divide an integer vector by its gcd; orientation preserved."""
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g > 1:
        return tuple(v // g for v in vec)
    return tuple(vec)


def to_primitive(vec: Iterable) -> IVec:
    """Scale a rational vector to a primitive integer vector (gcd 1).

    Orientation is preserved, so this is safe for rays.
    """
    vals = list(vec)
    if all(isinstance(v, int) for v in vals):
        return prim_int(vals)
    fracs = [Fraction(v) for v in vals]
    den = 1
    for v in fracs:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v.numerator * (den // v.denominator)) for v in fracs]
    return prim_int(ints)


def sign_normalize(vec: IVec) -> IVec:
    """Flip sign so the first nonzero entry is positive (for lines, not rays)."""
    for v in vec:
        if v > 0:
            return vec
        if v < 0:
            return tuple(-x for x in vec)
    return vec


def idot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def rank_of(rows: Iterable[Sequence[int]]) -> int:
    """Rank of an integer matrix, by fraction-free elimination."""
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pr = mat[rank]
        pv = pr[col]
        for i in range(rank + 1, len(mat)):
            v = mat[i][col]
            if v:
                row = [mat[i][j] * pv - pr[j] * v for j in range(ncols)]
                g = 0
                for x in row:
                    g = gcd(g, x)
                if g > 1:
                    row = [x // g for x in row]
                mat[i] = row
        rank += 1
        if rank == len(mat):
            break
    return rank


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (rows, pivot columns)."""
    mat = [[Fraction(v) for v in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pv = mat[r][c]
        mat[r] = [v / pv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[: len(pivots)], pivots


def canonical_basis(rows: Iterable[Sequence], ncols: int) -> list[IVec]:
    """Canonical primitive integer basis of the row span (RREF rows)."""
    mat, pivots = rref(rows, ncols)
    return [to_primitive(row) for row in mat]


def nullspace(rows: Iterable[Sequence], ncols: int) -> list[IVec]:
    """Primitive integer basis of {x : r . x = 0 for all rows r}."""
    mat, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for pr, pc in enumerate(pivots):
            vec[pc] = -mat[pr][fc]
        basis.append(to_primitive(vec))
    return basis


def solve_linear(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> list[Fraction] | None:
    """One exact solution of A x = b, or None if inconsistent.

    Free variables are set to zero.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    mat, pivots = rref(aug, ncols)
    # inconsistent iff a pivot landed in the rhs column
    full, fpiv = rref(aug, ncols + 1)
    if ncols in fpiv:
        return None
    x = [Fraction(0)] * ncols
    for pr, pc in enumerate(pivots):
        x[pc] = mat[pr][ncols]
    return x


def feasible_nonneg(
    rows: Sequence[Sequence], rhs: Sequence
) -> list[Fraction] | None:
    """Exact phase-I simplex: find x >= 0 with A x = b, or None.

    Bland's rule, so the run is finite and deterministic.
    """
    m = len(rows)
    if m == 0:
        return []
    k = len(rows[0]) if m else 0
    tab = []
    for i in range(m):
        row = [Fraction(v) for v in rows[i]]
        b = Fraction(rhs[i])
        if b < 0:
            row = [-v for v in row]
            b = -b
        # artificial columns appended as identity
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [b])
    ncols = k + m
    basis = list(range(k, k + m))
    # objective: minimise the sum of artificials; reduced costs start as the
    # column sums of the structural part
    obj = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        for j in range(ncols + 1):
            obj[j] += tab[i][j]
    for j in range(k, k + m):
        obj[j] = Fraction(0)

    while True:
        enter = None
        for j in range(ncols):
            if obj[j] > 0:
                enter = j
                break
        if enter is None:
            break
        # ratio test, ties broken by smallest leaving basis index (Bland)
        leave = None
        best: Fraction | None = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][ncols] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]  # type: ignore[index]
                ):
                    best = ratio
                    leave = i
        if leave is None:
            # unbounded phase-I objective cannot happen; defensive
            return None
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [a - f * b for a, b in zip(obj, tab[leave])]
        basis[leave] = enter

    if obj[ncols] != 0:
        return None
    x = [Fraction(0)] * k
    for i, bj in enumerate(basis):
        if bj < k:
            x[bj] = tab[i][ncols]
    return x


def _popcount(x: int) -> int:
    return bin(x).count("1")


def dd_cone(
    ineqs: Sequence[Sequence], eqs: Sequence[Sequence], dim: int
) -> tuple[list[IVec], list[IVec]]:
    """Extreme rays and lineality of {x : e.x = 0 for eqs, a.x >= 0 for ineqs}.

    Double description with constraints inserted in lexicographic order and
    the adjacency of rays decided by a rank test on their common tight set.
    Returns (lineality, rays) as sorted primitive integer vectors; the cone
    is span(lineality) + cone(rays).
    """
    # restrict to the equality kernel once, then work in reduced coordinates
    eq_rows = [to_primitive(e) for e in eqs]
    eq_rows = [e for e in eq_rows if any(e)]
    if eq_rows:
        nbasis = nullspace(eq_rows, dim)
    else:
        nbasis = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    d = len(nbasis)
    if d == 0:
        return [], []

    reduced = []
    for a in ineqs:
        ap = to_primitive(a)
        row = to_primitive(tuple(idot(ap, nb) for nb in nbasis))
        if any(row):
            reduced.append(row)
    constraints = sorted(set(reduced))

    lineality: list[IVec] = [
        tuple(1 if j == i else 0 for j in range(d)) for i in range(d)
    ]
    rays: list[IVec] = []
    masks: list[int] = []  # bit t set iff constraint t is tight at the ray
    processed: list[IVec] = []

    def full_mask(vec: IVec) -> int:
        m = 0
        for t, c in enumerate(processed):
            if idot(c, vec) == 0:
                m |= 1 << t
        return m

    for a in constraints:
        pivot_idx = None
        for i, l in enumerate(lineality):
            if idot(a, l) != 0:
                pivot_idx = i
                break
        if pivot_idx is not None:
            l0 = lineality.pop(pivot_idx)
            s0 = idot(a, l0)
            if s0 < 0:
                l0 = tuple(-v for v in l0)
                s0 = -s0
            new_lin = []
            for l in lineality:
                s = idot(a, l)
                if s == 0:
                    new_lin.append(l)
                else:
                    new_lin.append(
                        prim_int(tuple(l[j] * s0 - l0[j] * s for j in range(d)))
                    )
            lineality = new_lin
            new_rays = []
            for r in rays:
                s = idot(a, r)
                if s == 0:
                    new_rays.append(r)
                else:
                    new_rays.append(
                        prim_int(tuple(r[j] * s0 - l0[j] * s for j in range(d)))
                    )
            new_rays.append(l0)
            rays = new_rays
            processed.append(a)
            masks = [full_mask(r) for r in rays]
            continue

        slacks = [idot(a, r) for r in rays]
        keep = [i for i, s in enumerate(slacks) if s >= 0]
        plus = [i for i, s in enumerate(slacks) if s > 0]
        minus = [i for i, s in enumerate(slacks) if s < 0]
        bit = 1 << len(processed)
        if not minus:
            processed.append(a)
            masks = [
                masks[i] | (bit if slacks[i] == 0 else 0) for i in range(len(rays))
            ]
            continue

        need = d - len(lineality) - 2
        new_rays: dict[IVec, None] = {}
        for ip in plus:
            for im in minus:
                common = masks[ip] & masks[im]
                if _popcount(common) < need:
                    continue
                tight = [processed[t] for t in range(len(processed)) if common >> t & 1]
                if rank_of(tight) != need:
                    continue
                sp, sm = slacks[ip], slacks[im]
                w = prim_int(
                    tuple(sp * rays[im][j] - sm * rays[ip][j] for j in range(d))
                )
                new_rays.setdefault(w)
        processed.append(a)
        surv_rays = [rays[i] for i in keep]
        surv_masks = [
            masks[i] | (bit if slacks[i] == 0 else 0) for i in keep
        ]
        for w in new_rays:
            if w not in surv_rays:
                surv_rays.append(w)
                surv_masks.append(full_mask(w))
        rays, masks = surv_rays, surv_masks

    # map back to ambient coordinates
    def lift(vec: IVec) -> IVec:
        out = [0] * dim
        for coef, nb in zip(vec, nbasis):
            if coef:
                for j in range(dim):
                    out[j] += coef * nb[j]
        return prim_int(out)

    lin_out = canonical_basis([lift(l) for l in lineality], dim) if lineality else []
    ray_out = sorted(lift(r) for r in rays)
    return lin_out, ray_out
