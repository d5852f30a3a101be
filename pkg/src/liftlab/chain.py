"""Graded chain complexes and chain maps over Z2 and Z.

Degrees are absolute (geometric dimension) and may be negative; the
boundary at degree d maps degree-d cells to degree-(d-1) cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exact import (
    ExactMatrix, Z2, ZZ, mask_of, support_of,
    mat_mul, mod_reduce, rank_z2, solve_affine_z2, smith_normal_form,
)


@dataclass
class ChainComplex:
    """Cell counts per degree plus the boundary matrices between them.

    boundaries[d] has shape dims[d-1] x dims[d] and is present for every
    d_min < d <= d_max.  distinguished holds named chains as
    (degree, support index tuple).  slices optionally tags every cell of
    a degree with an interval position (half-integers mark connecting
    cells between positions).
    """

    ring: str
    dims: dict[int, int]
    boundaries: dict[int, ExactMatrix]
    name: str = ""
    labels: dict[int, tuple[str, ...]] | None = None
    distinguished: dict[str, tuple[int, tuple[int, ...]]] = field(default_factory=dict)
    slices: dict[int, tuple[float, ...]] | None = None
    provenance: dict | None = None

    @property
    def d_min(self) -> int:
        return min(self.dims)

    @property
    def d_max(self) -> int:
        return max(self.dims)

    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    def degrees(self) -> range:
        return range(self.d_min, self.d_max + 1)

    def boundary(self, d: int) -> ExactMatrix:
        """Boundary matrix out of degree d (zero-shaped off the range)."""
        if d in self.boundaries:
            return self.boundaries[d]
        return ExactMatrix.zeros(self.ring, self.dim(d - 1), self.dim(d))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in self.dims.items())


@dataclass
class ChainMap:
    """Degreewise matrices commuting with the boundaries."""

    source: ChainComplex
    target: ChainComplex
    components: dict[int, ExactMatrix]

    def component(self, d: int) -> ExactMatrix:
        if d in self.components:
            return self.components[d]
        return ExactMatrix.zeros(self.source.ring,
                                 self.target.dim(d), self.source.dim(d))


@dataclass(frozen=True)
class HomologyReport:
    """Betti numbers per degree; integer data present for ring-Z input."""

    betti_z2: dict[int, int]
    betti_z: dict[int, int] | None = None
    torsion: dict[int, tuple[int, ...]] | None = None


def validate_complex(c: ChainComplex, reference: ChainComplex | None = None) -> list[str]:
    """Check the complex invariants; empty list means valid.

    With a reference complex over Z2 supplied, also checks that this
    complex reduces to it mod 2.
    """
    issues: list[str] = []
    degs = sorted(c.dims)
    if degs != list(range(degs[0], degs[-1] + 1)):
        issues.append("degree range not contiguous")
    for d, mat in c.boundaries.items():
        if mat.ring != c.ring:
            issues.append(f"boundary({d}) ring {mat.ring} != {c.ring}")
        if (mat.rows, mat.cols) != (c.dim(d - 1), c.dim(d)):
            issues.append(f"boundary({d}) shape {mat.rows}x{mat.cols} != "
                          f"{c.dim(d - 1)}x{c.dim(d)}")
    for d in c.degrees():
        if d - 1 < c.d_min or d > c.d_max:
            continue
        if d in c.boundaries and (d + 1) in c.boundaries:
            prod = mat_mul(c.boundaries[d], c.boundaries[d + 1])
            if not prod.is_zero():
                r, col, v = prod.entries[0]
                issues.append(f"boundary({d}) . boundary({d + 1}) != 0, "
                              f"entry ({r},{col}) = {v}")
    for name, (d, supp) in c.distinguished.items():
        n = c.dim(d)
        if any(not (0 <= i < n) for i in supp):
            issues.append(f"distinguished {name!r} support out of range at degree {d}")
    if c.slices is not None:
        for d, vals in c.slices.items():
            if len(vals) != c.dim(d):
                issues.append(f"slices at degree {d} length mismatch")
    if reference is not None:
        if reference.ring != Z2:
            issues.append("reference complex must be over Z2")
        elif c.ring != ZZ:
            issues.append("mod-2 comparison needs an integer complex")
        else:
            for d in c.boundaries:
                if mod_reduce(c.boundaries[d], 2) != reference.boundary(d):
                    issues.append(f"boundary({d}) does not reduce to reference mod 2")
    return issues


def validate_chain_map(f: ChainMap) -> list[str]:
    issues: list[str] = []
    s, t = f.source, f.target
    if s.ring != t.ring:
        issues.append("source/target ring mismatch")
        return issues
    for d, mat in f.components.items():
        if (mat.rows, mat.cols) != (t.dim(d), s.dim(d)):
            issues.append(f"component({d}) shape mismatch")
    for d in s.degrees():
        if d - 1 < min(s.d_min, t.d_min):
            continue
        lhs = mat_mul(t.boundary(d), f.component(d))
        rhs = mat_mul(f.component(d - 1), s.boundary(d))
        if lhs != rhs:
            issues.append(f"chain map fails to commute at degree {d}")
    return issues


def reduce_complex_mod2(c: ChainComplex) -> ChainComplex:
    """Entrywise mod-2 reduction of an integer complex."""
    if c.ring != ZZ:
        raise ValueError("reduce_complex_mod2 needs an integer complex")
    return ChainComplex(
        ring=Z2,
        dims=dict(c.dims),
        boundaries={d: mod_reduce(m, 2) for d, m in c.boundaries.items()},
        name=c.name,
        labels=c.labels,
        distinguished=dict(c.distinguished),
        slices=c.slices,
        provenance=c.provenance,
    )


def homology(c: ChainComplex) -> HomologyReport:
    """Betti numbers (Z2 always; plus free rank and torsion for ring Z)."""
    ranks2 = {d: rank_z2(c.boundary(d)) for d in c.degrees()}
    ranks2[c.d_max + 1] = 0
    betti2 = {d: c.dim(d) - ranks2[d] - ranks2.get(d + 1, 0) for d in c.degrees()}
    if c.ring == Z2:
        return HomologyReport(betti_z2=betti2)
    snf = {d: smith_normal_form(c.boundary(d)) for d in c.degrees()}
    ranks = {d: snf[d].rank for d in c.degrees()}
    ranks[c.d_max + 1] = 0
    betti = {d: c.dim(d) - ranks[d] - ranks.get(d + 1, 0) for d in c.degrees()}
    torsion = {d: snf[d + 1].torsion() if d + 1 in snf else ()
               for d in c.degrees()}
    return HomologyReport(betti_z2=betti2, betti_z=betti, torsion=torsion)


# ---------------------------------------------------------------------------
# tensor products

def tensor_basis(a_dims: Mapping[int, int], b_dims: Mapping[int, int],
                 n: int) -> list[tuple[int, int, int]]:
    """Ordered degree-n basis of the tensor: (p, i, j) with p + q = n.

    Ordering: degree of the first factor descending, then first-factor
    index major, second-factor index minor.
    """
    out = []
    for p in sorted(a_dims, reverse=True):
        q = n - p
        if q not in b_dims:
            continue
        na, nb = a_dims[p], b_dims[q]
        for i in range(na):
            for j in range(nb):
                out.append((p, i, j))
    return out


def tensor_index(a_dims: Mapping[int, int], b_dims: Mapping[int, int],
                 n: int) -> dict[tuple[int, int, int], int]:
    return {cell: k for k, cell in enumerate(tensor_basis(a_dims, b_dims, n))}


def tensor_product(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Tensor product with the Koszul sign (-1)^p on the second term."""
    if a.ring != b.ring:
        raise ValueError("tensor_product needs matching rings")
    dims: dict[int, int] = {}
    for n in range(a.d_min + b.d_min, a.d_max + b.d_max + 1):
        dims[n] = sum(a.dims[p] * b.dims[n - p]
                      for p in a.dims if (n - p) in b.dims)
    boundaries: dict[int, ExactMatrix] = {}
    bycol_a = {d: _cols_of(a.boundary(d)) for d in a.boundaries}
    bycol_b = {d: _cols_of(b.boundary(d)) for d in b.boundaries}
    for n in range(min(dims) + 1, max(dims) + 1):
        src = tensor_basis(a.dims, b.dims, n)
        tgt_index = tensor_index(a.dims, b.dims, n - 1)
        trips = []
        for k, (p, i, j) in enumerate(src):
            q = n - p
            sign = 1 if p % 2 == 0 else -1
            for r, v in bycol_a.get(p, {}).get(i, ()):
                trips.append((tgt_index[(p - 1, r, j)], k, v))
            for r, v in bycol_b.get(q, {}).get(j, ()):
                trips.append((tgt_index[(p, i, r)], k, sign * v))
        boundaries[n] = ExactMatrix.build(a.ring, dims[n - 1], dims[n], trips)
    return ChainComplex(ring=a.ring, dims=dims, boundaries=boundaries,
                        name=f"{a.name}(x){b.name}" if a.name or b.name else "")


def _cols_of(m: ExactMatrix) -> dict[int, list[tuple[int, int]]]:
    cols: dict[int, list[tuple[int, int]]] = {}
    for r, c, v in m.entries:
        cols.setdefault(c, []).append((r, v))
    return cols


def tensor_chain_map(f: ChainMap, g: ChainMap,
                     source: ChainComplex, target: ChainComplex) -> ChainMap:
    """Tensor of two degree-0 chain maps (no Koszul sign needed)."""
    comps: dict[int, ExactMatrix] = {}
    fcols = {d: _cols_of(f.component(d)) for d in f.source.degrees()}
    gcols = {d: _cols_of(g.component(d)) for d in g.source.degrees()}
    for n in source.degrees():
        src = tensor_basis(f.source.dims, g.source.dims, n)
        tgt_index = tensor_index(f.target.dims, g.target.dims, n)
        trips = []
        for k, (p, i, j) in enumerate(src):
            q = n - p
            for (ri, vi) in fcols.get(p, {}).get(i, ()):
                for (rj, vj) in gcols.get(q, {}).get(j, ()):
                    trips.append((tgt_index[(p, ri, rj)], k, vi * vj))
        comps[n] = ExactMatrix.build(source.ring, target.dim(n), source.dim(n), trips)
    return ChainMap(source=source, target=target, components=comps)


# ---------------------------------------------------------------------------
# mapping cylinder

def mapping_cylinder(f: ChainMap) -> tuple[ChainComplex, ChainMap, ChainMap]:
    """Mapping cylinder of a chain map, plus source/target inclusions.

    Cyl_n = S_n (+) S_{n-1} (+) T_n with
    d(c, c', t) = (dc - c', -dc', f(c') + dt).
    """
    issues = validate_chain_map(f)
    if issues:
        raise ValueError("invalid chain map: " + "; ".join(issues))
    s, t = f.source, f.target
    d_min = min(s.d_min, t.d_min)
    d_max = max(s.d_max + 1, t.d_max)
    dims = {}
    for n in range(d_min, d_max + 1):
        dims[n] = s.dim(n) + s.dim(n - 1) + t.dim(n)
    boundaries: dict[int, ExactMatrix] = {}
    for n in range(d_min + 1, d_max + 1):
        rows, cols = dims[n - 1], dims[n]
        trips: list[tuple[int, int, int]] = []
        s_off_r, sh_off_r, t_off_r = 0, s.dim(n - 1), s.dim(n - 1) + s.dim(n - 2)
        s_off_c, sh_off_c, t_off_c = 0, s.dim(n), s.dim(n) + s.dim(n - 1)
        for r, c, v in s.boundary(n).entries:  # d c within S
            trips.append((s_off_r + r, s_off_c + c, v))
        for k in range(s.dim(n - 1)):  # -c' into S_{n-1}
            trips.append((s_off_r + k, sh_off_c + k, -1))
        for r, c, v in s.boundary(n - 1).entries:  # -dc' within the shift
            trips.append((sh_off_r + r, sh_off_c + c, -v))
        for r, c, v in f.component(n - 1).entries:  # f(c') into T
            trips.append((t_off_r + r, sh_off_c + c, v))
        for r, c, v in t.boundary(n).entries:  # dt within T
            trips.append((t_off_r + r, t_off_c + c, v))
        boundaries[n] = ExactMatrix.build(s.ring, rows, cols, trips)
    cyl = ChainComplex(ring=s.ring, dims=dims, boundaries=boundaries,
                       name=f"Cyl({s.name}->{t.name})")
    inc_s = ChainMap(source=s, target=cyl, components={
        n: ExactMatrix.build(s.ring, cyl.dim(n), s.dim(n),
                             ((i, i, 1) for i in range(s.dim(n))))
        for n in s.degrees()})
    inc_t = ChainMap(source=t, target=cyl, components={
        n: ExactMatrix.build(s.ring, cyl.dim(n), t.dim(n),
                             ((s.dim(n) + s.dim(n - 1) + i, i, 1)
                              for i in range(t.dim(n))))
        for n in t.degrees()})
    return cyl, inc_s, inc_t


# ---------------------------------------------------------------------------
# cycle / boundary membership (over Z2)

def _z2_boundary(c: ChainComplex, d: int) -> ExactMatrix:
    b = c.boundary(d)
    return b if b.ring == Z2 else mod_reduce(b, 2)


def chain_mask(chain: int | Iterable[int]) -> int:
    return chain if isinstance(chain, int) else mask_of(chain)


def is_cycle(c: ChainComplex, degree: int, chain: int | Iterable[int]) -> bool:
    """True iff the Z2 boundary of the chain vanishes."""
    mask = chain_mask(chain)
    bnd = _z2_boundary(c, degree)
    out = 0
    for col in support_of(mask):
        out ^= bnd.column_mask(col)
    return out == 0


def is_boundary(c: ChainComplex, degree: int,
                chain: int | Iterable[int]) -> tuple[bool, int | None]:
    """Membership of the chain in im d_{degree+1} over Z2, with witness."""
    mask = chain_mask(chain)
    bnd = _z2_boundary(c, degree + 1)
    sol = solve_affine_z2(bnd, mask)
    if sol is None:
        return False, None
    return True, sol[0]
