"""Constructors for the interval, polygon, join-sphere, RP3, product,
and telescope chain complexes, all over the integers.

The RP3 family is the antipodal quotient of the join of two centrally
symmetric polygons: S^3 = C_{2k} * C_{2k} with the product rotation as
the free involution.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import ExactMatrix, ZZ, Z2, mask_of, mod_reduce, solve_affine_z2
from .chain import (
    ChainComplex, ChainMap, tensor_basis, tensor_index, tensor_product,
    tensor_chain_map, validate_chain_map,
)


@dataclass(frozen=True)
class SymmetricComplex:
    """A chain complex with a cellwise involution (sign-free permutation)."""

    complex: ChainComplex
    involution: dict[int, tuple[int, ...]]

    def fixed_cells(self) -> list[tuple[int, int]]:
        out = []
        for d, perm in self.involution.items():
            out.extend((d, i) for i, j in enumerate(perm) if i == j)
        return out


@dataclass(frozen=True)
class ResolutionProfile:
    """Polygon half-sizes per interval slice: k_0 <= k_1 <= ... <= k_N."""

    k_per_slice: tuple[int, ...]

    def __post_init__(self) -> None:
        ks = self.k_per_slice
        if len(ks) < 2:
            raise ValueError("profile needs at least two slices")
        if ks[0] < 2:
            raise ValueError("coarse half-size k_0 must be >= 2")
        for a, b in zip(ks, ks[1:]):
            if b - a not in (0, 1):
                raise ValueError("consecutive half-sizes must differ by 0 or 1")

    @property
    def n_segments(self) -> int:
        return len(self.k_per_slice) - 1


def build_interval(n: int) -> ChainComplex:
    """Path complex of [0,1] subdivided into n segments (n=0: a point)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    dims = {0: n + 1}
    boundaries = {}
    if n:
        dims[1] = n
        trips = []
        for e in range(n):
            trips.append((e, e, -1))
            trips.append((e + 1, e, 1))
        boundaries[1] = ExactMatrix.build(ZZ, n + 1, n, trips)
    return ChainComplex(ring=ZZ, dims=dims, boundaries=boundaries,
                        name=f"I({n})",
                        provenance={"family": "interval", "params": {"n": n}})


def build_polygon(two_k: int) -> SymmetricComplex:
    """Cycle graph C_{2k} with the antipodal (k-step) rotation recorded."""
    if two_k % 2:
        raise ValueError("polygon size must be even")
    k = two_k // 2
    if k < 2:
        raise ValueError("polygon half-size must be >= 2")
    trips = []
    for e in range(two_k):
        trips.append((e, e, -1))
        trips.append(((e + 1) % two_k, e, 1))
    cx = ChainComplex(
        ring=ZZ, dims={0: two_k, 1: two_k},
        boundaries={1: ExactMatrix.build(ZZ, two_k, two_k, trips)},
        name=f"C{two_k}",
        provenance={"family": "polygon", "params": {"two_k": two_k}})
    perm = tuple((i + k) % two_k for i in range(two_k))
    return SymmetricComplex(cx, {0: perm, 1: perm})


def _augment(c: ChainComplex) -> ChainComplex:
    """Add a degree -1 augmentation cell (every vertex maps to it)."""
    dims = dict(c.dims)
    dims[-1] = 1
    boundaries = dict(c.boundaries)
    boundaries[0] = ExactMatrix.build(ZZ, 1, c.dim(0),
                                      ((0, j, 1) for j in range(c.dim(0))))
    return ChainComplex(ring=ZZ, dims=dims, boundaries=boundaries,
                        name=c.name + "~")


def join_spheres(p: SymmetricComplex, q: SymmetricComplex) -> SymmetricComplex:
    """Simplicial join of two symmetric polygons: a symmetric S^3.

    Realized as the tensor of the augmented complexes with degrees
    shifted up by one and the empty-join cell dropped.
    """
    if p.fixed_cells() or q.fixed_cells():
        raise ValueError("join factors must carry free involutions")
    ap, aq = _augment(p.complex), _augment(q.complex)
    tp = tensor_product(ap, aq)
    # shift degree by +1, drop the (empty, empty) cell at shifted degree -1
    dims = {d + 1: n for d, n in tp.dims.items() if d + 1 >= 0}
    boundaries = {d + 1: m for d, m in tp.boundaries.items() if d + 1 >= 1}
    name = f"S3({p.complex.name}*{q.complex.name})"
    cx = ChainComplex(ring=ZZ, dims=dims, boundaries=boundaries, name=name,
                      provenance={"family": "s3_join",
                                  "params": {"p": p.complex.provenance,
                                             "q": q.complex.provenance}})
    # involution: product permutation through the tensor basis ordering
    inv_p = {-1: (0,), 0: p.involution[0], 1: p.involution[1]}
    inv_q = {-1: (0,), 0: q.involution[0], 1: q.involution[1]}
    involution: dict[int, tuple[int, ...]] = {}
    for n in cx.degrees():
        basis = tensor_basis(ap.dims, aq.dims, n - 1)
        index = tensor_index(ap.dims, aq.dims, n - 1)
        perm = [0] * len(basis)
        for k, (pp, i, j) in enumerate(basis):
            qq = (n - 1) - pp
            perm[k] = index[(pp, inv_p[pp][i], inv_q[qq][j])]
        involution[n] = tuple(perm)
    return SymmetricComplex(cx, involution)


def antipodal_quotient(s: SymmetricComplex) -> tuple[ChainComplex, dict[int, tuple[int, ...]]]:
    """Cell-orbit quotient of a free involution.

    Returns the quotient complex and, per degree, the orbit index of
    every input cell.  Orbit representatives are the lexicographically
    least cell of each orbit; orbits are ordered by representative.
    """
    fixed = s.fixed_cells()
    if fixed:
        raise ValueError(f"involution fixes cells {fixed[:3]}")
    c = s.complex
    orbit_of: dict[int, list[int]] = {}
    reps: dict[int, list[int]] = {}
    for d in c.degrees():
        perm = s.involution[d]
        rep_list = [i for i in range(c.dim(d)) if i < perm[i]]
        rep_index = {r: k for k, r in enumerate(rep_list)}
        omap = [0] * c.dim(d)
        for i in range(c.dim(d)):
            omap[i] = rep_index[min(i, perm[i])]
        orbit_of[d] = omap
        reps[d] = rep_list
    dims = {d: len(reps[d]) for d in c.degrees()}
    boundaries: dict[int, ExactMatrix] = {}
    for d in c.boundaries:
        cols = {}
        for r, col, v in c.boundaries[d].entries:
            cols.setdefault(col, []).append((r, v))
        trips = []
        for k, rep in enumerate(reps[d]):
            for r, v in cols.get(rep, ()):
                trips.append((orbit_of[d - 1][r], k, v))
        boundaries[d] = ExactMatrix.build(ZZ, dims[d - 1], dims[d], trips)
    quot = ChainComplex(ring=ZZ, dims=dims, boundaries=boundaries,
                        name=f"({c.name})/antipode")
    return quot, {d: tuple(v) for d, v in orbit_of.items()}


def build_rp3(k: int) -> ChainComplex:
    """RP3 as the antipodal quotient of C_{2k} * C_{2k}.

    Distinguished chains: rp1_cycle (k quotient edges of the first
    polygon), rp2_cycle (the quotient of first-polygon * S^0, a
    projective plane of 2k two-cells), and dual_2cocycle (a degree-2
    cochain vanishing on boundaries of 3-cells and pairing 1 with
    rp2_cycle).
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    p = build_polygon(2 * k)
    q = build_polygon(2 * k)
    s3 = join_spheres(p, q)
    quot, orbit_of = antipodal_quotient(s3)
    ap_dims = {-1: 1, 0: 2 * k, 1: 2 * k}
    # degree-1 cells of the join are tensor degree 0: (p-edge, empty), ...
    idx1 = tensor_index(ap_dims, ap_dims, 0)
    rp1 = sorted({orbit_of[1][idx1[(1, e, 0)]] for e in range(k)})
    # degree-2 cells: (p-edge, q-vertex) pairs; S^0 = vertices {0, k} of q
    idx2 = tensor_index(ap_dims, ap_dims, 1)
    rp2_cells = {orbit_of[2][idx2[(1, e, 0)]] for e in range(2 * k)}
    rp2 = sorted(rp2_cells)
    if len(rp2) != 2 * k:
        raise AssertionError("rp2 representative has colliding orbits")
    quot.distinguished["rp1_cycle"] = (1, tuple(rp1))
    quot.distinguished["rp2_cycle"] = (2, tuple(rp2))
    quot.distinguished["dual_2cocycle"] = (2, _dual_2cocycle(quot, tuple(rp2)))
    quot.name = f"RP3({k})"
    quot.provenance = {"family": "rp3", "params": {"k": k}}
    return quot


def _dual_2cocycle(rp3: ChainComplex, rp2_support: tuple[int, ...]) -> tuple[int, ...]:
    """Solve v . d3 = 0 (mod 2) with v . rp2 = 1."""
    d3 = mod_reduce(rp3.boundary(3), 2)
    n2 = rp3.dim(2)
    rows = d3.transpose().bit_rows() + [mask_of(rp2_support)]
    rhs = [0] * d3.cols + [1]
    from .exact import gf2_solve
    sol = gf2_solve(rows, rhs, n2)
    if sol is None:
        raise ValueError("rp2 representative is homologically trivial")
    from .exact import support_of
    return support_of(sol[0])


# ---------------------------------------------------------------------------
# collapse maps

def _polygon_collapse_components(k_from: int) -> tuple[ExactMatrix, ExactMatrix]:
    """Equivariant collapse C_{2k} -> C_{2k-2}.

    Merges vertex k into k-1 and (antipodally) vertex 0 into 2k-1;
    edges k-1 and 2k-1 collapse to zero.
    """
    two_k = 2 * k_from
    two_k2 = two_k - 2

    def new_vertex(i: int) -> int:
        if i == k_from:
            i = k_from - 1
        if i == 0:
            i = two_k - 1
        if 1 <= i <= k_from - 1:
            return i - 1
        return i - 2  # k_from + 1 <= i <= 2k - 1

    v_trips = [(new_vertex(i), i, 1) for i in range(two_k)]
    comp0 = ExactMatrix.build(ZZ, two_k2, two_k, v_trips)
    e_trips = []
    for e in range(two_k):
        if e in (k_from - 1, two_k - 1):
            continue  # collapsed edges
        a, b = new_vertex(e), new_vertex((e + 1) % two_k)
        # target edge index: the edge from a to a+1 is edge a
        if (a + 1) % two_k2 != b:
            raise AssertionError("collapse broke adjacency")
        e_trips.append((a, e, 1))
    comp1 = ExactMatrix.build(ZZ, two_k2, two_k, e_trips)
    return comp0, comp1


def _polygon_collapse_map(k_from: int) -> ChainMap:
    src = build_polygon(2 * k_from)
    tgt = build_polygon(2 * k_from - 2)
    comp0, comp1 = _polygon_collapse_components(k_from)
    f = ChainMap(source=src.complex, target=tgt.complex,
                 components={0: comp0, 1: comp1})
    issues = validate_chain_map(f)
    if issues:
        raise AssertionError("polygon collapse is not a chain map: " + issues[0])
    return f


def _identity_map(c: ChainComplex) -> ChainMap:
    return ChainMap(source=c, target=c, components={
        d: ExactMatrix.identity(c.ring, c.dim(d)) for d in c.degrees()})


def build_collapse_map(k_from: int, k_to: int | None = None) -> ChainMap:
    """Chain map RP3(k_from) -> RP3(k_to) induced by polygon collapses."""
    if k_to is None:
        k_to = k_from - 1
    if k_from == k_to:
        return _identity_map(build_rp3(k_from))
    if k_from != k_to + 1 or k_to < 2:
        raise ValueError("collapse maps are defined stepwise: k_to = k_from - 1 >= 2")
    p_from = build_polygon(2 * k_from)
    p_to = build_polygon(2 * k_to)
    s3_from = join_spheres(p_from, p_from)
    s3_to = join_spheres(p_to, p_to)
    fpoly = _polygon_collapse_map(k_from)
    faug = ChainMap(
        source=_augment(fpoly.source), target=_augment(fpoly.target),
        components={-1: ExactMatrix.identity(ZZ, 1),
                    0: fpoly.components[0], 1: fpoly.components[1]})
    tsrc = tensor_product(faug.source, faug.source)
    ttgt = tensor_product(faug.target, faug.target)
    fjoin_t = tensor_chain_map(faug, faug, tsrc, ttgt)
    # shift to join degrees
    fjoin = ChainMap(source=s3_from.complex, target=s3_to.complex,
                     components={d + 1: m for d, m in fjoin_t.components.items()
                                 if d + 1 >= 0})
    quot_from, orbit_from = antipodal_quotient(s3_from)
    quot_to, orbit_to = antipodal_quotient(s3_to)
    rp3_from = build_rp3(k_from)
    rp3_to = build_rp3(k_to)
    comps: dict[int, ExactMatrix] = {}
    for d in quot_from.degrees():
        perm = s3_from.involution[d]
        reps = [i for i in range(s3_from.complex.dim(d)) if i < perm[i]]
        cols = {}
        for r, c, v in fjoin.components[d].entries:
            cols.setdefault(c, []).append((r, v))
        trips = []
        for j, rep in enumerate(reps):
            for r, v in cols.get(rep, ()):
                trips.append((orbit_to[d][r], j, v))
        comps[d] = ExactMatrix.build(ZZ, quot_to.dim(d), quot_from.dim(d), trips)
    f = ChainMap(source=rp3_from, target=rp3_to, components=comps)
    issues = validate_chain_map(f)
    if issues:
        raise AssertionError("rp3 collapse is not a chain map: " + issues[0])
    return f


# ---------------------------------------------------------------------------
# product and telescope

def build_product(k: int, n: int) -> ChainComplex:
    """RP3(k) x I(n) with slice metadata and the m=0 distinguished chains."""
    if k < 2 or n < 1:
        raise ValueError("need k >= 2 and n >= 1")
    rp3 = build_rp3(k)
    interval = build_interval(n)
    prod = tensor_product(rp3, interval)
    slices: dict[int, tuple[float, ...]] = {}
    for d in prod.degrees():
        vals = []
        for (p, i, j) in tensor_basis(rp3.dims, interval.dims, d):
            q = d - p
            vals.append(float(j) if q == 0 else j + 0.5)
        slices[d] = tuple(vals)
    prod.slices = slices
    for name, degree in (("rp1_cycle", 1), ("rp2_cycle", 2)):
        _, supp = rp3.distinguished[name]
        index = tensor_index(rp3.dims, interval.dims, degree)
        prod.distinguished[name + "_m0"] = (
            degree, tuple(sorted(index[(degree, i, 0)] for i in supp)))
    prod.name = f"RP3({k})xI({n})"
    prod.provenance = {"family": "product", "params": {"k": k, "n": n}}
    return prod


def build_telescope(profile: ResolutionProfile) -> ChainComplex:
    """Iterated mapping cylinders of collapse maps, coarse end at m=0.

    Degree-n cells: slice blocks RP3(k_m) for m = 0..N, then connecting
    blocks (degree n-1 cells of RP3(k_m)) for m = 1..N.  Connecting cell
    c' of segment m has boundary -c'(slice m) - dc'(conn m) + f_m(c')
    (slice m-1), where f_m collapses RP3(k_m) onto RP3(k_{m-1}).
    """
    ks = profile.k_per_slice
    n_seg = profile.n_segments
    slices_cx = [build_rp3(k) for k in ks]
    maps = []
    for m in range(1, n_seg + 1):
        if ks[m] == ks[m - 1]:
            maps.append(_identity_map(slices_cx[m]))
        else:
            maps.append(build_collapse_map(ks[m], ks[m - 1]))
    d_lo, d_hi = 0, 4
    dims = {}
    slice_off: dict[int, list[int]] = {}
    conn_off: dict[int, list[int]] = {}
    for d in range(d_lo, d_hi + 1):
        off = 0
        slice_off[d] = []
        for m in range(n_seg + 1):
            slice_off[d].append(off)
            off += slices_cx[m].dim(d)
        conn_off[d] = []
        for m in range(1, n_seg + 1):
            conn_off[d].append(off)
            off += slices_cx[m].dim(d - 1)
        dims[d] = off
    boundaries: dict[int, ExactMatrix] = {}
    for d in range(d_lo + 1, d_hi + 1):
        trips: list[tuple[int, int, int]] = []
        for m in range(n_seg + 1):
            for r, c, v in slices_cx[m].boundary(d).entries:
                trips.append((slice_off[d - 1][m] + r, slice_off[d][m] + c, v))
        for m in range(1, n_seg + 1):
            co = conn_off[d][m - 1]
            x = slices_cx[m]
            for i in range(x.dim(d - 1)):  # -c' into slice m
                trips.append((slice_off[d - 1][m] + i, co + i, -1))
            for r, c, v in x.boundary(d - 1).entries:  # -dc' within conn
                trips.append((conn_off[d - 1][m - 1] + r, co + c, -v))
            fm = maps[m - 1].component(d - 1)
            for r, c, v in fm.entries:  # f(c') into slice m-1
                trips.append((slice_off[d - 1][m - 1] + r, co + c, v))
        boundaries[d] = ExactMatrix.build(ZZ, dims[d - 1], dims[d], trips)
    slice_vals: dict[int, tuple[float, ...]] = {}
    for d in range(d_lo, d_hi + 1):
        vals: list[float] = []
        for m in range(n_seg + 1):
            vals.extend([float(m)] * slices_cx[m].dim(d))
        for m in range(1, n_seg + 1):
            vals.extend([m - 0.5] * slices_cx[m].dim(d - 1))
        slice_vals[d] = tuple(vals)
    tele = ChainComplex(ring=ZZ, dims=dims, boundaries=boundaries,
                        slices=slice_vals,
                        name=f"Tele{ks}",
                        provenance={"family": "telescope",
                                    "params": {"profile": list(ks)}})
    for name, degree in (("rp1_cycle", 1), ("rp2_cycle", 2)):
        _, supp = slices_cx[0].distinguished[name]
        tele.distinguished[name + "_m0"] = (degree, tuple(supp))
    return tele
