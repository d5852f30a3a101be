"""CSS code view of three consecutive chain-complex degrees.

Columns of dz are Z-stabilizers, rows of dq are X-stabilizers; qubits
index both dz rows and dq columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable

from .exact import ExactMatrix, Z2, ZZ, mask_of, mat_mul, rank_z2, support_of
from .chain import ChainComplex, reduce_complex_mod2
from .builders import ResolutionProfile, build_product, build_telescope


@dataclass
class CssCode:
    """(dz, dq) over Z2 with dq . dz = 0."""

    dz: ExactMatrix  # n_q x n_z
    dq: ExactMatrix  # n_x x n_q
    origin: tuple[ChainComplex, int] | None = None
    added_columns: tuple[int, ...] = ()
    slice_of_qubit: tuple[float, ...] | None = None
    provenance: dict | None = None

    @property
    def n_z(self) -> int:
        return self.dz.cols

    @property
    def n_q(self) -> int:
        return self.dz.rows

    @property
    def n_x(self) -> int:
        return self.dq.rows

    def __post_init__(self) -> None:
        if self.dz.ring != Z2 or self.dq.ring != Z2:
            raise ValueError("CSS matrices must be over Z2")
        if self.dq.cols != self.dz.rows:
            raise ValueError("dq cols must equal dz rows (qubit count)")
        prod = mat_mul(self.dq, self.dz)
        if not prod.is_zero():
            r, c, _ = prod.entries[0]
            raise ValueError(f"dq . dz != 0 (X-stab {r}, Z-stab {c})")


def from_complex(c: ChainComplex, degree: int,
                 origin: tuple[ChainComplex, int] | None = None) -> CssCode:
    """CSS code with qubits on degree-d cells of a Z2 complex."""
    if c.ring != Z2:
        raise ValueError("from_complex expects a Z2 complex")
    for d in (degree + 1, degree, degree - 1):
        if d not in c.dims:
            raise ValueError(f"complex lacks degree {d}")
    slices = None
    if c.slices is not None and degree in c.slices:
        slices = c.slices[degree]
    return CssCode(dz=c.boundary(degree + 1), dq=c.boundary(degree),
                   origin=origin, slice_of_qubit=slices,
                   provenance=c.provenance)


def logical_count(code: CssCode) -> int:
    return code.n_q - rank_z2(code.dz) - rank_z2(code.dq)


def add_stabilizer(code: CssCode, chain: int | Iterable[int]) -> CssCode:
    """Append a Z-stabilizer column; it must commute with every X-stabilizer."""
    mask = chain if isinstance(chain, int) else mask_of(chain)
    for i, row in enumerate(code.dq.bit_rows()):
        if (row & mask).bit_count() & 1:
            raise ValueError(f"added chain anticommutes with X-stabilizer {i}")
    col = code.n_z
    trips = list(code.dz.entries) + [(r, col, 1) for r in support_of(mask)]
    dz = ExactMatrix.build(Z2, code.n_q, code.n_z + 1, trips)
    return replace(code, dz=dz, added_columns=code.added_columns + (col,))


def build_code_b(k: int | None = None, n: int | None = None,
                 profile: ResolutionProfile | None = None) -> CssCode:
    """The (2,2) four-dimensional toric code of the product or telescope."""
    if profile is not None:
        cx = build_telescope(profile)
    else:
        cx = build_product(k, n)
    code = from_complex(reduce_complex_mod2(cx), 2, origin=(cx, 2))
    code.provenance = dict(cx.provenance or {}, code="B")
    return code


def build_code_c(k: int | None = None, n: int | None = None,
                 profile: ResolutionProfile | None = None) -> CssCode:
    """Code B plus one Z-stabilizer: the projective-plane 2-chain at m=0."""
    code_b = build_code_b(k, n, profile)
    cx, _ = code_b.origin
    degree, supp = cx.distinguished["rp2_cycle_m0"]
    if degree != 2:
        raise AssertionError("rp2_cycle_m0 is not a 2-chain")
    code = add_stabilizer(code_b, supp)
    code.provenance = dict(cx.provenance or {}, code="C")
    return code


@dataclass(frozen=True)
class SparsityStats:
    max_row_weight: int
    max_col_weight: int
    row_histogram: dict[int, int]
    col_histogram: dict[int, int]


def sparsity_stats(target: CssCode | ExactMatrix) -> SparsityStats | dict[str, SparsityStats]:
    """Row/column weight maxima and histograms (exact nonzero counts)."""
    if isinstance(target, CssCode):
        return {"dz": sparsity_stats(target.dz), "dq": sparsity_stats(target.dq)}
    rw = target.row_weights()
    cw = target.col_weights()
    hist_r: dict[int, int] = {}
    for w in rw:
        hist_r[w] = hist_r.get(w, 0) + 1
    hist_c: dict[int, int] = {}
    for w in cw:
        hist_c[w] = hist_c.get(w, 0) + 1
    return SparsityStats(max(rw, default=0), max(cw, default=0), hist_r, hist_c)
