"""Cohomology of the Poisson bi-complex (B^{p,q}, ad_Lambda, dbar).

Everything here reduces to exact ranks of the memoized operator blocks:

* Dolbeault dimensions  H^q(g^{p,0}) = dim ker dbar|B^{p,q} - rank dbar|B^{p,q-1};
* total cohomology of dbar_Lambda = dbar + ad_Lambda on K^n = sum_{p+q=n} B^{p,q}
  by brute-force rank computation -- the oracle every theorem-level claim is
  checked against;
* the first page E_1^{p,q} = H^q(g^{p,0}) with the rank of the induced map
  d_1 = ad_Lambda, and E_2 from those ranks;
* the degeneracy obstruction for Lambda = V ^ T: whether ad_Lambda(rho_bar)
  = dbar X is solvable with X in t^{1,0}, which for such Lambda is
  equivalent to first-page degeneracy and forces the Hodge-type dimension
  decomposition when it holds;
* the deformed differential delta = dbar_Lambda + [Omega_bar, -] for an
  integrable (0,2) deformation class.

Dimension statements that are theorems (the injectivity bound, the
obstruction/degeneracy equivalence, the Hodge equality under a solvable
obstruction) are enforced as fatal consistency checks: a violation raises
:class:`ConsistencyError` instead of being reported as a result, since it
can only mean an implementation bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import CenterDimensionError
from .exterior import ExteriorComplex, GradedElement, Monomial, wedge
from .rationals import ZERO, GaussianRational
from .sparse import SparseMatrix, SpanBuilder, kernel_vectors, rank, solve


class ConsistencyError(RuntimeError):
    """A theorem-implied equality failed: an internal bug, not a result."""


class ObstructionInputError(ValueError):
    """The obstruction solver's hypotheses are not met."""


DEFAULT_DEGREE_CAP = 6


def degree_cap(cx: ExteriorComplex, max_degree: Optional[int]) -> int:
    if max_degree is None:
        return min(cx.dim_l, DEFAULT_DEGREE_CAP)
    return max(0, min(max_degree, cx.dim_l))


# -- Dolbeault table ---------------------------------------------------------


def dolbeault_dims(cx: ExteriorComplex, max_total: Optional[int] = None) -> Dict[Tuple[int, int], int]:
    """dim H^q(g^{p,0}) for every block with p + q <= max_total."""
    cap = degree_cap(cx, max_total)
    out: Dict[Tuple[int, int], int] = {}
    for p in range(0, min(cx.n, cap) + 1):
        for q in range(0, min(cx.n, cap - p) + 1):
            block = cx.operator_block("dbar", p, q)
            incoming = cx.operator_block("dbar", p, q - 1) if q > 0 else None
            dim_kernel = cx.block_dim(p, q) - block.rank()
            out[(p, q)] = dim_kernel - (incoming.rank() if incoming else 0)
    return out


# -- total complex ------------------------------------------------------------


def _degree_blocks(cx: ExteriorComplex, degree: int) -> List[Tuple[int, int]]:
    """Blocks of K^degree, polyvector degree descending (filtration order)."""
    return [(p, degree - p) for p in range(min(degree, cx.n), -1, -1)
            if degree - p <= cx.n]


def total_operator(cx: ExteriorComplex, summands: Sequence[GradedElement],
                   degree: int) -> SparseMatrix:
    """The matrix of dbar + sum of ad_(summand) on K^degree -> K^{degree+1}."""
    source_blocks = _degree_blocks(cx, degree)
    target_blocks = _degree_blocks(cx, degree + 1)
    target_offset: Dict[Tuple[int, int], int] = {}
    offset = 0
    for blk in target_blocks:
        target_offset[blk] = offset
        offset += cx.block_dim(*blk)
    n_rows = offset

    entries: Dict[Tuple[int, int], GaussianRational] = {}
    col_offset = 0
    for (p, q) in source_blocks:
        width = cx.block_dim(p, q)
        pieces = [cx.operator_block("dbar", p, q)]
        for element in summands:
            if element:
                pieces.append(cx.operator_block("ad", p, q, element))
        for piece in pieces:
            row_base = target_offset.get(piece.target)
            if row_base is None:
                if piece.matrix.entries:
                    raise ConsistencyError(
                        f"operator {piece.source}->{piece.target} escapes degree {degree + 1}")
                continue
            for (r, c), value in piece.matrix.entries.items():
                key = (row_base + r, col_offset + c)
                acc = entries.get(key, ZERO) + value
                if acc:
                    entries[key] = acc
                elif key in entries:
                    del entries[key]
        col_offset += width
    return SparseMatrix(n_rows, col_offset, entries)


def total_cohomology(cx: ExteriorComplex, lam: GradedElement,
                     max_degree: Optional[int] = None) -> Dict[int, int]:
    """dim H^n of dbar_Lambda for n = 0..max_degree, by exact rank."""
    cap = degree_cap(cx, max_degree)
    ranks: Dict[int, int] = {}
    dims: Dict[int, int] = {}
    previous_rank = 0
    for n in range(cap + 1):
        matrix = total_operator(cx, [lam], n)
        ranks[n] = rank(matrix)
        dims[n] = cx.k_dim(n) - ranks[n] - previous_rank
        previous_rank = ranks[n]
    return dims


# -- spectral sequence: first and second pages ---------------------------------


@dataclass(frozen=True)
class FirstPage:
    e1: Dict[Tuple[int, int], int]
    d1_ranks: Dict[Tuple[int, int], int]
    degenerate: bool


def first_page(cx: ExteriorComplex, lam: GradedElement,
               max_total: Optional[int] = None) -> FirstPage:
    """E_1 dimensions and the exact rank of every induced d_1 block.

    The rank of d_1: E_1^{p,q} -> E_1^{p+1,q} is computed as
    rank([image(dbar) | ad_Lambda(kernel basis)]) - rank(image(dbar)) over
    B^{p+1,q}: lifting kernel representatives, applying ad_Lambda and
    projecting modulo dbar-exact elements, without materializing quotient
    bases.  ad_Lambda of a dbar-exact element is dbar-exact, so the span is
    representative-independent.
    """
    e1 = dolbeault_dims(cx, max_total)
    cap = degree_cap(cx, max_total)
    d1_ranks: Dict[Tuple[int, int], int] = {}
    for (p, q) in e1:
        d1_ranks[(p, q)] = 0
        if not lam or e1[(p, q)] == 0 or p + 1 > cx.n:
            continue
        ad_block = cx.operator_block("ad", p, q, lam)
        if ad_block.matrix.is_zero():
            continue
        dbar_block = cx.operator_block("dbar", p, q)
        image_block = cx.operator_block("dbar", p + 1, q - 1) if q > 0 else None
        columns: Dict[Tuple[int, int], GaussianRational] = {}
        n_cols = 0
        if image_block is not None:
            for (r, c), value in image_block.matrix.entries.items():
                columns[(r, c)] = value
            n_cols = image_block.matrix.cols
        kernel = kernel_vectors(dbar_block.matrix)
        for vec in kernel:
            image = ad_block.matrix.apply(vec)
            if image:
                for r, value in image.items():
                    columns[(r, n_cols)] = value
                n_cols += 1
        if not columns:
            continue
        combined = SparseMatrix(cx.block_dim(p + 1, q), n_cols, columns)
        base_rank = image_block.rank() if image_block is not None else 0
        d1_ranks[(p, q)] = rank(combined) - base_rank
    degenerate = all(v == 0 for v in d1_ranks.values())
    return FirstPage(e1=e1, d1_ranks=d1_ranks, degenerate=degenerate)


def second_page(page: FirstPage) -> Dict[Tuple[int, int], int]:
    """E_2^{p,q} = ker d_1^{p,q} / im d_1^{p-1,q}, dimensions only."""
    out = {}
    for (p, q), dim in page.e1.items():
        out[(p, q)] = (dim - page.d1_ranks.get((p, q), 0)
                       - page.d1_ranks.get((p - 1, q), 0))
    return out


# -- obstruction solver ---------------------------------------------------------


@dataclass(frozen=True)
class ObstructionResult:
    """Outcome of the linear degeneracy obstruction for Lambda = V ^ T."""

    kind: str                                   # "trivial_action" | "solvable" | "unsolvable"
    t_indices: Tuple[int, ...]                  # basis indices spanning t^{1,0}
    solution: Optional[Tuple[GaussianRational, ...]] = None   # X over t_indices
    unique: bool = False

    def solution_element(self) -> Optional[GradedElement]:
        if self.solution is None:
            return None
        total = GradedElement()
        for index, coeff in zip(self.t_indices, self.solution):
            if coeff:
                total = total + GradedElement.vector(index, coeff)
        return total


def obstruction(cx: ExteriorComplex, v_index: int, t: GradedElement) -> ObstructionResult:
    """Solve ad_{V^T}(rho_bar) = dbar X for X in t^{1,0}.

    Requires a one-dimensional (1,0) center spanned by basis index v_index
    and T inside the t_{k-1} layer.  Returns trivial_action when the
    bracket action on rho_bar already vanishes (then ad_Lambda = 0
    identically); otherwise the system is the contraction identity
    iota_T d(rho_bar) = -iota_X d(rho), and solvability is equivalent to
    first-page degeneracy for this Lambda.
    """
    report = cx.report
    if report.dim_center != 1:
        raise CenterDimensionError(
            f"obstruction needs dim c^{{1,0}} = 1, got {report.dim_center}")
    if report.center_indices != (v_index,):
        raise CenterDimensionError(
            f"basis index {v_index} does not span the center {report.center_indices}")
    if report.step < 2:
        raise ObstructionInputError("abelian algebra has no t_{k-1} layer")

    if t and not t.is_homogeneous(1, 0):
        raise ObstructionInputError("T must be a (1,0) vector")
    t_coords: Dict[int, GaussianRational] = {}
    for mono, coeff in t.terms():
        t_coords[mono.vec[0] - 1] = coeff
    layer = report.t_layers[report.step - 2]
    span = SpanBuilder()
    for vec in layer:
        span.add({i: v for i, v in enumerate(vec) if v})
    if not span.contains(t_coords):
        raise ObstructionInputError(
            f"T is not inside the t_{report.step - 1} layer")

    t_indices = tuple(i for i in range(1, cx.n + 1) if i != v_index)
    rho_bar = GradedElement.form(v_index)
    lam = wedge(GradedElement.vector(v_index), t)
    rhs_element = cx.schouten(lam, rho_bar)
    if not rhs_element:
        return ObstructionResult(kind="trivial_action", t_indices=t_indices)

    # dbar restricted to t^{1,0} inside B^{1,0} -> B^{1,1}
    dbar_block = cx.operator_block("dbar", 1, 0)
    column_of = {index: pos for pos, index in enumerate(t_indices)}
    entries = {}
    for (r, c), value in dbar_block.matrix.entries.items():
        source_index = cx.basis(1, 0)[c].vec[0]
        if source_index in column_of:
            entries[(r, column_of[source_index])] = value
    system = SparseMatrix(dbar_block.matrix.rows, len(t_indices), entries)
    b = [ZERO] * system.rows
    for pos, value in cx.coordinates(rhs_element, 1, 1).items():
        b[pos] = value
    x = solve(system, b)
    if x is None:
        return ObstructionResult(kind="unsolvable", t_indices=t_indices)
    unique = rank(system) == len(t_indices)
    return ObstructionResult(kind="solvable", t_indices=t_indices,
                             solution=tuple(x), unique=unique)


# -- Hodge verdict ----------------------------------------------------------------


@dataclass(frozen=True)
class DegreeComparison:
    degree: int
    h_lambda: int
    hpq_sum: int

    @property
    def equal(self) -> bool:
        return self.h_lambda == self.hpq_sum


@dataclass(frozen=True)
class HodgeVerdict:
    hodge: bool
    per_degree: Tuple[DegreeComparison, ...]


def hodge_verdict(cx: ExteriorComplex, lam: GradedElement,
                  max_degree: Optional[int] = None,
                  hn: Optional[Dict[int, int]] = None,
                  hpq: Optional[Dict[Tuple[int, int], int]] = None) -> HodgeVerdict:
    """Compare dim H^n_Lambda with sum_{p+q=n} dim H^{p,q} per degree.

    The <= direction is a theorem for every invariant holomorphic Poisson
    structure; a violation is a fatal internal error, never a result.
    """
    cap = degree_cap(cx, max_degree)
    if hn is None:
        hn = total_cohomology(cx, lam, cap)
    if hpq is None:
        hpq = dolbeault_dims(cx, cap)
    rows = []
    for n in range(cap + 1):
        total = sum(dim for (p, q), dim in hpq.items() if p + q == n)
        row = DegreeComparison(degree=n, h_lambda=hn[n], hpq_sum=total)
        if row.h_lambda > row.hpq_sum:
            raise ConsistencyError(
                f"dim H^{n}_Lambda = {row.h_lambda} exceeds the Dolbeault sum {row.hpq_sum}; "
                "this contradicts the injectivity bound and indicates a bug")
        rows.append(row)
    return HodgeVerdict(hodge=all(r.equal for r in rows), per_degree=tuple(rows))


# -- deformation -------------------------------------------------------------------


class DeformationError(ValueError):
    pass


class NotBidegree02(DeformationError):
    pass


class NotIntegrable(DeformationError):
    pass


@dataclass(frozen=True)
class DeformationReport:
    dims: Dict[int, int]
    k1_kernel: Tuple[GradedElement, ...]

    @property
    def k1_kernel_dim(self) -> int:
        return len(self.k1_kernel)


def deformed_complex(cx: ExteriorComplex, lam: GradedElement, omega_bar: GradedElement,
                     max_degree: Optional[int] = None) -> DeformationReport:
    """Cohomology of delta = dbar_Lambda + [Omega_bar, -] plus ker on K^1.

    Omega_bar must be an integrable (0,2) class: dbar_Lambda(Omega_bar) = 0
    and [Omega_bar, Omega_bar] = 0.  delta^2 = 0 is verified block-wise on
    the assembled matrices before any dimension is reported.
    """
    if omega_bar and not omega_bar.is_homogeneous(0, 2):
        raise NotBidegree02(
            f"expected a (0,2) class, got bidegrees {sorted(omega_bar.bidegrees())}")
    closure = cx.dbar(omega_bar) + cx.schouten(lam, omega_bar)
    if closure:
        raise NotIntegrable("dbar_Lambda(Omega_bar) != 0")
    if cx.schouten(omega_bar, omega_bar):
        raise NotIntegrable("[Omega_bar, Omega_bar] != 0")

    summands = [lam, omega_bar]
    cap = degree_cap(cx, max_degree)
    operators = {n: total_operator(cx, summands, n) for n in range(cap + 1)}
    for n in range(cap):
        if not (operators[n + 1] @ operators[n]).is_zero():
            raise ConsistencyError(f"delta^2 != 0 between K^{n} and K^{n + 2}")

    dims: Dict[int, int] = {}
    previous_rank = 0
    for n in range(cap + 1):
        r = rank(operators[n])
        dims[n] = cx.k_dim(n) - r - previous_rank
        previous_rank = r

    kernel_elements = []
    if cap >= 1:
        blocks = _degree_blocks(cx, 1)
        flat_basis: List[Monomial] = []
        for (p, q) in blocks:
            flat_basis.extend(cx.basis(p, q))
        for vec in kernel_vectors(operators[1]):
            element = GradedElement({flat_basis[i]: v for i, v in vec.items()})
            kernel_elements.append(element)
    return DeformationReport(dims=dims, k1_kernel=tuple(kernel_elements))


# -- full analysis ------------------------------------------------------------------


@dataclass(frozen=True)
class CohomologyReport:
    """Everything the analyzer computes for one (algebra, Lambda) pair."""

    algebra_name: str
    n: int
    dim_l: int
    step: int
    dim_center: int
    max_degree: int
    poisson: Optional[str]
    hpq: Dict[Tuple[int, int], int]
    hn_lambda: Dict[int, int]
    e1_d1_ranks: Dict[Tuple[int, int], int]
    e2: Dict[Tuple[int, int], int]
    degeneracy: bool
    hodge: bool
    per_degree: Tuple[DegreeComparison, ...]
    obstruction_kind: Optional[str] = None
    obstruction_solution: Optional[Dict[str, GaussianRational]] = None

    def to_json_dict(self) -> dict:
        return {
            "algebra": {
                "name": self.algebra_name,
                "complex_dimension": self.n,
                "dim_l": self.dim_l,
                "step": self.step,
                "dim_center": self.dim_center,
            },
            "poisson": self.poisson,
            "max_degree": self.max_degree,
            "hpq": {f"{p},{q}": dim for (p, q), dim in sorted(self.hpq.items())},
            "hn_lambda": {str(n): dim for n, dim in sorted(self.hn_lambda.items())},
            "e1_d1_ranks": {f"{p},{q}": r for (p, q), r in sorted(self.e1_d1_ranks.items())},
            "e2": {f"{p},{q}": dim for (p, q), dim in sorted(self.e2.items())},
            "degeneracy": self.degeneracy,
            "hodge": self.hodge,
            "per_degree": [
                {"n": row.degree, "h_lambda": row.h_lambda,
                 "hpq_sum": row.hpq_sum, "equal": row.equal}
                for row in self.per_degree
            ],
            "obstruction": (
                None if self.obstruction_kind is None else {
                    "kind": self.obstruction_kind,
                    "solution": (
                        None if self.obstruction_solution is None else
                        {label: str(value) for label, value in sorted(self.obstruction_solution.items())}
                    ),
                }
            ),
        }


def _detect_center_wedge(cx: ExteriorComplex, lam: GradedElement):
    """Decompose lam as V ^ T for the coordinate one-dimensional center.

    Returns (v_index, T) or None when lam is not of that shape (or the
    hypotheses on the center fail).
    """
    report = cx.report
    if not lam or report.dim_center != 1 or report.center_indices is None:
        return None
    v_index = report.center_indices[0]
    t = GradedElement()
    for mono, coeff in lam.terms():
        if v_index not in mono.vec:
            return None
        if mono.vec[0] == v_index:      # V ^ X_a is canonical when v < a
            t = t + GradedElement.vector(mono.vec[1], coeff)
        else:                           # X_a ^ V = -(V ^ X_a)
            t = t + GradedElement.vector(mono.vec[0], -coeff)
    if wedge(GradedElement.vector(v_index), t) != lam:
        return None
    if report.step < 2:
        return None
    layer = report.t_layers[report.step - 2]
    span = SpanBuilder()
    for vec in layer:
        span.add({i: v for i, v in enumerate(vec) if v})
    t_coords = {mono.vec[0] - 1: c for mono, c in t.terms()}
    if not span.contains(t_coords):
        return None
    return v_index, t


def analyze(cx: ExteriorComplex, lam: Optional[GradedElement] = None,
            max_degree: Optional[int] = None,
            poisson_text: Optional[str] = None) -> CohomologyReport:
    """Full report: tables, verdicts, and theorem consistency checks."""
    lam = lam if lam is not None else GradedElement()
    cx.validate_poisson(lam)
    cap = degree_cap(cx, max_degree)

    hpq = dolbeault_dims(cx, cap)
    hn = total_cohomology(cx, lam, cap)
    page = first_page(cx, lam, cap)
    e2 = second_page(page)
    verdict = hodge_verdict(cx, lam, cap, hn=hn, hpq=hpq)

    # E_2 sandwich: sum E_2 per degree sits between dim H^n and sum E_1.
    for row in verdict.per_degree:
        e2_sum = sum(dim for (p, q), dim in e2.items() if p + q == row.degree)
        if not (row.h_lambda <= e2_sum <= row.hpq_sum):
            raise ConsistencyError(
                f"degree {row.degree}: E_2 sum {e2_sum} outside "
                f"[{row.h_lambda}, {row.hpq_sum}]")

    obstruction_kind = None
    obstruction_solution = None
    detected = _detect_center_wedge(cx, lam)
    if detected is not None:
        v_index, t = detected
        result = obstruction(cx, v_index, t)
        obstruction_kind = result.kind
        if result.solution is not None:
            obstruction_solution = {
                cx.spec.label(i): v for i, v in zip(result.t_indices, result.solution) if v}
        degenerate_by_obstruction = result.kind in ("trivial_action", "solvable")
        # An unsolvable obstruction shows up as d_1 != 0 at (0,1); that block
        # is inside the computed table whenever the degree cap reaches 1.
        if cap >= 1 and degenerate_by_obstruction != page.degenerate:
            raise ConsistencyError(
                f"obstruction says degenerate={degenerate_by_obstruction} but the computed "
                f"d_1 table says degenerate={page.degenerate}")
        if degenerate_by_obstruction and not verdict.hodge:
            raise ConsistencyError(
                "solvable obstruction without the Hodge-type dimension equality")

    return CohomologyReport(
        algebra_name=cx.spec.name,
        n=cx.n,
        dim_l=cx.dim_l,
        step=cx.report.step,
        dim_center=cx.report.dim_center,
        max_degree=cap,
        poisson=poisson_text,
        hpq=hpq,
        hn_lambda=hn,
        e1_d1_ranks=page.d1_ranks,
        e2=e2,
        degeneracy=page.degenerate,
        hodge=verdict.hodge,
        per_degree=verdict.per_degree,
        obstruction_kind=obstruction_kind,
        obstruction_solution=obstruction_solution,
    )
