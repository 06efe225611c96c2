"""Kochen-Specker colourability, parity proofs and full contextuality."""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .eisenstein import EisensteinScalar, Ket, inner_product, ray_equal
from .graph import (
    Graph,
    chromatic_number,
    clique_number,
    independence_number,
    is_vertex_transitive,
    maximum_cliques,
)
from .theta import COMPARISON_SLACK, DEFAULT_TOL, ThetaResult, lovasz_theta

log = logging.getLogger(__name__)

SCHEMA_VERSION = "1"


class ContextSetError(ValueError):
    """Raised when a context set is structurally invalid."""


class NonOrthogonalError(ContextSetError):
    def __init__(self, context: str, i: int, j: int, value: EisensteinScalar) -> None:
        super().__init__(
            f"context {context}: rays {i} and {j} are not orthogonal (inner product {value})"
        )
        self.context = context
        self.pair = (i, j)
        self.value = value


@dataclass(frozen=True)
class ContextSet:
    """Deduplicated rays in dimension ``dimension`` and the bases using them.

    ``contexts[c]`` holds ray indices.  Construction only checks structure;
    use :func:`validate_context_set` for orthogonality.
    """

    dimension: int
    rays: tuple[Ket, ...]
    contexts: tuple[tuple[int, ...], ...]
    context_names: tuple[str, ...] = ()
    ray_labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.context_names:
            object.__setattr__(
                self, "context_names", tuple(f"B{c + 1}" for c in range(len(self.contexts)))
            )
        if not self.ray_labels:
            object.__setattr__(self, "ray_labels", tuple(f"v{r}" for r in range(len(self.rays))))
        if len(self.context_names) != len(self.contexts):
            raise ContextSetError("one name per context required")
        if len(self.ray_labels) != len(self.rays):
            raise ContextSetError("one label per ray required")
        for r, ket in enumerate(self.rays):
            if len(ket) != self.dimension:
                raise ContextSetError(
                    f"ray {self.ray_labels[r]} has dimension {len(ket)}, expected {self.dimension}"
                )
        for name, ctx in zip(self.context_names, self.contexts):
            if len(set(ctx)) != len(ctx):
                raise ContextSetError(f"context {name} repeats a ray")
            for r in ctx:
                if not 0 <= r < len(self.rays):
                    raise ContextSetError(f"context {name} refers to unknown ray {r}")

    @classmethod
    def from_bases(
        cls,
        bases: Sequence[Sequence[Ket]],
        names: Sequence[str] | None = None,
    ) -> "ContextSet":
        """Merge vectors that span the same ray and index the bases."""
        if not bases:
            raise ContextSetError("at least one context is required")
        d = len(bases[0][0]) if bases[0] else 0
        rays: list[Ket] = []
        contexts = []
        for c, basis in enumerate(bases):
            idx = []
            for k, vec in enumerate(basis):
                if len(vec) != d:
                    raise ContextSetError(
                        f"context {c + 1}, vector {k + 1}: dimension {len(vec)}, expected {d}"
                    )
                for r, ray in enumerate(rays):
                    if ray_equal(ray, vec):
                        break
                else:
                    r = len(rays)
                    rays.append(vec)
                idx.append(r)
            contexts.append(tuple(idx))
        return cls(d, tuple(rays), tuple(contexts), tuple(names) if names else ())

    def contexts_of_ray(self, r: int) -> list[int]:
        return [c for c, ctx in enumerate(self.contexts) if r in ctx]

    def without_contexts(self, drop: Iterable[int]) -> "ContextSet":
        """Context set keeping only the contexts not in ``drop`` (rays reindexed)."""
        drop = set(drop)
        keep = [c for c in range(len(self.contexts)) if c not in drop]
        used = sorted({r for c in keep for r in self.contexts[c]})
        index = {r: i for i, r in enumerate(used)}
        return ContextSet(
            self.dimension,
            tuple(self.rays[r] for r in used),
            tuple(tuple(index[r] for r in self.contexts[c]) for c in keep),
            tuple(self.context_names[c] for c in keep),
            tuple(self.ray_labels[r] for r in used),
        )


@dataclass(frozen=True)
class ValidationReport:
    dimension: int
    contexts: int
    rays: int
    multiplicities: tuple[int, ...]
    pair_labeling: bool

    def multiplicity_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.multiplicities).items()))


def validate_context_set(cs: ContextSet) -> ValidationReport:
    """Check each context is a complete orthogonal basis.

    ``pair_labeling`` is true when every ray lies in exactly two contexts
    and its label is the concatenation of their 1-based indices (the
    ``ij`` naming of rays shared by bases i and j).
    """
    d = cs.dimension
    for name, ctx in zip(cs.context_names, cs.contexts):
        if len(ctx) != d:
            raise ContextSetError(f"context {name} has {len(ctx)} rays, expected {d}")
        for i, j in combinations(ctx, 2):
            ip = inner_product(cs.rays[i], cs.rays[j])
            if ip:
                raise NonOrthogonalError(name, i, j, ip)
    mult = tuple(len(cs.contexts_of_ray(r)) for r in range(len(cs.rays)))
    pair_ok = all(m == 2 for m in mult) and all(
        cs.ray_labels[r] == "".join(str(c + 1) for c in cs.contexts_of_ray(r))
        for r in range(len(cs.rays))
    )
    return ValidationReport(d, len(cs.contexts), len(cs.rays), mult, pair_ok)


def orthogonality_graph(cs: ContextSet) -> tuple[Graph, dict[str, int]]:
    """Vertex per ray, edge per exactly orthogonal pair (shared context or not)."""
    n = len(cs.rays)
    for i, j in combinations(range(n), 2):
        if ray_equal(cs.rays[i], cs.rays[j]):
            raise ContextSetError(f"rays {cs.ray_labels[i]} and {cs.ray_labels[j]} coincide")
    edges = [
        (i, j)
        for i, j in combinations(range(n), 2)
        if not inner_product(cs.rays[i], cs.rays[j])
    ]
    return Graph.from_edges(n, edges), {label: v for v, label in enumerate(cs.ray_labels)}


# --------------------------------------------------------------------------
# colourability and parity

@dataclass(frozen=True)
class Assignment:
    """A 0/1 value per ray."""

    values: tuple[int, ...]

    def ones(self) -> list[int]:
        return [r for r, v in enumerate(self.values) if v]

    def is_valid_for(self, cs: ContextSet) -> bool:
        return all(sum(self.values[r] for r in ctx) == 1 for ctx in cs.contexts)


def ks_colorable(cs: ContextSet) -> Assignment | None:
    """A 0/1 assignment with exactly one 1 per context, or None if impossible.

    Backtracks over contexts in their declared order; inside a context the
    ray mapped to 1 is tried in ascending index order.
    """
    n = len(cs.rays)
    value: list[int | None] = [None] * n
    member = [cs.contexts_of_ray(r) for r in range(n)]

    def consistent(changed: Iterable[int]) -> bool:
        for c in {c for r in changed for c in member[r]}:
            vals = [value[r] for r in cs.contexts[c]]
            if vals.count(1) > 1:
                return False
            if None not in vals and 1 not in vals:
                return False
        return True

    def search(ci: int) -> bool:
        if ci == len(cs.contexts):
            return True
        ctx = cs.contexts[ci]
        if any(value[r] == 1 for r in ctx):
            free = [r for r in ctx if value[r] is None]
            for r in free:
                value[r] = 0
            if consistent(free) and search(ci + 1):
                return True
            for r in free:
                value[r] = None
            return False
        for r in sorted(ctx):
            if value[r] is not None:
                continue
            free = [s for s in ctx if value[s] is None]
            for s in free:
                value[s] = 1 if s == r else 0
            if consistent(free) and search(ci + 1):
                return True
            for s in free:
                value[s] = None
        return False

    if not search(0):
        return None
    return Assignment(tuple(v or 0 for v in value))


@dataclass(frozen=True)
class ParityResult:
    is_parity: bool
    clique_size: int
    clique_count: int
    per_vertex_counts: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.is_parity


def _parity(n: int, family: Sequence[Sequence[int]]) -> ParityResult:
    counts = [0] * n
    for q in family:
        for v in q:
            counts[v] += 1
    ok = len(family) % 2 == 1 and all(c % 2 == 0 for c in counts)
    size = len(family[0]) if family else 0
    return ParityResult(ok, size, len(family), tuple(counts))


def is_parity_proof(g: Graph) -> ParityResult:
    """Odd number of maximum cliques, every vertex in an even number of them."""
    return _parity(g.n, maximum_cliques(g))


def context_parity(cs: ContextSet) -> ParityResult:
    """The same parity test applied to the declared contexts of ``cs``.

    Dropping a context need not change the orthogonality graph (its rays
    can all survive in other contexts), so this is the form that sees it.
    """
    return _parity(len(cs.rays), cs.contexts)


def _fc_decision(alpha: int, theta: float, alpha_star: Fraction, slack: float) -> bool:
    return alpha < theta - slack and abs(theta - float(alpha_star)) <= slack


def is_fully_contextual(g: Graph, tol: float = DEFAULT_TOL, slack: float = COMPARISON_SLACK) -> bool:
    """alpha < theta == alpha* for a vertex-transitive graph, up to ``slack``."""
    if not is_vertex_transitive(g):
        raise ValueError("full contextuality is only decided for vertex-transitive graphs")
    alpha = independence_number(g)
    alpha_star = Fraction(g.n, clique_number(g))
    theta = lovasz_theta(g, tol).value
    return _fc_decision(alpha, theta, alpha_star, slack)


# --------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class ClassificationReport:
    n: int
    alpha: int
    omega: int
    chi: int
    theta: float
    theta_gap: float
    alpha_star: Fraction | None
    vertex_transitive: bool
    fully_contextual: bool
    max_clique_count: int
    per_vertex_clique_counts: tuple[int, ...]
    parity_proof: bool
    symmetric_parity: bool

    @property
    def fcvt(self) -> bool:
        return self.fully_contextual and self.vertex_transitive

    @property
    def pfcvt(self) -> bool:
        return self.fcvt and self.parity_proof

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "n": self.n,
            "alpha": self.alpha,
            "omega": self.omega,
            "chi": self.chi,
            "theta": round(self.theta, 10),
            "theta_gap": float(f"{self.theta_gap:.3e}"),
            "alpha_star": None if self.alpha_star is None else _fraction_str(self.alpha_star),
            "vertex_transitive": self.vertex_transitive,
            "fully_contextual": self.fully_contextual,
            "max_clique_count": self.max_clique_count,
            "per_vertex_clique_counts": list(self.per_vertex_clique_counts),
            "parity_proof": self.parity_proof,
            "symmetric_parity": self.symmetric_parity,
        }


def _fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def classify(g: Graph, tol: float = DEFAULT_TOL, slack: float = COMPARISON_SLACK) -> ClassificationReport:
    """All invariants and predicate flags for one connected graph."""
    if g.n == 0:
        raise ValueError("empty graph")
    if g.n > 64:
        raise ValueError("graphs above 64 vertices are not supported")
    if not g.is_connected():
        raise ValueError("graph is not connected")
    alpha = independence_number(g)
    omega = clique_number(g)
    chi = chromatic_number(g)
    theta: ThetaResult = lovasz_theta(g, tol)
    vt = is_vertex_transitive(g)
    alpha_star = Fraction(g.n, omega) if vt else None
    fc = vt and _fc_decision(alpha, theta.value, alpha_star, slack)
    parity = is_parity_proof(g)
    return ClassificationReport(
        n=g.n,
        alpha=alpha,
        omega=omega,
        chi=chi,
        theta=theta.value,
        theta_gap=theta.duality_gap,
        alpha_star=alpha_star,
        vertex_transitive=vt,
        fully_contextual=fc,
        max_clique_count=parity.clique_count,
        per_vertex_clique_counts=parity.per_vertex_counts,
        parity_proof=parity.is_parity,
        symmetric_parity=parity.is_parity and vt,
    )


@dataclass(frozen=True)
class ScanEntry:
    index: int
    report: ClassificationReport | None = None
    error: str | None = None


@dataclass
class ScanResult:
    entries: list[ScanEntry] = field(default_factory=list)

    @property
    def reports(self) -> list[ClassificationReport]:
        return [e.report for e in self.entries if e.report is not None]

    def table(self) -> dict[int, dict]:
        """Rows keyed by vertex count: FCVT count and PFCVT counts by clique count."""
        rows: dict[int, dict] = {}
        for r in self.reports:
            if not r.fcvt:
                continue
            row = rows.setdefault(r.n, {"fcvt": 0, "pfcvt": {}})
            row["fcvt"] += 1
            if r.pfcvt:
                row["pfcvt"][r.max_clique_count] = row["pfcvt"].get(r.max_clique_count, 0) + 1
        for row in rows.values():
            row["pfcvt"] = dict(sorted(row["pfcvt"].items()))
        return dict(sorted(rows.items()))


def _scan_one(args: tuple[int, Graph, float, float]) -> ScanEntry:
    index, g, tol, slack = args
    if not g.is_connected():
        return ScanEntry(index, error="disconnected graph skipped")
    try:
        return ScanEntry(index, report=classify(g, tol, slack))
    except Exception as exc:  # recorded per graph; the scan goes on
        return ScanEntry(index, error=f"{type(exc).__name__}: {exc}")


def corpus_scan(
    graphs: Iterable[Graph],
    tol: float = DEFAULT_TOL,
    slack: float = COMPARISON_SLACK,
    workers: int = 1,
) -> ScanResult:
    """Classify every graph; entries come back in input order."""
    jobs = ((i, g, tol, slack) for i, g in enumerate(graphs))
    if workers <= 1:
        return ScanResult([_scan_one(j) for j in jobs])
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return ScanResult(list(pool.map(_scan_one, jobs)))


# --------------------------------------------------------------------------
# counting arguments

@dataclass(frozen=True)
class DimensionBound:
    """Rank count for five bases sharing the J(5,2) pattern with k-blocks.

    ``column_rank_total`` is the sum over the six off-diagonal column blocks
    (each of rank k); ``row_capacity`` is what the four block-row
    inequalities allow with ``extra_rows`` added rows (each added row is
    counted twice).  The smallest ``extra_rows`` satisfying
    ``column_rank_total <= row_capacity`` gives the minimum dimension.
    """

    k: int
    min_extra_rows: int
    min_dimension: int
    column_rank_total: int
    row_capacity_without_extra: int
    excluded_dimensions: tuple[int, ...]

    def as_tuple(self) -> tuple[int, int]:
        return self.min_extra_rows, self.min_dimension


_COLUMN_BLOCKS = 6  # A1, C1, C2, D1, D2, D3
_BLOCK_ROWS = 4
_EXTRA_ROW_MULTIPLICITY = 2


def johnson_dim_bound(k: int) -> DimensionBound:
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    lhs = _COLUMN_BLOCKS * k
    base_capacity = _BLOCK_ROWS * k
    # smallest p >= 0 with lhs <= base_capacity + 2p
    p = max(0, -(-(lhs - base_capacity) // _EXTRA_ROW_MULTIPLICITY))
    dim = _BLOCK_ROWS * k + p
    return DimensionBound(
        k=k,
        min_extra_rows=p,
        min_dimension=dim,
        column_rank_total=lhs,
        row_capacity_without_extra=base_capacity,
        excluded_dimensions=tuple(range(_BLOCK_ROWS * k, dim)),
    )


@dataclass(frozen=True)
class ThreeCliqueCheck:
    n: int
    omega: int
    feasible: bool
    required: int  # 2n: incidences needed with every vertex in >= 2 cliques
    available: int  # 3 * omega: incidences three cliques can provide

    def __bool__(self) -> bool:
        return self.feasible

    def describe(self) -> str:
        rel = "<=" if self.feasible else ">"
        return f"2n = {self.required} {rel} 3*omega = {self.available}"


def no_three_clique_symmetric_parity(n: int, omega: int) -> ThreeCliqueCheck:
    """Can three maximum cliques cover every vertex at least twice?

    For a non-complete vertex-transitive graph alpha >= 2 and
    alpha * omega <= n, hence omega <= n/2 and 3*omega < 2n always.
    """
    if n < 2 or omega < 2 or 2 * omega > n:
        raise ValueError(f"need n >= 2 and 2 <= omega <= n/2, got n={n}, omega={omega}")
    need, have = 2 * n, 3 * omega
    return ThreeCliqueCheck(n, omega, need <= have, need, have)
