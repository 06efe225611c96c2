"""The correlation inequality built from a context set.

For rays with +-1 observables ``A_r = 2|r><r|/<r|r> - I`` the sum

    S = - sum over contexts c of < prod_{r in c} A_r >

is bounded by exhaustive search over +-1 value assignments in the
noncontextual case, and is a state-independent constant in quantum theory
whenever every context product is a multiple of the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .contextuality import ContextSet
from .eisenstein import ExactMatrix, matrix_product, observable_from_ray

DEFAULT_BUDGET = 1 << 24
_CHUNK = 1 << 20


class BudgetExceededError(RuntimeError):
    pass


def build_observables(cs: ContextSet) -> dict[str, ExactMatrix]:
    return {label: observable_from_ray(ray) for label, ray in zip(cs.ray_labels, cs.rays)}


def context_products(cs: ContextSet, observables: dict[str, ExactMatrix] | None = None) -> list[ExactMatrix]:
    """Exact product of the observables of each context, in ray-index order."""
    obs = observables or build_observables(cs)
    return [matrix_product([obs[cs.ray_labels[r]] for r in ctx]) for ctx in cs.contexts]


def exact_quantum_value(products: list[ExactMatrix]) -> Fraction | None:
    """State-independent value of S, or None if some product is not scalar."""
    total = Fraction(0)
    for p in products:
        c = p[0, 0]
        if not c.is_rational() or not p.is_scalar(c):
            return None
        total -= c.a
    return total


@dataclass(frozen=True)
class ClassicalBound:
    value: int
    maximizer: tuple[int, ...]  # +-1 per ray
    maximizer_count: int
    assignments: int


def _context_masks(cs: ContextSet) -> list[int]:
    return [sum(1 << r for r in ctx) for ctx in cs.contexts]


def classical_values(cs: ContextSet, start: int, stop: int) -> np.ndarray:
    """S for assignments ``start..stop-1``; bit r set means ray r takes -1."""
    idx = np.arange(start, stop, dtype=np.uint64)
    total = np.zeros(stop - start, dtype=np.int64)
    for mask in _context_masks(cs):
        # the product of the signs is (-1)^(number of -1s); each term is minus that
        odd = np.bitwise_count(idx & np.uint64(mask)) & 1
        total += 2 * odd.astype(np.int64) - 1
    return total


def classical_max(cs: ContextSet, budget: int = DEFAULT_BUDGET) -> ClassicalBound:
    """Maximum of S over all +-1 assignments, by exhaustive enumeration.

    The reported maximizer is the first one in binary-counter order.
    """
    n = len(cs.rays)
    total = 1 << n
    if total > budget:
        raise BudgetExceededError(f"2^{n} assignments exceed the budget of {budget}")
    best, best_idx, count = None, -1, 0
    for start in range(0, total, _CHUNK):
        vals = classical_values(cs, start, min(total, start + _CHUNK))
        m = int(vals.max())
        hits = int(np.count_nonzero(vals == m))
        if best is None or m > best:
            best, best_idx, count = m, start + int(np.argmax(vals)), hits
        elif m == best:
            count += hits
    signs = tuple(-1 if best_idx >> r & 1 else 1 for r in range(n))
    return ClassicalBound(best, signs, count, total)


def evaluate_assignment(cs: ContextSet, signs: tuple[int, ...]) -> int:
    s = 0
    for ctx in cs.contexts:
        prod = 1
        for r in ctx:
            prod *= signs[r]
        s -= prod
    return s


def _numeric_products(cs: ContextSet) -> list[np.ndarray]:
    d = cs.dimension
    obs = []
    for ray in cs.rays:
        v = np.array(ray.to_complex())
        obs.append(2 * np.outer(v, v.conj()) / np.vdot(v, v).real - np.eye(d))
    prods = []
    for ctx in cs.contexts:
        p = np.eye(d, dtype=complex)
        for r in ctx:
            p = p @ obs[r]
        prods.append(p)
    return prods


def random_state(d: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = rng.normal(size=d) + 1j * rng.normal(size=d)
    return z / np.linalg.norm(z)


def quantum_value_numeric(cs: ContextSet, seed: int, products: list[np.ndarray] | None = None) -> float:
    """S in floating point for a seeded random pure state."""
    prods = products if products is not None else _numeric_products(cs)
    psi = random_state(cs.dimension, seed)
    return float(-sum(np.vdot(psi, p @ psi).real for p in prods))


def quantum_value_mixed(cs: ContextSet, products: list[np.ndarray] | None = None) -> float:
    """S for the maximally mixed state I/d."""
    prods = products if products is not None else _numeric_products(cs)
    return float(-sum(np.trace(p).real for p in prods) / cs.dimension)


@dataclass
class InequalityReport:
    classical_max: int
    classical_maximizer: tuple[int, ...]
    classical_maximizer_count: int
    quantum_value: Fraction | None
    per_context_product_is_minus_identity: list[bool]
    mixed_state_value: float
    samples: list[tuple[int, float]] = field(default_factory=list)

    @property
    def violated(self) -> bool:
        return self.quantum_value is not None and self.quantum_value > self.classical_max

    def to_dict(self) -> dict:
        q = self.quantum_value
        return {
            "schema": "1",
            "classical_max": self.classical_max,
            "classical_maximizer": list(self.classical_maximizer),
            "classical_maximizer_count": self.classical_maximizer_count,
            "quantum_value": None if q is None else f"{q.numerator}/{q.denominator}",
            "per_context_product_is_minus_identity": self.per_context_product_is_minus_identity,
            "mixed_state_value": round(self.mixed_state_value, 12),
            "samples": [{"seed": s, "value": round(v, 12)} for s, v in self.samples],
        }


def inequality_report(
    cs: ContextSet,
    seeds: list[int] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> InequalityReport:
    bound = classical_max(cs, budget)
    products = context_products(cs)
    minus_id = [p.is_scalar(-1) for p in products]
    numeric = _numeric_products(cs)
    samples = [(s, quantum_value_numeric(cs, s, numeric)) for s in (seeds or [])]
    return InequalityReport(
        classical_max=bound.value,
        classical_maximizer=bound.maximizer,
        classical_maximizer_count=bound.maximizer_count,
        quantum_value=exact_quantum_value(products),
        per_context_product_is_minus_identity=minus_id,
        mixed_state_value=quantum_value_mixed(cs, numeric),
        samples=samples,
    )
