"""Lovász number by a self-contained primal-dual interior-point SDP solver.

Primal (in maximisation form)::

    theta = max <J, X>   s.t.  tr X = 1,  X_ij = 0 for every edge ij,  X >= 0

Dual::

    min t   s.t.  Z = t I + sum_e y_e E_e - J >= 0

Both problems have obvious strictly feasible starts (``X = I/n`` and
``t = n + 1, y = 0``), so the method below is a feasible-start
Mehrotra predictor-corrector using the HKM search direction.  The
returned bracket is certified: the upper end is ``t`` plus any negative
part of the smallest eigenvalue of ``Z``, and the lower end is the
primal objective of ``X`` projected back onto the feasible set.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, clique_number, is_vertex_transitive

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-6
COMPARISON_SLACK = 1e-4


class ThetaConvergenceError(RuntimeError):
    def __init__(self, message: str, gap: float, iterations: int) -> None:
        super().__init__(message)
        self.gap = gap
        self.iterations = iterations


@dataclass(frozen=True)
class ThetaResult:
    value: float
    duality_gap: float
    iterations: int
    primal_value: float
    dual_value: float

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "duality_gap": self.duality_gap,
            "iterations": self.iterations,
            "primal_value": self.primal_value,
            "dual_value": self.dual_value,
        }


class _ThetaSDP:
    """Operators A and A^T for the constraint set {I} u {E_e : e in edges}."""

    def __init__(self, g: Graph) -> None:
        self.n = g.n
        edges = g.edges()
        self.a = np.array([u for u, _ in edges], dtype=int)
        self.b = np.array([v for _, v in edges], dtype=int)
        self.m = 1 + len(edges)
        self.rhs = np.zeros(self.m)
        self.rhs[0] = 1.0

    def apply(self, W: np.ndarray) -> np.ndarray:
        """A(W)_k = tr(A_k W); E_e has ones at (a,b) and (b,a)."""
        out = np.empty(self.m)
        out[0] = np.trace(W)
        out[1:] = W[self.a, self.b] + W[self.b, self.a]
        return out

    def adjoint(self, y: np.ndarray) -> np.ndarray:
        M = y[0] * np.eye(self.n)
        M[self.a, self.b] += y[1:]
        M[self.b, self.a] += y[1:]
        return M

    def schur(self, X: np.ndarray, G: np.ndarray) -> np.ndarray:
        """M_kl = tr(A_k X A_l G) for symmetric X and G = Z^-1."""
        a, b = self.a, self.b
        M = np.empty((self.m, self.m))
        M[0, 0] = np.sum(X * G)
        XG = X @ G
        row = XG[a, b] + XG[b, a]
        M[0, 1:] = row
        M[1:, 0] = row
        ix = np.ix_
        M[1:, 1:] = (
            X[ix(b, a)] * G[ix(a, b)]
            + X[ix(b, b)] * G[ix(a, a)]
            + X[ix(a, a)] * G[ix(b, b)]
            + X[ix(a, b)] * G[ix(b, a)]
        )
        return M


def _max_step(S: np.ndarray, dS: np.ndarray) -> float:
    """Largest alpha <= 1 keeping S + alpha dS positive definite."""
    L = np.linalg.cholesky(S)
    Linv = np.linalg.inv(L)
    lam = np.linalg.eigvalsh(Linv @ dS @ Linv.T).min()
    if lam >= 0:
        return 1.0
    return min(1.0, -1.0 / lam)


def _sym(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.T)


def lovasz_theta(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = 200) -> ThetaResult:
    """Lovász number of ``g`` with a certified duality gap at most ``tol``."""
    if g.n == 0:
        raise ValueError("the Lovász number needs at least one vertex")
    if g.n > 64:
        raise ValueError("graphs above 64 vertices are not supported")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    n = g.n
    if g.num_edges() == 0:
        return ThetaResult(float(n), 0.0, 0, float(n), float(n))

    sdp = _ThetaSDP(g)
    J = np.ones((n, n))
    C = -J  # minimise <C, X>
    X = np.eye(n) / n
    y = np.zeros(sdp.m)
    y[0] = -(n + 1.0)
    Z = C - sdp.adjoint(y)

    best_lo, best_hi = -np.inf, np.inf
    it = 0
    for it in range(1, max_iter + 1):
        try:
            X, y, Z = _step(sdp, C, X, y, Z)
        except np.linalg.LinAlgError:
            # Iterates lost definiteness in floating point; keep the best bracket.
            log.debug("theta: numerical breakdown at iteration %d", it)
            break
        lo, hi = _certified_bracket(sdp, X, y, J)
        best_lo, best_hi = max(best_lo, lo), min(best_hi, hi)
        if best_hi - best_lo <= tol:
            log.debug("theta converged after %d iterations, gap %.3e", it, best_hi - best_lo)
            return ThetaResult(float(best_lo), float(best_hi - best_lo), it, float(best_lo), float(best_hi))
    gap = float(best_hi - best_lo)
    raise ThetaConvergenceError(f"no convergence within {it} iterations (gap {gap:.3e})", gap, it)


def _step(sdp: _ThetaSDP, C: np.ndarray, X: np.ndarray, y: np.ndarray, Z: np.ndarray):
    """One Mehrotra predictor-corrector step along the HKM direction."""
    n = sdp.n
    G = _sym(np.linalg.inv(Z))
    mu = np.sum(X * Z) / n
    Rd = C - Z - sdp.adjoint(y)
    M = sdp.schur(X, G)
    try:
        cho = np.linalg.cholesky(M)

        def solve(r):
            return np.linalg.solve(cho.T, np.linalg.solve(cho, r))
    except np.linalg.LinAlgError:
        def solve(r):
            return np.linalg.lstsq(M, r, rcond=None)[0]

    def direction(sigma_mu: float, corr: np.ndarray | None):
        # Linearised X Z = sigma_mu I with dZ = Rd - A^T dy:
        #   dX = sigma_mu G - X - X dZ G - corr G
        # and A(dX) = b - A(X) gives M dy = b - A(sigma_mu G - X Rd G - corr G).
        W = sigma_mu * G - X @ Rd @ G
        if corr is not None:
            W = W - corr @ G
        dy = solve(sdp.rhs - sdp.apply(W))
        dZ = Rd - sdp.adjoint(dy)
        dX = sigma_mu * G - X - X @ dZ @ G
        if corr is not None:
            dX = dX - corr @ G
        return _sym(dX), dy, _sym(dZ)

    dX, dy, dZ = direction(0.0, None)
    ap = _max_step(X, dX)
    ad = _max_step(Z, dZ)
    mu_aff = np.sum((X + ap * dX) * (Z + ad * dZ)) / n
    sigma = min(1.0, (mu_aff / mu) ** 3)
    dX, dy, dZ = direction(sigma * mu, dX @ dZ)
    ap = 0.95 * _max_step(X, dX)
    ad = 0.95 * _max_step(Z, dZ)
    return _sym(X + ap * dX), y + ad * dy, _sym(Z + ad * dZ)


def _certified_bracket(sdp: _ThetaSDP, X: np.ndarray, y: np.ndarray, J: np.ndarray) -> tuple[float, float]:
    # Dual: t = -y0 is valid once Z + t' I >= 0; shift by the negative part.
    Z = -J - sdp.adjoint(y)
    zmin = np.linalg.eigvalsh(Z).min()
    upper = float(-y[0] + max(0.0, -zmin))
    # Primal: zero the edge entries, restore PSD, rescale to unit trace.
    Xf = X.copy()
    Xf[sdp.a, sdp.b] = 0.0
    Xf[sdp.b, sdp.a] = 0.0
    wmin = np.linalg.eigvalsh(Xf).min()
    if wmin < 0:
        # Adding -wmin I keeps edge entries zero and makes Xf PSD.
        Xf = Xf - wmin * np.eye(len(Xf))
    Xf = Xf / np.trace(Xf)
    lower = float(np.sum(Xf))
    return lower, upper


def fractional_packing_vt(g: Graph) -> Fraction:
    """Fractional packing number n / clique_number of a vertex-transitive graph."""
    if not is_vertex_transitive(g):
        raise ValueError("the n/omega formula only holds for vertex-transitive graphs")
    return Fraction(g.n, clique_number(g))
