"""alpha-spectral radius of a uniform hypergraph by bracketing power iteration.

For ``A_alpha = alpha*D + (1 - alpha)*A`` the eigen-equation at vertex ``v``
reads::

    rho * x_v**(k-1) = alpha*d_v*x_v**(k-1) + (1 - alpha) * sum_{e ∋ v} prod_{w in e, w != v} x_w

:func:`apply_alpha` evaluates the right-hand side straight from the edge
list, never forming the order-k tensor. :func:`spectral_radius` iterates the
shifted map ``x -> (A_alpha x + shift*x**(k-1))**(1/(k-1))`` and keeps the
Collatz-Wielandt bracket ``min_v r_v <= rho <= max_v r_v`` with
``r_v = (A_alpha x)_v / x_v**(k-1)``. For a connected hypergraph the tensor
is weakly irreducible, so the positive eigenvector is unique and the
bracket closes on the spectral radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable

import numpy as np

from .errors import BadParams, DimensionMismatch, NoConvergence, TooLarge
from .hypercore import Hypergraph, require_connected

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 200_000
TIE_TOL = 1e-9
DENSE_CAP = 12


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 <= alpha < 1.0):
        raise BadParams(f"alpha must lie in [0, 1), got {alpha}")
    return alpha


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    perron: np.ndarray
    residual: float
    iterations: int
    bracket: tuple[float, float]
    alpha: float
    tol: float
    shift: float
    trace: tuple[tuple[float, float], ...] | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "alpha": self.alpha,
            "tol": self.tol,
            "iterations": self.iterations,
            "residual": self.residual,
            "bracket": [self.bracket[0], self.bracket[1]],
            "perron": [float(v) for v in self.perron],
        }


def apply_alpha(H: Hypergraph, alpha: float, x: np.ndarray) -> np.ndarray:
    """Evaluate ``(A_alpha x)_v`` for every vertex in O(m*k)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (H.n,):
        raise DimensionMismatch(f"vector of shape {x.shape} for n={H.n}")
    k = H.k
    y = alpha * np.asarray(H.degrees, dtype=float) * x ** (k - 1)
    if H.m:
        E = H.edge_array
        P = x[E]
        # product of all entries of the row except column j, without division
        left = np.ones_like(P)
        right = np.ones_like(P)
        left[:, 1:] = np.cumprod(P[:, :-1], axis=1)
        right[:, :-1] = np.cumprod(P[:, :0:-1], axis=1)[:, ::-1]
        excl = left * right
        y += (1.0 - alpha) * np.bincount(E.ravel(), weights=excl.ravel(), minlength=H.n)
    return y


def default_shift(alpha: float) -> float:
    return 1.0 if alpha == 0.0 else 0.0


def _bracket_iteration(
    apply: Callable[[np.ndarray], np.ndarray],
    n: int,
    k: int,
    shift: float,
    tol: float,
    max_iter: int,
    record: bool = False,
):
    x = np.ones(n)
    trace = [] if record else None
    lo = hi = math.nan
    inv = 1.0 / (k - 1)
    for it in range(1, max_iter + 1):
        base = apply(x)
        xp = x ** (k - 1)
        y = base + shift * xp
        r = y / xp
        lo = float(r.min()) - shift
        hi = float(r.max()) - shift
        if trace is not None:
            trace.append((lo, hi))
        if hi - lo <= tol:
            return x, base, xp, lo, hi, it, trace
        x = y**inv
        top = x.max()
        if not top > 0.0:
            break
        x = x / top
    raise NoConvergence(max_iter, (lo, hi))


def spectral_radius(
    H: Hypergraph,
    alpha: float = 0.0,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    shift: float | None = None,
    record_trace: bool = False,
) -> SpectralResult:
    """Compute ``rho_alpha(H)`` and its Perron vector (max entry 1).

    Raises :class:`~hyperx.errors.NotConnected` for disconnected input and
    :class:`~hyperx.errors.NoConvergence` if the bracket is still wider than
    ``tol`` after ``max_iter`` steps.

    >>> from hyperx.hypercore import build
    >>> round(spectral_radius(build(3, 5, [(0, 1, 2), (2, 3, 4)])).rho, 6)
    1.259921
    """
    alpha = check_alpha(alpha)
    if not tol > 0:
        raise BadParams("tol must be positive")
    require_connected(H)
    if shift is None:
        shift = default_shift(alpha)
    x, base, xp, lo, hi, it, trace = _bracket_iteration(
        lambda v: apply_alpha(H, alpha, v), H.n, H.k, float(shift), tol, max_iter, record_trace
    )
    rho = 0.5 * (lo + hi)
    residual = float(np.max(np.abs(rho * xp - base)))
    return SpectralResult(
        rho=rho,
        perron=x,
        residual=residual,
        iterations=it,
        bracket=(lo, hi),
        alpha=alpha,
        tol=tol,
        shift=float(shift),
        trace=tuple(trace) if trace is not None else None,
    )


def residual(H: Hypergraph, result: SpectralResult) -> float:
    """Re-evaluate ``max_v |rho*x_v**(k-1) - (A_alpha x)_v|`` from scratch."""
    x = result.perron
    return float(np.max(np.abs(result.rho * x ** (H.k - 1) - apply_alpha(H, result.alpha, x))))


def dense_tensor(H: Hypergraph, alpha: float) -> np.ndarray:
    """Materialise ``A_alpha(H)`` as an ``n**k`` array."""
    if H.n > DENSE_CAP:
        raise TooLarge(f"dense tensor limited to n <= {DENSE_CAP}, got n={H.n}")
    k, n = H.k, H.n
    T = np.zeros((n,) * k)
    weight = (1.0 - alpha) / math.factorial(k - 1)
    for e in H.edges:
        for idx in permutations(e):
            T[idx] += weight
    for v, d in enumerate(H.degrees):
        T[(v,) * k] += alpha * d
    return T


def dense_oracle_radius(
    H: Hypergraph,
    alpha: float = 0.0,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    shift: float | None = None,
) -> float:
    """Spectral radius from the materialised tensor; a test oracle for small n."""
    alpha = check_alpha(alpha)
    if H.n > DENSE_CAP:
        raise TooLarge(f"dense oracle limited to n <= {DENSE_CAP}, got n={H.n}")
    require_connected(H)
    T = dense_tensor(H, alpha)

    def contract(x: np.ndarray) -> np.ndarray:
        y = T
        for _ in range(H.k - 1):
            y = y @ x
        return y

    if shift is None:
        shift = default_shift(alpha)
    *_, lo, hi, _, _ = _bracket_iteration(contract, H.n, H.k, float(shift), tol, max_iter)
    return 0.5 * (lo + hi)


def max_entry_vertex(result: SpectralResult, tie_tol: float = TIE_TOL) -> int:
    """Smallest vertex whose Perron entry is within ``tie_tol`` of the maximum 1."""
    hits = np.flatnonzero(result.perron >= 1.0 - tie_tol)
    return int(hits[0])
