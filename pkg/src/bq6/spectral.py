"""Dispersion data for the sixth-order Boussinesq operator on the half line.

The linear operator is u_tt - u_xx + beta*u_xxxx - u_xxxxxx with beta = +-1.
Plane waves e^{i(x xi + t w)} solve it when w = +-phase(xi), with

    phase(xi) = sqrt(xi^6 + beta*xi^4 + xi^2).

After a Laplace transform in time, half-line solutions are built from the
spatially decaying roots of the characteristic equation

    gamma^6 - beta*gamma^4 + gamma^2 - rho^2 = 0,

evaluated on the contour rho = -i*phase(mu), mu >= 0, where exactly three
roots decay (or stay bounded) as x -> +infinity:

    gamma1 = i*mu,   gamma2 = -p(mu) - i*q(mu),   gamma3 = conj(gamma2).

For beta = +1 the roots have closed forms; note that squaring the printed
radicals requires the prefactor 1/2 (not 1/sqrt(2)) for the residual of the
characteristic equation to vanish, which the test suite enforces against an
independent companion-matrix root oracle.  For beta = -1 the roots come from
the polynomial oracle directly, with deterministic sorting.

The 3x3 boundary system maps boundary data (u, u_xx, u_xxxx at x=0) to the
coefficients of the decaying modes; `boundary_system` carries its Vandermonde
determinant, the Cramer cofactor table, and the contour Jacobian d(phase)/d(mu).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PhaseSpec",
    "RootTriple",
    "BoundarySystem",
    "DegenerateDeterminant",
    "RootSelectionError",
    "phase",
    "surrogate_phase",
    "phase_derivative",
    "characteristic_roots",
    "boundary_system",
]

# Re <= 0 classification tolerance near mu = 0 where gamma1 -> 0.
ROOT_CLUSTER_TOL = 1e-8


class DegenerateDeterminant(ArithmeticError):
    """Boundary determinant vanished (coincident characteristic roots)."""


class RootSelectionError(ArithmeticError):
    """Root clustering did not yield exactly three decaying candidates."""


@dataclass(frozen=True)
class PhaseSpec:
    """Dispersion data: beta selects the sign of the fourth-order term."""

    beta: int = 1

    def __post_init__(self):
        if self.beta not in (-1, 1):
            raise ValueError(f"beta must be -1 or +1, got {self.beta}")

    def phase(self, xi):
        return phase(self, xi)

    def surrogate(self, xi):
        return surrogate_phase(self, xi)

    def phase_derivative(self, mu):
        return phase_derivative(self, mu)


def phase(spec: PhaseSpec, xi):
    """sqrt(xi^6 + beta*xi^4 + xi^2); even, nonnegative, phase(0) = 0."""
    xi = np.asarray(xi, dtype=float)
    x2 = xi * xi
    rad = x2 * (x2 * x2 + spec.beta * x2 + 1.0)
    # xi^4 + beta*xi^2 + 1 >= 3/4 for beta = -1, so the radicand is >= 0;
    # clip guards rounding only.
    return np.sqrt(np.maximum(rad, 0.0))


def surrogate_phase(spec: PhaseSpec, xi):
    """KdV-style surrogate |xi|^3 + (beta/2)|xi| used by the norm equivalence."""
    a = np.abs(np.asarray(xi, dtype=float))
    return a ** 3 + 0.5 * spec.beta * a


def phase_derivative(spec: PhaseSpec, mu):
    """d(phase)/d(mu) = (3 mu^4 + 2 beta mu^2 + 1)/sqrt(mu^4 + beta mu^2 + 1).

    For beta = +1 this is the printed contour Jacobian of the boundary
    integral; for beta = -1 it is the same substitution rho = -i*phase(mu)
    differentiated.
    """
    mu = np.asarray(mu, dtype=float)
    m2 = mu * mu
    return (3.0 * m2 * m2 + 2.0 * spec.beta * m2 + 1.0) / np.sqrt(
        m2 * m2 + spec.beta * m2 + 1.0
    )


@dataclass(frozen=True)
class RootTriple:
    """Decaying characteristic roots at contour point mu.

    gamma1 = i*mu, gamma2 = -p - i*q, gamma3 = conj(gamma2); each satisfies
    gamma^6 - beta*gamma^4 + gamma^2 - rho^2 = 0 with rho = i*phase(mu)
    (rho^2 = -phase^2 is orientation-free).
    """

    mu: float
    gamma1: complex
    gamma2: complex
    gamma3: complex
    p: float
    q: float

    @property
    def gammas(self):
        return np.array([self.gamma1, self.gamma2, self.gamma3])


def _closed_form_pq(spec: PhaseSpec, mu):
    """p, q for the decaying complex pair; valid for both beta.

    gamma2^2 solves lam^2 - (beta + mu^2) lam + (mu^4 + beta mu^2 + 1) = 0,
    the quadratic cofactor of lam = -mu^2 in the cubic resolvent of the
    characteristic equation.
    """
    m2 = np.asarray(mu, dtype=float) ** 2
    s = 2.0 * np.sqrt(m2 * m2 + spec.beta * m2 + 1.0)  # 2|gamma2|^2
    re2 = m2 + spec.beta  # 2*Re(gamma2^2)
    p = 0.5 * np.sqrt(s + re2)
    q = 0.5 * np.sqrt(s - re2)
    return p, q


def _oracle_roots(spec: PhaseSpec, mu: float) -> np.ndarray:
    """All six characteristic roots via the companion-matrix eigenvalues."""
    rho2 = -phase(spec, mu) ** 2
    coeffs = np.array([1.0, 0.0, -spec.beta, 0.0, 1.0, 0.0, -rho2])
    return np.roots(coeffs)


def characteristic_roots(spec: PhaseSpec, mu: float) -> RootTriple:
    """Decaying root triple at mu >= 0, sorted (i*mu, -p-iq, -p+iq).

    beta = +1 uses the closed forms; beta = -1 selects the Re <= 0 roots of
    the polynomial oracle, clustering within ROOT_CLUSTER_TOL to absorb the
    double root at mu = 0.
    """
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    if spec.beta == 1:
        p, q = _closed_form_pq(spec, mu)
        return RootTriple(mu, 1j * mu, -p - 1j * q, -p + 1j * q, float(p), float(q))

    roots = _oracle_roots(spec, mu)
    scale = max(1.0, float(np.max(np.abs(roots))))
    tol = ROOT_CLUSTER_TOL * scale
    # cluster numerically coincident roots (double zero at mu = 0)
    kept: list[complex] = []
    for z in roots:
        if all(abs(z - w) > tol for w in kept):
            kept.append(complex(z))
    strict = [z for z in kept if z.real < -tol]
    axis = [z for z in kept if abs(z.real) <= tol]
    if len(strict) == 2 and axis:
        # purely imaginary pair +-i*mu sits on the selection boundary: the
        # limit of the decaying branch carries the label gamma1 = +i*mu
        g1 = max(axis, key=lambda z: z.imag)
        pair = sorted(strict, key=lambda z: z.imag)
    elif len(strict) == 3 and not axis:
        ordered = sorted(strict, key=lambda z: z.real, reverse=True)
        g1, pair = ordered[0], sorted(ordered[1:], key=lambda z: z.imag)
    else:
        raise RootSelectionError(
            f"mu={mu}: {len(strict)} strictly decaying + {len(axis)} boundary "
            "candidates after clustering; refine or exclude the node"
        )
    g2, g3 = pair
    # snap the limit root onto the axis and symmetrize the conjugate pair
    g1 = 1j * mu
    p = -0.5 * (g2.real + g3.real)
    q = 0.5 * abs(g3.imag - g2.imag)
    return RootTriple(mu, g1, -p - 1j * q, -p + 1j * q, float(p), float(q))


@dataclass(frozen=True)
class BoundarySystem:
    """Cramer data of the 3x3 boundary system at contour point mu.

    The system matrix has rows (1,1,1), (g1^2,g2^2,g3^2), (g1^4,g2^4,g3^4);
    `delta` is its determinant, `delta_jm[j,m]` the determinant with column j
    replaced by the unit vector e_m, and `jacobian` = d(phase)/d(mu).  The
    mode coefficients for boundary data (r1,r2,r3) are
    c_j = sum_m delta_jm[j,m]*r_m / delta.
    """

    mu: float
    roots: RootTriple
    delta: complex
    delta_jm: np.ndarray = field(repr=False)
    jacobian: float

    def coefficients(self, rhs):
        rhs = np.asarray(rhs, dtype=complex)
        return self.delta_jm @ rhs / self.delta


def _cofactor_table(lam: np.ndarray) -> np.ndarray:
    """delta_jm for the Vandermonde-in-lambda system, lam = gamma^2.

    Column-replacement determinants computed by cofactor expansion; row j of
    the result holds delta_{j,m} for m = 0..2.
    """
    l1, l2, l3 = lam
    # minors of the system matrix A = [[1,1,1],[l1,l2,l3],[l1^2,l2^2,l3^2]]
    out = np.empty((3, 3), dtype=complex)
    # delta_{j,m} = cofactor C_{m,j} of A (adjugate entry)
    a = np.array([[1, 1, 1], [l1, l2, l3], [l1 * l1, l2 * l2, l3 * l3]])
    for j in range(3):
        for m in range(3):
            rows = [r for r in range(3) if r != m]
            cols = [c for c in range(3) if c != j]
            minor = (
                a[rows[0], cols[0]] * a[rows[1], cols[1]]
                - a[rows[0], cols[1]] * a[rows[1], cols[0]]
            )
            out[j, m] = (-1) ** (j + m) * minor
    return out


def boundary_system(spec: PhaseSpec, mu: float) -> BoundarySystem:
    """Assemble determinant, cofactors and Jacobian at mu.

    Raises DegenerateDeterminant when the Vandermonde factor underflows
    (coincident roots); callers skip the node and refine the panel.
    """
    tri = characteristic_roots(spec, mu)
    lam = tri.gammas ** 2
    delta = (lam[1] - lam[0]) * (lam[2] - lam[0]) * (lam[2] - lam[1])
    scale = max(1.0, float(np.max(np.abs(lam)))) ** 3
    if abs(delta) < 1e-12 * scale:
        raise DegenerateDeterminant(f"boundary determinant ~ 0 at mu={mu}")
    delta_jm = _cofactor_table(lam)
    return BoundarySystem(
        mu=mu,
        roots=tri,
        delta=complex(delta),
        delta_jm=delta_jm,
        jacobian=float(phase_derivative(spec, mu)),
    )
