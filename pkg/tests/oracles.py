"""Independent reference computations used by the tests."""

import numpy as np
from scipy import integrate, linalg, optimize, special


def cubic_bspline(t: np.ndarray) -> np.ndarray:
    """Centered cubic B-spline C(t) for unit spacing."""
    a = np.abs(np.asarray(t, dtype=float))
    return np.where(
        a < 1.0,
        (4.0 - 6.0 * a * a + 3.0 * a ** 3) / 6.0,
        np.where(a < 2.0, (2.0 - a) ** 3 / 6.0, 0.0),
    )


def dense_spline_coefficients(samples: np.ndarray) -> np.ndarray:
    """Solve the cyclic (1, 4, 1)/6 system with a dense solver."""
    n = samples.size
    column = np.zeros(n)
    column[0], column[1], column[-1] = 4.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0
    return linalg.solve(linalg.circulant(column), samples)


def dense_spline_evaluate(e: np.ndarray, dz: float, z: np.ndarray, z0: float = 0.0) -> np.ndarray:
    """sum_j e_j C((z - z_j) / dz) summed over the periodic images."""
    n = e.size
    period = n * dz
    z = np.atleast_1d(np.asarray(z, dtype=float))
    nodes = z0 + dz * np.arange(n)
    out = np.zeros_like(z)
    for image in (-1, 0, 1):
        out += cubic_bspline((z[:, None] - nodes[None, :] - image * period) / dz) @ e
    return out


def simpson_averaging_matrix(theta: float, panels: int = 10_000) -> np.ndarray:
    """(1/dt) int_0^dt R(tau b) dtau with composite Simpson on [0, 1]."""
    s = np.linspace(0.0, 1.0, panels + 1)
    c, n = np.cos(theta * s), np.sin(theta * s)
    rot = np.array([[c, n], [-n, c]])
    return integrate.simpson(rot, x=s, axis=-1)


def ode_u_bar(u_n, b: float, jr: float, gp1: float, dt: float, iterations: int = 60) -> np.ndarray:
    """Fixed point ubar = (1/dt) int u dt of du/dt = B^(u - ubar + w) - (gp1, 0).

    B^ v = v x B = b (v2, -v1) and w = (0, jr). Integrated with DOP853.
    """
    u_n = np.asarray(u_n, dtype=float)
    w = np.array([0.0, jr])
    u_bar = u_n.copy()
    for _ in range(iterations):
        def rhs(_t, y, ubar=u_bar):
            d = y[:2] - ubar + w
            du = b * np.array([d[1], -d[0]]) - np.array([gp1, 0.0])
            return np.concatenate([du, y[:2]])

        sol = integrate.solve_ivp(
            rhs, (0.0, dt), np.concatenate([u_n, [0.0, 0.0]]), method="DOP853", rtol=1e-13, atol=1e-15
        )
        updated = sol.y[2:, -1] / dt
        if np.max(np.abs(updated - u_bar)) < 1e-15:
            return updated
        u_bar = updated
    return u_bar


def plasma_dispersion_quadrature(zeta: complex) -> complex:
    """Z(zeta) by quadrature along the real axis, continued below it (Landau contour)."""
    def part(fn):
        return integrate.quad(fn, -np.inf, np.inf, epsabs=1e-14, epsrel=1e-12, limit=400)[0]

    if abs(zeta.imag) < 1e-12:
        zeta = complex(zeta.real, 1e-12)
    kernel = lambda x: np.exp(-x * x) / (x - zeta)
    value = (part(lambda x: kernel(x).real) + 1j * part(lambda x: kernel(x).imag)) / np.sqrt(np.pi)
    if zeta.imag < 0.0:
        value += 2j * np.sqrt(np.pi) * np.exp(-zeta * zeta)
    return value


def plasma_dispersion(zeta: complex) -> complex:
    """Z(zeta) = i sqrt(pi) w(zeta)."""
    return 1j * np.sqrt(np.pi) * special.wofz(zeta)


def landau_root(k: float, v_t: float, kappa: float, gamma: float = 1.0, guess: complex = 1.8 - 0.3j) -> complex:
    """Least-damped omega of 1 + (2 kappa gamma / v_t^2)(1 + zeta Z(zeta)) = 0, zeta = omega / (k v_t)."""
    coupling = 2.0 * kappa * gamma / (v_t * v_t)

    def dispersion(zeta):
        return 1.0 + coupling * (1.0 + zeta * plasma_dispersion(zeta))

    zeta = optimize.newton(dispersion, guess, tol=1e-14, maxiter=200)
    return complex(zeta) * k * v_t
