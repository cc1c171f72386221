"""Numeric Newton solver for genus-0 Belyi maps with prescribed passports.

A degree-d rational map F(z) = lam * prod (z - z_i)^{d0_i} / prod (z - p_j)^{dinf_j}
is a Belyi map for the passport (d0, d1, dinf) when F - 1 vanishes at the
points O = {o_i} with multiplicities d1_i.  Normalising z1 = 0, o1 = 1,
p1 = infinity leaves exactly d complex unknowns (lam and the free points),
matched by the d conditions F(o_i) = 1, F'(o_i) = ... = F^(d1_i - 1)(o_i) = 0.
Derivatives are computed from the logarithmic derivative of the defining
product, never symbolically.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .geom import InvalidInputError

EPS_BELYI = 1e-10
EPS_COLLIDE = 1e-8
H_FD = 1e-7
MAX_HALVINGS = 20

INF = complex(math.inf, 0.0)


class DegenerateConfigurationError(InvalidInputError):
    """Two configuration points collided within the collision tolerance."""


class SingularJacobianError(RuntimeError):
    """The finite-difference Jacobian was numerically singular."""


class CertificationError(RuntimeError):
    """A solved configuration failed a certification check."""

    def __init__(self, message: str, point=None):
        super().__init__(message)
        self.point = point


def _is_finite(p: complex) -> bool:
    return cmath.isfinite(p)


@dataclass
class Configuration:
    """Zeros Z, unit points O, poles P with exponents; z1=0, o1=1, p1=inf."""

    lam: complex
    zeros: list            # Z, zeros[0] == 0
    ones: list             # O, ones[0] == 1
    poles: list            # P, poles[0] == inf
    d0: tuple[int, ...]
    d1: tuple[int, ...]
    dinf: tuple[int, ...]

    def __post_init__(self):
        self.zeros = [complex(z) for z in self.zeros]
        self.ones = [complex(o) for o in self.ones]
        self.poles = [complex(p) for p in self.poles]
        self.d0, self.d1, self.dinf = (
            tuple(int(x) for x in v) for v in (self.d0, self.d1, self.dinf)
        )
        if len(self.zeros) != len(self.d0) or len(self.ones) != len(self.d1) \
                or len(self.poles) != len(self.dinf):
            raise InvalidInputError("exponent vectors must match point lists")
        d = sum(self.d0)
        if sum(self.d1) != d or sum(self.dinf) != d:
            raise InvalidInputError("exponent vectors must have equal sums")
        if abs(self.zeros[0]) > 1e-14 or abs(self.ones[0] - 1) > 1e-14 \
                or _is_finite(self.poles[0]):
            raise InvalidInputError("normalisation requires z1=0, o1=1, p1=inf")

    @property
    def degree(self) -> int:
        return sum(self.d0)

    def finite_poles(self):
        return [(p, e) for p, e in zip(self.poles, self.dinf) if _is_finite(p)]

    def copy(self) -> "Configuration":
        return Configuration(
            self.lam, list(self.zeros), list(self.ones), list(self.poles),
            self.d0, self.d1, self.dinf,
        )

    # -- flat real-vector view of the unknowns (lam, z2.., o2.., p2..) ----

    def pack(self) -> np.ndarray:
        vals = [self.lam] + self.zeros[1:] + self.ones[1:] \
            + [p for p in self.poles[1:]]
        out = np.empty(2 * len(vals))
        for i, v in enumerate(vals):
            out[2 * i], out[2 * i + 1] = v.real, v.imag
        return out

    def unpack(self, x: np.ndarray) -> "Configuration":
        vals = [complex(x[2 * i], x[2 * i + 1]) for i in range(len(x) // 2)]
        c = self.copy()
        k = 0
        c.lam = vals[k]; k += 1
        for i in range(1, len(c.zeros)):
            c.zeros[i] = vals[k]; k += 1
        for i in range(1, len(c.ones)):
            c.ones[i] = vals[k]; k += 1
        for i in range(1, len(c.poles)):
            c.poles[i] = vals[k]; k += 1
        return c

    def to_dict(self) -> dict:
        enc = lambda v: [v.real, v.imag] if _is_finite(v) else "inf"
        return {
            "lambda": enc(self.lam),
            "zeros": [enc(z) for z in self.zeros],
            "ones": [enc(o) for o in self.ones],
            "poles": [enc(p) for p in self.poles],
            "d0": list(self.d0),
            "d1": list(self.d1),
            "dinf": list(self.dinf),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Configuration":
        dec = lambda v: INF if v == "inf" else complex(v[0], v[1])
        return cls(
            lam=dec(data["lambda"]),
            zeros=[dec(z) for z in data["zeros"]],
            ones=[dec(o) for o in data["ones"]],
            poles=[dec(p) for p in data["poles"]],
            d0=data["d0"], d1=data["d1"], dinf=data["dinf"],
        )


@dataclass
class SolveResult:
    configuration: Configuration
    residual: float
    iterations: int
    converged: bool
    jacobian_rank: int | None = None
    history: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "configuration": self.configuration.to_dict(),
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
            "jacobian_rank": self.jacobian_rank,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SolveResult":
        return cls(
            configuration=Configuration.from_dict(data["configuration"]),
            residual=data["residual"],
            iterations=data["iterations"],
            converged=data["converged"],
            jacobian_rank=data.get("jacobian_rank"),
        )


def check_collisions(c: Configuration, eps: float = EPS_COLLIDE) -> None:
    pts = [z for z in c.zeros + c.ones + c.poles if _is_finite(z)]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if abs(pts[i] - pts[j]) < eps:
                raise DegenerateConfigurationError(
                    f"points {pts[i]} and {pts[j]} collide"
                )


def evaluate_with_derivatives(c: Configuration, x: complex, m: int) -> list:
    """[F(x), F'(x), ..., F^(m)(x)] via the logarithmic-derivative recursion.

    With log F = log lam + sum d0_i log(x - z_i) - sum dinf_j log(x - p_j),
    its k-th derivative is L_k = (-1)^(k-1) (k-1)! (sum d0_i/(x-z_i)^k - ...),
    and F^(k) = sum_{j<k} C(k-1, j) F^(j) L_{k-j}.
    """
    finite_poles = c.finite_poles()
    value = c.lam
    for z, e in zip(c.zeros, c.d0):
        value *= (x - z) ** e
    for p, e in finite_poles:
        value /= (x - p) ** e
    levs = [0j]  # 1-indexed log-derivatives
    for k in range(1, m + 1):
        s = sum(e / (x - z) ** k for z, e in zip(c.zeros, c.d0))
        s -= sum(e / (x - p) ** k for p, e in finite_poles)
        levs.append((-1) ** (k - 1) * math.factorial(k - 1) * s)
    derivs = [value]
    for k in range(1, m + 1):
        derivs.append(
            sum(math.comb(k - 1, j) * derivs[j] * levs[k - j] for j in range(k))
        )
    return derivs


def phi_residual(c: Configuration, eps_collide: float = EPS_COLLIDE) -> np.ndarray:
    """Residual vector: (F(o_i) - 1, F'(o_i), ..., F^(d1_i - 1)(o_i)) over O."""
    check_collisions(c, eps_collide)
    out = []
    for o, mult in zip(c.ones, c.d1):
        derivs = evaluate_with_derivatives(c, o, mult - 1)
        out.append(derivs[0] - 1)
        out.extend(derivs[1:])
    return np.array(out, dtype=complex)


def _real_residual(c: Configuration) -> np.ndarray:
    r = phi_residual(c)
    return np.concatenate([r.real, r.imag])


def _passport_partitions(passport) -> tuple:
    if passport is None:
        return None
    if hasattr(passport, "partitions"):
        return tuple(tuple(sorted(p, reverse=True)) for p in passport.partitions)
    parts = [passport[k] for k in ("0", "1", "infinity")]
    return tuple(tuple(sorted(p, reverse=True)) for p in parts)


def _check_against_passport(c: Configuration, passport) -> None:
    want = _passport_partitions(passport)
    if want is None:
        return
    got = tuple(
        tuple(sorted(v, reverse=True)) for v in (c.d0, c.d1, c.dinf)
    )
    if got != want:
        raise InvalidInputError(
            f"configuration exponents {got} do not match passport {want}"
        )


def newton_solve(
    passport,
    initial: Configuration,
    max_iter: int = 200,
    eps_belyi: float = EPS_BELYI,
    h_fd: float = H_FD,
) -> SolveResult:
    """Damped Newton iteration on the residual, finite-difference Jacobian.

    `passport` may be a dessins.Passport, a dict with keys "0"/"1"/"infinity",
    or None to trust the exponents already in `initial`.  Divergence yields a
    non-converged result; a singular Jacobian raises.
    """
    _check_against_passport(initial, passport)
    c = initial.copy()
    x = c.pack()
    rank = None
    history = []
    for iteration in range(max_iter):
        r = _real_residual(c.unpack(x))
        norm = float(np.max(np.abs(r))) if r.size else 0.0
        history.append(norm)
        if norm < eps_belyi:
            return SolveResult(c.unpack(x), norm, iteration, True, rank, history)
        jac = np.empty((r.size, x.size))
        for j in range(x.size):
            xp = x.copy()
            xp[j] += h_fd
            jac[:, j] = (_real_residual(c.unpack(xp)) - r) / h_fd
        rank = int(np.linalg.matrix_rank(jac))
        try:
            step = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobianError(str(exc)) from exc
        if not np.all(np.isfinite(step)):
            raise SingularJacobianError("Newton step is not finite")
        alpha = 1.0
        for _ in range(MAX_HALVINGS):
            try:
                trial = _real_residual(c.unpack(x + alpha * step))
                trial_norm = float(np.max(np.abs(trial)))
            except DegenerateConfigurationError:
                trial_norm = math.inf
            if trial_norm < norm:
                break
            alpha /= 2
        else:
            return SolveResult(c.unpack(x), norm, iteration, False, rank, history)
        x = x + alpha * step
    r = _real_residual(c.unpack(x))
    norm = float(np.max(np.abs(r)))
    return SolveResult(c.unpack(x), norm, max_iter, norm < eps_belyi, rank, history)


def certify(
    result: SolveResult,
    passport=None,
    tol: float = 1e-8,
    samples: int = 100,
    seed: int = 0,
) -> dict:
    """Numerical certificate for a solved configuration.

    Checks convergence, point separation, the prescribed multiplicities of
    F at Z and of F - 1 at O (vanishing derivatives below the order, a
    non-vanishing one at the order), degree bookkeeping, and the product
    factorisation of F - 1 over O at random sample points.  Raises
    CertificationError at the first offending point.
    """
    c = result.configuration
    if not result.converged:
        raise CertificationError("result did not converge")
    _check_against_passport(c, passport)
    check_collisions(c)
    checks = []
    d = c.degree

    # At z_i the factor (z - z_i)^{d0_i} makes F vanish to exactly that
    # order provided the cofactor (the rest of the product) is nonzero there.
    finite_poles = c.finite_poles()
    for i, (pt, mult) in enumerate(zip(c.zeros, c.d0)):
        cofactor = c.lam
        for k, (z, e) in enumerate(zip(c.zeros, c.d0)):
            if k != i:
                cofactor *= (pt - z) ** e
        for p, e in finite_poles:
            cofactor /= (pt - p) ** e
        if abs(cofactor) < tol:
            raise CertificationError(
                f"F has multiplicity above {mult} at zero point {pt}",
                point=pt,
            )
        checks.append({"point": [pt.real, pt.imag], "kind": "zero",
                       "multiplicity": mult, "ok": True})

    # At o_i the conditions F = 1, F' = ... = F^(mult-1) = 0 are numeric;
    # evaluate them, and demand the next derivative does not vanish too.
    for pt, mult in zip(c.ones, c.d1):
        derivs = evaluate_with_derivatives(c, pt, mult)
        scale = max(1.0, abs(c.lam)) * math.factorial(mult)
        for j in range(mult):
            val = derivs[j] - (1.0 if j == 0 else 0.0)
            if abs(val) > tol * scale:
                raise CertificationError(
                    f"derivative {j} of F at unit point {pt} is "
                    f"{abs(val):.3e}, expected 0",
                    point=pt,
                )
        if abs(derivs[mult]) < tol:
            raise CertificationError(
                f"F has multiplicity above {mult} at unit point {pt}",
                point=pt,
            )
        checks.append({"point": [pt.real, pt.imag], "kind": "unit",
                       "multiplicity": mult, "ok": True})

    # F - 1 must equal lam * prod(z - o_i)^{d1_i} / prod(z - p_j)^{dinf_j};
    # with p1 = inf both sides are monic-in-lam of degree d, so compare the
    # two numerator polynomials at random samples.
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal(samples) + 1j * rng.standard_normal(samples)
    finite_poles = c.finite_poles()
    for x in pts:
        num = c.lam * np.prod([(x - z) ** e for z, e in zip(c.zeros, c.d0)])
        den = np.prod([(x - p) ** e for p, e in finite_poles])
        lhs = num - den
        rhs = c.lam * np.prod([(x - o) ** e for o, e in zip(c.ones, c.d1)])
        if abs(lhs - rhs) > tol * max(1.0, abs(rhs)):
            raise CertificationError(
                f"F - 1 factorisation fails at sample {x}: "
                f"|{lhs} - {rhs}| too large",
                point=x,
            )

    report = {
        "degree": d,
        "residual": result.residual,
        "points_checked": checks,
        "factorisation_samples": samples,
        "pass": True,
    }
    return report


# ---------------------------------------------------------------------------
# Closed-form fixtures
# ---------------------------------------------------------------------------


def power_map_configuration(d: int) -> Configuration:
    """Exact configuration of F(z) = z^d (O = d-th roots of unity)."""
    roots = [cmath.exp(2j * cmath.pi * k / d) for k in range(d)]
    roots = [1.0 + 0j] + [r for r in roots if abs(r - 1) > 1e-9]
    return Configuration(
        lam=1.0, zeros=[0.0], ones=roots, poles=[INF],
        d0=(d,), d1=(1,) * d, dinf=(d,),
    )


def cubic_fixture_configuration() -> Configuration:
    """Exact configuration of F(z) = 3z^2 - 2z^3 = -2 z^2 (z - 3/2).

    F - 1 = -(z - 1)^2 (2z + 1), so the passport is 0: [2,1], 1: [2,1],
    infinity: [3].
    """
    return Configuration(
        lam=-2.0, zeros=[0.0, 1.5], ones=[1.0, -0.5], poles=[INF],
        d0=(2, 1), d1=(2, 1), dinf=(3,),
    )
