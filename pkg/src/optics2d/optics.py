"""Physics kernel: refractive-index models, Snell refraction, TIR, reflection.

Sign convention used throughout: the boundary normal n handed to the kernel
points INTO the incident medium, i.e. against the incoming direction d
(d.n < 0). The tracer is responsible for orienting it; the kernel checks
the precondition and refuses anything else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .errors import BadIndex, BadNormalOrientation
from .geometry import Vec2, normalize

# Classification band on sin^2(theta_t): inputs at exactly the critical
# angle become Grazing instead of flapping between branches.
EPS_GRAZE = 1e-12

WAVELENGTH_MIN_NM = 380.0
WAVELENGTH_MAX_NM = 780.0


@dataclass(frozen=True)
class Constant:
    n: float


@dataclass(frozen=True)
class Cauchy:
    """n(lambda) = a + b/lambda^2 with lambda in nanometers, b in nm^2."""

    a: float
    b_nm2: float


Model = Union[Constant, Cauchy]


@dataclass(frozen=True)
class Medium:
    name: str
    model: Model

    def violations(self) -> list[str]:
        m = self.model
        if isinstance(m, Constant):
            if m.n < 1.0:
                return [f"medium '{self.name}': constant index {m.n} < 1"]
        else:
            out = []
            if m.a < 1.0:
                out.append(f"medium '{self.name}': Cauchy A {m.a} < 1")
            if m.b_nm2 < 0.0:
                out.append(f"medium '{self.name}': Cauchy B {m.b_nm2} < 0")
            return out
        return []


def index_at(medium: Medium, lambda_nm: float) -> float:
    """Refractive index of the medium at the given vacuum wavelength."""
    m = medium.model
    if isinstance(m, Constant):
        return m.n
    return m.a + m.b_nm2 / (lambda_nm * lambda_nm)


# Conventional textbook values; scenes may override the table. All derived
# numbers in tests are recomputed by closed form from these, never asserted
# as external ground truth.
DEFAULT_MATERIALS: dict[str, Medium] = {
    "air": Medium("air", Constant(1.0)),
    "water": Medium("water", Constant(1.33)),
    "glass": Medium("glass", Constant(1.5)),
    "crown": Medium("crown", Cauchy(1.5046, 4200.0)),
    "flint": Medium("flint", Cauchy(1.6200, 10400.0)),
}

# Seven-entry white-light table, red to violet, nm. Named constant so tests
# and the renderer can reference it.
WHITE_TABLE_NM: tuple[float, ...] = (650.0, 610.0, 580.0, 550.0, 470.0, 440.0, 410.0)


@dataclass(frozen=True)
class Refracted:
    direction: Vec2


@dataclass(frozen=True)
class TotalInternal:
    direction: Vec2


@dataclass(frozen=True)
class Grazing:
    direction: Vec2


RefractionOutcome = Union[Refracted, TotalInternal, Grazing]


def reflect(d: Vec2, n: Vec2) -> Vec2:
    """Mirror reflection d - 2(d.n)n. Requires d.n < 0."""
    dn = d.dot(n)
    if dn >= 0.0:
        raise BadNormalOrientation(f"normal must oppose incidence, d.n = {dn}")
    return d - n.scale(2.0 * dn)


def refract_or_reflect(d: Vec2, n: Vec2, n1: float, n2: float) -> RefractionOutcome:
    """Snell's-law boundary interaction from medium n1 into medium n2.

    d: unit incident direction; n: unit normal into the incident medium.
    Returns Refracted for transmission, TotalInternal beyond the critical
    angle, Grazing within EPS_GRAZE of it (tangent direction, same
    tangential sense as d).
    """
    if n1 < 1.0 or n2 < 1.0:
        raise BadIndex(f"refractive indices must be >= 1, got {n1}, {n2}")
    c1 = -d.dot(n)
    if c1 <= 0.0:
        raise BadNormalOrientation(f"normal must oppose incidence, d.n = {-c1}")
    ratio = n1 / n2
    s2sq = ratio * ratio * (1.0 - c1 * c1)
    if s2sq > 1.0 + EPS_GRAZE:
        return TotalInternal(reflect(d, n))
    if abs(s2sq - 1.0) <= EPS_GRAZE:
        # Tangential component of d along the surface keeps its sense.
        return Grazing(normalize(d + n.scale(c1)))
    c2 = math.sqrt(1.0 - s2sq)
    return Refracted(d.scale(ratio) + n.scale(ratio * c1 - c2))


def critical_angle(n1: float, n2: float) -> Optional[float]:
    """TIR onset angle asin(n2/n1) in radians; None when n1 <= n2."""
    if n1 <= n2:
        return None
    return math.asin(n2 / n1)
