"""Exceptions raised across the optics2d package."""


class Optics2dError(Exception):
    """Base class for all optics2d errors."""


class DegenerateVector(Optics2dError):
    """Vector too short to normalize."""


class BadNormalOrientation(Optics2dError):
    """Surface normal does not point against the incident direction."""


class BadIndex(Optics2dError):
    """Refractive index below 1."""


class OnBoundary(Optics2dError):
    """Query point lies within the hit tolerance of a boundary edge."""


class UnknownId(Optics2dError):
    """No element or source with the given id."""


class PoseRejected(Optics2dError):
    """A pose edit would make the scene invalid."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("pose rejected: " + "; ".join(str(v) for v in self.violations))


class SceneInvalid(Optics2dError):
    """Operation requires a valid scene but validation found violations."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid scene: " + "; ".join(str(v) for v in self.violations))


class ParseError(Optics2dError):
    """Malformed scene or trace document."""

    def __init__(self, message, location=""):
        self.location = location
        super().__init__(f"{message}" + (f" (at {location})" if location else ""))


class UnsupportedVersion(Optics2dError):
    """Document version not understood by this parser."""


class NoTransmission(Optics2dError):
    """Prism apex/index combination refuses every ray (all TIR)."""


class BadEyePoint(Optics2dError):
    """Visibility probe point is not inside the water region."""
