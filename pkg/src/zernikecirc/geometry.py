"""Points in the plane and in 3-space."""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["PointDisk", "Point3", "polar"]


@dataclass(frozen=True)
class PointDisk:
    """Cartesian point in the plane, usually inside the unit disk."""

    x: float
    y: float

    def radius(self) -> float:
        return math.hypot(self.x, self.y)

    def azimuth(self) -> float:
        # signed zeros would otherwise give +-pi at the origin and -pi on the negative axis
        if self.x == 0.0 and self.y == 0.0:
            return 0.0
        phi = math.atan2(self.y, self.x)
        return math.pi if phi == -math.pi else phi

    def polar(self) -> tuple[float, float]:
        return self.radius(), self.azimuth()

    @classmethod
    def from_polar(cls, r: float, phi: float) -> "PointDisk":
        return cls(r * math.cos(phi), r * math.sin(phi))


@dataclass(frozen=True)
class Point3:
    """Cartesian point in 3-space.

    In sample files the third coordinate carries the observed value ``f``.
    """

    x: float
    y: float
    z: float

    @property
    def f(self) -> float:
        return self.z

    def planar(self) -> PointDisk:
        return PointDisk(self.x, self.y)


def polar(p: PointDisk) -> tuple[float, float]:
    """Return ``(radius, azimuth)`` of `p`; the origin maps to ``(0, 0)``."""
    return p.polar()
