"""Identity records shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass


def _is_zero(residual):
    if hasattr(residual, "is_zero"):
        return residual.is_zero()
    return residual == 0


@dataclass(frozen=True)
class Check:
    """One verified identity: ``residual`` must vanish exactly."""

    tag: str
    statement: str
    residual: object

    @property
    def passed(self):
        return _is_zero(self.residual)

    def rendered_residual(self):
        return str(self.residual)

    def as_dict(self):
        return {
            "tag": self.tag,
            "statement": self.statement,
            "residual": self.rendered_residual(),
            "passed": self.passed,
        }
