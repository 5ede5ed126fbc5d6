from typing import Literal

from pydantic import BaseModel, field_validator


class SurfaceReport(BaseModel):
    """Outcome of a surface validation: recomputed values and their deviations."""

    consistent: bool
    values: dict[str, float]
    deviations: dict[str, float]

    def to_lines(self) -> list[str]:
        """key=value lines, keys sorted."""
        lines = [f"consistent={str(self.consistent).lower()}"]
        for key in sorted(self.values):
            lines.append(f"{key}={self.values[key]:.17g}")
        for key in sorted(self.deviations):
            lines.append(f"deviation_{key}={self.deviations[key]:.17g}")
        return lines


class CriterionResult(BaseModel):
    """
    One line of the acceptance report.

    `measured` and `bound` are preformatted strings so the report is
    byte-stable across runs.
    """

    id: int
    name: str
    status: Literal["pass", "fail", "error"]
    measured: str
    bound: str

    @field_validator("measured", "bound", mode="before")
    @classmethod
    def format_number(cls, v):
        """Floats are rendered with 17 significant digits."""
        if isinstance(v, float):
            return f"{v:.17g}"
        return str(v)

    def to_line(self) -> str:
        return f"{self.id}\t{self.status}\t{self.measured}\t{self.bound}\t{self.name}"


class VerifyReport(BaseModel):
    """Full acceptance-suite report."""

    criteria: list[CriterionResult]

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.criteria)

    def to_text(self) -> str:
        header = "id\tstatus\tmeasured\tbound\tname"
        body = [c.to_line() for c in self.criteria]
        summary = f"# overall={'pass' if self.passed else 'fail'}"
        return "\n".join([header, *body, summary]) + "\n"
