"""
Surface Model.
The quadrilateral A=0, B=−i, C=2+i, D=i with [A,B] glued to [B,C] (fixing B)
and [C,D] glued to [A,D] (fixing D), plus the cone data of its three
singular points.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import math

from src.config.settings import SurfaceParams
from src.schemas.reports import SurfaceReport
from src.surface.affine import AffineMap
from src.utils.errors import InconsistentModelError, PhaseSpaceError, VertexHitError
from src.utils.logger import log

# Counterclockwise boundary order.
ORDER = ("A", "B", "C", "D")

# Singularities: 0 ↔ {A, C}, 1 ↔ B, ∞ ↔ D.
SINGULARITIES = ("0", "1", "inf")


@dataclass(frozen=True)
class ConeData:
    """Angle, log length ratio and the derived complex residues of a singularity."""

    angle: float
    ratio_log: float

    @property
    def alpha(self) -> complex:
        return complex(self.angle, self.ratio_log)

    @property
    def mu(self) -> complex:
        return self.alpha / (2 * math.pi)


@dataclass(frozen=True)
class Gluing:
    """Identification of `source` onto `target` by an affine map."""

    source: str
    target: str
    affine: AffineMap


@dataclass(frozen=True)
class SurfaceModel:
    """Immutable polygonal model of the dilation surface."""

    vertices: dict[str, complex]
    gluings: tuple[Gluing, Gluing]
    cone_data: dict[str, ConeData] = field(default_factory=dict)

    # --- GEOMETRY ---

    def edge_endpoints(self, edge: str) -> tuple[complex, complex]:
        first, second = SurfaceParams.EDGES[edge]
        return self.vertices[first], self.vertices[second]

    def edge_length(self, edge: str) -> float:
        p, q = self.edge_endpoints(edge)
        return abs(q - p)

    def edge_point(self, edge: str, s: float) -> complex:
        """Point at arclength fraction `s` from the first-named vertex."""
        p, q = self.edge_endpoints(edge)
        return p + s * (q - p)

    def edge_fraction(self, edge: str, z: complex) -> float:
        p, q = self.edge_endpoints(edge)
        d = q - p
        return ((z - p) * d.conjugate()).real / abs(d) ** 2

    def vertex_xy(self, name: str) -> tuple[Fraction, Fraction]:
        """Exact real coordinates of a vertex."""
        z = self.vertices[name]
        return Fraction(z.real), Fraction(z.imag)

    def inward_normal(self, edge: str) -> complex:
        """Unit normal of `edge` pointing into the quadrilateral."""
        p, q = self.edge_endpoints(edge)
        n = 1j * (q - p)
        center = sum(self.vertices.values()) / len(self.vertices)
        if (n.conjugate() * (center - p)).real < 0:
            n = -n
        return n / abs(n)

    def interior_angle(self, vertex: str) -> float:
        """Interior angle at `vertex` for the counterclockwise boundary."""
        k = ORDER.index(vertex)
        v = self.vertices[vertex]
        nxt = self.vertices[ORDER[(k + 1) % 4]]
        prv = self.vertices[ORDER[k - 1]]
        angle = math.atan2((prv - v).imag, (prv - v).real) - math.atan2(
            (nxt - v).imag, (nxt - v).real
        )
        return angle % (2 * math.pi)

    # --- GLUINGS ---

    def transition(self, edge: str) -> tuple[str, AffineMap]:
        """Partner edge and the map carrying points leaving through `edge`."""
        for gluing in self.gluings:
            if gluing.source == edge:
                return gluing.target, gluing.affine
            if gluing.target == edge:
                return gluing.source, gluing.affine.inverse()
        raise KeyError(edge)


def build_model() -> SurfaceModel:
    """Canonical model with both gluings solved from their vertex constraints."""
    v = SurfaceParams.VERTICES
    gluing_1 = Gluing("AB", "BC", AffineMap.fixing(v["B"], v["A"], v["C"]))
    gluing_2 = Gluing("CD", "AD", AffineMap.fixing(v["D"], v["C"], v["A"]))
    log2 = math.log(2)
    cone = {
        "0": ConeData(5 * math.pi / 4, log2 / 2),
        "1": ConeData(math.pi / 4, -3 * log2 / 2),
        "inf": ConeData(math.pi / 2, log2),
    }
    return SurfaceModel(dict(v), (gluing_1, gluing_2), cone)


def _check(field_name: str, expected: float, got: float, tol: float) -> float:
    deviation = abs(expected - got)
    if not deviation <= tol:
        raise InconsistentModelError(field_name, expected, got)
    return deviation


def validate(model: SurfaceModel) -> SurfaceReport:
    """
    Recomputes cone data from the vertex geometry and checks the gluings.

    Raises:
        InconsistentModelError: A recomputed quantity deviates beyond the
            consistency tolerance.
    """
    tol = SurfaceParams.CONSISTENCY_TOL
    v = model.vertices
    a, b, c, d = (model.edge_length(e) for e in ("AB", "BC", "CD", "AD"))
    angles = {
        "0": model.interior_angle("A") + model.interior_angle("C"),
        "1": model.interior_angle("B"),
        "inf": model.interior_angle("D"),
    }
    ratio_logs = {
        "0": math.log(b * d / (a * c)),
        "1": math.log(a / b),
        "inf": math.log(c / d),
    }

    values: dict[str, float] = {
        "edge_a": a,
        "edge_b": b,
        "edge_c": c,
        "edge_d": d,
    }
    deviations: dict[str, float] = {}
    for zeta in SINGULARITIES:
        data = model.cone_data[zeta]
        deviations[f"theta_{zeta}"] = _check(
            f"theta_{zeta}", data.angle, angles[zeta], tol
        )
        deviations[f"ratio_log_{zeta}"] = _check(
            f"ratio_log_{zeta}", data.ratio_log, ratio_logs[zeta], tol
        )
        values[f"alpha_{zeta}_re"] = data.alpha.real
        values[f"alpha_{zeta}_im"] = data.alpha.imag
        values[f"mu_{zeta}_re"] = data.mu.real
        values[f"mu_{zeta}_im"] = data.mu.imag

    total = sum(model.cone_data[z].alpha for z in SINGULARITIES)
    deviations["alpha_sum_re"] = _check("alpha_sum_re", 2 * math.pi, total.real, tol)
    deviations["alpha_sum_im"] = _check("alpha_sum_im", 0.0, total.imag, tol)
    values["alpha_sum_re"] = total.real
    values["alpha_sum_im"] = total.imag

    mu0 = model.cone_data["0"].mu.real
    if not 0 < mu0 < 1:
        raise InconsistentModelError("mu_0_re", "(0, 1)", mu0)

    g1, g2 = (g.affine for g in model.gluings)
    for name, got, expected in (
        ("gluing_1_fixes_B", g1(v["B"]), v["B"]),
        ("gluing_1_sends_A_to_C", g1(v["A"]), v["C"]),
        ("gluing_2_fixes_D", g2(v["D"]), v["D"]),
        ("gluing_2_sends_C_to_A", g2(v["C"]), v["A"]),
    ):
        deviations[name] = _check(name, 0.0, abs(got - expected), tol)
    values["gluing_1_modulus"] = g1.modulus
    values["gluing_2_modulus"] = g2.modulus

    log.info("✅ Surface model consistent.")
    return SurfaceReport(consistent=True, values=values, deviations=deviations)


def glue(
    model: SurfaceModel, edge: str, point: complex, direction: complex
) -> tuple[str, complex, complex]:
    """
    Identifies a point leaving through `edge` with its partner-edge point.

    The direction is transported by the derivative of the gluing.

    Raises:
        VertexHitError: The point is within the vertex tolerance of an endpoint.
        PhaseSpaceError: The point is not on the edge.
    """
    p, q = model.edge_endpoints(edge)
    eps = SurfaceParams.EPS_VERTEX
    first, second = SurfaceParams.EDGES[edge]
    if abs(point - p) < eps:
        raise VertexHitError(point, first)
    if abs(point - q) < eps:
        raise VertexHitError(point, second)
    s = model.edge_fraction(edge, point)
    off_line = abs(point - model.edge_point(edge, s))
    if not 0 < s < 1 or off_line > eps:
        raise PhaseSpaceError(f"{point!r} is not inside edge {edge}")

    target, affine = model.transition(edge)
    return target, affine(point), affine.ratio * direction
