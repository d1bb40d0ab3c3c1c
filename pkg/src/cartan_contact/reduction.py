"""Structure-group reduction for contact plane fields on R^3.

Starting from two generating vector fields with the ambient Euclidean scalar
product on their span, the pipeline

1. classifies the plane field (holonomic / contact / mixed) from the
   commutator determinant,
2. builds an adapted frame (Gram-Schmidt pair completed by the commutator)
   and its dual coframe (stage B0),
3. rescales eta^3 so the eta^1^eta^2 coefficient of d(eta^3) becomes 1
   (stage B1),
4. absorbs the remaining d(eta^3) coefficients into eta^1, eta^2
   (stage B2), and
5. extracts the scalar differential invariant M = a1^2 + a2^2 together with
   the absorbed pseudoconnection coefficients.

Stages transform coframe sections by explicit structure-group elements; the
dual frame is carried along by the exact inverse transformation, never by a
second matrix inversion.
"""
from __future__ import annotations

from dataclasses import dataclass

from .scalarfield import DomainError, Point, ScalarField
from .forms import (
    Coframe,
    DegenerateInput,
    Frame,
    VectorField,
    commutator,
    complete_frame,
    dot,
    dual_coframe,
    exterior_derivative,
    exterior_derivative2,
    gram_schmidt,
    norm,
    structure_coefficients,
    triple_product,
)

__all__ = [
    "Distribution",
    "Classification",
    "PointClassification",
    "AdaptedCoframe",
    "TorsionSlice",
    "SampleRecord",
    "InvariantReport",
    "ComparisonResult",
    "HolonomicError",
    "MixedTypeError",
    "ContactDegeneracy",
    "ConsistencyError",
    "classify",
    "build_adapted",
    "adapted_from_orthonormal",
    "contact_torsion",
    "normalize_scale",
    "absorb_translations",
    "extract_invariants",
    "reduce",
    "compare",
    "default_grid_points",
    "grid_axis",
]

# relative threshold deciding holonomicity in classify
HOLONOMIC_RTOL = 1e-9
# per-point thresholds of the sampling policy in reduce
POINT_HOLONOMIC_RTOL = 1e-8
CONTACT_TOL = 1e-8
# residual tolerances
IDENTITY_TOL = 1e-8
CONSISTENCY_TOL = 1e-6
REGRESSION_TOL = 1e-6
ZERO_TOL = 1e-9


class HolonomicError(ValueError):
    """The plane field is holonomic (integrable) on the sampled domain."""

    def __init__(self, classification=None, message=None) -> None:
        super().__init__(message or "holonomic distribution: the planes integrate to surfaces")
        self.classification = classification


class MixedTypeError(ValueError):
    """The plane field changes type (contact/holonomic) across the sampled domain."""

    def __init__(self, classification=None) -> None:
        super().__init__("mixed-type distribution: holonomic locus meets the sampled domain")
        self.classification = classification


class ContactDegeneracy(ValueError):
    """The contact torsion coefficient is too close to zero to rescale."""

    def __init__(self, point, value) -> None:
        super().__init__(f"contact torsion {value:.3e} vanishes at point {tuple(point)}")
        self.point = point
        self.value = value


class ConsistencyError(AssertionError):
    """An exact structural identity failed beyond tolerance: upstream bug."""

    def __init__(self, point, value) -> None:
        super().__init__(
            f"d(d eta3) = 0 forces Q1 = P2, but Q1 - P2 = {value:.3e} at {tuple(point)}"
        )
        self.point = point
        self.value = value


@dataclass(frozen=True)
class Distribution:
    """A plane field span{X1, X2} with the induced Euclidean scalar product."""

    X1: VectorField
    X2: VectorField
    name: str = ""

    @classmethod
    def from_components(cls, x1, x2, name: str = "") -> "Distribution":
        return cls(VectorField(*x1), VectorField(*x2), name=name)


@dataclass(frozen=True)
class PointClassification:
    point: Point
    status: str            # "contact" | "holonomic" | "undefined"
    det3: float | None     # det(X1, X2, [X1, X2])
    scale: float | None    # |X1| |X2| |[X1, X2]|


@dataclass(frozen=True)
class Classification:
    kind: str              # "holonomic" | "contact" | "mixed"
    records: tuple[PointClassification, ...]


@dataclass(frozen=True)
class AdaptedCoframe:
    """A coframe section with its dual frame and reduction stage tag.

    Stage B0: (eta^1, eta^2) restrict to an orthonormal positively oriented
    coframe of the plane field and eta^3 annihilates it.  Stage B1 adds
    c3_12 = 1; stage B2 additionally c3_23 = c3_31 = 0.
    """

    coframe: Coframe
    frame: Frame
    stage: str


@dataclass(frozen=True)
class TorsionSlice:
    """The d(eta^3) expansion coefficients (t23, t31, t12) at the current stage."""

    t23: ScalarField
    t31: ScalarField
    t12: ScalarField


@dataclass(frozen=True)
class SampleRecord:
    point: Point
    status: str            # "ok" | "singular" | "holonomic-at-point"
    det3: float | None = None
    T312: float | None = None
    a1: float | None = None
    a2: float | None = None
    M: float | None = None
    dd_eta3: float | None = None
    q1_minus_p2: float | None = None


@dataclass(frozen=True)
class InvariantReport:
    """Invariant and pseudoconnection fields plus per-point samples.

    a1, a2 individually depend on the residual rotation freedom of the frame;
    only M = a1^2 + a2^2 is invariant.  A1, A2, A3 are the coefficients of the
    absorbed pseudoconnection alpha = A1 eta^1 + A2 eta^2 + A3 eta^3.
    """

    a1: ScalarField
    a2: ScalarField
    M: ScalarField
    A1: ScalarField
    A2: ScalarField
    A3: ScalarField
    dd_eta3: ScalarField
    q1_minus_p2: ScalarField
    samples: tuple[SampleRecord, ...] = ()
    classification: Classification | None = None

    def ok_samples(self) -> tuple[SampleRecord, ...]:
        return tuple(s for s in self.samples if s.status == "ok")

    @property
    def n_ok(self) -> int:
        return len(self.ok_samples())

    @property
    def n_singular(self) -> int:
        return len(self.samples) - self.n_ok

    def m_range(self) -> tuple[float, float] | None:
        values = [s.M for s in self.ok_samples()]
        if not values:
            return None
        return (min(values), max(values))


@dataclass(frozen=True)
class ComparisonResult:
    verdict: str           # "distinguished" | "not distinguished by this test"
    report_a: InvariantReport
    report_b: InvariantReport

    @property
    def m_range_a(self):
        return self.report_a.m_range()

    @property
    def m_range_b(self):
        return self.report_b.m_range()


def grid_axis(lo: float, hi: float, n: int) -> list[float]:
    """n evenly spaced values on [lo, hi] inclusive; n = 1 yields lo."""
    if n < 1:
        raise ValueError("grid axis needs at least one sample")
    if n == 1:
        return [float(lo)]
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def default_grid_points() -> list[Point]:
    """The library's default sample grid: x, y in {-1,-0.5,0,0.5,1}, z = 0.3."""
    xs = grid_axis(-1.0, 1.0, 5)
    ys = grid_axis(-1.0, 1.0, 5)
    zs = [0.3]
    return [Point(x, y, z) for x in xs for y in ys for z in zs]


def classify(D: Distribution, points) -> Classification:
    """Per-point holonomicity of span{X1, X2} from det(X1, X2, [X1, X2]).

    A point is holonomic when |det3| <= 1e-9 * |X1| |X2| |[X1, X2]|.  Raises
    :class:`DegenerateInput` where the generators are linearly dependent.
    """
    points = list(points)
    if not points:
        raise ValueError("classification needs a nonempty point list")
    bracket = commutator(D.X1, D.X2)
    det3 = triple_product(D.X1, D.X2, bracket)
    n1 = norm(D.X1)
    n2 = norm(D.X2)
    nb = norm(bracket)
    g12 = dot(D.X1, D.X2)
    records = []
    for p in points:
        try:
            v1 = n1.evaluate(p)
            v2 = n2.evaluate(p)
            g = g12.evaluate(p)
            area_sq = v1 * v1 * v2 * v2 - g * g
            if area_sq <= (HOLONOMIC_RTOL * v1 * v2) ** 2:
                raise DegenerateInput("generators are linearly dependent", p)
            vb = nb.evaluate(p)
            d = det3.evaluate(p)
        except DomainError:
            records.append(PointClassification(p, "undefined", None, None))
            continue
        scale = v1 * v2 * vb
        status = "holonomic" if abs(d) <= HOLONOMIC_RTOL * scale else "contact"
        records.append(PointClassification(p, status, d, scale))
    defined = [r.status for r in records if r.status != "undefined"]
    if not defined:
        raise DegenerateInput("generators undefined at every sampled point")
    if all(s == "holonomic" for s in defined):
        kind = "holonomic"
    elif all(s == "contact" for s in defined):
        kind = "contact"
    else:
        kind = "mixed"
    return Classification(kind, tuple(records))


def adapted_from_orthonormal(e1: VectorField, e2: VectorField, points=None) -> AdaptedCoframe:
    """Stage-B0 coframe for an already orthonormal spanning pair.

    The frame is (e1, e2, [e1, e2]) and the coframe its dual.  ``points``
    behave as in :func:`build_adapted`.
    """
    if points is None:
        points = default_grid_points()
    try:
        frame = complete_frame(e1, e2, check_points=points if points else None)
    except DegenerateInput as exc:
        raise HolonomicError(
            message=f"holonomic distribution: frame degenerates ({exc})"
        ) from exc
    coframe = dual_coframe(frame)
    return AdaptedCoframe(coframe, frame, "B0")


def build_adapted(D: Distribution, points=None) -> AdaptedCoframe:
    """Adapted stage-B0 coframe of a contact distribution.

    Orthonormalises the generators, completes the frame with e3 = [e1, e2]
    and inverts symbolically for the dual coframe.  ``points`` are where
    nondegeneracy is verified: ``None`` means the default grid, an empty
    sequence skips verification (the reduce driver applies its own per-point
    policy instead).  Raises :class:`HolonomicError` when the frame
    degenerates at a verification point.
    """
    if points is None:
        points = default_grid_points()
    e1, e2 = gram_schmidt(D.X1, D.X2, check_points=points if points else None)
    return adapted_from_orthonormal(e1, e2, points=points)


def contact_torsion(A: AdaptedCoframe) -> TorsionSlice:
    """Row 3 of the structure coefficients: the d(eta^3) expansion."""
    rows = structure_coefficients(A.coframe, A.frame)
    return TorsionSlice(*rows[2])


def normalize_scale(A: AdaptedCoframe, check_points=None) -> AdaptedCoframe:
    """Rescale eta^3 by its own torsion so that c3_12 becomes exactly 1.

    Applies the structure-group element with rotation identity, zero
    translations and scale t12: eta^3 -> eta^3 / t12, dual frame
    e3 -> t12 * e3.  Negative t12 is allowed (the group only requires a
    nonzero scale); it flips the coframe orientation and leaves M unchanged.
    """
    if A.stage != "B0":
        raise ValueError(f"normalize_scale expects stage B0, got {A.stage}")
    t12 = contact_torsion(A).t12
    if check_points is not None:
        for p in check_points:
            try:
                v = t12.evaluate(p)
            except DomainError as exc:
                raise ContactDegeneracy(p, 0.0) from exc
            if abs(v) < CONTACT_TOL:
                raise ContactDegeneracy(p, v)
    eta1, eta2, eta3 = A.coframe.forms
    e1, e2, e3 = A.frame.fields
    return AdaptedCoframe(
        Coframe(eta1, eta2, eta3 / t12),
        Frame(e1, e2, e3 * t12),
        "B1",
    )


def absorb_translations(A: AdaptedCoframe) -> AdaptedCoframe:
    """Shift eta^1, eta^2 by multiples of eta^3 so c3_23 = c3_31 = 0.

    Applies the group element with translations (t23, t31): eta^1 -> eta^1 -
    t23 eta^3, eta^2 -> eta^2 - t31 eta^3, dual frame e3 -> e3 + t23 e1 +
    t31 e2; eta^3 and c3_12 = 1 are untouched.
    """
    if A.stage != "B1":
        raise ValueError(f"absorb_translations expects stage B1, got {A.stage}")
    torsion = contact_torsion(A)
    t23, t31 = torsion.t23, torsion.t31
    eta1, eta2, eta3 = A.coframe.forms
    e1, e2, e3 = A.frame.fields
    return AdaptedCoframe(
        Coframe(eta1 - eta3 * t23, eta2 - eta3 * t31, eta3),
        Frame(e1, e2, e3 + e1 * t23 + e2 * t31),
        "B2",
    )


def extract_invariants(A: AdaptedCoframe) -> InvariantReport:
    """Absorb the pseudoconnection and read off the invariant M = a1^2 + a2^2.

    With d eta^i = P_i eta^2^eta^3 + Q_i eta^3^eta^1 + R_i eta^1^eta^2 for
    i = 1, 2, the unique connection alpha = A1 eta^1 + A2 eta^2 + A3 eta^3
    killing the eta^1^eta^2 torsion of both equations and balancing the two
    off-diagonal coefficients is A1 = R1, A2 = R2, A3 = -(P1 + Q2)/2; then
    a1 = (P1 - Q2)/2, a2 = Q1.  The identity d(d eta^3) = 0 forces Q1 = P2,
    recorded as the q1_minus_p2 residual.
    """
    if A.stage != "B2":
        raise ValueError(f"extract_invariants expects stage B2, got {A.stage}")
    rows = structure_coefficients(A.coframe, A.frame)
    p1, q1, r1 = rows[0]
    p2, q2, r2 = rows[1]
    a1 = (p1 - q2) / 2
    a2 = q1
    m = a1 * a1 + a2 * a2
    dd = exterior_derivative2(exterior_derivative(A.coframe.eta3)).coefficient
    return InvariantReport(
        a1=a1,
        a2=a2,
        M=m,
        A1=r1,
        A2=r2,
        A3=-(p1 + q2) / 2,
        dd_eta3=dd,
        q1_minus_p2=q1 - p2,
    )


def _try_eval(f: ScalarField, p: Point) -> float | None:
    try:
        return f.evaluate(p)
    except DomainError:
        return None


def reduce(D: Distribution, points, identity_tol: float = IDENTITY_TOL) -> InvariantReport:
    """Run the full reduction over sample points.

    Classification failures raise :class:`HolonomicError` or
    :class:`MixedTypeError`; individual points where any stage is undefined,
    where |det3| falls below the per-point threshold, or where the contact
    torsion nearly vanishes are marked (statuses ``singular`` and
    ``holonomic-at-point``) and excluded from aggregates.  A q1 - p2 residual
    beyond 1e-6 at an otherwise healthy point raises
    :class:`ConsistencyError`, since the identity is exact.
    """
    points = [p if isinstance(p, Point) else Point(*p) for p in points]
    cls = classify(D, points)
    if cls.kind == "holonomic":
        raise HolonomicError(cls)
    if cls.kind == "mixed":
        raise MixedTypeError(cls)

    b0 = build_adapted(D, points=())
    t12_b0 = contact_torsion(b0).t12
    b1 = normalize_scale(b0)
    b2 = absorb_translations(b1)
    inv = extract_invariants(b2)

    samples = []
    for rec in cls.records:
        p = rec.point
        if rec.status == "undefined":
            samples.append(SampleRecord(p, "singular"))
            continue
        det3, scale = rec.det3, rec.scale
        if abs(det3) <= POINT_HOLONOMIC_RTOL * scale:
            samples.append(SampleRecord(p, "holonomic-at-point", det3=det3))
            continue
        t312 = _try_eval(t12_b0, p)
        if t312 is None or abs(t312) < CONTACT_TOL:
            samples.append(SampleRecord(p, "singular", det3=det3, T312=t312))
            continue
        values = [_try_eval(f, p) for f in (inv.a1, inv.a2, inv.M, inv.dd_eta3, inv.q1_minus_p2)]
        if any(v is None for v in values):
            samples.append(SampleRecord(p, "singular", det3=det3, T312=t312))
            continue
        a1, a2, m, dd, q1p2 = values
        if abs(q1p2) > CONSISTENCY_TOL:
            raise ConsistencyError(p, q1p2)
        status = "ok" if abs(dd) <= identity_tol and abs(q1p2) <= identity_tol else "singular"
        samples.append(SampleRecord(p, status, det3=det3, T312=t312,
                                    a1=a1, a2=a2, M=m, dd_eta3=dd, q1_minus_p2=q1p2))
    return InvariantReport(
        a1=inv.a1, a2=inv.a2, M=inv.M,
        A1=inv.A1, A2=inv.A2, A3=inv.A3,
        dd_eta3=inv.dd_eta3, q1_minus_p2=inv.q1_minus_p2,
        samples=tuple(samples),
        classification=cls,
    )


def compare(D1: Distribution, D2: Distribution, points,
            regression_tol: float = REGRESSION_TOL) -> ComparisonResult:
    """Screen two distributions by their sampled invariant values.

    Verdict ``distinguished`` when the sampled M value sets share no value
    within tolerance, or when one M vanishes identically on the samples and
    the other does not.  Anything else is ``not distinguished by this test``:
    agreement is necessary for equivalence, never sufficient.
    """
    ra = reduce(D1, points)
    rb = reduce(D2, points)
    va = [s.M for s in ra.ok_samples()]
    vb = [s.M for s in rb.ok_samples()]
    if not va or not vb:
        raise ValueError("comparison needs at least one usable point on each side")
    zero_a = all(abs(v) <= ZERO_TOL for v in va)
    zero_b = all(abs(v) <= ZERO_TOL for v in vb)
    if zero_a != zero_b:
        verdict = "distinguished"
    else:
        disjoint = all(
            abs(x - y) > regression_tol * max(1.0, abs(x), abs(y))
            for x in va for y in vb
        )
        verdict = "distinguished" if disjoint else "not distinguished by this test"
    return ComparisonResult(verdict, ra, rb)
