"""Exterior calculus on R^3 with symbolic coefficient fields.

Vector fields and differential forms carry :class:`~cartan_contact.scalarfield.ScalarField`
coefficients in the coordinate bases:

* vector fields in (d/dx, d/dy, d/dz),
* 1-forms in (dx, dy, dz),
* 2-forms in the cyclic basis (dy^dz, dz^dx, dx^dy),
* 3-forms as a single multiple of dx^dy^dz.

All objects are immutable and all operations are pure; coefficients are never
canonicalised symbolically, so identities (d o d = 0, duality, Leibniz) are
checked numerically at sample points.
"""
from __future__ import annotations

from dataclasses import dataclass

from .scalarfield import DomainError, ScalarField, as_field, sqrt

__all__ = [
    "VectorField",
    "OneForm",
    "TwoForm",
    "ThreeForm",
    "Frame",
    "Coframe",
    "DegenerateInput",
    "commutator",
    "dot",
    "norm",
    "gram_schmidt",
    "complete_frame",
    "dual_coframe",
    "differential",
    "exterior_derivative",
    "exterior_derivative2",
    "wedge",
    "wedge21",
    "apply_two_form",
    "structure_coefficients",
    "pairing_matrix",
    "triple_product",
]

_AXES = ("x", "y", "z")

# relative threshold below which a determinant or normaliser counts as vanished
_DEGENERACY_RTOL = 1e-9


class DegenerateInput(ValueError):
    """A frame, coframe or orthonormalisation degenerated at an evaluated point."""

    def __init__(self, message: str, point=None) -> None:
        if point is not None:
            message = f"{message} at point {tuple(point)}"
        super().__init__(message)
        self.point = point


def _three(items, what: str) -> tuple[ScalarField, ScalarField, ScalarField]:
    coerced = tuple(as_field(c) for c in items)
    if len(coerced) != 3:
        raise ValueError(f"{what} needs exactly 3 components, got {len(coerced)}")
    return coerced


class _Triple:
    """Shared plumbing for the three-component geometric objects."""

    __slots__ = ("components",)
    _what = "triple"

    def __init__(self, c1, c2, c3) -> None:
        object.__setattr__(self, "components", _three((c1, c2, c3), self._what))

    def at(self, point) -> tuple[float, float, float]:
        """Evaluate all components at a point."""
        return tuple(c.evaluate(point) for c in self.components)

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return type(self)(*(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return type(self)(*(a - b for a, b in zip(self.components, other.components)))

    def __mul__(self, scalar):
        f = as_field(scalar)
        return type(self)(*(c * f for c in self.components))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        f = as_field(scalar)
        return type(self)(*(c / f for c in self.components))

    def __neg__(self):
        return type(self)(*(-c for c in self.components))

    def __repr__(self):
        inner = ", ".join(c._short_text(limit=24) for c in self.components)
        return f"{type(self).__name__}({inner})"


class VectorField(_Triple):
    """Vector field with components in the coordinate frame (d/dx, d/dy, d/dz)."""

    __slots__ = ()
    _what = "a vector field"


class OneForm(_Triple):
    """1-form with coefficients of (dx, dy, dz)."""

    __slots__ = ()
    _what = "a 1-form"

    def __call__(self, X: VectorField) -> ScalarField:
        """Pairing with a vector field."""
        a, b, c = self.components
        u, v, w = X.components
        return a * u + b * v + c * w


class TwoForm(_Triple):
    """2-form with coefficients of the cyclic basis (dy^dz, dz^dx, dx^dy)."""

    __slots__ = ()
    _what = "a 2-form"

    def __call__(self, X: VectorField, Y: VectorField) -> ScalarField:
        return apply_two_form(self, X, Y)


class ThreeForm:
    """3-form: a single ScalarField multiple of dx^dy^dz."""

    __slots__ = ("coefficient",)

    def __init__(self, coefficient) -> None:
        object.__setattr__(self, "coefficient", as_field(coefficient))

    def at(self, point) -> float:
        return self.coefficient.evaluate(point)

    def __repr__(self):
        return f"ThreeForm({self.coefficient._short_text(limit=32)})"


def dot(X: VectorField, Y: VectorField) -> ScalarField:
    """Ambient Euclidean scalar product."""
    u, v, w = X.components
    a, b, c = Y.components
    return u * a + v * b + w * c


def norm(X: VectorField) -> ScalarField:
    return sqrt(dot(X, X))


def triple_product(X: VectorField, Y: VectorField, Z: VectorField) -> ScalarField:
    """det of the 3x3 component matrix with rows X, Y, Z."""
    x1, x2, x3 = X.components
    y1, y2, y3 = Y.components
    z1, z2, z3 = Z.components
    return (x1 * (y2 * z3 - y3 * z2)
            - x2 * (y1 * z3 - y3 * z1)
            + x3 * (y1 * z2 - y2 * z1))


def commutator(X: VectorField, Y: VectorField) -> VectorField:
    """Lie bracket [X, Y]^i = X^s dY^i/dx^s - Y^s dX^i/dx^s."""
    out = []
    for i in range(3):
        yi = Y.components[i]
        xi = X.components[i]
        acc = as_field(0)
        for s, axis in enumerate(_AXES):
            acc = acc + X.components[s] * yi.diff(axis) - Y.components[s] * xi.diff(axis)
        out.append(acc)
    return VectorField(*out)


def gram_schmidt(X1: VectorField, X2: VectorField, check_points=None):
    """Orthonormalise (X1, X2) under the ambient Euclidean product.

    Returns (e1, e2) with e1 = X1/|X1| and e2 the normalised component of X2
    orthogonal to e1; spans and in-plane orientation are preserved.  When
    ``check_points`` is given, raises :class:`DegenerateInput` at any point
    where a normalisation denominator vanishes.
    """
    n1 = norm(X1)
    e1 = X1 / n1
    u2 = X2 - dot(X2, e1) * e1
    n2 = norm(u2)
    e2 = u2 / n2
    if check_points is not None:
        scale2 = norm(X2)
        for p in check_points:
            try:
                d1 = n1.evaluate(p)
                d2 = n2.evaluate(p)
                s2 = scale2.evaluate(p)
            except DomainError:
                raise DegenerateInput("orthonormalisation undefined", p) from None
            if d1 <= 0.0:
                raise DegenerateInput("first generator vanishes", p)
            if d2 <= _DEGENERACY_RTOL * s2:
                raise DegenerateInput("generators are linearly dependent", p)
    return e1, e2


@dataclass(frozen=True)
class Frame:
    """Ordered triple of vector fields; nondegenerate where det != 0."""

    e1: VectorField
    e2: VectorField
    e3: VectorField

    @property
    def fields(self) -> tuple[VectorField, VectorField, VectorField]:
        return (self.e1, self.e2, self.e3)

    def matrix(self):
        """3x3 ScalarField rows: components of e1, e2, e3."""
        return tuple(e.components for e in self.fields)

    def determinant(self) -> ScalarField:
        return triple_product(self.e1, self.e2, self.e3)

    def at(self, point):
        return tuple(e.at(point) for e in self.fields)

    def require_nondegenerate(self, points) -> None:
        """Raise :class:`DegenerateInput` where the component matrix is singular."""
        det = self.determinant()
        scale = norm(self.e1) * norm(self.e2) * norm(self.e3)
        for p in points:
            try:
                d = det.evaluate(p)
                s = scale.evaluate(p)
            except DomainError:
                raise DegenerateInput("frame undefined", p) from None
            if abs(d) <= _DEGENERACY_RTOL * s:
                raise DegenerateInput("frame is degenerate", p)


@dataclass(frozen=True)
class Coframe:
    """Ordered triple of 1-forms, dual to a frame via the 3x3 pairing."""

    eta1: OneForm
    eta2: OneForm
    eta3: OneForm

    @property
    def forms(self) -> tuple[OneForm, OneForm, OneForm]:
        return (self.eta1, self.eta2, self.eta3)

    def at(self, point):
        return tuple(f.at(point) for f in self.forms)


def complete_frame(e1: VectorField, e2: VectorField, check_points=None) -> Frame:
    """Complete an orthonormal pair to a frame with e3 = [e1, e2].

    The commutator sign is exactly e3 = +[e1, e2].  With ``check_points`` the
    frame determinant is checked there and :class:`DegenerateInput` raised
    where it vanishes (the holonomic locus).
    """
    frame = Frame(e1, e2, commutator(e1, e2))
    if check_points is not None:
        frame.require_nondegenerate(check_points)
    return frame


def dual_coframe(F: Frame, check_points=None) -> Coframe:
    """Coframe (eta^1, eta^2, eta^3) with eta^i(e_j) = delta^i_j.

    Computed symbolically as the adjugate of the component matrix over its
    determinant: row i of the cofactor matrix of the frame rows, divided by
    det.  No pivoting; conditioning is handled by per-point domain checks.
    """
    (a, b, c), (d, e, f), (g, h, i) = F.matrix()
    cof = (
        (e * i - f * h, f * g - d * i, d * h - e * g),
        (c * h - b * i, a * i - c * g, b * g - a * h),
        (b * f - c * e, c * d - a * f, a * e - b * d),
    )
    det = a * cof[0][0] + b * cof[0][1] + c * cof[0][2]
    if check_points is not None:
        F.require_nondegenerate(check_points)
    rows = [OneForm(*(entry / det for entry in cof[k])) for k in range(3)]
    return Coframe(*rows)


def differential(f) -> OneForm:
    """Exterior derivative of a 0-form: df = f_x dx + f_y dy + f_z dz."""
    f = as_field(f)
    return OneForm(f.diff("x"), f.diff("y"), f.diff("z"))


def exterior_derivative(omega: OneForm) -> TwoForm:
    """d of a 1-form, assembled from coordinate partials of the coefficients."""
    p, q, r = omega.components
    return TwoForm(
        r.diff("y") - q.diff("z"),
        p.diff("z") - r.diff("x"),
        q.diff("x") - p.diff("y"),
    )


def exterior_derivative2(omega: TwoForm) -> ThreeForm:
    """d of a 2-form: the single dx^dy^dz coefficient."""
    a, b, c = omega.components
    return ThreeForm(a.diff("x") + b.diff("y") + c.diff("z"))


def wedge(alpha: OneForm, beta: OneForm) -> TwoForm:
    """Wedge of two 1-forms in the cyclic 2-form basis."""
    a1, a2, a3 = alpha.components
    b1, b2, b3 = beta.components
    return TwoForm(a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)


def wedge21(omega: TwoForm, alpha: OneForm) -> ThreeForm:
    """Wedge of a 2-form with a 1-form."""
    a, b, c = omega.components
    p, q, r = alpha.components
    return ThreeForm(a * p + b * q + c * r)


def apply_two_form(omega: TwoForm, X: VectorField, Y: VectorField) -> ScalarField:
    """omega(X, Y); antisymmetric, and equals a(X)b(Y) - a(Y)b(X) for omega = a^b."""
    a, b, c = omega.components
    x1, x2, x3 = X.components
    y1, y2, y3 = Y.components
    return (a * (x2 * y3 - x3 * y2)
            + b * (x3 * y1 - x1 * y3)
            + c * (x1 * y2 - x2 * y1))


def structure_coefficients(C: Coframe, F: Frame):
    """Expansion coefficients of d(eta^i) in the coframe 2-form basis.

    Returns rows c^i = (c^i_23, c^i_31, c^i_12) with c^i_ab = (d eta^i)(e_a, e_b),
    so that d eta^i = c^i_23 eta^2^eta^3 + c^i_31 eta^3^eta^1 + c^i_12 eta^1^eta^2
    whenever F is the dual frame of C.
    """
    e1, e2, e3 = F.fields
    rows = []
    for eta in C.forms:
        d = exterior_derivative(eta)
        rows.append((
            apply_two_form(d, e2, e3),
            apply_two_form(d, e3, e1),
            apply_two_form(d, e1, e2),
        ))
    return tuple(rows)


def pairing_matrix(C: Coframe, F: Frame):
    """3x3 ScalarField table eta^i(e_j); identity exactly when C, F are dual."""
    return tuple(tuple(eta(e) for e in F.fields) for eta in C.forms)
