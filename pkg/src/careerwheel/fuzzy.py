"""Triangular linguistic partition of the career-readiness scale.

A readiness verdict is linguistic, not crisp: the 1-10 score domain is
covered by ordered triangular terms (default Low / Medium / High) and a
predicted score is assessed by evaluating every term's membership degree.
The default partition is Ruspini (degrees sum to one everywhere), which
keeps the term set testable; any other partition can be configured.
"""

from __future__ import annotations

from dataclasses import dataclass

# "Poor" and "Low" name the same least-ready term; canonical label is "Low".
TERM_ALIASES = {"Poor": "Low"}


class PartitionError(ValueError):
    pass


class UnknownTerm(KeyError):
    def __init__(self, term: str):
        self.term = term
        super().__init__(f"UnknownTerm: {term!r}")


class AlphaOutOfRange(ValueError):
    def __init__(self, alpha: float):
        self.alpha = alpha
        super().__init__(f"AlphaOutOfRange: alpha must be in (0, 1], got {alpha}")


@dataclass(frozen=True)
class Triangle:
    """Triangular membership function with feet a, c and peak b."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if not (self.a <= self.b <= self.c):
            raise PartitionError(f"triangle requires a <= b <= c, got {self}")
        if self.a >= self.c:
            raise PartitionError(f"triangle requires a < c, got {self}")


def membership(tri: Triangle, x: float) -> float:
    """Degree of x under the triangle; degenerate shoulders are 1 at their flat edge."""
    if x < tri.a or x > tri.c:
        return 0.0
    if x == tri.b:
        # Also covers the flat edge of a degenerate shoulder (a == b or b == c).
        return 1.0
    if x < tri.b:
        return (x - tri.a) / (tri.b - tri.a)
    return (tri.c - x) / (tri.c - tri.b)


@dataclass(frozen=True)
class FuzzyPartition:
    """Ordered term set over [lo, hi], least-ready first."""

    variable_name: str
    terms: tuple[tuple[str, Triangle], ...]
    domain: tuple[float, float]

    def __post_init__(self):
        lo, hi = self.domain
        if not lo < hi:
            raise PartitionError(f"domain must satisfy lo < hi, got {self.domain}")
        labels = [label for label, _ in self.terms]
        if len(labels) != len(set(labels)):
            raise PartitionError("term labels must be unique")
        if not labels:
            raise PartitionError("partition needs at least one term")
        uncovered = [x for x in self._witness_points() if self._max_degree(x) == 0.0]
        if uncovered:
            raise PartitionError(
                f"domain point {uncovered[0]} has no term with positive membership"
            )

    def _witness_points(self) -> list[float]:
        """Breakpoints plus segment midpoints: exact witnesses for piecewise-linear checks."""
        lo, hi = self.domain
        points = {lo, hi}
        for _, tri in self.terms:
            points.update(p for p in (tri.a, tri.b, tri.c) if lo <= p <= hi)
        points = sorted(points)
        mids = [(p + q) / 2 for p, q in zip(points, points[1:])]
        return sorted(set(points + mids))

    def _max_degree(self, x: float) -> float:
        return max(membership(tri, x) for _, tri in self.terms)

    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.terms)

    def term(self, label: str) -> Triangle:
        label = TERM_ALIASES.get(label, label)
        for name, tri in self.terms:
            if name == label:
                return tri
        raise UnknownTerm(label)

    def memberships(self, x: float) -> dict[str, float]:
        return {label: membership(tri, x) for label, tri in self.terms}

    def is_ruspini(self, tolerance: float = 1e-12) -> bool:
        """Do the term degrees sum to one across the whole domain?

        The sum is piecewise linear, so checking every breakpoint and
        segment midpoint decides the property exactly.
        """
        for x in self._witness_points():
            if abs(sum(self.memberships(x).values()) - 1.0) > tolerance:
                return False
        return True


@dataclass(frozen=True)
class LinguisticAssessment:
    chosen_term: str
    chosen_degree: float
    memberships: dict[str, float]
    input_score: float  # after clamping to the partition domain


def default_partition() -> FuzzyPartition:
    """Symmetric Ruspini partition of [1, 10] with peaks at 1, 5.5 and 10."""
    return FuzzyPartition(
        variable_name="Career Readiness",
        terms=(
            ("Low", Triangle(1.0, 1.0, 5.5)),
            ("Medium", Triangle(1.0, 5.5, 10.0)),
            ("High", Triangle(5.5, 10.0, 10.0)),
        ),
        domain=(1.0, 10.0),
    )


def fuzzify(partition: FuzzyPartition, score: float) -> LinguisticAssessment:
    """Assess a crisp score: clamp to the domain, grade every term, pick the argmax.

    Raw model predictions may fall outside the scale; they are clamped here
    so the regression error metrics upstream stay honest.  Ties go to the
    less-ready term: borderline students are flagged conservatively.
    """
    lo, hi = partition.domain
    clamped = min(max(score, lo), hi)
    degrees = partition.memberships(clamped)
    chosen_term, chosen_degree = None, -1.0
    for label, degree in degrees.items():
        if degree > chosen_degree:
            chosen_term, chosen_degree = label, degree
    return LinguisticAssessment(
        chosen_term=chosen_term,
        chosen_degree=chosen_degree,
        memberships=degrees,
        input_score=clamped,
    )


def alpha_cut(partition: FuzzyPartition, term: str, alpha: float) -> tuple[float, float]:
    """Closed interval of scores whose membership in `term` is at least alpha.

    For a triangle this is [a + alpha*(b - a), c - alpha*(c - b)], clipped
    to the partition domain.
    """
    if not (0.0 < alpha <= 1.0):
        raise AlphaOutOfRange(alpha)
    tri = partition.term(term)
    lo, hi = partition.domain
    left = tri.a + alpha * (tri.b - tri.a)
    right = tri.c - alpha * (tri.c - tri.b)
    return (max(left, lo), min(right, hi))
