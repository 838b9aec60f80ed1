"""Five-step structural similarity over label multisets.

All arithmetic is exact (fractions.Fraction); rendering to 2-decimal
percentages happens once, at the edge, and never feeds back into the
stored values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import LabelMultiset


def filter_intersection(n1: LabelMultiset, n2: LabelMultiset) -> LabelMultiset:
    """Entries of n1, at n1's multiplicity, whose label occurs in n2.

    This is a filter against the other side's support, not a
    min-of-multiplicities meet, so the two directions can have
    different cardinalities.
    """
    return LabelMultiset({label: count for label, count in n1.items()
                          if count > 0 and n2.get(label, 0) > 0})


def percent_intersection(i: LabelMultiset, n: LabelMultiset) -> Fraction:
    """|i| / |n|, with an empty base counting as zero overlap."""
    base = sum(n.values())
    if base == 0:
        return Fraction(0)
    return Fraction(sum(i.values()), base)


def percentages_distance(p1: Fraction, p2: Fraction) -> Fraction:
    return abs(p1 - p2)


def lower_bound(p1: Fraction, p2: Fraction, eta: Fraction) -> Fraction:
    # the absolute value is part of the formula, not defensive coding
    return abs(min(p1, p2) - eta)


def pct_hundredths(value: Fraction) -> int:
    """value as a whole number of percent-hundredths, rounding half
    away from zero (so 0.642017 -> 6420, 0.70138 -> 7014)."""
    scaled = value * 10000
    q, r = divmod(abs(scaled.numerator), scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    return -q if scaled.numerator < 0 else q


def format_percent(value: Fraction) -> str:
    """Render a ratio as a percentage with 2 decimals (no sign suffix)."""
    q = pct_hundredths(value)
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // 100}.{q % 100:02d}"


def _format_hundredths(q: int) -> str:
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // 100}.{q % 100:02d}"


@dataclass(frozen=True)
class SimilarityReport:
    """Outcome of the five steps, exact plus rendered.

    range_lo/range_hi duplicate lower and min(p1, p2) so the range
    reads directly off the record. rendered holds the 2-decimal
    percent strings keyed by field name.
    """

    n1_card: int
    n2_card: int
    i1_card: int
    i2_card: int
    p1: Fraction
    p2: Fraction
    eta: Fraction
    lower: Fraction
    range_lo: Fraction
    range_hi: Fraction
    average: Fraction
    rendered: dict


def _render(p1, p2, eta, lower, range_lo, range_hi) -> dict:
    # The rendered average is the midpoint of the rendered endpoints,
    # ties rounded up. Averaging already-rounded endpoints is what
    # keeps the three printed figures consistent with each other;
    # rounding the exact midpoint instead can disagree with them by
    # one hundredth.
    lo = pct_hundredths(range_lo)
    hi = pct_hundredths(range_hi)
    avg = (lo + hi + 1) // 2 if (lo + hi) % 2 else (lo + hi) // 2
    return {
        "p1": format_percent(p1),
        "p2": format_percent(p2),
        "eta": format_percent(eta),
        "lower": format_percent(lower),
        "range_lo": _format_hundredths(lo),
        "range_hi": _format_hundredths(hi),
        "average": _format_hundredths(avg),
    }


def similarity_report(n1: LabelMultiset, n2: LabelMultiset) -> SimilarityReport:
    """Run all five steps on a pair of label multisets."""
    i1 = filter_intersection(n1, n2)
    i2 = filter_intersection(n2, n1)
    n1_card = sum(n1.values())
    n2_card = sum(n2.values())
    i1_card = sum(i1.values())
    i2_card = sum(i2.values())
    p1 = percent_intersection(i1, n1)
    p2 = percent_intersection(i2, n2)
    eta = percentages_distance(p1, p2)
    lower = lower_bound(p1, p2, eta)
    range_lo = lower
    range_hi = min(p1, p2)
    average = (lower + range_hi) / 2
    return SimilarityReport(
        n1_card=n1_card,
        n2_card=n2_card,
        i1_card=i1_card,
        i2_card=i2_card,
        p1=p1,
        p2=p2,
        eta=eta,
        lower=lower,
        range_lo=range_lo,
        range_hi=range_hi,
        average=average,
        rendered=_render(p1, p2, eta, lower, range_lo, range_hi),
    )
