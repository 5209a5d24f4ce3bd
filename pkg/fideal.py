from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Optional

import pandas as pd

from monomial.complexes import FVector, HilbertSeries, f_vector, facet_complex, hilbert_series, nonface_complex
from monomial.decomposition import minimal_vertex_covers
from monomial.errors import NotPureError, TheoremViolation
from monomial.ideal import SquareFreeIdeal, parse_ideal
from monomial.vertexset import binomial

log = logging.getLogger("fideals.analysis")

# Direction of a disagreement between the definition and the characterization.
# Conditions (1)-(3) force equal f-vectors, so SUFFICIENCY can only come from a
# defect in this code. NECESSITY occurs on real ideals of degree >= 3, e.g.
# (x1x2x3, x1x2x4, x1x4x5, x2x3x4, x2x3x5): an f-ideal that is not unmixed.
NECESSITY = "necessity"
SUFFICIENCY = "sufficiency"


@dataclass(frozen=True)
class HeightCondition:
    passed: bool
    observed: int
    expected: int
    unmixed: bool

    def to_json(self) -> Dict[str, object]:
        return {"pass": self.passed, "observed": self.observed, "expected": self.expected, "unmixed": self.unmixed}


@dataclass(frozen=True)
class ParityCountCondition:
    passed: bool
    binom: int
    s: int
    ass: int

    @property
    def parity(self) -> bool:
        return self.binom % 2 == 0

    @property
    def count(self) -> bool:
        return self.parity and self.s == self.ass == self.binom // 2

    def to_json(self) -> Dict[str, object]:
        return {"pass": self.passed, "binom": self.binom, "s": self.s, "ass": self.ass}


@dataclass(frozen=True)
class SkeletonCondition:
    passed: bool
    observed: int
    expected: int

    def to_json(self) -> Dict[str, object]:
        return {"pass": self.passed, "observed": self.observed, "expected": self.expected}


@dataclass(frozen=True)
class ConditionReport:
    """
    Per-condition ledger for one ideal.

    Conditions are absent when they were not evaluated: all of them for ideals
    outside the theorem's hypotheses, the skeleton condition for a
    necessary-conditions-only report. direct_verdict is None only when the
    direct comparison was skipped (fast mode), and fvector_nonface is None
    with it.
    """

    n: int
    s: int
    pure_degree: Optional[int]
    fvector_facet: FVector
    fvector_nonface: Optional[FVector]
    direct_verdict: Optional[bool]
    height: Optional[HeightCondition] = None
    parity_count: Optional[ParityCountCondition] = None
    skeleton: Optional[SkeletonCondition] = None
    characterization_verdict: Optional[bool] = None
    violation: Optional[str] = None

    @property
    def theorem_violation(self) -> bool:
        return self.violation is not None

    @property
    def implementation_fault(self) -> bool:
        return self.violation == SUFFICIENCY

    @property
    def f_ideal(self) -> bool:
        if self.direct_verdict is not None:
            return self.direct_verdict
        return bool(self.characterization_verdict)

    def necessary_conditions_pass(self) -> bool:
        return bool(self.height and self.height.passed and self.parity_count and self.parity_count.passed)

    def to_json(self) -> Dict[str, object]:
        conditions: Dict[str, object] = {}
        if self.height is not None:
            conditions["height"] = self.height.to_json()
        if self.parity_count is not None:
            conditions["parity_count"] = self.parity_count.to_json()
        if self.skeleton is not None:
            conditions["skeleton"] = self.skeleton.to_json()
        return {
            "n": self.n,
            "d": self.pure_degree,
            "s": self.s,
            "pure": self.pure_degree is not None,
            "conditions": conditions,
            "f_facet": list(self.fvector_facet.counts),
            "f_nonface": list(self.fvector_nonface.counts) if self.fvector_nonface is not None else None,
            "f_ideal": self.f_ideal,
            "characterization": self.characterization_verdict,
            "theorem_violation": self.theorem_violation,
            "violation": self.violation,
        }

    def render_text(self) -> str:
        def mark(ok: bool) -> str:
            return "pass" if ok else "FAIL"

        d = self.pure_degree
        nonface = self.fvector_nonface.render() if self.fvector_nonface is not None else "not computed (fast mode)"
        lines = [
            f"n: {self.n}  s: {self.s}  pure: {'true' if d is not None else 'false'}"
            + (f"  d: {d}" if d is not None else ""),
            f"f(δ_F): {self.fvector_facet.render()}",
            f"f(δ_N): {nonface}",
        ]
        if self.height is not None:
            h = self.height
            lines.append(
                f"condition (1) unmixed of height n-d: {mark(h.passed)} "
                f"(height {h.observed}, expected {h.expected}, unmixed {str(h.unmixed).lower()})"
            )
        if self.parity_count is not None:
            p = self.parity_count
            lines.append(
                f"condition (2) C(n,d) even and s = |Ass| = C(n,d)/2: {mark(p.passed)} "
                f"(C({self.n},{d})={p.binom}, s={p.s}, |Ass|={p.ass})"
            )
        if self.skeleton is not None:
            k = self.skeleton
            lines.append(
                f"condition (3) f_(d-2)(δ_F) = C(n,d-1): {mark(k.passed)} (observed {k.observed}, expected {k.expected})"
            )
        if self.characterization_verdict is not None:
            lines.append(f"characterization: {str(self.characterization_verdict).lower()}")
        if self.violation == NECESSITY:
            lines.append("THEOREM-VIOLATION (necessity): f-ideal by definition, characterization fails")
        elif self.violation == SUFFICIENCY:
            lines.append("THEOREM-VIOLATION (sufficiency): characterization holds, not an f-ideal by definition")
        lines.append(f"f-ideal: {str(self.f_ideal).lower()}")
        return "\n".join(lines) + "\n"



def fvectors(ideal: SquareFreeIdeal) -> tuple[FVector, FVector]:
    return f_vector(facet_complex(ideal)), f_vector(nonface_complex(ideal))


def is_f_ideal(ideal: SquareFreeIdeal) -> bool:
    """f(δ_F(I)) == f(δ_N(I)); dimensions must agree as well as the counts."""
    facet, nonface = fvectors(ideal)
    return facet == nonface


def direct_report(ideal: SquareFreeIdeal) -> ConditionReport:
    """Verdict by definition only; valid for any square-free ideal."""
    facet, nonface = fvectors(ideal)
    return ConditionReport(
        n=ideal.n,
        s=ideal.s,
        pure_degree=ideal.pure_degree(),
        fvector_facet=facet,
        fvector_nonface=nonface,
        direct_verdict=facet == nonface,
    )


def _require_pure(ideal: SquareFreeIdeal) -> int:
    d = ideal.pure_degree()
    if d is None:
        raise NotPureError(f"{ideal} is not pure: generators of mixed degree or support missing a variable")
    if d < 2:
        raise NotPureError(f"{ideal} has degree {d}; the characterization needs d >= 2")
    return d


def _height_and_count(ideal: SquareFreeIdeal, d: int) -> tuple[HeightCondition, ParityCountCondition]:
    covers = minimal_vertex_covers(ideal)
    sizes = {len(c) for c in covers}
    observed = min(sizes)
    unmixed = len(sizes) == 1
    expected = ideal.n - d
    height = HeightCondition(passed=unmixed and observed == expected, observed=observed, expected=expected, unmixed=unmixed)
    binom = binomial(ideal.n, d)
    ass = len(covers)
    passed = binom % 2 == 0 and ideal.s == ass == binom // 2
    return height, ParityCountCondition(passed=passed, binom=binom, s=ideal.s, ass=ass)


def _flag_violation(ideal: SquareFreeIdeal, kind: str, message: str, strict_theorem: bool) -> str:
    if kind == SUFFICIENCY:
        log.error("THEOREM-VIOLATION (%s) for %s: %s", kind, ideal, message)
    else:
        log.warning("THEOREM-VIOLATION (%s) for %s: %s", kind, ideal, message)
    if strict_theorem:
        raise TheoremViolation(f"{ideal}: {kind}: {message}")
    return kind


def check_necessary_conditions(ideal: SquareFreeIdeal, *, strict_theorem: bool = False) -> ConditionReport:
    """
    Conditions (1) and (2) for a pure ideal of degree d >= 2. Parity and the
    generator count hold for every f-ideal; unmixedness can fail for d >= 3.
    """
    d = _require_pure(ideal)
    height, parity_count = _height_and_count(ideal, d)
    facet, nonface = fvectors(ideal)
    direct = facet == nonface
    violation = None
    if direct and not (height.passed and parity_count.passed):
        violation = _flag_violation(ideal, NECESSITY, "f-ideal fails condition (1) or (2)", strict_theorem)
    return ConditionReport(
        n=ideal.n,
        s=ideal.s,
        pure_degree=d,
        fvector_facet=facet,
        fvector_nonface=nonface,
        direct_verdict=direct,
        height=height,
        parity_count=parity_count,
        violation=violation,
    )


def check_characterization(
    ideal: SquareFreeIdeal, *, fast: bool = False, strict_theorem: bool = False
) -> ConditionReport:
    """
    Evaluate the three characterization conditions and, unless fast, compare
    against the definition. A disagreement is reported, never resolved in
    favour of either side. Fast mode never builds δ_N.
    """
    d = _require_pure(ideal)
    height, parity_count = _height_and_count(ideal, d)
    facet = f_vector(facet_complex(ideal))
    observed = facet[d - 2]
    expected = binomial(ideal.n, d - 1)
    skeleton = SkeletonCondition(passed=observed == expected, observed=observed, expected=expected)
    verdict = height.passed and parity_count.passed and skeleton.passed

    nonface: Optional[FVector] = None
    direct: Optional[bool] = None
    violation: Optional[str] = None
    if not fast:
        nonface = f_vector(nonface_complex(ideal))
        direct = facet == nonface
        if direct != verdict:
            violation = _flag_violation(
                ideal,
                NECESSITY if direct else SUFFICIENCY,
                f"definition says {direct}, characterization says {verdict} "
                f"(f(δ_F)={facet.render()}, f(δ_N)={nonface.render()})",
                strict_theorem,
            )
    return ConditionReport(
        n=ideal.n,
        s=ideal.s,
        pure_degree=d,
        fvector_facet=facet,
        fvector_nonface=nonface,
        direct_verdict=direct,
        height=height,
        parity_count=parity_count,
        skeleton=skeleton,
        characterization_verdict=verdict,
        violation=violation,
    )


def analyze_ideal(ideal: SquareFreeIdeal, *, fast: bool = False) -> ConditionReport:
    """Full report when the theorem applies, the direct verdict otherwise."""
    d = ideal.pure_degree()
    if d is not None and d >= 2:
        return check_characterization(ideal, fast=fast)
    return direct_report(ideal)


def hilbert_series_from_facets(ideal: SquareFreeIdeal) -> HilbertSeries:
    """For an f-ideal the Hilbert series of S/I can be read off f(δ_F(I)) as well."""
    facet, nonface = fvectors(ideal)
    if facet != nonface:
        raise ValueError(f"{ideal} is not an f-ideal; only f(δ_N(I)) determines its Hilbert series")
    return hilbert_series(facet, ideal.n)


def _safe_ideal(val: object) -> Optional[SquareFreeIdeal]:
    if isinstance(val, SquareFreeIdeal):
        return val
    if val is None or (isinstance(val, float) and pd.isna(val)):
        return None
    return parse_ideal(str(val), strict=False)


def add_report_columns(df: pd.DataFrame, *, ideal_col: str = "ideal", fast: bool = False) -> pd.DataFrame:
    """
    Adds per-ideal columns:
    - f_ideal, pure_degree, s
    - height, unmixed (pure ideals of degree >= 2 only)
    - f_facet, f_nonface (rendered f-vectors)
    """
    if df is None or df.empty:
        return df

    def _row_report(val: object) -> Optional[ConditionReport]:
        ideal = _safe_ideal(val)
        return analyze_ideal(ideal, fast=fast) if ideal is not None else None

    reports = df[ideal_col].apply(_row_report)
    df["f_ideal"] = reports.apply(lambda r: r.f_ideal if r else None)
    df["pure_degree"] = reports.apply(lambda r: r.pure_degree if r else None)
    df["s"] = reports.apply(lambda r: r.s if r else None)
    df["height"] = reports.apply(lambda r: r.height.observed if r and r.height else None)
    df["unmixed"] = reports.apply(lambda r: r.height.unmixed if r and r.height else None)
    df["f_facet"] = reports.apply(lambda r: r.fvector_facet.render() if r else "")
    df["f_nonface"] = reports.apply(lambda r: r.fvector_nonface.render() if r and r.fvector_nonface else "")
    return df
