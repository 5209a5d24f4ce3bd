"""
Census of f-ideals at fixed (n, d) and the theorem-equivalence suite.

Every candidate is judged twice: by comparing the f-vectors of its two
complexes, and by the three characterization conditions. A candidate where
they differ is a disagreement. Disagreements in the necessity direction
(f-ideal, conditions fail) exist for d >= 3 and are reported. The
sufficiency direction (conditions hold, not an f-ideal) cannot occur, so
any such candidate, like any mismatch between the bitmask kernel and the
general API, marks the census as failed.

Odd C(n, d) is pruned without scanning (no f-ideal can exist), and for even
C(n, d) only s = C(n, d)/2 is scanned. The suite backs both prunes with
sampled checks of the skipped candidates.
"""
from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from itertools import permutations
from multiprocessing import Pool
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd
from tqdm import tqdm

from census.candidates import (
    CandidateSpace,
    candidate_space,
    check_bounds,
    fixed_popcount_masks,
)
from fideal import check_characterization
from monomial.errors import EnumerationBoundsError
from monomial.ideal import SquareFreeIdeal
from monomial.vertexset import binomial, bits_of, popcount

log = logging.getLogger("fideals.census")

MAX_CANDIDATES = 10**9
ORBIT_MAX_N = 6
SWEEP_MAX_WIDTH = 12
UNITS_PER_WORKER = 4
DEFAULT_SEED = 20240229


@dataclass(frozen=True)
class WatchResult:
    ideal: SquareFreeIdeal
    scanned: bool
    f_ideal: Optional[bool]


@dataclass(frozen=True)
class CensusEntry:
    n: int
    d: int
    s: Optional[int]
    candidates_scanned: int
    full_support: int
    f_ideals_direct: int
    f_ideals_characterization: int
    disagreements: int
    elapsed: float
    pruned: bool = False
    sufficiency_failures: int = 0
    kernel_mismatches: int = 0
    representatives: tuple[SquareFreeIdeal, ...] = ()
    witnesses: tuple[SquareFreeIdeal, ...] = ()
    watched: tuple[WatchResult, ...] = ()
    orbit_representatives: Optional[tuple[SquareFreeIdeal, ...]] = None

    @property
    def theorem_holds(self) -> bool:
        return self.disagreements == 0

    @property
    def ok(self) -> bool:
        """No implementation fault; necessity disagreements alone leave the census ok."""
        return (
            self.sufficiency_failures == 0
            and self.kernel_mismatches == 0
            and self.disagreements == self.f_ideals_direct - self.f_ideals_characterization
        )

    def to_json(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            "n": self.n,
            "d": self.d,
            "s": self.s,
            "scanned": self.candidates_scanned,
            "full_support": self.full_support,
            "f_ideals": self.f_ideals_direct,
            "f_ideals_characterization": self.f_ideals_characterization,
            "disagreements": self.disagreements,
            "sufficiency_failures": self.sufficiency_failures,
            "kernel_mismatches": self.kernel_mismatches,
            "pruned": self.pruned,
            "elapsed_ms": round(self.elapsed * 1000),
            "representatives": [g.render() for g in self.representatives],
        }
        if self.witnesses:
            out["witnesses"] = [g.render() for g in self.witnesses]
        if self.watched:
            out["watched"] = [
                {"ideal": w.ideal.render(), "scanned": w.scanned, "f_ideal": w.f_ideal} for w in self.watched
            ]
        if self.orbit_representatives is not None:
            out["orbits"] = len(self.orbit_representatives)
            out["orbit_representatives"] = [g.render() for g in self.orbit_representatives]
        return out

    def render_text(self) -> str:
        lines = [f"census n={self.n} d={self.d}"]
        if self.pruned:
            lines.append(f"C({self.n},{self.d})={binomial(self.n, self.d)} is odd: no f-ideals, nothing scanned")
        else:
            lines.append(f"s = C({self.n},{self.d})/2 = {self.s}")
        lines += [
            f"scanned: {self.candidates_scanned}  full support: {self.full_support}",
            f"f-ideals (definition): {self.f_ideals_direct}",
            f"f-ideals (characterization): {self.f_ideals_characterization}",
            f"disagreements: {self.disagreements}",
            f"sufficiency failures: {self.sufficiency_failures}  kernel mismatches: {self.kernel_mismatches}",
        ]
        if self.orbit_representatives is not None:
            lines.append(f"orbits under relabeling: {len(self.orbit_representatives)}")
        for w in self.watched:
            state = "not scanned" if not w.scanned else f"f-ideal: {str(w.f_ideal).lower()}"
            lines.append(f"watch {w.ideal}: {state}")
        for g in self.representatives:
            lines.append(f"  {g.render().strip().replace(chr(10), '; ')}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class WorkUnit:
    n: int
    d: int
    s: int
    start: int
    count: int
    keep: int
    collect: bool
    watch: tuple[int, ...] = ()


@dataclass
class UnitResult:
    scanned: int = 0
    full_support: int = 0
    direct: int = 0
    characterization: int = 0
    representatives: List[int] = field(default_factory=list)
    disagreements: List[int] = field(default_factory=list)
    sufficiency: List[int] = field(default_factory=list)
    positives: List[int] = field(default_factory=list)
    watched: Dict[int, bool] = field(default_factory=dict)


def run_unit(unit: WorkUnit) -> UnitResult:
    """Scan one contiguous colex range of candidates."""
    space = candidate_space(unit.n, unit.d)
    watch = set(unit.watch)
    result = UnitResult()
    for cand in fixed_popcount_masks(unit.s, unit.start, unit.count):
        result.scanned += 1
        if not space.has_full_support(cand):
            continue
        result.full_support += 1
        direct = space.is_f_ideal(cand)
        characterized = space.satisfies_characterization(cand)
        if cand in watch:
            result.watched[cand] = direct
        if direct != characterized:
            result.disagreements.append(cand)
            if characterized:
                result.sufficiency.append(cand)
        if characterized:
            result.characterization += 1
        if direct:
            result.direct += 1
            if len(result.representatives) < unit.keep:
                result.representatives.append(cand)
            if unit.collect:
                result.positives.append(cand)
    return result


def split_units(total: int, workers: int) -> List[Tuple[int, int]]:
    pieces = max(1, min(total, workers * UNITS_PER_WORKER))
    step, extra = divmod(total, pieces)
    ranges, start = [], 0
    for i in range(pieces):
        count = step + (1 if i < extra else 0)
        ranges.append((start, count))
        start += count
    return ranges


def _map_units(units: Sequence[WorkUnit], workers: int, progress: bool) -> List[UnitResult]:
    if workers > 1 and len(units) > 1:
        with Pool(workers) as pool:
            results = pool.imap(run_unit, units)
            return list(tqdm(results, total=len(units), desc="census", disable=not progress))
    return [run_unit(u) for u in tqdm(units, desc="census", disable=not progress)]


def canonical_relabeling(cand: int, relabelings: Sequence[Sequence[int]]) -> int:
    """Least candidate mask over all relabelings of the vertices."""
    best = cand
    for rank_map in relabelings:
        image = 0
        for low in bits_of(cand):
            image |= 1 << rank_map[low.bit_length() - 1]
        if image < best:
            best = image
    return best


def _relabelings(space: CandidateSpace) -> List[List[int]]:
    index = {g: r for r, g in enumerate(space.dsets)}
    maps = []
    for perm in permutations(range(space.n)):
        rank_map = []
        for g in space.dsets:
            image = 0
            for low in bits_of(g):
                image |= 1 << perm[low.bit_length() - 1]
            rank_map.append(index[image])
        maps.append(rank_map)
    return maps


def _kernel_agrees(space: CandidateSpace, cand: int) -> bool:
    """Both bitmask verdicts for one candidate, re-derived through the general API."""
    report = check_characterization(space.ideal(cand))
    return (
        report.direct_verdict == space.is_f_ideal(cand)
        and report.characterization_verdict == space.satisfies_characterization(cand)
    )


def census(
    n: int,
    d: int,
    *,
    workers: int = 1,
    representatives: int = 5,
    orbits: bool = False,
    force: bool = False,
    progress: bool = False,
    watch: Iterable[SquareFreeIdeal] = (),
) -> CensusEntry:
    check_bounds(n, d)
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")
    started = time.perf_counter()
    width = binomial(n, d)
    watch = tuple(watch)

    if width % 2:
        log.info("C(%d,%d)=%d is odd: pruned without scanning", n, d, width)
        return CensusEntry(
            n=n,
            d=d,
            s=None,
            candidates_scanned=0,
            full_support=0,
            f_ideals_direct=0,
            f_ideals_characterization=0,
            disagreements=0,
            elapsed=time.perf_counter() - started,
            pruned=True,
            watched=tuple(WatchResult(w, False, None) for w in watch),
            orbit_representatives=() if orbits else None,
        )

    s = width // 2
    total = binomial(width, s)
    if total > MAX_CANDIDATES and not force:
        raise EnumerationBoundsError(
            f"census ({n},{d}) would scan C({width},{s})={total} candidates; pass force to run it anyway"
        )
    if orbits and n > ORBIT_MAX_N:
        raise EnumerationBoundsError(f"orbit representatives are limited to n <= {ORBIT_MAX_N}")

    space = candidate_space(n, d)
    watch_masks: Dict[int, SquareFreeIdeal] = {}
    for w in watch:
        if w.n == n and w.is_pure_of_degree(d) and w.s == s:
            watch_masks[space.mask_of(w)] = w

    log.info("census (%d,%d): scanning %d candidates with s=%d on %d worker(s)", n, d, total, s, workers)
    units = [
        WorkUnit(n, d, s, start, count, representatives, orbits, tuple(watch_masks))
        for start, count in split_units(total, workers)
    ]
    results = _map_units(units, workers, progress)

    reps: List[int] = []
    disagreements: List[int] = []
    sufficiency: List[int] = []
    positives: List[int] = []
    seen: Dict[int, bool] = {}
    for r in results:
        reps.extend(r.representatives)
        disagreements.extend(r.disagreements)
        sufficiency.extend(r.sufficiency)
        positives.extend(r.positives)
        seen.update(r.watched)
    reps = reps[:representatives]

    rep_ideals = tuple(space.ideal(c) for c in reps)
    mismatches = [c for c in dict.fromkeys(reps + disagreements[:5]) if not _kernel_agrees(space, c)]
    for c in mismatches:
        log.error("census kernel and general API disagree on %s", space.ideal(c))

    orbit_reps = None
    if orbits:
        relabelings = _relabelings(space)
        canon = sorted({canonical_relabeling(c, relabelings) for c in positives})
        orbit_reps = tuple(space.ideal(c) for c in canon)

    for c in sufficiency[:5]:
        log.error("THEOREM-VIOLATION (sufficiency): conditions hold but %s is not an f-ideal", space.ideal(c))
    faulty = set(sufficiency)
    necessity = [c for c in disagreements if c not in faulty]
    if necessity:
        log.warning(
            "THEOREM-VIOLATION (necessity): %d f-ideal(s) at (%d,%d) fail the characterization, e.g. %s",
            len(necessity), n, d, space.ideal(necessity[0]),
        )

    watched = []
    for w in watch:
        mask = space.mask_of(w) if w.n == n and w.is_pure_of_degree(d) else None
        if mask is not None and mask in seen:
            watched.append(WatchResult(w, True, seen[mask]))
        else:
            watched.append(WatchResult(w, False, None))

    entry = CensusEntry(
        n=n,
        d=d,
        s=s,
        candidates_scanned=sum(r.scanned for r in results),
        full_support=sum(r.full_support for r in results),
        f_ideals_direct=sum(r.direct for r in results),
        f_ideals_characterization=sum(r.characterization for r in results),
        disagreements=len(disagreements),
        elapsed=time.perf_counter() - started,
        sufficiency_failures=len(sufficiency),
        kernel_mismatches=len(mismatches),
        representatives=rep_ideals,
        witnesses=tuple(space.ideal(c) for c in disagreements[:5]),
        watched=tuple(watched),
        orbit_representatives=orbit_reps,
    )
    log.info(
        "census (%d,%d): %d f-ideals, %d disagreements in %.2fs",
        n, d, entry.f_ideals_direct, entry.disagreements, entry.elapsed,
    )
    return entry


@dataclass(frozen=True)
class SweepResult:
    """Both predicates over every full-support candidate of every size s."""

    n: int
    d: int
    scanned: int
    f_ideals_by_s: Dict[int, int]
    disagreements: int
    sufficiency_failures: int = 0

    def to_json(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "d": self.d,
            "scanned": self.scanned,
            "f_ideals_by_s": {str(k): v for k, v in self.f_ideals_by_s.items()},
            "disagreements": self.disagreements,
            "sufficiency_failures": self.sufficiency_failures,
        }


def sweep_all_sizes(n: int, d: int) -> SweepResult:
    check_bounds(n, d)
    space = candidate_space(n, d)
    if space.width > SWEEP_MAX_WIDTH:
        raise EnumerationBoundsError(f"all-s sweep limited to C(n,d) <= {SWEEP_MAX_WIDTH}, got {space.width}")
    by_s: Dict[int, int] = {}
    scanned = disagreements = sufficiency = 0
    for cand in range(1, 1 << space.width):
        if not space.has_full_support(cand):
            continue
        scanned += 1
        direct = space.is_f_ideal(cand)
        characterized = space.satisfies_characterization(cand)
        if direct != characterized:
            disagreements += 1
            if characterized:
                sufficiency += 1
        if direct:
            s = popcount(cand)
            by_s[s] = by_s.get(s, 0) + 1
    return SweepResult(n, d, scanned, dict(sorted(by_s.items())), disagreements, sufficiency)


@dataclass(frozen=True)
class PruneCheck:
    """Sampled candidates a census skips (odd C(n,d), or s != C(n,d)/2) judged by the definition."""

    n: int
    d: int
    sampled: int
    f_ideals: int
    seed: int

    def to_json(self) -> Dict[str, object]:
        return {"n": self.n, "d": self.d, "sampled": self.sampled, "violations": self.f_ideals, "seed": self.seed}


def sample_pruned(n: int, d: int, *, samples: int, seed: int = DEFAULT_SEED) -> PruneCheck:
    check_bounds(n, d)
    space = candidate_space(n, d)
    width = space.width
    sizes = [s for s in range(1, width + 1) if width % 2 or 2 * s != width]
    rng = random.Random(seed)
    sampled = found = 0
    attempts = 0
    while sampled < samples and attempts < samples * 50:
        attempts += 1
        s = rng.choice(sizes)
        cand = sum(1 << r for r in rng.sample(range(width), s))
        if not space.has_full_support(cand):
            continue
        sampled += 1
        if space.is_f_ideal(cand):
            found += 1
            log.error("THEOREM-VIOLATION: pruned candidate %s is an f-ideal", space.ideal(cand))
    return PruneCheck(n, d, sampled, found, seed)


@dataclass(frozen=True)
class SuiteReport:
    entries: tuple[CensusEntry, ...]
    sweeps: tuple[SweepResult, ...]
    prune_checks: tuple[PruneCheck, ...]

    @property
    def disagreements(self) -> int:
        return sum(e.disagreements for e in self.entries) + sum(s.disagreements for s in self.sweeps)

    @property
    def sufficiency_failures(self) -> int:
        return sum(e.sufficiency_failures for e in self.entries) + sum(s.sufficiency_failures for s in self.sweeps)

    @property
    def kernel_mismatches(self) -> int:
        return sum(e.kernel_mismatches for e in self.entries)

    @property
    def pruning_violations(self) -> int:
        return sum(p.f_ideals for p in self.prune_checks)

    @property
    def theorem_holds(self) -> bool:
        return self.disagreements == 0

    @property
    def ok(self) -> bool:
        """Implementation faults only: sufficiency failures, kernel mismatches, pruned f-ideals."""
        return (
            self.sufficiency_failures == 0
            and self.pruning_violations == 0
            and all(e.ok for e in self.entries)
        )

    def to_frame(self) -> pd.DataFrame:
        sweeps = {(s.n, s.d): s for s in self.sweeps}
        checks = {(p.n, p.d): p for p in self.prune_checks}
        rows = []
        for e in self.entries:
            sweep = sweeps.get((e.n, e.d))
            check = checks.get((e.n, e.d))
            rows.append(
                {
                    "n": e.n,
                    "d": e.d,
                    "s": e.s,
                    "scanned": e.candidates_scanned,
                    "f_ideals": e.f_ideals_direct,
                    "f_ideals_characterization": e.f_ideals_characterization,
                    "disagreements": e.disagreements + (sweep.disagreements if sweep else 0),
                    "sufficiency_failures": e.sufficiency_failures + (sweep.sufficiency_failures if sweep else 0),
                    "sweep_scanned": sweep.scanned if sweep else None,
                    "pruned_sampled": check.sampled if check else None,
                    "pruning_violations": check.f_ideals if check else None,
                    "elapsed_ms": round(e.elapsed * 1000),
                }
            )
        return pd.DataFrame(rows)

    def to_json(self) -> Dict[str, object]:
        return {
            "ok": self.ok,
            "theorem_holds": self.theorem_holds,
            "disagreements": self.disagreements,
            "sufficiency_failures": self.sufficiency_failures,
            "kernel_mismatches": self.kernel_mismatches,
            "pruning_violations": self.pruning_violations,
            "census": [e.to_json() for e in self.entries],
            "sweeps": [s.to_json() for s in self.sweeps],
            "prune_checks": [p.to_json() for p in self.prune_checks],
        }

    def render_text(self) -> str:
        frame = self.to_frame()
        body = frame.to_string(index=False) if not frame.empty else "(no pairs)"
        return (
            f"{body}\n"
            f"disagreements: {self.disagreements}\n"
            f"sufficiency failures: {self.sufficiency_failures}\n"
            f"kernel mismatches: {self.kernel_mismatches}\n"
            f"pruning violations: {self.pruning_violations}\n"
            f"ok: {str(self.ok).lower()}\n"
        )


def equivalence_suite(
    pairs: Sequence[Tuple[int, int]],
    *,
    workers: int = 1,
    samples: int = 200,
    seed: int = DEFAULT_SEED,
    force: bool = False,
    progress: bool = False,
) -> SuiteReport:
    """
    For each (n, d): the census at s = C(n,d)/2, a sweep over every s when
    C(n,d) is small enough, and a seeded sample of the candidates the census
    prunes, each of which must fail the definition.
    """
    for n, d in pairs:
        check_bounds(n, d)
    entries, sweeps, checks = [], [], []
    for n, d in pairs:
        entries.append(census(n, d, workers=workers, force=force, progress=progress))
        if binomial(n, d) <= SWEEP_MAX_WIDTH:
            sweeps.append(sweep_all_sizes(n, d))
        if samples > 0:
            checks.append(sample_pruned(n, d, samples=samples, seed=seed))
    report = SuiteReport(tuple(entries), tuple(sweeps), tuple(checks))
    if report.disagreements:
        log.warning("equivalence suite: %d necessity disagreements between definition and characterization",
                    report.disagreements - report.sufficiency_failures)
    if not report.ok:
        log.error("equivalence suite found %d sufficiency failures, %d kernel mismatches, %d pruning violations",
                  report.sufficiency_failures, report.kernel_mismatches, report.pruning_violations)
    return report
