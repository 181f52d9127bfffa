"""Machine checks for the reduction: geometric lemmas and both gap directions.

Every check compares exact squared distances against squared thresholds.  A
failed check keeps the first offending pair as a witness.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import csp as csp_mod
from .csp import Assignment, GeqCspInstance
from .exact_geometry import rational_to_str, squared_distance
from .kcenter import (
    DEFAULT_BUDGET,
    GapVerdict,
    classify,
    covering_radius_sq,
    exact_solve,
    iter_subset_radii,
    subset_count,
)
from .reduction import Border, Core, KCenterInstance, Label, Secondary, build, label_str

DEFAULT_SUBSET_BUDGET = 10**6


@dataclass
class Witness:
    first: str
    second: str
    sq_distance: Fraction
    relation: str  # the relation that was required, e.g. "< (2r)^2"
    threshold_sq: Fraction

    def to_json(self) -> dict:
        return {
            "pair": [self.first, self.second],
            "sq_distance": rational_to_str(self.sq_distance),
            "required": self.relation,
            "threshold_sq": rational_to_str(self.threshold_sq),
        }

    def __str__(self):
        return (f"{self.first} vs {self.second}: dist^2 = {rational_to_str(self.sq_distance)}, "
                f"required {self.relation} = {rational_to_str(self.threshold_sq)}")


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int = 0
    detail: str = ""
    witness: Optional[Witness] = None
    skipped: bool = False

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "checked": self.checked}
        if self.skipped:
            out["skipped"] = True
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


@dataclass
class VerificationReport:
    instance: str = ""
    checks: List[CheckResult] = field(default_factory=list)
    verdicts: Dict[str, str] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def get(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(
            instance=self.instance or other.instance,
            checks=self.checks + other.checks,
            verdicts={**self.verdicts, **other.verdicts},
            timings={**self.timings, **other.timings},
        )

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "verdicts": self.verdicts,
            "timings": self.timings,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    def to_text(self) -> str:
        lines = [f"instance: {self.instance}" if self.instance else "instance: <unnamed>"]
        for c in self.checks:
            status = "SKIP" if c.skipped else ("PASS" if c.passed else "FAIL")
            line = f"  [{status}] {c.name} ({c.checked} checked)"
            if c.detail:
                line += f": {c.detail}"
            lines.append(line)
            if c.witness is not None:
                lines.append(f"         witness: {c.witness}")
        for key, value in self.verdicts.items():
            lines.append(f"  {key}: {value}")
        lines.append("RESULT: " + ("all checks passed" if self.passed else
                                   f"{len(self.failures())} check(s) failed"))
        return "\n".join(lines)


class _Scan:
    """Accumulates one named check over many pairwise comparisons."""

    def __init__(self, name: str):
        self.result = CheckResult(name, True)

    def require(self, kc, i, j, relation, threshold_sq, p=None, q=None):
        """Record one comparison; ``relation`` is one of "<", ">=", "=="."""
        p = kc.points[i] if p is None else p
        q = kc.points[j] if q is None else q
        value = squared_distance(p, q)
        ok = {"<": value < threshold_sq, ">=": value >= threshold_sq,
              "==": value == threshold_sq}[relation]
        self.result.checked += 1
        if not ok and self.result.passed:
            self.result.passed = False
            first = label_str(kc.labels[i]) if i is not None else _anchor_name(kc.labels[j])
            self.result.witness = Witness(first, label_str(kc.labels[j]), value, relation,
                                          threshold_sq)
        return ok


def _anchor_name(label: Label) -> str:
    return f"a={list(label.a)}"


def verify_lemmas(kc: KCenterInstance, name: str = "") -> VerificationReport:
    """Exhaustively check the separation lemmas on a reduced point set."""
    start = time.perf_counter()
    params = kc.params
    r, eps = params.r, params.epsilon
    gap_sq = params.gap_threshold_sq
    two_r_sq = params.threshold_sq
    anchor_sq = (r * (1 + eps)) ** 2

    borders: Dict[tuple, Dict[tuple, int]] = {}
    cores: Dict[tuple, List[int]] = {}
    secondaries: Dict[tuple, List[int]] = {}
    for j, label in enumerate(kc.labels):
        if isinstance(label, Border):
            borders.setdefault(label.a, {})[(label.axis, label.sign)] = j
            cores.setdefault(label.a, [])
        elif isinstance(label, Core):
            cores.setdefault(label.a, []).append(j)
        elif isinstance(label, Secondary):
            secondaries.setdefault((label.a, label.a2), []).append(j)

    checks = []

    structure = CheckResult("point-count", True)
    variables = set(borders)
    expected_edges = {(a, csp_mod.shift(a, axis)) for a in variables for axis in range(1, kc.d + 1)
                      if csp_mod.shift(a, axis) in variables}
    problems = []
    for a in variables:
        if set(borders[a]) != {(axis, s) for axis in range(1, kc.d + 1) for s in (1, -1)}:
            problems.append(f"variable {list(a)} lacks some of its {2 * kc.d} border points")
    if set(cores) != variables:
        problems.append("core points attached to unknown variables")
    if set(secondaries) != expected_edges:
        problems.append("secondary runs do not match the grid edges between variables")
    for pair, idx in secondaries.items():
        if sorted(kc.labels[j].ell for j in idx) != list(range(1, params.delta + 1)):
            problems.append(f"secondary run {pair} is not indexed 1..{params.delta}")
    n_expected = (len(variables) * 2 * kc.d + sum(len(v) for v in cores.values())
                  + params.delta * len(expected_edges))
    if n_expected != len(kc) or kc.k != len(variables):
        problems.append(f"n={len(kc)}, k={kc.k} but expected n={n_expected}, k={len(variables)}")
    structure.checked = len(kc)
    structure.passed = not problems
    structure.detail = "; ".join(problems) or (
        f"n = {len(variables)}*2*{kc.d} + {sum(len(v) for v in cores.values())}"
        f" + {params.delta}*{len(expected_edges)} = {len(kc)}")
    checks.append(structure)

    scan = _Scan("border-gap")
    for a, by_dir in borders.items():
        for axis in range(1, kc.d + 1):
            if (axis, 1) in by_dir and (axis, -1) in by_dir:
                scan.require(kc, by_dir[(axis, 1)], by_dir[(axis, -1)], "==", gap_sq)
    checks.append(scan.result)

    scan = _Scan("core-diameter")
    for a, idx in cores.items():
        for s, i in enumerate(idx):
            for j in idx[s + 1:]:
                scan.require(kc, i, j, "<", r * r)
    checks.append(scan.result)

    scan = _Scan("core-border")
    for a, idx in cores.items():
        for i in idx:
            for j in borders.get(a, {}).values():
                scan.require(kc, i, j, "<", two_r_sq)
    checks.append(scan.result)

    scan = _Scan("anchor")
    for a, by_dir in borders.items():
        at = tuple(Fraction(c) for c in a)
        for j in by_dir.values():
            scan.require(kc, None, j, "==", anchor_sq, p=at)
    checks.append(scan.result)

    scan = _Scan("isolation")
    for a, by_dir in borders.items():
        for (axis, sign), b in by_dir.items():
            neighbour = csp_mod.shift(a, axis, sign)
            run = (a, neighbour) if sign > 0 else (neighbour, a)
            for w, label in enumerate(kc.labels):
                if isinstance(label, (Border, Core)):
                    allowed = label.a == a
                else:
                    allowed = isinstance(label, Secondary) and (label.a, label.a2) == run
                if not allowed:
                    scan.require(kc, b, w, ">=", gap_sq)
    checks.append(scan.result)

    switch = _Scan("switch")
    far = _Scan("far-core")
    for (a, a2), idx in secondaries.items():
        for s in idx:
            label = kc.labels[s]
            i = label.axis - 1
            for c in cores.get(a, []):
                x = kc.labels[c].x
                switch.require(kc, c, s, "<" if label.ell <= x[i] else ">=",
                               two_r_sq if label.ell <= x[i] else gap_sq)
            for c in cores.get(a2, []):
                y = kc.labels[c].x
                switch.require(kc, c, s, "<" if label.ell > y[i] else ">=",
                               two_r_sq if label.ell > y[i] else gap_sq)
            for other, idx_other in cores.items():
                if other in (a, a2):
                    continue
                for c in idx_other:
                    far.require(kc, c, s, ">=", gap_sq)
    checks.append(switch.result)
    checks.append(far.result)

    return VerificationReport(instance=name, checks=checks,
                              timings={"lemmas": time.perf_counter() - start})


def centers_from_assignment(csp: GeqCspInstance, kc: KCenterInstance, f: Assignment) -> tuple:
    """Indices of the core points selected by a satisfying assignment."""
    index = kc.index()
    chosen = []
    for a in csp.variables:
        if a not in f:
            raise ValueError(f"assignment misses variable {a}")
        j = index.get(Core(tuple(a), tuple(f[a])))
        if j is None:
            raise ValueError(f"no core point for {a} -> {f[a]}: value outside its relation")
        chosen.append(j)
    if not csp_mod.is_satisfying(csp, f):
        raise ValueError("assignment violates a binary constraint")
    return tuple(sorted(chosen))


def decode_assignment(
    csp: GeqCspInstance, kc: KCenterInstance, centers: Sequence[int]
) -> Optional[Assignment]:
    """Read an assignment off a centre set holding exactly one core point per variable."""
    if len(centers) != len(csp.variables):
        return None
    f: Assignment = {}
    for j in centers:
        label = kc.labels[j]
        if not isinstance(label, Core) or label.a in f:
            return None
        f[label.a] = label.x
    if set(f) != set(csp.variables):
        return None
    return {a: f[a] for a in csp.variables}


def _core_groups(kc: KCenterInstance, variables) -> np.ndarray:
    position = {a: t for t, a in enumerate(variables)}
    return np.array([position[label.a] if isinstance(label, Core) else -1
                     for label in kc.labels], dtype=np.intp)


def scan_all_subsets(kc: KCenterInstance, variables, budget: int = DEFAULT_SUBSET_BUDGET) -> dict:
    """One pass over every size-k subset.

    Counts subsets at or above the gap threshold, subsets below ``(2r)^2``,
    and subsets under the gap threshold that are not one-core-per-variable.
    """
    groups = _core_groups(kc, variables)
    k = kc.k
    target = np.arange(k)
    total = above = below = 0
    bad_structure = None
    for combos, radii, scale in iter_subset_radii(kc, k, budget):
        s2 = scale * scale
        gap = kc.params.gap_threshold_sq * s2
        low = kc.params.threshold_sq * s2
        # thresholds are integers once scaled by the common denominator
        gap_int, low_int = int(gap), int(low)
        exact = gap.denominator == 1 and low.denominator == 1
        if exact:
            at_or_above = radii >= gap_int
            below_low = radii < low_int
        else:
            at_or_above = np.array([Fraction(int(v), s2) >= kc.params.gap_threshold_sq for v in radii])
            below_low = np.array([Fraction(int(v), s2) < kc.params.threshold_sq for v in radii])
        total += len(radii)
        above += int(at_or_above.sum())
        below += int(below_low.sum())
        small = ~at_or_above
        if small.any() and bad_structure is None:
            g = groups[combos[small]]
            ok = (np.sort(g, axis=1) == target).all(axis=1)
            if not ok.all():
                bad_structure = tuple(int(c) for c in combos[small][int(np.argmin(ok))])
    return {"total": total, "at_or_above_gap": above, "below_2r": below,
            "bad_structure": bad_structure}


def verify_gap(
    csp: GeqCspInstance,
    name: str = "",
    budget: int = DEFAULT_BUDGET,
    exhaustive: bool = False,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
) -> VerificationReport:
    """Check the completeness or soundness direction, whichever applies."""
    timings = {}
    t0 = time.perf_counter()
    f = csp_mod.solve(csp)
    timings["csp_solve"] = time.perf_counter() - t0
    kc = build(csp)
    params = kc.params
    report = VerificationReport(instance=name, timings=timings)
    report.verdicts["csp"] = "satisfiable" if f is not None else "unsatisfiable"

    t0 = time.perf_counter()
    opt_set, opt_sq = exact_solve(kc, kc.k, budget)
    timings["exact_solve"] = time.perf_counter() - t0
    verdict = classify(kc, opt_sq)
    report.verdicts["gap"] = verdict.value
    report.verdicts["opt_sq"] = rational_to_str(opt_sq)
    expected = GapVerdict.BELOW_2R if f is not None else GapVerdict.AT_LEAST_2R_EPS
    report.checks.append(CheckResult(
        "gap-verdict", verdict is expected, 1,
        f"OPT^2 = {rational_to_str(opt_sq)} -> {verdict.value}, expected {expected.value}"))

    if f is not None:
        centers = centers_from_assignment(csp, kc, f)
        cov = covering_radius_sq(kc, centers)
        report.checks.append(CheckResult(
            "completeness-assignment", cov < params.threshold_sq, 1,
            f"OPT(F)^2 = {rational_to_str(cov)} vs (2r)^2 = {rational_to_str(params.threshold_sq)}"))
        report.checks.append(CheckResult(
            "completeness-optimum", opt_sq < params.threshold_sq, 1,
            f"OPT^2 = {rational_to_str(opt_sq)} vs (2r)^2 = {rational_to_str(params.threshold_sq)}"))
        decoded = decode_assignment(csp, kc, opt_set)
        ok = decoded is not None and csp_mod.is_satisfying(csp, decoded)
        report.checks.append(CheckResult(
            "decode-optimum", ok, 1,
            "optimal centres decode to a satisfying assignment" if ok
            else "optimal centres are not one satisfying core per variable"))
    else:
        report.checks.append(CheckResult(
            "soundness-optimum", opt_sq >= params.gap_threshold_sq, 1,
            f"OPT^2 = {rational_to_str(opt_sq)} vs (2r(1+eps))^2 = "
            f"{rational_to_str(params.gap_threshold_sq)}"))

    total = subset_count(kc, kc.k)
    if exhaustive and total <= subset_budget:
        t0 = time.perf_counter()
        scan = scan_all_subsets(kc, list(csp.variables), subset_budget)
        timings["subset_scan"] = time.perf_counter() - t0
        if f is None:
            report.checks.append(CheckResult(
                "soundness-all-subsets", scan["at_or_above_gap"] == scan["total"], scan["total"],
                f"{scan['at_or_above_gap']}/{scan['total']} subsets >= threshold"))
        bad = scan["bad_structure"]
        report.checks.append(CheckResult(
            "structure-below-gap", bad is None, scan["total"],
            "every subset below the gap threshold is one core per variable" if bad is None
            else "subset below the gap threshold with another shape: "
                 + ", ".join(label_str(kc.labels[j]) for j in bad)))
    elif exhaustive:
        report.checks.append(CheckResult(
            "soundness-all-subsets", True, 0,
            f"C(n,k) = {total} exceeds subset budget {subset_budget}; only the optimum was checked",
            skipped=True))
    return report


def verify(csp: GeqCspInstance, name: str = "", **kwargs) -> VerificationReport:
    """Lemma scan plus gap check for one CSP."""
    return verify_lemmas(build(csp), name).merge(verify_gap(csp, name, **kwargs))


def perturb(kc: KCenterInstance, index: int, axis: int, amount: Fraction) -> KCenterInstance:
    """Copy of ``kc`` with one coordinate of one point shifted (axis is 1-based)."""
    points = list(kc.points)
    p = list(points[index])
    p[axis - 1] += amount
    points[index] = tuple(p)
    return KCenterInstance(kc.d, kc.k, kc.params, kc.labels, tuple(points))
