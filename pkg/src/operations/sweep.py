"""
S-graph Workbench - Verification Sweeps
Expands a sweep configuration into independent work units, runs them
(optionally in a process pool) and assembles a deterministic report.
"""

import collections
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from src import __version__
from src.core.exactmath import InputError, format_rational
from src.core.hash_utils import digest_json, fingerprint, format_duration
from src.core.orders import (
    PROFILES, CoeffOrder, NumericCoeffs, all_orders, identity_order, sample_coeffs, seeded_generator
)
from src.core.report import CheckReport
from src.fusion.checks import (
    check_cardinality, check_edge_relation, check_fusion_certificates, check_label_invariant,
    s_property, theta_shift_witnesses
)
from src.fusion.separation import (
    SeparationError, order_equivalent_pair, ranking_invariance, separating_point
)
from src.fusion.sgraph import build_sgraph, sorted_zset
from src.operations.counting import KNOWN_FUNCTION_COUNTS, count_summary
from src.polytope.system import Variant, build_system, contains
from src.polytope.theorem import (
    check_convexity, check_remarks, check_variants, check_zset_in_system, format_point, verify_theorem
)
from src.tableau.profile import evaluate_diffs, evaluate_rows, order_relations, validate_profile
from src.tableau.reconstruct import (
    Incomplete, NotRepresentable, check_vanishing_coordinate, deconstruct, intermediates,
    rebuild_heights, replay, strongly_extremal_column
)
from src.core.config import get_config
from src.utils.logger import get_logger
from src.core.i18n import _


ALL_CHECKS = (
    "theorem", "fusion", "sproperty", "variants", "reconstruction",
    "counts", "remarks", "separation", "ranking", "convexity",
)

# Checks sampled only under pairwise distinct coefficients
GENERIC_ONLY = ("sproperty", "separation", "ranking")
# Checks that run once per n rather than per order and sample
PER_N = ("counts", "remarks")
# Sampling profiles whose stats are kept apart from the generic ones
DEGENERATE_PROFILES = ("ties", "zeros")

RANKING_PAIRS_PER_UNIT = 20
CONVEXITY_SAMPLES_PER_UNIT = 10
SEED_MASK = (1 << 64) - 1


class SweepConfigError(InputError):
    """Raised for invalid sweep configurations."""
    pass


@dataclass
class SweepConfig:
    """What to run: sizes, samples per order, profiles and checks."""
    n_values: List[int]
    trials_per_order: int = 3
    seed: int = 42
    profiles: List[str] = field(default_factory=lambda: ["generic"])
    checks: List[str] = field(default_factory=lambda: list(ALL_CHECKS))
    workers: int = 1
    include_timing: bool = False
    order: Optional[CoeffOrder] = None
    coeffs: Optional[NumericCoeffs] = None
    max_steps: Optional[int] = None

    def validate(self) -> None:
        """
        Raises:
            SweepConfigError: On any invalid field
        """
        if not self.n_values:
            raise SweepConfigError("n_values must not be empty")
        if any(n < 1 for n in self.n_values):
            raise SweepConfigError(f"n_values entries must be >= 1, got {self.n_values}")
        limit = get_config().max_n
        if any(n > limit for n in self.n_values):
            raise SweepConfigError(f"n_values exceed the configured limit max_n={limit}")
        if self.trials_per_order < 1:
            raise SweepConfigError("trials_per_order must be >= 1")
        unknown = [p for p in self.profiles if p not in PROFILES]
        if unknown or not self.profiles:
            raise SweepConfigError(f"Unknown profiles: {unknown or 'none given'}")
        unknown = [c for c in self.checks if c not in ALL_CHECKS]
        if unknown:
            raise SweepConfigError(f"Unknown checks: {unknown}")
        if self.workers < 1:
            raise SweepConfigError("workers must be >= 1")
        if self.order is not None and self.order.n not in self.n_values:
            raise SweepConfigError(f"Order {self.order} does not match n_values {self.n_values}")
        if self.coeffs is not None and (self.order is None or self.coeffs.n != self.order.n):
            raise SweepConfigError("Explicit coefficients need an order of the same length")

    def to_dict(self) -> Dict[str, Any]:
        payload = {
            "n_values": list(self.n_values),
            "trials_per_order": self.trials_per_order,
            "seed": self.seed,
            "profiles": list(self.profiles),
            "checks": [c for c in ALL_CHECKS if c in self.checks],
        }
        if self.order is not None:
            payload["order"] = str(self.order)
        if self.coeffs is not None:
            payload["coeffs"] = str(self.coeffs)
        if self.max_steps is not None:
            payload["max_steps"] = self.max_steps
        return payload


@dataclass(frozen=True)
class WorkUnit:
    """One independent piece of a sweep; all fields are reproduction inputs."""
    check: str
    n: int
    order: Tuple[int, ...] = ()
    profile: str = ""
    trial: int = 0
    seed: int = 0
    coeffs: Tuple[str, ...] = ()
    max_steps: Optional[int] = None

    @property
    def key(self) -> Tuple:
        return (ALL_CHECKS.index(self.check), self.n, self.order, self.profile, self.trial)

    def coefficient_values(self) -> Optional[NumericCoeffs]:
        if self.coeffs:
            return NumericCoeffs.of(self.coeffs)
        if not self.order:
            return None
        return sample_coeffs(CoeffOrder(self.order), self.seed, self.profile)

    def reproduction(self) -> Dict[str, Any]:
        payload = {"check": self.check, "n": self.n}
        if self.order:
            payload["order"] = ",".join(str(s) for s in self.order)
            payload["profile"] = self.profile
            payload["seed"] = self.seed
            c = self.coefficient_values()
            payload["coeffs"] = str(c)
        payload["unit"] = fingerprint(payload)
        return payload


@dataclass
class UnitResult:
    unit: WorkUnit
    counterexamples: List[Dict[str, Any]]
    stats: Dict[str, int]
    elapsed: float = 0.0


class ProgressTracker:
    """Finished units per check, reported as (current, total, message, eta)."""

    def __init__(self, callback: Optional[Callable] = None, interval: float = 0.5):
        """
        Args:
            callback: Called with (current, total, message, eta)
            interval: Minimum seconds between unforced reports
        """
        self.callback = callback
        self.interval = interval
        self.totals: collections.Counter = collections.Counter()
        self.done: collections.Counter = collections.Counter()
        self._started = time.monotonic()
        self._last_report = float("-inf")

    def set_units(self, units: List["WorkUnit"]) -> None:
        self.totals = collections.Counter(unit.check for unit in units)
        self.done.clear()
        self._started = time.monotonic()

    @property
    def current(self) -> int:
        return sum(self.done.values())

    @property
    def total(self) -> int:
        return sum(self.totals.values())

    def finish(self, check: str) -> None:
        self.done[check] += 1
        message = _("progress_check", check=check, current=self.done[check], total=self.totals[check])
        self._report(message, force=False)

    def flush(self) -> None:
        self._report("", force=True)

    def eta(self) -> str:
        """Remaining time at the average rate so far; empty when unknown or done."""
        current, remaining = self.current, self.total - self.current
        if current == 0 or remaining <= 0:
            return ""
        per_unit = (time.monotonic() - self._started) / current
        return _("eta_left", time=format_duration(per_unit * remaining))

    def _report(self, message: str, force: bool) -> None:
        now = time.monotonic()
        if self.callback is None or not (force or now - self._last_report >= self.interval):
            return
        self._last_report = now
        self.callback(self.current, self.total, message, self.eta())


@dataclass
class VerificationReport:
    """
    Assembled sweep outcome; status is fail iff counterexamples exist.

    profile_statuses splits the sampled checks by coefficient profile
    (generic, ties, zeros or explicit).
    """
    config: Dict[str, Any]
    statuses: Dict[str, str]
    counterexamples: List[Dict[str, Any]]
    stats: Dict[str, Dict[str, int]]
    units: Dict[str, int]
    profile_statuses: Dict[str, Dict[str, str]] = field(default_factory=dict)
    timing: Optional[Dict[str, float]] = None
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(status != "fail" for status in self.statuses.values())

    def body(self) -> Dict[str, Any]:
        payload = {
            "config": self.config,
            "statuses": self.statuses,
            "counterexamples": self.counterexamples,
            "stats": self.stats,
            "units": self.units,
            "profile_statuses": self.profile_statuses,
            "version": self.version,
        }
        if self.timing is not None:
            payload["timing"] = self.timing
        return payload

    def to_dict(self) -> Dict[str, Any]:
        payload = self.body()
        payload["digest"] = digest_json(self.body())
        return payload


def _unit_seed(base: int, trial: int) -> int:
    return (base + trial) & SEED_MASK


def _stat_key(key: str, unit: WorkUnit) -> str:
    """Stat name scoped by n, with the profile appended for ties and zeros."""
    scoped = f"{key}_n{unit.n}"
    return f"{scoped}_{unit.profile}" if unit.profile in DEGENERATE_PROFILES else scoped


def build_units(cfg: SweepConfig) -> List[WorkUnit]:
    """Expand a configuration into work units, sorted by key."""
    units: List[WorkUnit] = []
    for check in ALL_CHECKS:
        if check not in cfg.checks:
            continue
        for n in sorted(set(cfg.n_values)):
            if check in PER_N:
                if check == "remarks" and n < 2:
                    continue
                units.append(WorkUnit(check=check, n=n))
                continue
            orders = [cfg.order] if cfg.order is not None else list(all_orders(n))
            if cfg.coeffs is not None:
                for order in orders:
                    units.append(WorkUnit(check=check, n=n, order=order.seq, profile="explicit",
                                          coeffs=tuple(format_rational(v) for v in cfg.coeffs.values),
                                          max_steps=cfg.max_steps))
                continue
            profiles = ["generic"] if check in GENERIC_ONLY else cfg.profiles
            for order in orders:
                for profile in profiles:
                    if profile not in cfg.profiles:
                        continue
                    for trial in range(cfg.trials_per_order):
                        units.append(WorkUnit(check=check, n=n, order=order.seq, profile=profile,
                                              trial=trial, seed=_unit_seed(cfg.seed, trial),
                                              max_steps=cfg.max_steps))
    return sorted(units, key=lambda u: u.key)


def _collect(report: CheckReport, out: List[Dict[str, Any]]) -> None:
    for violation in report.violations:
        out.append({"report": report.name, **violation})


def _run_theorem(unit: WorkUnit, order: CoeffOrder, c: NumericCoeffs, stats: Dict[str, int]) -> List[Dict]:
    found: List[Dict] = []
    report = verify_theorem(order, c)
    stats["vertices"] = len(report.vertices)
    if not report.passed:
        found.append({"report": "theorem", **report.to_dict()})
    _collect(check_zset_in_system(order, c), found)
    return found


def _run_fusion(unit: WorkUnit, order: CoeffOrder, c: NumericCoeffs, stats: Dict[str, int]) -> List[Dict]:
    found: List[Dict] = []
    g = build_sgraph(order)
    for report in (check_cardinality(g), check_edge_relation(g), check_label_invariant(g),
                   check_fusion_certificates(g, c)):
        _collect(report, found)
    stats["edges"] = len(g.edges)
    return found


def _run_sproperty(unit: WorkUnit, order: CoeffOrder, c: NumericCoeffs, stats: Dict[str, int]) -> List[Dict]:
    found: List[Dict] = []
    report = s_property(build_sgraph(order), c)
    stats["pairs"] = report.details.get("pairs", 0)
    _collect(report, found)
    return found


def _run_variants(unit: WorkUnit, order: CoeffOrder, c: NumericCoeffs, stats: Dict[str, int]) -> List[Dict]:
    found: List[Dict] = []
    _collect(check_variants(order, c), found)
    return found


def _run_reconstruction(unit: WorkUnit, order: CoeffOrder, c: NumericCoeffs, stats: Dict[str, int]) -> List[Dict]:
    found: List[Dict] = []
    n = order.n
    system = build_system(order, c, Variant.THREE)
    for z in sorted_zset(build_sgraph(order)):
        where = {"report": "reconstruction", "function": str(z)}
        log = deconstruct(z, unit.max_steps)
        if isinstance(log, NotRepresentable):
            found.append({**where, "kind": "not_representable", "reason": log.reason, "step": log.step})
            continue
        stats["deconstructed"] = stats.get("deconstructed", 0) + 1
        if replay(log, n) != z:
            found.append({**where, "kind": "replay_mismatch", "log": log.to_list()})
        for step, f in enumerate(intermediates(z, log)):
            if f.is_zero:
                continue
            k = strongly_extremal_column(f)
            if not isinstance(k, int):
                found.append({**where, "kind": "extremal_not_unique", "step": step, "intermediate": str(f)})
            elif not check_vanishing_coordinate(f, k):
                found.append({**where, "kind": "coordinate_not_zero", "step": step, "intermediate": str(f)})
            point = f.evaluate(c.values)
            if not contains(system, point):
                found.append({**where, "kind": "intermediate_outside_k", "step": step,
                              "intermediate": str(f), "point": format_point(point)})

        stats["rebuild_attempted"] = stats.get("rebuild_attempted", 0) + 1
        h = rebuild_heights(log, z)
        if isinstance(h, Incomplete):
            if n <= 2:
                found.append({**where, "kind": "rebuild_incomplete", "reason": h.reason,
                              "partial": str(h.partial), "blocking_move": h.blocking_move})
            continue
        stats["rebuild_succeeded"] = stats.get("rebuild_succeeded", 0) + 1
        if evaluate_rows(h) != z or validate_profile(h):
            found.append({**where, "kind": "rebuild_mismatch", "heights": str(h)})
        elif evaluate_diffs(h) != z:
            found.append({**where, "kind": "evaluators_disagree", "heights": str(h)})
        if order_relations(h).embeds_in(order):
            stats["relations_embed"] = stats.get("relations_embed", 0) + 1
    return found


def _run_separation(unit: WorkUnit, order: CoeffOrder, c: NumericCoeffs, stats: Dict[str, int]) -> List[Dict]:
    found: List[Dict] = []
    g = build_sgraph(order)
    for vertex in g.vertices:
        try:
            separating_point(g, vertex.id, c, mode="lp")
            stats["separated"] = stats.get("separated", 0) + 1
        except SeparationError as e:
            found.append({"report": "separation", "vertex": vertex.id, "dump": e.dump})
        try:
            separating_point(g, vertex.id, c, mode="recursive")
            stats["recursive_separated"] = stats.get("recursive_separated", 0) + 1
        except SeparationError:
            stats["recursive_failed"] = stats.get("recursive_failed", 0) + 1
    return found


def _run_ranking(unit: WorkUnit, order: CoeffOrder, c: NumericCoeffs, stats: Dict[str, int]) -> List[Dict]:
    found: List[Dict] = []
    g = build_sgraph(order)
    rng = seeded_generator(unit.seed, order, "generic")
    for _pair in range(RANKING_PAIRS_PER_UNIT):
        b1, b2 = order_equivalent_pair(order.n, rng)
        same_top, same_ranking = ranking_invariance(g, c, b1, b2)
        stats["pairs"] = stats.get("pairs", 0) + 1
        if same_ranking:
            stats["full_ranking_agree"] = stats.get("full_ranking_agree", 0) + 1
        if not same_top:
            found.append({"report": "ranking", "b1": str(b1), "b2": str(b2)})
    return found


def _run_convexity(unit: WorkUnit, order: CoeffOrder, c: NumericCoeffs, stats: Dict[str, int]) -> List[Dict]:
    found: List[Dict] = []
    rng = seeded_generator(unit.seed, order, unit.profile if unit.profile in PROFILES else "generic")
    report = check_convexity(order, c, rng, CONVEXITY_SAMPLES_PER_UNIT)
    stats["samples"] = report.details["samples"]
    _collect(report, found)
    return found


def _run_counts(unit: WorkUnit, stats: Dict[str, int]) -> List[Dict]:
    found: List[Dict] = []
    summary = count_summary(unit.n)
    for key in ("functions", "graphs", "orders"):
        stats[f"{key}_n{unit.n}"] = summary[key]
    expected = KNOWN_FUNCTION_COUNTS.get(unit.n)
    if expected is not None and summary["functions"] != expected:
        found.append({"report": "counts", "kind": "functions", "expected": expected, "actual": summary["functions"]})
    if summary["graphs"] != summary["catalan"]:
        found.append({"report": "counts", "kind": "graphs", "expected": summary["catalan"], "actual": summary["graphs"]})
    if summary["per_order_min"] != summary["per_order_expected"] or summary["per_order_max"] != summary["per_order_expected"]:
        found.append({"report": "counts", "kind": "per_order", "expected": summary["per_order_expected"],
                      "min": summary["per_order_min"], "max": summary["per_order_max"]})
    return found


def _run_remarks(unit: WorkUnit, stats: Dict[str, int]) -> List[Dict]:
    found: List[Dict] = []
    witnesses = theta_shift_witnesses(build_sgraph(identity_order(unit.n)))
    stats["shift_witnesses"] = len(witnesses)
    if not witnesses:
        found.append({"report": "remarks", "kind": "shift_witness", "n": unit.n})
    if unit.n == 3:
        _collect(check_remarks(), found)
    return found


_SAMPLED = {
    "theorem": _run_theorem,
    "fusion": _run_fusion,
    "sproperty": _run_sproperty,
    "variants": _run_variants,
    "reconstruction": _run_reconstruction,
    "separation": _run_separation,
    "ranking": _run_ranking,
    "convexity": _run_convexity,
}

_PER_N = {
    "counts": _run_counts,
    "remarks": _run_remarks,
}


def execute_unit(unit: WorkUnit) -> UnitResult:
    """Run one unit; unexpected exceptions become counterexamples."""
    started = time.perf_counter()
    stats: Dict[str, int] = {}
    try:
        if unit.check in _PER_N:
            found = _PER_N[unit.check](unit, stats)
        else:
            order = CoeffOrder(unit.order)
            found = _SAMPLED[unit.check](unit, order, unit.coefficient_values(), stats)
    except InputError:
        raise
    except Exception as e:
        get_logger().error(f"unit {unit.check} n={unit.n} order={unit.order} raised {e!r}")
        found = [{"report": unit.check, "kind": "exception", "message": repr(e)}]
    reproduction = unit.reproduction()
    for counterexample in found:
        counterexample["inputs"] = reproduction
    return UnitResult(unit, found, stats, time.perf_counter() - started)


def run_sweep(cfg: SweepConfig, progress_callback: Optional[Callable] = None) -> VerificationReport:
    """
    Run every work unit of a configuration and assemble the report.

    Args:
        cfg: Validated or raw configuration
        progress_callback: Called as (current, total, message, eta)

    Returns:
        VerificationReport with units sorted by key

    Raises:
        SweepConfigError: If the configuration is invalid
    """
    cfg.validate()
    logger = get_logger()
    units = build_units(cfg)
    logger.operation_start(_("op_sweep"), f"n={cfg.n_values}", _("progress_units", current=0, total=len(units)))

    tracker = ProgressTracker(progress_callback)
    tracker.set_units(units)
    results: List[UnitResult] = []

    if cfg.workers > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as executor:
            futures = {executor.submit(execute_unit, unit): unit for unit in units}
            for future in as_completed(futures):
                results.append(future.result())
                tracker.finish(futures[future].check)
    else:
        for unit in units:
            results.append(execute_unit(unit))
            tracker.finish(unit.check)
    tracker.flush()

    results.sort(key=lambda r: r.unit.key)
    counterexamples: List[Dict[str, Any]] = []
    stats: Dict[str, Dict[str, int]] = {}
    unit_counts: Dict[str, int] = {}
    by_profile: Dict[str, Dict[str, str]] = {}
    timing: Dict[str, float] = {}
    for result in results:
        check, profile = result.unit.check, result.unit.profile
        unit_counts[check] = unit_counts.get(check, 0) + 1
        bucket = stats.setdefault(check, {})
        for key, value in result.stats.items():
            scoped = key if check in PER_N else _stat_key(key, result.unit)
            bucket[scoped] = bucket.get(scoped, 0) + value
        timing[check] = timing.get(check, 0.0) + result.elapsed
        if profile:
            verdicts = by_profile.setdefault(check, {})
            failed = verdicts.get(profile) == "fail" or bool(result.counterexamples)
            verdicts[profile] = "fail" if failed else "pass"
        for counterexample in result.counterexamples:
            counterexamples.append({"check": check, **counterexample})
            logger.counterexample(check, str(counterexample.get("kind", counterexample.get("report"))))

    statuses = {}
    for check in ALL_CHECKS:
        if unit_counts.get(check, 0) == 0:
            statuses[check] = "skipped"
        elif any(ce["check"] == check for ce in counterexamples):
            statuses[check] = "fail"
        else:
            statuses[check] = "pass"

    report = VerificationReport(
        config=cfg.to_dict(),
        statuses=statuses,
        counterexamples=counterexamples,
        stats=stats,
        units=unit_counts,
        profile_statuses=by_profile,
        timing={k: round(v, 3) for k, v in sorted(timing.items())} if cfg.include_timing else None,
    )
    logger.operation_end(_("op_sweep"), f"n={cfg.n_values}",
                         f"{len(counterexamples)} counterexamples", success=report.passed)
    return report
