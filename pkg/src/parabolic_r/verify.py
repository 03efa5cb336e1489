"""
Exhaustive and sampled agreement checks between the product formulas and the
recursion, plus the recursion's own consistency properties.

Every suite walks a list of work units (one per quotient, or per slice of
one), checks each ordered pair ``u <= v`` and merges the partial results in
unit order, so reports do not depend on ``jobs``.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .closed_form import (
    ClosedFormError,
    brenti_double,
    brenti_single,
    conjecture_formula,
    satisfies_increasing,
    triple_formula,
)
from .deodhar import DescentPolicy, RContext, XMode
from .perm import Permutation
from .polynomial import DualityDegreeError
from .quotient import (
    GeneratorSubset,
    ParabolicInterval,
    all_intervals,
    dominance_leq,
    enumerate_quotient,
)
from .statistics import make_context

__all__ = [
    "Mismatch", "VerificationReport", "FAMILIES", "MAX_LISTED_MISMATCHES",
    "verify_family", "verify_duality", "verify_descent_independence",
    "verify_branch_overlap", "conjecture_scan", "family_interval",
    "admissible_indices",
]

MAX_LISTED_MISMATCHES = 100
FAMILIES = ("single", "double", "triple", "conjecture")


@dataclass
class Mismatch:
    u: str
    v: str
    J: list[int]
    excluded: str | None
    x: str
    expected: list[int] | None
    actual: list[int] | None
    note: str = ""

    def sort_key(self):
        return (self.excluded or "", self.J, self.v, self.u, self.x)

    def as_dict(self) -> dict:
        return {
            "u": self.u, "v": self.v, "J": self.J, "excluded": self.excluded,
            "x": self.x, "expected": self.expected, "actual": self.actual,
            "note": self.note,
        }


@dataclass
class VerificationReport:
    suite: str
    n: int
    interval: str | None
    J: list[int] | None = None
    family: str | None = None
    pairs_checked: int = 0
    skipped: int = 0
    skip_reasons: dict[str, int] = field(default_factory=dict)
    mismatches: list[Mismatch] = field(default_factory=list)
    mismatch_total: int = 0
    elapsed_seconds: float = 0.0
    sample: dict | None = None
    jobs: int = 1

    @property
    def passed(self) -> bool:
        return self.mismatch_total == 0

    @property
    def pairs_enumerated(self) -> int:
        return self.pairs_checked + self.skipped

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "family": self.family,
            "interval": self.interval,
            "J": self.J,
            "pairs_checked": self.pairs_checked,
            "skipped": self.skipped,
            "skip_reasons": dict(sorted(self.skip_reasons.items())),
            "mismatches": [m.as_dict() for m in self.mismatches],
            "mismatch_total": self.mismatch_total,
            "elapsed_seconds": round(self.elapsed_seconds, 3),
            "sample": self.sample,
            "jobs": self.jobs,
            "pass": self.passed,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def summary(self) -> str:
        what = self.suite if self.family in (None, self.suite) else f"{self.suite}/{self.family}"
        where = self.interval if self.J is None else "J={" + ",".join(map(str, self.J)) + "}"
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{verdict} {what} n={self.n} {where}: checked={self.pairs_checked} "
            f"skipped={self.skipped} mismatches={self.mismatch_total} "
            f"({self.elapsed_seconds:.2f}s)"
        )


# -- work units ---------------------------------------------------------------

@dataclass(frozen=True)
class _Unit:
    suite: str
    n: int
    J: GeneratorSubset
    interval: ParabolicInterval | None
    family: str | None = None
    i: int | None = None
    # either a slice of the v-list (start, step) or an explicit pair list
    v_slice: tuple[int, int] = (0, 1)
    pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] | None = None


@dataclass
class _Partial:
    checked: int = 0
    skipped: Counter = field(default_factory=Counter)
    mismatches: list[Mismatch] = field(default_factory=list)


# at most a couple of memo tables alive per process
_CONTEXTS: dict = {}


def _context(n, J, x=XMode.Q, policy=DescentPolicy.SMALLEST) -> RContext:
    key = (n, J, x, policy)
    ctx = _CONTEXTS.get(key)
    if ctx is None:
        if len(_CONTEXTS) >= 4:
            _CONTEXTS.clear()
        ctx = _CONTEXTS[key] = RContext(n, J, x, policy)
    return ctx


def _unit_pairs(unit: _Unit, out: _Partial):
    """Yield comparable ``(u, v)``; incomparable filtered pairs count as skipped."""
    if unit.pairs is not None:
        for ue, ve in unit.pairs:
            if dominance_leq(ue, ve):
                yield Permutation(ue), Permutation(ve)
            else:
                out.skipped["u not <= v"] += 1
        return
    quotient = enumerate_quotient(unit.n, unit.J)
    start, step = unit.v_slice
    for v in quotient[start::step]:
        for u in quotient:
            if dominance_leq(u.entries, v.entries):
                yield u, v


def _mismatch(unit, u, v, expected, actual, x=XMode.Q, note=""):
    return Mismatch(
        u=str(u), v=str(v), J=sorted(unit.J.included),
        excluded=unit.interval.label() if unit.interval else None,
        x=x.value,
        expected=None if expected is None else expected.to_json(),
        actual=None if actual is None else actual.to_json(),
        note=note,
    )


def _closed_value(family, u, v, unit):
    if family == "single":
        return brenti_single(u, v, unit.i)
    if family == "double":
        return brenti_double(u, v, unit.i)
    if family == "triple":
        return triple_formula(u, v, unit.i)
    return conjecture_formula(make_context(u, v, unit.interval))


def _run_family(unit: _Unit, out: _Partial) -> None:
    ctx = _context(unit.n, unit.J)
    for u, v in _unit_pairs(unit, out):
        if unit.family in ("triple", "conjecture") and not satisfies_increasing(v, unit.interval):
            out.skipped["v-condition fails"] += 1
            continue
        expected = ctx.r_poly(u, v)
        out.checked += 1
        try:
            actual = _closed_value(unit.family, u, v, unit)
        except ClosedFormError as exc:
            out.mismatches.append(_mismatch(unit, u, v, expected, None, note=str(exc)))
            continue
        if actual != expected:
            out.mismatches.append(_mismatch(unit, u, v, expected, actual))


def _run_duality(unit: _Unit, out: _Partial) -> None:
    ctx_q = _context(unit.n, unit.J, XMode.Q)
    ctx_m = _context(unit.n, unit.J, XMode.MINUS_ONE)
    for u, v in _unit_pairs(unit, out):
        out.checked += 1
        L = v.length() - u.length()
        rq = ctx_q.r_poly(u, v)
        rm = ctx_m.r_poly(u, v)
        try:
            lhs = rq.reverse(L)
        except DualityDegreeError as exc:
            out.mismatches.append(_mismatch(
                unit, u, v, rm, rq, XMode.MINUS_ONE, note=f"degree bound: {exc}"))
            continue
        rhs = rm.scale(-1 if L % 2 else 1)
        if lhs != rhs:
            out.mismatches.append(_mismatch(
                unit, u, v, rhs, lhs, XMode.MINUS_ONE,
                note="q^L R^q(1/q) != (-1)^L R^-1"))
        if not unit.J.included and rq != rm:
            out.mismatches.append(_mismatch(
                unit, u, v, rq, rm, XMode.MINUS_ONE, note="x=q and x=-1 differ at J={}"))


def _run_descent(unit: _Unit, out: _Partial) -> None:
    small = _context(unit.n, unit.J, XMode.Q, DescentPolicy.SMALLEST)
    large = _context(unit.n, unit.J, XMode.Q, DescentPolicy.LARGEST)
    for u, v in _unit_pairs(unit, out):
        out.checked += 1
        a = small.r_poly(u, v)
        b = large.r_poly(u, v)
        if a != b:
            out.mismatches.append(_mismatch(
                unit, u, v, a, b, note="smallest vs largest descent"))


def _run_overlap(unit: _Unit, out: _Partial) -> None:
    i = unit.i
    for u, v in _unit_pairs(unit, out):
        if u.position(i) != v.position(i):
            out.skipped["u^-1(i) != v^-1(i)"] += 1
            continue
        out.checked += 1
        plain = brenti_double(u, v, i, branch="plain")
        tilde = brenti_double(u, v, i, branch="tilde")
        if plain != tilde:
            out.mismatches.append(_mismatch(
                unit, u, v, plain, tilde, note="plain vs tilde branch"))


_RUNNERS = {
    "family": _run_family,
    "duality": _run_duality,
    "descent": _run_descent,
    "overlap": _run_overlap,
}


def _run_unit(unit: _Unit) -> _Partial:
    out = _Partial()
    _RUNNERS[unit.suite](unit, out)
    return out


def _execute(report: VerificationReport, units: list[_Unit], jobs: int) -> VerificationReport:
    t0 = time.perf_counter()
    _CONTEXTS.clear()
    if jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            partials = list(pool.map(_run_unit, units))
    else:
        partials = [_run_unit(u) for u in units]
    _CONTEXTS.clear()
    reasons: Counter = Counter()
    mismatches: list[Mismatch] = []
    for p in partials:
        report.pairs_checked += p.checked
        reasons.update(p.skipped)
        mismatches.extend(p.mismatches)
    mismatches.sort(key=Mismatch.sort_key)
    report.skip_reasons = dict(reasons)
    report.skipped = sum(reasons.values())
    report.mismatch_total = len(mismatches)
    report.mismatches = mismatches[:MAX_LISTED_MISMATCHES]
    report.elapsed_seconds = time.perf_counter() - t0
    report.jobs = jobs
    return report


def _split(unit_kwargs: dict, pieces: int) -> list[_Unit]:
    pieces = max(1, pieces)
    return [_Unit(**unit_kwargs, v_slice=(s, pieces)) for s in range(pieces)]


def _pair_tuple(pairs):
    return tuple(
        (Permutation.parse(u).entries if isinstance(u, str) else tuple(u),
         Permutation.parse(v).entries if isinstance(v, str) else tuple(v))
        for u, v in pairs
    )


# -- suites ---------------------------------------------------------------------

def family_interval(n: int, family: str, i: int) -> ParabolicInterval:
    width = {"single": 0, "double": 1, "triple": 2}[family]
    return ParabolicInterval(n, i - width, i)


def admissible_indices(n: int, family: str) -> list[int]:
    lo = {"single": 1, "double": 2, "triple": 3}[family]
    return list(range(lo, n))


def verify_family(
    n: int,
    family: str,
    i: int | None = None,
    k: int | None = None,
    pairs=None,
    jobs: int = 1,
    max_quotient: int | None = None,
) -> VerificationReport:
    """
    Closed form vs recursion (``x = q``) on every comparable pair.

    ``family`` is one of single/double/triple/conjecture.  For the first three
    ``i`` selects the quotient (all admissible ``i`` when omitted); for
    ``conjecture`` pass both ``k`` and ``i``.  ``pairs`` restricts the run to
    the given ``(u, v)`` list.  ``max_quotient`` drops quotients larger than
    the bound when iterating over all ``i``.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if n < 2:
        raise ValueError("need n >= 2")
    if family == "conjecture":
        if i is None or k is None:
            raise ValueError("the conjecture family needs both k and i")
        targets = [(i, ParabolicInterval(n, k, i))]
    else:
        idx = [i] if i is not None else admissible_indices(n, family)
        if not idx:
            raise ValueError(f"no admissible i for family {family!r} in S_{n}")
        targets = [(ii, family_interval(n, family, ii)) for ii in idx]
    if max_quotient is not None and i is None:
        targets = [
            (ii, iv) for ii, iv in targets
            if len(enumerate_quotient(n, iv.generators())) <= max_quotient
        ]
    pieces = jobs if len(targets) < jobs and pairs is None else 1
    units = []
    for ii, iv in targets:
        kw = dict(suite="family", n=n, J=iv.generators(), interval=iv,
                  family=family, i=ii)
        if pairs is not None:
            units.append(_Unit(**kw, pairs=_pair_tuple(pairs)))
        else:
            units += _split(kw, pieces)
    label = targets[0][1].label() if len(targets) == 1 else "all"
    report = VerificationReport("family", n, label, family=family)
    return _execute(report, units, jobs)


def _targets_for_J(n: int, J) -> list[tuple[GeneratorSubset, ParabolicInterval | None]]:
    if J is None:
        return [(iv.generators(), iv) for iv in all_intervals(n)]
    if isinstance(J, ParabolicInterval):
        return [(J.generators(), J)]
    return [(J, J.as_interval())]


def _J_report(suite: str, n: int, targets) -> VerificationReport:
    if len(targets) == 1:
        Jset, iv = targets[0]
        return VerificationReport(
            suite, n, iv.label() if iv else None, J=sorted(Jset.included))
    return VerificationReport(suite, n, "all")


def verify_duality(n: int, J=None, jobs: int = 1) -> VerificationReport:
    """
    ``q^L R^{J,q}(1/q) == (-1)^L R^{J,-1}`` with ``L = l(v) - l(u)``.

    ``J=None`` runs every interval quotient of ``S_n``.  When ``J`` is empty
    the two tables must also coincide.
    """
    targets = _targets_for_J(n, J)
    pieces = jobs if len(targets) < jobs else 1
    units = []
    for Jset, iv in targets:
        units += _split(dict(suite="duality", n=n, J=Jset, interval=iv), pieces)
    return _execute(_J_report("duality", n, targets), units, jobs)


def verify_descent_independence(n: int, J=None, jobs: int = 1) -> VerificationReport:
    """SMALLEST and LARGEST descent choices give identical tables."""
    targets = _targets_for_J(n, J)
    if J is None and n >= 2 and not any(not t[0].included for t in targets):
        targets.append((GeneratorSubset.empty(n), None))
    if J is None and n == 1:
        targets = [(GeneratorSubset.empty(1), None)]
    pieces = jobs if len(targets) < jobs else 1
    units = []
    for Jset, iv in targets:
        units += _split(dict(suite="descent", n=n, J=Jset, interval=iv), pieces)
    return _execute(_J_report("descent", n, targets), units, jobs)


def verify_branch_overlap(n: int, i: int | None = None, jobs: int = 1) -> VerificationReport:
    """Both branches of the double-quotient formula agree where they overlap."""
    idx = [i] if i is not None else admissible_indices(n, "double")
    if not idx or any(ii < 2 for ii in idx):
        raise ValueError("branch overlap needs 2 <= i <= n-1")
    units = []
    for ii in idx:
        iv = ParabolicInterval(n, ii - 1, ii)
        units.append(_Unit("overlap", n, iv.generators(), iv, i=ii))
    label = units[0].interval.label() if len(units) == 1 else "all"
    return _execute(VerificationReport("overlap", n, label), units, jobs)


def _sample_population(n: int, iv: ParabolicInterval):
    """All admissible ``(u, v)`` for the conjecture on one quotient, as index arrays."""
    quotient = enumerate_quotient(n, iv.generators())
    arr = np.array([u.entries for u in quotient], dtype=np.int8)
    # counts[m, t, j] = #{entries among the first t+1 of perm m that are <= j+1}
    onehot = np.zeros((len(quotient), n, n), dtype=np.int8)
    rows = np.arange(len(quotient))[:, None]
    onehot[rows, np.arange(n)[None, :], arr - 1] = 1
    counts = onehot.cumsum(axis=1, dtype=np.int16).cumsum(axis=2, dtype=np.int16)
    v_idx = [m for m, v in enumerate(quotient) if satisfies_increasing(v, iv)]
    us, vs = [], []
    for m in v_idx:
        ok = np.all(counts >= counts[m][None, :, :], axis=(1, 2))
        hits = np.nonzero(ok)[0]
        us.append(hits)
        vs.append(np.full(len(hits), m))
    if not us:
        return quotient, np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    return quotient, np.concatenate(us), np.concatenate(vs)


def _allocate(count: int, capacities: list[int]) -> list[int]:
    """Split ``count`` as evenly as capacities allow (water-filling)."""
    alloc = [0] * len(capacities)
    remaining = count
    open_ = [s for s, c in enumerate(capacities) if c > 0]
    while remaining > 0 and open_:
        share, extra = divmod(remaining, len(open_))
        nxt = []
        for rank, s in enumerate(open_):
            want = share + (1 if rank < extra else 0)
            give = min(want, capacities[s] - alloc[s])
            alloc[s] += give
            remaining -= give
            if alloc[s] < capacities[s]:
                nxt.append(s)
        open_ = nxt
    return alloc


def sample_pairs(n: int, seed: int, count: int):
    """
    Seeded stratified sample of conjecture pairs.

    ``count`` is split evenly over all intervals (capped by each stratum's
    size, leftovers redistributed); within an interval, pairs are drawn
    uniformly without replacement from all ``u <= v`` with the increasing
    condition on ``v``.  Each interval gets its own child stream of
    ``SeedSequence(seed)``.
    """
    intervals = all_intervals(n)
    streams = np.random.SeedSequence(seed).spawn(len(intervals))
    pops = [_sample_population(n, iv) for iv in intervals]
    alloc = _allocate(count, [len(p[1]) for p in pops])
    out = []
    for iv, (quotient, us, vs), take, ss in zip(intervals, pops, alloc, streams):
        if take == 0:
            continue
        rng = np.random.default_rng(ss)
        chosen = np.sort(rng.choice(len(us), size=take, replace=False))
        out.append((iv, tuple(
            (quotient[us[c]].entries, quotient[vs[c]].entries) for c in chosen
        )))
    return out


def conjecture_scan(
    n: int,
    sample: tuple[int, int] | None = None,
    jobs: int = 1,
    max_quotient: int | None = None,
) -> VerificationReport:
    """
    The general product vs the recursion over every interval of ``S_n``.

    ``sample=None`` is exhaustive; ``sample=(seed, count)`` checks a seeded
    stratified sample (see ``sample_pairs``).  ``max_quotient`` limits the
    exhaustive scan to quotients of at most that many elements.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    units = []
    report = VerificationReport("conjecture", n, "all", family="conjecture")
    if sample is None:
        ivs = all_intervals(n)
        if max_quotient is not None:
            ivs = [iv for iv in ivs if len(enumerate_quotient(n, iv.generators())) <= max_quotient]
        for iv in ivs:
            units.append(_Unit("family", n, iv.generators(), iv, family="conjecture", i=iv.i))
    else:
        seed, count = sample
        for iv, pairs in sample_pairs(n, seed, count):
            units.append(_Unit("family", n, iv.generators(), iv,
                               family="conjecture", i=iv.i, pairs=pairs))
        report.sample = {"seed": seed, "count": count,
                         "drawn": sum(len(u.pairs) for u in units)}
    return _execute(report, units, jobs)
