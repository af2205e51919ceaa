"""Exhaustive sweeps over all preferences of a given length.

Three jobs: counting tables (how many preferences satisfy each predicate),
a verification harness that machine-checks every structural fact this
package relies on against brute force, and a falsification hook that hunts
for counterexamples to a named property.

Preferences are visited in odometer order (last entry fastest), sharded into
contiguous rank ranges; counts are plain integer sums, so results do not
depend on the shard count or execution order.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .characterize import (
    WitnessCertificate,
    check_certificate,
    find_witness,
    restricted_spot_before_occupied,
)
from .classify import distinct_rearrangements, is_permutation_invariant
from .core import ParkingPreference, decompose_at, excess, multiplicities
from .errors import SizeLimitExceeded, UnknownProperty, VerificationFailed
from .simulator import ParkingOutcome, park_cars, park_uniform

__all__ = [
    "PREDICATES",
    "CountReport",
    "sweep",
    "count_perm_invariant_fast",
    "Counterexample",
    "MonotoneWindowViolation",
    "PROPERTIES",
    "TRUE_PROPERTIES",
    "find_counterexample",
    "verify_sweep",
    "find_monotone_window_violation",
    "iter_preferences",
    "rank_to_pref",
]

#: Predicates tallied by :func:`sweep`, in the kernel's slot order.
PREDICATES = (
    "parking_function",
    "k_naples",
    "complete",
    "complete_k_naples",
    "perm_invariant",
)

DEFAULT_MAX_N = 8
HARD_MAX_N = 9  # 387 million preferences; allowed only behind allow_large


def iter_preferences(n: int) -> Iterator[tuple[int, ...]]:
    """All preferences of length n in odometer order (last entry fastest)."""
    return itertools.product(range(1, n + 1), repeat=n)


def rank_to_pref(n: int, rank: int) -> tuple[int, ...]:
    """Preference at a given odometer rank in [0, n^n)."""
    digits = [0] * n
    for i in range(n - 1, -1, -1):
        digits[i] = rank % n + 1
        rank //= n
    return tuple(digits)


@dataclass(frozen=True)
class CountReport:
    """Result of one counting sweep."""

    n: int
    k: int
    total: int
    counts: dict[str, int]
    elapsed: float  # seconds
    shards: int


def _shard_bounds(total: int, shards: int) -> list[int]:
    return [total * i // shards for i in range(shards + 1)]


def sweep(
    n: int,
    k: int,
    predicates: Iterable[str] | None = None,
    shards: int = 1,
    max_n: int = DEFAULT_MAX_N,
    allow_large: bool = False,
    verify: bool = False,
) -> CountReport:
    """Count predicate hits over all n^n preferences under window k.

    ``shards`` splits the rank space into contiguous ranges handed to a
    thread pool (the compiled kernels release the GIL); the counts are
    identical for any shard count.  With ``verify`` the registered
    invariants are also checked for this (n, k) and a
    :class:`~naplespf.errors.VerificationFailed` carries the first
    counterexample.

    >>> sweep(3, 1).counts["k_naples"]
    24
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    cap = max(max_n, HARD_MAX_N if allow_large else 0)
    if n > cap:
        raise SizeLimitExceeded(f"n={n} above the size cap {cap}")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}")
    if shards < 1:
        raise ValueError(f"need shards >= 1, got {shards}")
    names = PREDICATES if predicates is None else tuple(predicates)
    unknown = [name for name in names if name not in PREDICATES]
    if unknown:
        raise ValueError(f"unknown predicates: {unknown}; known: {PREDICATES}")

    start = time.perf_counter()
    total = n**n
    bounds = _shard_bounds(total, shards)
    ranges = [(bounds[i], bounds[i + 1]) for i in range(shards)]

    def run_range(bound: tuple[int, int]) -> np.ndarray:
        out = np.zeros(_kernels.N_PREDICATES, np.int64)
        _kernels.count_range(n, k, bound[0], bound[1], out)
        return out

    if shards == 1:
        parts = [run_range(ranges[0])]
    else:
        with ThreadPoolExecutor(max_workers=shards) as pool:
            parts = list(pool.map(run_range, ranges))
    agg = np.sum(parts, axis=0)
    slot = {name: i for i, name in enumerate(PREDICATES)}
    counts = {name: int(agg[slot[name]]) for name in PREDICATES if name in names}
    elapsed = time.perf_counter() - start

    if verify:
        ce = verify_sweep(n, ks=(k,))
        if ce is not None:
            raise VerificationFailed(
                f"property {ce.property_name} fails on {ce.pref} (k={ce.k})", ce
            )
    return CountReport(n, k, total, counts, elapsed, shards)


def count_perm_invariant_fast(n: int, k: int, by_class: bool = False) -> int:
    """Count permutation-invariant preferences without visiting all of [n]^n.

    Whether every rearrangement parks depends only on how many cars prefer
    each spot, so it suffices to scan nondecreasing representatives and
    weight each by its number of distinct rearrangements (or by 1 with
    ``by_class``).
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    fact_n = math.factorial(n)
    total = 0
    for rep in itertools.combinations_with_replacement(range(1, n + 1), n):
        m = [0] * (n + 1)
        for a in rep:
            m[a] += 1
        seen = 0
        run = 0
        max_run = 0
        for j in range(1, n + 1):
            u = j - 1 - seen
            seen += m[j]
            if u >= 1:
                run += 1
                max_run = max(max_run, run)
            else:
                run = 0
        if max_run <= k:
            if by_class:
                total += 1
            else:
                weight = fact_n
                for count in m[1:]:
                    weight //= math.factorial(count)
                total += weight
    return total


# --------------------------------------------------------------------------
# Property registry: every structural fact the package relies on, phrased as
# a per-preference check against brute force.  Checks re-derive what they
# need from the parking process and the excess values directly, so they stay
# independent of the higher-level classification code they vet.
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    pref: ParkingPreference
    n: int
    k: int
    property_name: str


@dataclass(frozen=True)
class MonotoneWindowViolation:
    pref: ParkingPreference
    windows: tuple[int, ...]
    car: int  # 1-based car whose window was bumped


@lru_cache(maxsize=1 << 16)
def _outcome(pref: ParkingPreference, k: int) -> ParkingOutcome:
    return park_uniform(pref, k)


@lru_cache(maxsize=1 << 16)
def _profile(pref: ParkingPreference):
    return excess(pref)


@lru_cache(maxsize=1 << 16)
def _witness(
    pref: ParkingPreference, k: int, interval: tuple[int, int]
) -> WitnessCertificate | None:
    return find_witness(pref, k, interval)


def _prop_easy_characterization(pref: ParkingPreference, k: int) -> bool:
    return _profile(pref).is_empty == _outcome(pref, 0).all_parked


def _prop_excess_formulas(pref: ParkingPreference, k: int) -> bool:
    m = multiplicities(pref)
    n = pref.n
    vals = _profile(pref).values
    if vals[0] != 0:
        return False
    for j in range(1, n + 1):
        direct = sum(m[i - 1] for i in range(j, n + 1)) - (n - j + 1)
        prefix = j - 1 - sum(m[i - 1] for i in range(1, j))
        if vals[j - 1] != direct or vals[j - 1] != prefix:
            return False
        if vals[j - 1] >= j:
            return False
        if j < n and vals[j - 1] != vals[j] + m[j - 1] - 1:
            return False
    return True


def _prop_elementary_intervals(pref: ParkingPreference, k: int) -> bool:
    prof = _profile(pref)
    m = multiplicities(pref)
    for p, q in prof.intervals:
        if p < 2:
            return False
        if prof.u(p) != 1 or prof.u(p - 1) != 0:
            return False
        if m[p - 2] != 0 or m[q - 1] < 2:
            return False
    return True


def _prop_decomposition_excess(pref: ParkingPreference, k: int) -> bool:
    prof = _profile(pref)
    for j in range(1, pref.n + 1):
        if prof.u(j) != 0:
            continue
        lower, upper = decompose_at(pref, j)
        if lower is not None and excess(lower).values != prof.values[: j - 1]:
            return False
        if excess(upper).values != prof.values[j - 1 :]:
            return False
    return True


def _prop_necessary_excess_bound(pref: ParkingPreference, k: int) -> bool:
    if not _outcome(pref, k).all_parked:
        return True
    return _profile(pref).max_excess <= k


def _prop_excess_bound_sufficient(pref: ParkingPreference, k: int) -> bool:
    # Deliberately false: the excess bound does not imply parking.
    if _profile(pref).max_excess > k:
        return True
    return _outcome(pref, k).all_parked


def _prop_nonincreasing_sufficiency(pref: ParkingPreference, k: int) -> bool:
    if any(a < b for a, b in zip(pref.prefs, pref.prefs[1:])):
        return True
    if _profile(pref).max_excess > k:
        return True
    return _outcome(pref, k).all_parked


def _prop_drive_forward(pref: ParkingPreference, k: int) -> bool:
    out = _outcome(pref, k)
    prof = _profile(pref)
    pairs = list(zip(pref.prefs, out.spot_of))
    for a, s in pairs:
        if s is None or s <= a:
            continue
        # splitting: nobody preferring >= s may sit at or before s
        for a2, s2 in pairs:
            if a2 >= s and s2 is not None and s2 <= s:
                return False
        if out.all_parked and prof.u(s) > -1:
            return False
    return True


def _prop_p_minus_1(pref: ParkingPreference, k: int) -> bool:
    out = _outcome(pref, k)
    occupied = {s for s in out.spot_of if s is not None}
    filled = all(p - 1 in occupied for p, _q in _profile(pref).intervals)
    return filled == out.all_parked


def _is_complete(pref: ParkingPreference) -> bool:
    return pref.n >= 2 and _profile(pref).intervals == ((2, pref.n),)


def _prop_char_complete(pref: ParkingPreference, k: int) -> bool:
    if not _is_complete(pref):
        return True
    out = _outcome(pref, k)
    occupant = out.occupant_of()
    backward = all(
        j in occupant and pref.prefs[occupant[j] - 1] >= j
        for j in range(1, pref.n + 1)
    )
    bounded = all(
        s is not None and s <= a for a, s in zip(pref.prefs, out.spot_of)
    )
    return out.all_parked == backward == bounded


def _prop_quantitative_bound(pref: ParkingPreference, k: int) -> bool:
    if not _is_complete(pref):
        return True
    out = _outcome(pref, k)
    prof = _profile(pref)
    for j in range(1, pref.n + 1):
        before = sum(
            1
            for a, s in zip(pref.prefs, out.spot_of)
            if a >= j and s is not None and s < j
        )
        if before > prof.u(j):
            return False
        if out.all_parked and before != prof.u(j):
            return False
    return True


def _prop_restricted_translated(pref: ParkingPreference, k: int) -> bool:
    if not _outcome(pref, k).all_parked:
        return True
    prof = _profile(pref)
    for j in range(2, pref.n + 1):
        if prof.u(j) != 0:
            continue
        upper = [a - (j - 1) for a in pref.prefs if a >= j]
        spots = park_cars(upper, k, len(upper))
        if any(s is None for s in spots):
            return False
    return True


def _prop_main_characterization(pref: ParkingPreference, k: int) -> bool:
    witnessed = all(
        _witness(pref, k, iv) is not None for iv in _profile(pref).intervals
    )
    return witnessed == _outcome(pref, k).all_parked


def _prop_witness_size(pref: ParkingPreference, k: int) -> bool:
    if not _outcome(pref, k).all_parked:
        return True
    for p, q in _profile(pref).intervals:
        cert = _witness(pref, k, (p, q))
        if cert is None or not check_certificate(pref, k, cert):
            return False
        if len(cert.indices) < q - p + 2:
            return False
    return True


def _prop_search_matches_extraction(pref: ParkingPreference, k: int) -> bool:
    # on non-members find_witness already is the subset search
    if not _outcome(pref, k).all_parked or pref.n > 12:
        return True
    arr = pref.as_array()
    for p, q in _profile(pref).intervals:
        found = int(_kernels.witness_search_mask(arr, k, p, q)) != 0
        if found != (_witness(pref, k, (p, q)) is not None):
            return False
    return True


def _prop_tail_lemma(pref: ParkingPreference, k: int) -> bool:
    if not _is_complete(pref):
        return True
    out = _outcome(pref, k)
    if not out.all_parked:
        return True
    return out.spot_of[-1] == 1 and pref.prefs[-1] <= k + 1


def _prop_summary_theorem(pref: ParkingPreference, k: int) -> bool:
    prof = _profile(pref)
    naples = _outcome(pref, k).all_parked
    large_ok = True
    for p, q in prof.intervals:
        cond_i = restricted_spot_before_occupied(pref, k, p)
        cond_ii = _witness(pref, k, (p, q)) is not None
        if cond_i != cond_ii:
            return False
        if q - p + 1 <= k and not cond_ii:
            return False
        if q - p + 1 >= k + 1 and not cond_ii:
            large_ok = False
    return naples == large_ok


def _prop_perm_invariance(pref: ParkingPreference, k: int) -> bool:
    structural = is_permutation_invariant(pref, k)
    brute = all(
        _outcome(sigma, k).all_parked for sigma in distinct_rearrangements(pref)
    )
    return structural == brute


@dataclass(frozen=True)
class SweepProperty:
    name: str
    doc: str
    check: Callable[[ParkingPreference, int], bool]
    k_min: int = 0
    k_independent: bool = False


_PROPERTY_LIST = [
    SweepProperty(
        "easy_characterization",
        "empty critical set iff the classical rule parks everyone",
        _prop_easy_characterization,
        k_independent=True,
    ),
    SweepProperty(
        "excess_formula_agreement",
        "suffix, prefix and recurrence forms of the excess agree; u(j) < j",
        _prop_excess_formulas,
        k_independent=True,
    ),
    SweepProperty(
        "elementary_intervals",
        "each maximal interval starts at excess 1 after a zero with no demand "
        "below and at least two cars at the top",
        _prop_elementary_intervals,
        k_independent=True,
    ),
    SweepProperty(
        "decomposition_excess",
        "splitting at a zero of the excess slices the excess profile",
        _prop_decomposition_excess,
        k_independent=True,
    ),
    SweepProperty(
        "necessary_excess_bound_is_necessary",
        "parking under window k forces excess <= k everywhere",
        _prop_necessary_excess_bound,
    ),
    SweepProperty(
        "excess_bound_is_sufficient",
        "DELIBERATELY FALSE: excess <= k alone does not make a preference park",
        _prop_excess_bound_sufficient,
    ),
    SweepProperty(
        "nonincreasing_sufficiency",
        "for nonincreasing preferences the excess bound decides membership",
        _prop_nonincreasing_sufficiency,
    ),
    SweepProperty(
        "drive_forward",
        "a car parking forward at j splits the street at j; members then "
        "have excess <= -1 at j",
        _prop_drive_forward,
        k_min=1,
    ),
    SweepProperty(
        "p_minus_1_biconditional",
        "membership iff spot p-1 fills for every maximal interval [p, q]",
        _prop_p_minus_1,
        k_min=1,
    ),
    SweepProperty(
        "char_complete_equivalence",
        "for complete preferences: parking, backward occupancy and bounded "
        "outcomes coincide",
        _prop_char_complete,
    ),
    SweepProperty(
        "quantitative_bound",
        "backward traffic through j is at most u(j), with equality for members",
        _prop_quantitative_bound,
    ),
    SweepProperty(
        "restricted_translated_pf",
        "the upper part of a member at a zero of the excess is again a member",
        _prop_restricted_translated,
        k_min=1,
    ),
    SweepProperty(
        "main_characterization",
        "membership iff every maximal interval has a complete witness",
        _prop_main_characterization,
        k_min=1,
    ),
    SweepProperty(
        "witness_size_bound",
        "extracted witnesses re-verify and have at least q-p+2 cars",
        _prop_witness_size,
        k_min=1,
    ),
    SweepProperty(
        "search_matches_extraction",
        "subset search and constructive extraction agree on witness existence",
        _prop_search_matches_extraction,
        k_min=1,
    ),
    SweepProperty(
        "tail_lemma",
        "in a complete member the last car parks at spot 1 and prefers <= k+1",
        _prop_tail_lemma,
        k_min=1,
    ),
    SweepProperty(
        "summary_theorem",
        "spot-before-interval and witness conditions agree, hold for free on "
        "short intervals, and decide membership on the long ones",
        _prop_summary_theorem,
        k_min=1,
    ),
    SweepProperty(
        "perm_invariance",
        "all rearrangements park iff every maximal interval has length <= k",
        _prop_perm_invariance,
        k_min=1,
    ),
]

PROPERTIES: dict[str, SweepProperty] = {p.name: p for p in _PROPERTY_LIST}

#: Properties expected to hold with zero counterexamples.
TRUE_PROPERTIES = tuple(
    p.name for p in _PROPERTY_LIST if p.name != "excess_bound_is_sufficient"
)


def find_counterexample(
    n_max: int, k_max: int, property_name: str
) -> Counterexample | None:
    """First preference violating a registered property, or None.

    Scans lengths in increasing order, preferences in odometer order and
    windows in increasing order, so e.g. the deliberately false excess-bound
    property yields (2,3,3) at n=3, k=1.
    """
    if property_name not in PROPERTIES:
        raise UnknownProperty(
            f"unknown property {property_name!r}; known: {sorted(PROPERTIES)}"
        )
    prop = PROPERTIES[property_name]
    for n in range(1, n_max + 1):
        for tup in iter_preferences(n):
            pref = ParkingPreference(tup)
            if prop.k_independent:
                ks: Iterable[int] = (prop.k_min,)
            else:
                ks = range(prop.k_min, k_max + 1)
            for k in ks:
                if not prop.check(pref, k):
                    return Counterexample(pref, n, k, property_name)
    return None


def verify_sweep(
    n: int,
    ks: Sequence[int] | None = None,
    properties: Iterable[str] | None = None,
) -> Counterexample | None:
    """Check every always-true property over all of [n]^n.

    ``ks`` defaults to 1..n.  Permutation invariance is checked once per
    multiset (both sides only depend on it); everything else runs per
    preference.  Returns the first counterexample or None.
    """
    if ks is None:
        ks = range(1, n + 1)
    names = TRUE_PROPERTIES if properties is None else tuple(properties)
    unknown = [name for name in names if name not in PROPERTIES]
    if unknown:
        raise UnknownProperty(f"unknown properties: {unknown}")
    per_pref = [
        PROPERTIES[name] for name in names if name != "perm_invariance"
    ]
    for tup in iter_preferences(n):
        pref = ParkingPreference(tup)
        for prop in per_pref:
            if prop.k_independent:
                if not prop.check(pref, prop.k_min):
                    return Counterexample(pref, n, prop.k_min, prop.name)
            else:
                for k in ks:
                    if k < prop.k_min:
                        continue
                    if not prop.check(pref, k):
                        return Counterexample(pref, n, k, prop.name)
    if "perm_invariance" in names:
        prop = PROPERTIES["perm_invariance"]
        for rep in itertools.combinations_with_replacement(range(1, n + 1), n):
            pref = ParkingPreference(rep)
            for k in ks:
                if k < prop.k_min:
                    continue
                if not prop.check(pref, k):
                    return Counterexample(pref, n, k, prop.name)
    return None


def find_monotone_window_violation(
    n_max: int = 4,
) -> MonotoneWindowViolation | None:
    """Exhaustively check that enlarging one car's window never breaks parking.

    Covers every preference and every window vector for each n up to
    ``n_max``; single-step monotonicity extends to pointwise-larger window
    vectors by chaining increments.
    """
    for n in range(1, n_max + 1):
        code = int(_kernels.monotone_window_violation(n))
        if code < 0:
            continue
        car = code % n
        rest = code // n
        radix_w = n + 1
        total_w = radix_w**n
        wr = rest % total_w
        pr = rest // total_w
        windows = [0] * n
        for i in range(n - 1, -1, -1):
            windows[i] = wr % radix_w
            wr //= radix_w
        return MonotoneWindowViolation(
            ParkingPreference(rank_to_pref(n, pr)), tuple(windows), car + 1
        )
    return None
