"""Witness certificates for k-Naples membership.

A preference parks under the k-Naples rule exactly when every maximal
critical interval [p, q] admits a witness: a set J of cars, all preferring
spots in [p, p-2+|J|], whose restriction shifted down by p-2 is a complete
preference that itself parks under the rule.  For preferences that do park,
the witness can be extracted constructively from the parking process; for
those that do not, an exhaustive subset search settles existence.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .classify import is_complete, is_k_naples
from .core import ParkingPreference, excess, restrict_shift
from .errors import NotMaximalInterval, PreconditionFailed, SizeLimitExceeded
from .simulator import park_cars

__all__ = [
    "WitnessCertificate",
    "check_certificate",
    "find_witness",
    "enumerate_witnesses",
    "verify_main_theorem",
    "verify_decomposition_lemma",
    "restricted_spot_before_occupied",
    "IntervalConditions",
    "SummaryReport",
    "verify_summary_theorem",
]

# Exhaustive subset search scans up to 2^n masks.
_SUBSET_SEARCH_CAP = 12


@dataclass(frozen=True)
class WitnessCertificate:
    """A witness for one maximal critical interval [p, q].

    ``indices`` is the increasing set J of (1-based) car indices and
    ``shifted_restriction`` the preference they induce after shifting down by
    p-2.  A valid certificate has every chosen car preferring a spot in
    [p, p-2+|J|], a complete shifted restriction that parks under the
    k-Naples rule, and |J| >= q-p+2.
    """

    interval: tuple[int, int]
    indices: tuple[int, ...]
    shifted_restriction: ParkingPreference


def _require_maximal_interval(
    pref: ParkingPreference, interval: tuple[int, int]
) -> tuple[int, int]:
    interval = (int(interval[0]), int(interval[1]))
    if interval not in excess(pref).intervals:
        raise NotMaximalInterval(
            f"{interval} is not a maximal critical interval of {pref}"
        )
    return interval


def check_certificate(
    pref: ParkingPreference, k: int, cert: WitnessCertificate
) -> bool:
    """Re-verify every certificate invariant from scratch."""
    p, q = cert.interval
    if cert.interval not in excess(pref).intervals:
        return False
    j = cert.indices
    if not j or list(j) != sorted(set(j)) or j[0] < 1 or j[-1] > pref.n:
        return False
    h = len(j)
    if h < q - p + 2:
        return False
    if any(not p <= pref.prefs[i - 1] <= p - 2 + h for i in j):
        return False
    sr = restrict_shift(pref, j, p - 2)
    if sr != cert.shifted_restriction:
        return False
    return is_complete(sr) and is_k_naples(sr, k)


def _constructive_witness(
    pref: ParkingPreference, k: int, interval: tuple[int, int]
) -> WitnessCertificate:
    """Extract a witness from the parking process of a member preference.

    Reduces to the cars preferring a spot >= p-1 (none prefer p-1 itself),
    parks them as a standalone preference, and takes the cars that fill the
    initial segment [1, M] where M is the first position closed off by its
    own traffic: all spots in [1, M] held by cars preferring spots in [1, M].
    """
    p, q = interval
    hat = [i for i in range(1, pref.n + 1) if pref.prefs[i - 1] >= p - 1]
    beta = [pref.prefs[i - 1] - (p - 2) for i in hat]
    spots = park_cars(beta, k, len(beta))
    assert all(s is not None for s in spots)  # restriction of a member parks
    pref_at = {s: a for a, s in zip(beta, spots)}
    running_max = 0
    m_cut = 0
    for spot in range(1, len(beta) + 1):
        running_max = max(running_max, pref_at[spot])
        if running_max <= spot:
            m_cut = spot
            break
    assert m_cut >= q - p + 2
    indices = tuple(
        orig for orig, s in zip(hat, spots) if s is not None and s <= m_cut
    )
    cert = WitnessCertificate(
        (p, q), indices, restrict_shift(pref, indices, p - 2)
    )
    assert check_certificate(pref, k, cert)
    return cert


def _mask_to_indices(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1)


def _exhaustive_witness(
    pref: ParkingPreference, k: int, interval: tuple[int, int]
) -> WitnessCertificate | None:
    if pref.n > _SUBSET_SEARCH_CAP:
        raise SizeLimitExceeded(
            f"exhaustive witness search is capped at n <= {_SUBSET_SEARCH_CAP}"
        )
    p, q = interval
    mask = _kernels.witness_search_mask(pref.as_array(), k, p, q)
    if mask == 0:
        return None
    indices = _mask_to_indices(int(mask))
    return WitnessCertificate((p, q), indices, restrict_shift(pref, indices, p - 2))


def find_witness(
    pref: ParkingPreference, k: int, interval: tuple[int, int]
) -> WitnessCertificate | None:
    """Witness for one maximal critical interval, or None when none exists.

    Member preferences yield the constructive witness read off the parking
    process; otherwise an exhaustive subset search (sizes q-p+2 and up,
    honouring the preference-range condition) decides existence.

    >>> alpha = ParkingPreference((8, 4, 7, 1, 6, 8, 7, 5, 10, 1))
    >>> find_witness(alpha, 2, (4, 7)).indices
    (2, 3, 5, 7, 8)
    >>> find_witness(ParkingPreference((2, 3, 3)), 1, (2, 3)) is None
    True
    """
    if k < 1:
        raise ValueError(f"backward window must be >= 1, got {k}")
    interval = _require_maximal_interval(pref, interval)
    if is_k_naples(pref, k):
        return _constructive_witness(pref, k, interval)
    return _exhaustive_witness(pref, k, interval)


def enumerate_witnesses(
    pref: ParkingPreference, k: int, interval: tuple[int, int]
) -> list[WitnessCertificate]:
    """All witnesses for one interval, ordered by subset bitmask rank.

    Runs the same subset scan as the exhaustive search but collects every
    qualifying set instead of stopping at the first.
    """
    if k < 1:
        raise ValueError(f"backward window must be >= 1, got {k}")
    p, q = _require_maximal_interval(pref, interval)
    if pref.n > _SUBSET_SEARCH_CAP:
        raise SizeLimitExceeded(
            f"exhaustive witness search is capped at n <= {_SUBSET_SEARCH_CAP}"
        )
    pool = [i for i in range(1, pref.n + 1) if pref.prefs[i - 1] >= p]
    min_size = q - p + 2
    found = []
    for mask in range(1, 1 << len(pool)):
        chosen = [pool[b] for b in range(len(pool)) if (mask >> b) & 1]
        h = len(chosen)
        if h < min_size:
            continue
        if any(pref.prefs[i - 1] > p - 2 + h for i in chosen):
            continue
        sr = restrict_shift(pref, chosen, p - 2)
        if not (is_complete(sr) and is_k_naples(sr, k)):
            continue
        found.append(WitnessCertificate((p, q), tuple(chosen), sr))
    return found


def verify_main_theorem(pref: ParkingPreference, k: int) -> bool:
    """True when every maximal critical interval has a witness.

    This is equivalent to the preference parking under the uniform k-Naples
    rule, which the function asserts.
    """
    if k < 1:
        raise ValueError(f"backward window must be >= 1, got {k}")
    result = all(
        find_witness(pref, k, interval) is not None
        for interval in excess(pref).intervals
    )
    assert result == is_k_naples(pref, k)
    return result


def verify_decomposition_lemma(pref: ParkingPreference, k: int, j: int) -> bool:
    """Check that the upper part of a member splits off as a member.

    For a preference that parks and a position j with excess 0, the cars
    preferring a spot >= j, shifted down by j-1, must again park under the
    same rule.  The analogous claim for the lower part is false in general,
    and the cars of the upper part may still park below j in the original
    process; neither is asserted here.
    """
    if not is_k_naples(pref, k):
        raise PreconditionFailed(f"{pref} does not park with window {k}")
    prof = excess(pref)
    if not 1 <= j <= pref.n or prof.u(j) != 0:
        raise PreconditionFailed(f"excess at position {j} must be 0")
    if j == 1:
        return True
    upper_idx = [i for i in range(1, pref.n + 1) if pref.prefs[i - 1] >= j]
    upper = restrict_shift(pref, upper_idx, j - 1)
    return is_k_naples(upper, k)


def restricted_spot_before_occupied(pref: ParkingPreference, k: int, p: int) -> bool:
    """Whether spot p-1 fills when only cars preferring spots >= p run.

    The restricted cars keep their original relative order and park on the
    full street under the same uniform rule.
    """
    sub = [a for a in pref.prefs if a >= p]
    spots = park_cars(sub, k, pref.n)
    return (p - 1) in {s for s in spots if s is not None}


@dataclass(frozen=True)
class IntervalConditions:
    """Both membership conditions evaluated on one critical interval."""

    interval: tuple[int, int]
    size: int
    auto: bool  # size <= k: both conditions hold for free
    spot_before_occupied: bool
    witness: WitnessCertificate | None

    @property
    def satisfied(self) -> bool:
        return self.witness is not None


@dataclass(frozen=True)
class SummaryReport:
    """Per-interval conditions plus overall membership."""

    k: int
    k_naples: bool
    intervals: tuple[IntervalConditions, ...]

    @property
    def consistent(self) -> bool:
        """All cross-checks between the conditions and membership hold."""
        for cond in self.intervals:
            if cond.spot_before_occupied != cond.satisfied:
                return False
            if cond.auto and not cond.satisfied:
                return False
        large_ok = all(
            cond.satisfied for cond in self.intervals if cond.size >= self.k + 1
        )
        return self.k_naples == large_ok


def verify_summary_theorem(pref: ParkingPreference, k: int) -> SummaryReport:
    """Evaluate both membership conditions on every critical interval.

    For each maximal interval [p, q]: (a) restricted to cars preferring
    spots >= p, spot p-1 fills; (b) a witness with at least q-p+2 cars
    exists.  The two agree on every interval, hold automatically when the
    interval has at most k positions, and the preference parks exactly when
    every interval longer than k satisfies them.  All of this is asserted.
    """
    if k < 1:
        raise ValueError(f"backward window must be >= 1, got {k}")
    conditions = []
    for p, q in excess(pref).intervals:
        conditions.append(
            IntervalConditions(
                interval=(p, q),
                size=q - p + 1,
                auto=q - p + 1 <= k,
                spot_before_occupied=restricted_spot_before_occupied(pref, k, p),
                witness=find_witness(pref, k, (p, q)),
            )
        )
    report = SummaryReport(k, is_k_naples(pref, k), tuple(conditions))
    assert report.consistent
    return report
