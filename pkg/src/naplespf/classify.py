"""Predicates on parking preferences.

Wherever a structural characterization exists the predicate is computed from
the excess profile alone (no simulation); the parking process then serves as
an independent cross-check.  Keeping both routes executable is the point:
every classification here can be validated against brute force.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .core import ParkingPreference, excess
from .errors import NotComplete, NotNonincreasing, SizeLimitExceeded, TooShort
from .simulator import park_uniform

__all__ = [
    "is_parking_function",
    "is_k_naples",
    "check_p_minus_1",
    "necessary_excess_bound",
    "nonincreasing_sufficiency",
    "is_complete",
    "CompleteEquivalences",
    "complete_naples_equivalences",
    "SpotBound",
    "quantitative_bound",
    "cars_parked_before",
    "is_permutation_invariant",
    "permutation_invariant_by_enumeration",
    "distinct_rearrangements",
    "minimal_naples_k",
]

# Brute force over distinct rearrangements stays below 7! sequences.
_REARRANGEMENT_CAP = 7


def is_parking_function(pref: ParkingPreference) -> bool:
    """True when every car parks under the classical (forward-only) rule.

    Equivalent to the excess being <= 0 everywhere, which is how it is
    computed; the simulation cross-check below keeps the two routes honest.

    >>> is_parking_function(ParkingPreference((3, 1, 3, 5, 2, 4, 2)))
    True
    >>> is_parking_function(ParkingPreference((2, 3, 3)))
    False
    """
    result = excess(pref).is_empty
    assert result == park_uniform(pref, 0).all_parked
    return result


def is_k_naples(pref: ParkingPreference, k: int) -> bool:
    """True when every car parks under the uniform k-Naples rule."""
    return park_uniform(pref, k).all_parked


def check_p_minus_1(pref: ParkingPreference, k: int) -> bool:
    """Membership test via the critical spots just below each interval.

    Runs the process and checks that for every maximal critical interval
    [p, q] the spot p-1 ends up occupied; this holds exactly when the whole
    preference parks, which the function also asserts.
    """
    if k < 1:
        raise ValueError(f"backward window must be >= 1, got {k}")
    outcome = park_uniform(pref, k)
    occupied = {s for s in outcome.spot_of if s is not None}
    result = all(p - 1 in occupied for p, _q in excess(pref).intervals)
    assert result == outcome.all_parked
    return result


def necessary_excess_bound(pref: ParkingPreference, k: int) -> bool:
    """True when the excess never exceeds k.

    Necessary for parking under the k-Naples rule, but not sufficient:
    (2,3,3) satisfies the bound for k=1 yet fails to park.
    """
    if k < 0:
        raise ValueError(f"backward window must be >= 0, got {k}")
    return excess(pref).max_excess <= k


def nonincreasing_sufficiency(pref: ParkingPreference, k: int) -> bool:
    """For nonincreasing preferences the excess bound decides membership."""
    if any(a < b for a, b in zip(pref.prefs, pref.prefs[1:])):
        raise NotNonincreasing(f"{pref} is not nonincreasing")
    return necessary_excess_bound(pref, k)


def is_complete(pref: ParkingPreference) -> bool:
    """True when every position after the first is critical (excess >= 1).

    >>> is_complete(ParkingPreference((5, 3, 3, 5, 4)))
    True
    >>> is_complete(ParkingPreference((5, 3, 3, 4, 4)))
    False
    """
    if pref.n < 2:
        raise TooShort("completeness needs at least two cars")
    return excess(pref).intervals == ((2, pref.n),)


@dataclass(frozen=True)
class CompleteEquivalences:
    """The three equivalent ways a complete preference parks fully.

    For complete preferences these must agree: all cars park iff every spot
    is held by a car preferring it or a later spot iff no car ends up past
    its preference.
    """

    all_parked: bool
    backward_occupancy: bool
    outcome_bounded: bool

    @property
    def agree(self) -> bool:
        return self.all_parked == self.backward_occupancy == self.outcome_bounded


def complete_naples_equivalences(
    pref: ParkingPreference, k: int
) -> CompleteEquivalences:
    """Evaluate all three membership conditions for a complete preference."""
    if not is_complete(pref):
        raise NotComplete(f"{pref} is not complete")
    outcome = park_uniform(pref, k)
    occupant = outcome.occupant_of()
    backward = all(
        j in occupant and pref.prefs[occupant[j] - 1] >= j
        for j in range(1, pref.n + 1)
    )
    bounded = all(
        s is not None and s <= a for a, s in zip(pref.prefs, outcome.spot_of)
    )
    report = CompleteEquivalences(outcome.all_parked, backward, bounded)
    assert report.agree
    return report


def cars_parked_before(pref: ParkingPreference, k: int, j: int) -> int:
    """Number of cars preferring a spot >= j that park strictly before j."""
    outcome = park_uniform(pref, k)
    return sum(
        1
        for a, s in zip(pref.prefs, outcome.spot_of)
        if a >= j and s is not None and s < j
    )


@dataclass(frozen=True)
class SpotBound:
    """Backward traffic through one position versus its excess."""

    spot: int
    parked_before: int
    excess: int


def quantitative_bound(pref: ParkingPreference, k: int) -> tuple[SpotBound, ...]:
    """Per-spot backward-parking counts for a complete preference.

    For each position j, at most u(j) cars preferring a spot >= j can park
    strictly before j, with equality at every position when the whole
    preference parks.  Both facts are asserted.
    """
    if not is_complete(pref):
        raise NotComplete(f"{pref} is not complete")
    prof = excess(pref)
    naples = is_k_naples(pref, k)
    rows = []
    for j in range(1, pref.n + 1):
        b = cars_parked_before(pref, k, j)
        u = prof.u(j)
        assert b <= u
        if naples:
            assert b == u
        rows.append(SpotBound(j, b, u))
    return tuple(rows)


def is_permutation_invariant(pref: ParkingPreference, k: int) -> bool:
    """True when every rearrangement parks under the uniform k-Naples rule.

    Computed structurally: this holds exactly when every maximal critical
    interval has length <= k.  The criterion only depends on how many cars
    prefer each spot, so it is rearrangement-invariant by construction;
    :func:`permutation_invariant_by_enumeration` is the brute-force oracle.

    >>> is_permutation_invariant(ParkingPreference((2, 3, 3)), 1)
    False
    >>> is_permutation_invariant(ParkingPreference((2, 3, 3)), 2)
    True
    """
    if k < 0:
        raise ValueError(f"backward window must be >= 0, got {k}")
    return excess(pref).max_interval_length() <= k


def distinct_rearrangements(pref: ParkingPreference) -> Iterator[ParkingPreference]:
    """All distinct rearrangements of the preference, in sorted order."""
    if pref.n > _REARRANGEMENT_CAP:
        raise SizeLimitExceeded(
            f"rearrangement enumeration is capped at n <= {_REARRANGEMENT_CAP}"
        )
    for tup in sorted(set(itertools.permutations(pref.prefs))):
        yield ParkingPreference(tup)


def permutation_invariant_by_enumeration(pref: ParkingPreference, k: int) -> bool:
    """Brute-force oracle for :func:`is_permutation_invariant` (n <= 7)."""
    return all(is_k_naples(sigma, k) for sigma in distinct_rearrangements(pref))


def minimal_naples_k(pref: ParkingPreference) -> int:
    """Smallest uniform backward window under which every car parks.

    Always at most n-1, since with a window of n-1 every car can reach every
    spot on the street.
    """
    for k in range(pref.n):
        if is_k_naples(pref, k):
            return k
    raise AssertionError("unreachable: window n-1 always parks")
