"""The classical and k-Naples parking processes.

Cars arrive in order.  A car whose preferred spot is taken first backs up,
checking up to k spots behind the preference nearest-first, then drives
forward to the first free spot; if nothing is free it exits the street.  The
classical rule is k = 0.  Each car may carry its own backward window, which
generalizes the uniform rule.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Sequence

from .core import ParkingPreference
from .errors import LengthMismatch

__all__ = [
    "UNPARKED",
    "ParkingOutcome",
    "CarStep",
    "ParkingTrace",
    "as_windows",
    "park",
    "park_with_trace",
    "park_uniform",
    "park_cars",
]

#: Sentinel for a car that exits the street without parking.
UNPARKED = None


@dataclass(frozen=True)
class ParkingOutcome:
    """Final spot of each car; ``None`` marks a car that left unparked."""

    spot_of: tuple[int | None, ...]

    @property
    def all_parked(self) -> bool:
        return all(s is not None for s in self.spot_of)

    def occupant_of(self) -> dict[int, int]:
        """Map from occupied spot to the (1-based) car parked there."""
        return {s: i for i, s in enumerate(self.spot_of, start=1) if s is not None}

    def render(self) -> str:
        """Comma-separated outcome with ``X`` for unparked cars."""
        return ",".join("X" if s is None else str(s) for s in self.spot_of)


@dataclass(frozen=True)
class CarStep:
    """One car's turn: the spots it probed and where it ended up.

    ``backward_checks`` is the strictly decreasing run of spots probed behind
    the preference (at most the car's window, never below spot 1);
    ``forward_checks`` the increasing run probed after it.  Both are empty
    when the preferred spot was free.
    """

    car: int
    preferred: int
    backward_checks: tuple[int, ...]
    forward_checks: tuple[int, ...]
    spot: int | None


ParkingTrace = tuple[CarStep, ...]


def as_windows(k: int | Sequence[int], n: int) -> tuple[int, ...]:
    """Normalize a backward-window spec: a scalar means the uniform rule."""
    try:
        k = operator.index(k)
    except TypeError:
        pass
    if isinstance(k, int):
        if k < 0:
            raise ValueError(f"backward window must be >= 0, got {k}")
        return (k,) * n
    win = tuple(int(x) for x in k)
    if len(win) != n:
        raise LengthMismatch(f"{len(win)} windows for {n} cars")
    for x in win:
        if x < 0:
            raise ValueError(f"backward window must be >= 0, got {x}")
    return win


def _run(
    prefs: Sequence[int],
    windows: Sequence[int],
    n_spots: int,
    record: bool,
) -> tuple[list[int | None], ParkingTrace]:
    free = [True] * (n_spots + 1)  # 1-based; index 0 unused
    spots: list[int | None] = []
    steps: list[CarStep] = []
    for i, (a, k) in enumerate(zip(prefs, windows), start=1):
        back: list[int] = []
        fwd: list[int] = []
        spot: int | None = None
        if free[a]:
            spot = a
        else:
            for t in range(a - 1, max(1, a - k) - 1, -1):
                back.append(t)
                if free[t]:
                    spot = t
                    break
            if spot is None:
                for t in range(a + 1, n_spots + 1):
                    fwd.append(t)
                    if free[t]:
                        spot = t
                        break
        if spot is not None:
            free[spot] = False
        spots.append(spot)
        if record:
            steps.append(CarStep(i, a, tuple(back), tuple(fwd), spot))
    return spots, tuple(steps)


def park(pref: ParkingPreference, windows: int | Sequence[int]) -> ParkingOutcome:
    """Run the parking process; a scalar window applies to every car.

    >>> park(ParkingPreference((3, 4, 4, 4, 3)), 3).render()
    '3,4,2,1,5'
    >>> park(ParkingPreference((2, 3, 3)), 1).render()
    '2,3,X'
    """
    win = as_windows(windows, pref.n)
    spots, _ = _run(pref.prefs, win, pref.n, record=False)
    return ParkingOutcome(tuple(spots))


def park_with_trace(
    pref: ParkingPreference, windows: int | Sequence[int]
) -> tuple[ParkingOutcome, ParkingTrace]:
    """Like :func:`park`, also recording every spot each car probed."""
    win = as_windows(windows, pref.n)
    spots, steps = _run(pref.prefs, win, pref.n, record=True)
    return ParkingOutcome(tuple(spots)), steps


def park_uniform(pref: ParkingPreference, k: int) -> ParkingOutcome:
    """Parking process with the same backward window k for every car."""
    return park(pref, int(k))


def park_cars(
    prefs: Sequence[int], windows: int | Sequence[int], n_spots: int
) -> list[int | None]:
    """Park an arbitrary car list on a street with ``n_spots`` spots.

    Unlike :func:`park` the number of cars need not match the street length;
    this is what restricted processes (a subset of the cars, full street)
    run on.
    """
    try:
        windows = (operator.index(windows),) * len(prefs)
    except TypeError:
        pass
    spots, _ = _run(prefs, windows, n_spots, record=False)
    return spots
