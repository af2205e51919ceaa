"""Command-line interface.

Exit codes: 0 success; 1 a checked predicate is false (``classify
--expect``); 2 usage or parse error; 3 a verification sweep found a
counterexample.  All machine-readable output validates against
``schemas/cli_output.schema.json``.
"""

from __future__ import annotations

import json
import sys

import click

from .characterize import enumerate_witnesses, find_witness
from .classify import (
    is_complete,
    is_k_naples,
    is_parking_function,
    is_permutation_invariant,
    minimal_naples_k,
)
from .core import ParkingPreference, decompose_at, excess
from .errors import ParkingError
from .simulator import park_with_trace
from .sweeps import (
    PREDICATES,
    count_perm_invariant_fast,
    find_monotone_window_violation,
    sweep,
    verify_sweep,
)

_EXIT_PREDICATE_FALSE = 1
_EXIT_COUNTEREXAMPLE = 3


def _parse_preference(text: str) -> ParkingPreference:
    try:
        return ParkingPreference.parse(text)
    except ParkingError as exc:
        raise click.UsageError(str(exc)) from exc


def _parse_windows(text: str, n: int) -> int | tuple[int, ...]:
    tokens = [t.strip() for t in text.split(",")]
    values = []
    for token in tokens:
        try:
            values.append(int(token))
        except ValueError:
            raise click.UsageError(f"not an integer: {token!r}") from None
    if len(values) == 1:
        if values[0] < 0:
            raise click.UsageError(f"backward window must be >= 0, got {values[0]}")
        return values[0]
    if len(values) != n:
        raise click.UsageError(f"{len(values)} windows for {n} cars")
    if any(v < 0 for v in values):
        raise click.UsageError("backward windows must be >= 0")
    return tuple(values)


def _echo_doc(doc: dict, output: str | None) -> None:
    text = json.dumps(doc)
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _spots_text(spots) -> str:
    return ",".join(str(s) for s in spots) if spots else "-"


@click.group()
def main() -> None:
    """Parking preferences under the k-Naples rule: simulate, classify,
    certify, and count."""


@main.command()
@click.option("-p", "--preference", required=True, help="comma-separated spot preferences")
@click.option(
    "-k",
    "--windows",
    default="0",
    show_default=True,
    help="uniform backward window, or a per-car comma list",
)
@click.option("--trace", is_flag=True, help="show every spot each car probed")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def park(preference: str, windows: str, trace: bool, as_json: bool) -> None:
    """Run the parking process and print the outcome map."""
    pref = _parse_preference(preference)
    win = _parse_windows(windows, pref.n)
    try:
        outcome, steps = park_with_trace(pref, win)
    except ParkingError as exc:
        raise click.UsageError(str(exc)) from exc
    if as_json:
        doc: dict = {
            "spot_of": list(outcome.spot_of),
            "all_parked": outcome.all_parked,
        }
        if trace:
            doc["trace"] = [
                {
                    "car": st.car,
                    "preferred": st.preferred,
                    "backward_checks": list(st.backward_checks),
                    "forward_checks": list(st.forward_checks),
                    "spot": st.spot,
                }
                for st in steps
            ]
        click.echo(json.dumps(doc))
        return
    click.echo(f"outcome: {outcome.render()}")
    if trace:
        for st in steps:
            spot = "X" if st.spot is None else str(st.spot)
            click.echo(
                f"car {st.car}: pref {st.preferred}"
                f" back {_spots_text(st.backward_checks)}"
                f" fwd {_spots_text(st.forward_checks)} -> {spot}"
            )


def _classification(pref: ParkingPreference, k: int) -> dict:
    prof = excess(pref)
    complete = pref.n >= 2 and is_complete(pref)
    naples = is_k_naples(pref, k)
    return {
        "preference": list(pref.prefs),
        "n": pref.n,
        "k": k,
        "parking_function": is_parking_function(pref),
        "k_naples": naples,
        "complete": complete,
        "complete_k_naples": complete and naples,
        "perm_invariant": is_permutation_invariant(pref, k),
        "excess": list(prof.values),
        "critical_intervals": [list(iv) for iv in prof.intervals],
        "max_excess": prof.max_excess,
        "min_naples_k": minimal_naples_k(pref),
    }


_CHECKABLE = ("parking_function", "k_naples", "complete", "complete_k_naples", "perm_invariant")


@main.command()
@click.option("-p", "--preference", required=True)
@click.option("-k", "--window", type=int, default=0, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.option(
    "--expect",
    default=None,
    help="exit 1 unless this predicate holds (e.g. k-naples, parking-function)",
)
def classify(preference: str, window: int, as_json: bool, expect: str | None) -> None:
    """Classify a preference: parking function, k-Naples, complete, invariant."""
    pref = _parse_preference(preference)
    if window < 0:
        raise click.UsageError(f"backward window must be >= 0, got {window}")
    doc = _classification(pref, window)
    if as_json:
        click.echo(json.dumps(doc))
    else:
        for key in (
            "parking_function",
            "k_naples",
            "complete",
            "complete_k_naples",
            "perm_invariant",
        ):
            click.echo(f"{key}: {'true' if doc[key] else 'false'}")
        click.echo(f"max_excess: {doc['max_excess']}")
        click.echo(f"excess: {','.join(str(u) for u in doc['excess'])}")
        intervals = " ".join(f"[{p},{q}]" for p, q in doc["critical_intervals"])
        click.echo(f"critical_intervals: {intervals or '-'}")
        click.echo(f"min_naples_k: {doc['min_naples_k']}")
    if expect is not None:
        name = expect.strip().lower().replace("-", "_")
        if name not in _CHECKABLE:
            raise click.UsageError(
                f"unknown predicate {expect!r}; choose from {', '.join(_CHECKABLE)}"
            )
        if not doc[name]:
            sys.exit(_EXIT_PREDICATE_FALSE)


def _witness_doc(cert) -> dict:
    return {
        "interval": list(cert.interval),
        "indices": list(cert.indices),
        "shifted_restriction": list(cert.shifted_restriction.prefs),
    }


@main.command()
@click.option("-p", "--preference", required=True)
@click.option("-k", "--window", type=int, required=True)
@click.option("--all", "all_witnesses", is_flag=True, help="enumerate every witness")
@click.option("--json", "as_json", is_flag=True)
def witness(preference: str, window: int, all_witnesses: bool, as_json: bool) -> None:
    """Show, per critical interval, a witness subset certifying membership."""
    pref = _parse_preference(preference)
    if window < 1:
        raise click.UsageError(f"witness extraction needs a window >= 1, got {window}")
    try:
        prof = excess(pref)
        entries = []
        for iv in prof.intervals:
            cert = find_witness(pref, window, iv)
            entry = {"interval": list(iv), "witness": cert}
            if all_witnesses:
                entry["all_witnesses"] = enumerate_witnesses(pref, window, iv)
            entries.append(entry)
    except ParkingError as exc:
        raise click.UsageError(str(exc)) from exc
    naples = is_k_naples(pref, window)
    if as_json:
        doc = {
            "preference": list(pref.prefs),
            "n": pref.n,
            "k": window,
            "k_naples": naples,
            "intervals": [
                {
                    "interval": e["interval"],
                    "witness": _witness_doc(e["witness"]) if e["witness"] else None,
                    **(
                        {"all_witnesses": [_witness_doc(c) for c in e["all_witnesses"]]}
                        if all_witnesses
                        else {}
                    ),
                }
                for e in entries
            ],
        }
        click.echo(json.dumps(doc))
        return
    click.echo(f"k_naples: {'true' if naples else 'false'}")
    if not entries:
        click.echo("no critical intervals")
        return
    for e in entries:
        p, q = e["interval"]
        cert = e["witness"]
        if cert is None:
            click.echo(f"interval [{p},{q}]: FAIL no witness")
        else:
            ids = ",".join(str(i) for i in cert.indices)
            click.echo(
                f"interval [{p},{q}]: PASS J={{{ids}}}"
                f" shifted={cert.shifted_restriction.render()}"
            )
        if all_witnesses:
            for cert2 in e["all_witnesses"]:
                ids = ",".join(str(i) for i in cert2.indices)
                click.echo(
                    f"  witness J={{{ids}}} shifted={cert2.shifted_restriction.render()}"
                )


@main.command()
@click.option("-p", "--preference", required=True)
@click.option("-j", "--position", type=int, required=True, help="split position (excess must be 0)")
@click.option("--json", "as_json", is_flag=True)
def decompose(preference: str, position: int, as_json: bool) -> None:
    """Split a preference at a zero of the excess into lower and upper parts."""
    pref = _parse_preference(preference)
    try:
        lower, upper = decompose_at(pref, position)
    except (ParkingError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    if as_json:
        click.echo(
            json.dumps(
                {
                    "preference": list(pref.prefs),
                    "position": position,
                    "lower": list(lower.prefs) if lower else [],
                    "upper": list(upper.prefs),
                }
            )
        )
        return
    click.echo(f"lower: {lower.render() if lower else '-'}")
    click.echo(f"upper: {upper.render()}")


@main.command()
@click.option("-n", "--length", "n", type=int, required=True)
@click.option("-k", "--window", type=int, default=None, help="single window value")
@click.option("--k-max", type=int, default=None, help="sweep windows 0..k-max instead")
@click.option("--predicates", default=None, help=f"comma list from: {','.join(PREDICATES)}")
@click.option("--shards", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.option("--allow-large", is_flag=True, help="permit n = 9")
@click.option("--classes", is_flag=True, help="also count invariant multiset classes")
def count(
    n: int,
    window: int | None,
    k_max: int | None,
    predicates: str | None,
    shards: int,
    fmt: str,
    output: str | None,
    allow_large: bool,
    classes: bool,
) -> None:
    """Count predicate hits over all n^n preferences."""
    if window is not None and k_max is not None:
        raise click.UsageError("give either -k or --k-max, not both")
    ks = [window] if window is not None else list(range(0, (k_max if k_max is not None else n) + 1))
    names = tuple(PREDICATES)
    if predicates:
        names = tuple(t.strip() for t in predicates.split(","))
    try:
        reports = [
            sweep(n, k, predicates=names, shards=shards, allow_large=allow_large)
            for k in ks
        ]
    except (ParkingError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    rows = []
    for rep in reports:
        elapsed_ms = round(rep.elapsed * 1000.0, 3)
        for name in names:
            rows.append((rep.n, rep.k, name, rep.counts[name], rep.total, elapsed_ms))
        if classes:
            rows.append(
                (
                    rep.n,
                    rep.k,
                    "perm_invariant_classes",
                    count_perm_invariant_fast(rep.n, rep.k, by_class=True),
                    rep.total,
                    elapsed_ms,
                )
            )
    if fmt == "json":
        doc = [
            {
                "n": rep.n,
                "k": rep.k,
                "total": rep.total,
                "shards": rep.shards,
                "elapsed_ms": round(rep.elapsed * 1000.0, 3),
                "counts": dict(rep.counts),
            }
            for rep in reports
        ]
        if classes:
            for entry in doc:
                entry["counts"]["perm_invariant_classes"] = count_perm_invariant_fast(
                    entry["n"], entry["k"], by_class=True
                )
        _echo_doc({"reports": doc}, output)
        return
    lines = ["n,k,predicate,count,total,elapsed_ms"]
    lines += [",".join(str(v) for v in row) for row in rows]
    text = "\n".join(lines)
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@main.command(name="sweep")
@click.option("--n-max", type=int, default=4, show_default=True)
@click.option("--k-max", type=int, default=None, help="defaults to n for each length")
@click.option("--verify", is_flag=True, help="machine-check every registered invariant")
@click.option("--json", "as_json", is_flag=True)
def sweep_cmd(n_max: int, k_max: int | None, verify: bool, as_json: bool) -> None:
    """Sweep all lengths up to n-max; with --verify, hunt for counterexamples."""
    if n_max < 1:
        raise click.UsageError(f"need n-max >= 1, got {n_max}")
    if not verify:
        doc = []
        for n in range(1, n_max + 1):
            for k in range(0, min(k_max if k_max is not None else n, n) + 1):
                rep = sweep(n, k)
                doc.append(
                    {
                        "n": n,
                        "k": k,
                        "total": rep.total,
                        "shards": rep.shards,
                        "elapsed_ms": round(rep.elapsed * 1000.0, 3),
                        "counts": dict(rep.counts),
                    }
                )
                if not as_json:
                    counts = " ".join(f"{name}={rep.counts[name]}" for name in rep.counts)
                    click.echo(f"n={n} k={k} total={rep.total} {counts}")
        if as_json:
            click.echo(json.dumps({"reports": doc}))
        return
    for n in range(1, n_max + 1):
        ks = range(1, min(k_max if k_max is not None else n, n) + 1)
        ce = verify_sweep(n, ks=list(ks))
        if ce is not None:
            if as_json:
                click.echo(
                    json.dumps(
                        {
                            "verified": False,
                            "counterexample": {
                                "preference": list(ce.pref.prefs),
                                "n": ce.n,
                                "k": ce.k,
                                "property": ce.property_name,
                            },
                        }
                    )
                )
            else:
                click.echo(
                    f"counterexample: {ce.pref.render()}"
                    f" (n={ce.n}, k={ce.k}, property={ce.property_name})"
                )
            sys.exit(_EXIT_COUNTEREXAMPLE)
        if not as_json:
            click.echo(f"n={n}: all invariants hold")
    violation = find_monotone_window_violation(min(n_max, 4))
    if violation is not None:
        if as_json:
            click.echo(
                json.dumps(
                    {
                        "verified": False,
                        "counterexample": {
                            "preference": list(violation.pref.prefs),
                            "n": violation.pref.n,
                            "windows": list(violation.windows),
                            "car": violation.car,
                            "property": "monotone_windows",
                        },
                    }
                )
            )
        else:
            click.echo(
                f"counterexample: {violation.pref.render()}"
                f" (windows={','.join(str(w) for w in violation.windows)},"
                f" car={violation.car}, property=monotone_windows)"
            )
        sys.exit(_EXIT_COUNTEREXAMPLE)
    if as_json:
        click.echo(json.dumps({"verified": True, "counterexample": None}))
    else:
        click.echo("verified: no counterexamples")


if __name__ == "__main__":
    main()
