"""Verification checks on a code, producing JSON-ready records."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import BudgetExceeded, DuplicateOrbits
from .orbits import (
    DEFAULT_BUDGET,
    Budget,
    CyclicCode,
    code_min_distance,
    code_size,
    duplicate_orbit_pairs,
    is_sidon,
    sampled_distance_check,
)

CHECKS = ("size", "distance", "fulllength", "sidon", "inequivalence")


@dataclass
class Mode:
    kind: str  # "exhaustive" or "sampled"
    samples: int = 0

    @classmethod
    def parse(cls, text: str) -> "Mode":
        if text == "exhaustive":
            return cls("exhaustive")
        if text.startswith("sampled:"):
            n = int(float(text.split(":", 1)[1]))
            if n <= 0:
                raise ValueError("sample count must be positive")
            return cls("sampled", n)
        raise ValueError(f"unknown mode {text!r}")


def _record(check, mode, passed, expected, measured, witnesses, t0, **extra):
    rec = {
        "check": check,
        "mode": mode,
        "result": "pass" if passed else "fail",
        "expected": expected,
        "measured": measured,
        "witnesses": witnesses,
        "elapsed": round(time.perf_counter() - t0, 3),
    }
    rec.update(extra)
    return rec


def check_inequivalence(code: CyclicCode) -> dict:
    t0 = time.perf_counter()
    dups = duplicate_orbit_pairs([r.rep for r in code.reps])
    return _record("inequivalence", "exhaustive", not dups, 0, len(dups), [list(d) for d in dups[:10]], t0)


def check_fulllength(code: CyclicCode) -> dict:
    t0 = time.perf_counter()
    bad = [i for i, r in enumerate(code.reps) if r.stab_degree != 1]
    return _record(
        "fulllength", "exhaustive", not bad, True, not bad,
        [{"rep": i, "stab_degree": code.reps[i].stab_degree} for i in bad[:10]], t0,
    )


def check_sidon(code: CyclicCode) -> dict:
    t0 = time.perf_counter()
    wits = []
    for i, r in enumerate(code.reps):
        ok, a = is_sidon(r.rep)
        if not ok:
            wits.append({"rep": i, "alpha_log": a})
    return _record("sidon", "exhaustive", not wits, True, not wits, wits[:10], t0)


def check_size(code: CyclicCode, mode: Mode, budget: Budget) -> dict:
    t0 = time.perf_counter()
    try:
        formula = code_size(code, "formula")
    except DuplicateOrbits as exc:
        return _record("size", "exhaustive", False, code.predicted_size, None,
                       [list(p) for p in exc.pairs[:10]], t0, note=str(exc))
    measured = {"formula": formula}
    if mode.kind == "exhaustive":
        try:
            measured["enumerate"] = code_size(code, "enumerate", budget)
        except BudgetExceeded as exc:
            measured["enumerate"] = None
            measured["enumerate_skipped"] = str(exc)
    values = [v for key, v in measured.items() if key in ("formula", "enumerate") and v is not None]
    passed = len(set(values)) == 1 and (code.predicted_size is None or values[0] == code.predicted_size)
    return _record("size", "exhaustive", passed, code.predicted_size, measured, [], t0)


def check_distance(code: CyclicCode, mode: Mode, budget: Budget, seed: int | None, threads: int) -> dict:
    t0 = time.perf_counter()
    expected = code.predicted_min_distance
    if mode.kind == "exhaustive":
        res = code_min_distance(code, budget=budget, threads=threads)
        passed = expected is None or res.distance == expected
        wit = [] if res.witness is None else [{"i": res.witness[0], "j": res.witness[1], "alpha_log": res.witness[2],
                                               "intersection": res.max_intersection}]
        return _record("distance", "exhaustive", passed, expected, res.distance, wit, t0,
                       method=res.method, pairs=res.pairs_checked)
    if seed is None:
        raise ValueError("sampled mode needs an explicit seed")
    target = code.k - (expected if expected is not None else 2 * code.k - 2) // 2
    rep = sampled_distance_check(code, target, mode.samples, seed, threads=threads)
    wit = [] if rep.worst is None else [{"intersection": rep.worst[0], "i": rep.worst[1], "j": rep.worst[2],
                                         "alpha_log": rep.worst[3]}]
    note = f"no violation found at {rep.samples} samples" if rep.violations == 0 else f"{rep.violations} violations"
    return _record("distance", "sampled", rep.violations == 0, expected, note, wit, t0,
                   seed=seed, samples=rep.samples)


def run_checks(
    code: CyclicCode,
    checks=CHECKS,
    mode: Mode | None = None,
    seed: int | None = None,
    threads: int = 1,
    budget: Budget = DEFAULT_BUDGET,
) -> list[dict]:
    mode = mode or Mode("exhaustive")
    out = []
    for c in checks:
        if c == "size":
            out.append(check_size(code, mode, budget))
        elif c == "distance":
            out.append(check_distance(code, mode, budget, seed, threads))
        elif c == "fulllength":
            out.append(check_fulllength(code))
        elif c == "sidon":
            out.append(check_sidon(code))
        elif c == "inequivalence":
            out.append(check_inequivalence(code))
        else:
            raise ValueError(f"unknown check {c!r}")
    return out
