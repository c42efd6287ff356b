"""Johnson bound and size formulas for the code families, in exact integer
arithmetic."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BadParams, GuardViolation


def johnson(q: int, n: int, d: int, k: int) -> int:
    """Iterated-floor bound, innermost factor (q^(n-k+d/2)-1)/(q^(d/2)-1) first."""
    if d % 2 or d < 2 or d > 2 * k or k > n or k < 1 or q < 2:
        raise BadParams(f"invalid bound query q={q} n={n} d={d} k={k}")
    val = 1
    for i in range(d // 2, k + 1):
        val = (q ** (n - k + i) - 1) * val // (q**i - 1)
    return val


# --- stage and family sizes -----------------------------------------------------


def rrt_size(q: int, k: int) -> int:
    return ((q - 1) // 2) * (q ** (2 * k) - 1) // (q - 1)


def zhang_size(q: int, k: int, p: int) -> int:
    ell = (p - 3) // 2
    return q**k * (q ** ((ell + 1) * k) - 1) * (q ** (p * k) - 1) // (q**k - 1)


def stage_size(q: int, m: int, ratio: int) -> int:
    return rrt_size(q, m) if ratio == 2 else zhang_size(q, m, ratio)


def tower_size(q: int, k: int, stages: Sequence[int]) -> int:
    """Product of the stage sizes along the tower (innermost stage first)."""
    size, m = 1, k
    for r in stages:
        size *= stage_size(q, m, r)
        m *= r
    return size


def predicted_size(desc: dict) -> int:
    """Size promised for a construction descriptor (family + parameters)."""
    from .constructions import plan_tower

    fam = desc["family"]
    q, k = desc["q"], desc["k"]
    if fam in ("rrt", "nested2e", "mixed") and q < 3:
        raise GuardViolation(f"q = {q}: the two-block construction needs q >= 3")
    if fam in ("zhang", "nestedpe", "multiprime", "mixed") and k < 2:
        raise GuardViolation(f"k = {k}: the odd-prime construction needs k >= 2")
    if fam == "rrt":
        return rrt_size(q, k)
    if fam == "zhang":
        return zhang_size(q, k, desc["p"])
    if fam == "nested2e":
        return tower_size(q, k, [2] * desc["e"])
    if fam == "nestedpe":
        return tower_size(q, k, [desc["p"]] * desc["e"])
    plan = plan_tower(q, k, e=desc.get("e", 0) if fam == "mixed" else 0,
                      blocks=desc.get("blocks", ()), ordering=desc.get("ordering", "descending"))
    return tower_size(q, k, plan.stages)


# --- earlier constructions ---------------------------------------------------------


def table1_size(i: int, q: int, k: int, r: int) -> int:
    """Sizes S1..S5 of the earlier constructions in G_q(rk, k)."""
    if i == 1:
        if r != 2:
            raise GuardViolation("S1 requires n = 2k")
        if q <= 2:
            raise GuardViolation("S1 requires q > 2")
        return ((q - 1) // 2) * (q ** (2 * k) - 1) // (q - 1)
    if i == 2:
        if r != 4:
            raise GuardViolation("S2 requires n = 4k")
        return ((q**k - 2) // 2) * (q**k - 1) * (q ** (4 * k) - 1)
    if i == 3:
        if r < 3:
            raise GuardViolation("S3 requires r >= 3")
        ell = -(-r // 2) - 2
        return q**k * (q ** ((ell + 1) * k) - 1) // (q**k - 1) * (q ** (r * k) - 1)
    if i in (4, 5):
        if r % 2 == 0 or r < 5:
            raise GuardViolation(f"S{i} requires r = 2h+1 with h >= 2")
        h = (r - 1) // 2
        N = q ** (r * k) - 1
        if i == 4:
            return h * ((q**k - 1) ** h * N + (q**k - 1) ** (h - 1) * N // (q - 1))
        return h * q**k * (q**k - 1) ** (h - 1) * N + N // (q**k - 1)
    raise BadParams(f"no size formula S{i}")


# --- reports -------------------------------------------------------------------------


def family_stages(family: str, r: int) -> list[int]:
    """Default tower for n = rk: odd primes descending innermost, then the 2-power block."""
    fac = _factor(r)
    odd = sorted((p for p in fac if p != 2), reverse=True)
    return [p for p in odd for _ in range(fac[p])] + [2] * fac.get(2, 0)


def _factor(r: int) -> dict[int, int]:
    out: dict[int, int] = {}
    f = 2
    while f * f <= r:
        while r % f == 0:
            out[f] = out.get(f, 0) + 1
            r //= f
        f += 1
    if r > 1:
        out[r] = out.get(r, 0) + 1
    return out


@dataclass
class ComparisonRow:
    q: int
    k: int
    r: int
    family: str
    size: int
    johnson: int
    ratio: Fraction
    s: dict = field(default_factory=dict)  # i -> int or guard message

    def csv_cells(self) -> list[str]:
        cells = [str(self.q), str(self.k), str(self.r), self.family, str(self.size), str(self.johnson), f"{float(self.ratio):.6f}"]
        for i in range(1, 6):
            v = self.s.get(i)
            cells.append(str(v) if isinstance(v, int) else "")
        return cells

    def to_json(self) -> dict:
        return {
            "q": self.q, "k": self.k, "r": self.r, "family": self.family,
            "size": str(self.size), "johnson": str(self.johnson),
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "ratio_decimal": f"{float(self.ratio):.6f}",
            "s": {f"s{i}": (str(v) if isinstance(v, int) else {"guard": v}) for i, v in sorted(self.s.items())},
        }


CSV_COLUMNS = ["q", "k", "r", "family", "size", "johnson", "ratio", "s1", "s2", "s3", "s4", "s5"]


def comparison_row(q: int, k: int, r: int, include: Iterable[int] = (1, 2, 3, 4, 5)) -> ComparisonRow:
    stages = family_stages("", r)
    if 2 in stages and q < 3:
        raise GuardViolation(f"q = {q}: even r needs q >= 3")
    if any(s != 2 for s in stages) and k < 2:
        raise GuardViolation(f"k = {k}: odd prime factors need k >= 2")
    size = tower_size(q, k, stages)
    J = johnson(q, r * k, 2 * k - 2, k) if k >= 2 else johnson(q, r * k, 2, k)
    s = {}
    for i in include:
        try:
            s[i] = table1_size(i, q, k, r)
        except GuardViolation as exc:
            s[i] = str(exc)
    fam = "*".join(f"{p}^{stages.count(p)}" for p in sorted(set(stages), reverse=True))
    return ComparisonRow(q, k, r, fam, size, J, Fraction(size, J), s)


def ratio_report(points: Iterable[tuple[int, int, int]], include: Iterable[int] = (1, 2, 3, 4, 5)) -> list[ComparisonRow]:
    rows = []
    for q, k, r in points:
        try:
            rows.append(comparison_row(q, k, r, include))
        except GuardViolation:
            continue
    return rows


def increasing(values: Sequence) -> bool:
    return all(a < b for a, b in zip(values, values[1:]))


def rows_to_csv(rows: Sequence[ComparisonRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow(row.csv_cells())
    return buf.getvalue()
