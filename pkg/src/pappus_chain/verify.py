"""Verification sweeps over index ranges and the fixed (a, b) grid."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Iterator

from .chain import (
    ChainSpec,
    ChainVariant,
    CheckResult,
    Tangency,
    chain_circle,
    configure_chain,
    corollaries_check,
    eq3_coeffs,
    eq3_residue,
    expected_base_tangency,
    expected_neighbor_tangency,
    line_through_centers,
    pappus_check,
    tangency_classify,
    theorem1_check,
    theorem2_check,
)
from .errors import DegenerateGeometryError
from .inversive import ladder_chain_circle, orthogonal_power

GRID_VALUES = tuple(Fraction(v) for v in ("1", "1/2", "2", "3/2", "5/3", "7/2"))
DEFAULT_BOUND = 8

IDENTITIES = (
    "pappus",
    "tangency",
    "oracle",
    "theorem1",
    "eq3",
    "theorem2",
    "corollary",
)


def grid_specs(variants: Iterable[ChainVariant] | None = None) -> list[ChainSpec]:
    variants = list(variants or ChainVariant)
    return [
        configure_chain(a, b, v)
        for v in variants
        for a, b in itertools.product(GRID_VALUES, repeat=2)
    ]


@dataclass
class Tally:
    checked: int = 0
    passed: int = 0
    skipped: int = 0

    @property
    def failed(self) -> int:
        return self.checked - self.passed

    def merge(self, other: "Tally"):
        self.checked += other.checked
        self.passed += other.passed
        self.skipped += other.skipped

    def to_dict(self):
        return {
            "checked": self.checked,
            "passed": self.passed,
            "failed": self.failed,
            "skipped_degenerate": self.skipped,
        }


@dataclass
class SweepReport:
    tallies: dict[str, Tally] = field(default_factory=lambda: {k: Tally() for k in IDENTITIES})
    failures: list[CheckResult] = field(default_factory=list)
    skipped: list[dict[str, Any]] = field(default_factory=list)
    configurations: list[dict[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, group: str, result: CheckResult):
        t = self.tallies[group]
        t.checked += 1
        if result.holds:
            t.passed += 1
        else:
            self.failures.append(result)

    def skip(self, group: str, params: dict[str, Any], reason: str):
        self.tallies[group].skipped += 1
        self.skipped.append({"identity": group, "parameters": params, "reason": reason})

    def merge(self, other: "SweepReport"):
        for k, t in other.tallies.items():
            self.tallies[k].merge(t)
        self.failures.extend(other.failures)
        self.skipped.extend(other.skipped)
        self.configurations.extend(other.configurations)

    def to_dict(self, max_skipped: int | None = None) -> dict[str, Any]:
        skipped = self.skipped if max_skipped is None else self.skipped[:max_skipped]
        return {
            "ok": self.ok,
            "configurations": self.configurations,
            "counts": {k: t.to_dict() for k, t in self.tallies.items()},
            "failures": [f.to_dict() for f in self.failures],
            "skipped": skipped,
        }


def _circle_match(name: str, params, got, want) -> CheckResult:
    gc, wc = got.circle, want.circle
    return CheckResult(
        name,
        params,
        gc.radius,
        wc.radius,
        (
            CheckResult(name + "_x", params, gc.center.x, wc.center.x),
            CheckResult(name + "_y", params, gc.center.y, wc.center.y),
        ),
    )


def _tangency_result(spec, params, c1, c2, kind: Tangency) -> CheckResult:
    r1, r2 = c1.geometric_radius, c2.geometric_radius
    want = (r1 + r2) ** 2 if kind is Tangency.EXTERNAL else (r1 - r2) ** 2
    out = CheckResult("tangency", {**params, "kind": kind.value}, c1.center.dist2(c2.center), want)
    if out.holds and tangency_classify(c1, c2) is not kind:
        return CheckResult("tangency", {**params, "kind": kind.value}, out.lhs, want + 1)
    return out


def _indices(bound: int) -> range:
    return range(-bound, bound + 1)


def pappus_results(spec: ChainSpec, bound: int) -> Iterator[CheckResult]:
    for n in _indices(bound):
        yield pappus_check(spec, n)


def tangency_results(spec: ChainSpec, bound: int) -> Iterator[CheckResult]:
    bases = spec.base_circles()
    for n in _indices(bound):
        member = chain_circle(spec, n).circle
        for name in spec.tangent_pair_names:
            params = {**spec.describe(), "n": n, "other": name}
            yield _tangency_result(spec, params, member, bases[name], expected_base_tangency(spec, n, name))
        if n < bound:
            nxt = chain_circle(spec, n + 1).circle
            params = {**spec.describe(), "n": n, "other": f"delta[{n + 1}]"}
            yield _tangency_result(spec, params, member, nxt, expected_neighbor_tangency(spec, n))


def oracle_results(spec: ChainSpec, bound: int) -> Iterator[CheckResult]:
    for n in _indices(bound):
        table = chain_circle(spec, n)
        params = {**spec.describe(), "n": n, "power": "1"}
        yield _circle_match("oracle", params, ladder_chain_circle(spec, n, 1), table)
        if n != 0:
            k2 = orthogonal_power(spec.anchor_p1, table.circle)
            params = {**spec.describe(), "n": n, "power": "orthogonal"}
            yield _circle_match("oracle", params, ladder_chain_circle(spec, n, k2), table)


def eq3_results(spec: ChainSpec, bound: int) -> Iterator[CheckResult]:
    for i, j in itertools.product(_indices(bound), repeat=2):
        if i == j:
            continue
        params = {**spec.describe(), "i": i, "j": j}
        closed = eq3_coeffs(spec, i, j)
        two_point = line_through_centers(spec, i, j)
        details = tuple(
            CheckResult(f"eq3_{k}", params, getattr(closed, k), getattr(two_point, k))
            for k in ("coef_a", "coef_b", "coef_c")
        ) + tuple(
            CheckResult(f"eq3_residue_{m}", params, eq3_residue(spec, i, j, chain_circle(spec, m).center), Fraction(0))
            for m in (i, j)
        )
        yield CheckResult("eq3", params, Fraction(0), Fraction(0), details)


def sweep_spec(spec: ChainSpec, bound: int = DEFAULT_BOUND) -> SweepReport:
    """Run the whole identity suite for one configuration."""
    rep = SweepReport(configurations=[spec.describe()])
    for res in pappus_results(spec, bound):
        rep.record("pappus", res)
    for res in tangency_results(spec, bound):
        rep.record("tangency", res)
    for res in oracle_results(spec, bound):
        rep.record("oracle", res)
    for res in eq3_results(spec, bound):
        rep.record("eq3", res)
    idx = _indices(bound)
    for i, n in itertools.product(idx, repeat=2):
        try:
            rep.record("theorem1", theorem1_check(spec, i, n))
        except DegenerateGeometryError as exc:
            rep.skip("theorem1", {**spec.describe(), "i": i, "n": n}, str(exc))
    for i, j in itertools.product(idx, repeat=2):
        if i == j:
            continue
        for n in idx:
            params = {**spec.describe(), "i": i, "j": j, "n": n}
            if i + j != 0:
                try:
                    rep.record("theorem2", theorem2_check(spec, i, j, n))
                except DegenerateGeometryError as exc:
                    rep.skip("theorem2", params, str(exc))
            try:
                for res in corollaries_check(spec, i, j, n):
                    rep.record("corollary", res)
            except DegenerateGeometryError as exc:
                rep.skip("corollary", params, str(exc))
    return rep


def _sweep_args(args):
    return sweep_spec(*args)


def sweep(specs: Iterable[ChainSpec], bound: int = DEFAULT_BOUND, jobs: int = 1) -> SweepReport:
    """Sweep several configurations; results are merged in input order."""
    specs = list(specs)
    total = SweepReport()
    total.configurations = []
    if jobs > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_sweep_args, [(s, bound) for s in specs]))
    else:
        parts = [sweep_spec(s, bound) for s in specs]
    for part in parts:
        total.merge(part)
    return total
