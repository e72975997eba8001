"""Exit criteria. Each test records one PASS/FAIL line shown in the terminal summary."""

import itertools
import random
import time
import xml.etree.ElementTree as ET
from fractions import Fraction


from pappus_chain.chain import (
    ChainVariant,
    Circle,
    Point,
    chain_circle,
    corollaries_check,
    eq3_coeffs,
    eq3_height,
    eq3_residue,
    expected_base_tangency,
    expected_neighbor_tangency,
    line_through_centers,
    tangency_classify,
    theorem1_check,
    theorem1_point,
    theorem2_check,
    configure_chain,
)
from pappus_chain.cli import run_cli
from pappus_chain.errors import DegenerateGeometryError
from pappus_chain.inversive import InversionMap, Line, invert, ladder_chain_circle, orthogonal_power
from pappus_chain.render import element_budget, preset_figure
from pappus_chain.verify import grid_specs


F = Fraction
BOUND = 8
IDX = range(-BOUND, BOUND + 1)
GRID = grid_specs()


def symmetric_gamma(spec):
    return spec.variant is ChainVariant.GAMMA and spec.a == spec.b


def _clear_caches():
    chain_circle.cache_clear()
    eq3_coeffs.cache_clear()
    eq3_height.cache_clear()


def test_1_pappus_invariant(criterion):
    _clear_caches()
    start = time.perf_counter()
    failures = 0
    for spec in GRID:
        for n in IDX:
            c = chain_circle(spec, n).circle
            failures += c.center.y != 2 * n * c.radius
    elapsed = time.perf_counter() - start
    criterion(f"{len(GRID) * len(IDX)} members, {failures} failures, {elapsed:.3f}s")
    assert failures == 0
    assert elapsed < 1.0


def test_2_theorem1(criterion):
    _clear_caches()
    start = time.perf_counter()
    checked = failures = 0
    skipped = []
    for spec in GRID:
        for i, n in itertools.product(IDX, repeat=2):
            try:
                res = theorem1_check(spec, i, n)
            except DegenerateGeometryError:
                skipped.append((spec, i, n))
                continue
            checked += 1
            failures += not res.holds
    elapsed = time.perf_counter() - start
    spot = theorem1_check(configure_chain(1, 1, "alpha"), 1, 3)
    criterion(f"{checked} checked, {failures} failures, {len(skipped)} skipped degenerate, {elapsed:.3f}s")
    assert failures == 0
    assert all(symmetric_gamma(s) and i == 0 for s, i, _ in skipped)
    assert len(skipped) == sum(symmetric_gamma(s) for s in GRID) * len(IDX)
    assert spot.lhs == spot.rhs == F(8, 11)
    assert elapsed < 5.0


def test_3_eq3_consistency(criterion):
    checked = failures = 0
    for spec in GRID:
        for i, j in itertools.product(IDX, repeat=2):
            if i == j:
                continue
            checked += 1
            ok = eq3_coeffs(spec, i, j) == line_through_centers(spec, i, j)
            ok = ok and all(eq3_residue(spec, i, j, chain_circle(spec, k).center) == 0 for k in (i, j))
            failures += not ok
    spot = eq3_coeffs(configure_chain(1, 1, "alpha"), 0, 1)
    criterion(f"{checked} lines, {failures} failures; spot {spot}")
    assert failures == 0
    assert (spot.coef_a, spot.coef_b, spot.coef_c) == (4, 3, -4)


def test_4_theorem2(criterion):
    checked = failures = 0
    skipped = set()
    for spec in GRID:
        for i, j in itertools.product(IDX, repeat=2):
            if i == j or i + j == 0:
                continue
            for n in IDX:
                try:
                    res = theorem2_check(spec, i, j, n)
                except DegenerateGeometryError:
                    skipped.add(spec)
                    continue
                checked += 1
                failures += not res.holds  # includes h*(i+j) = 2(n^2+ij)*r_n
    spot = theorem2_check(configure_chain(1, 1, "alpha"), 0, 1, 2)
    criterion(
        f"{checked} checked, {failures} failures; undefined (l_ij is the vertical x = x_n) "
        f"for {len(skipped)} symmetric gamma configurations",
    )
    assert failures == 0
    assert skipped == {s for s in GRID if symmetric_gamma(s)}
    assert spot.lhs == spot.rhs == F(4, 3)


def test_5_corollaries(criterion):
    checked = failures = 0
    for spec in GRID:
        if symmetric_gamma(spec):
            continue
        for i, j, n in itertools.product(IDX, repeat=3):
            if i == j:
                continue
            for res in corollaries_check(spec, i, j, n):
                checked += 1
                failures += not res.holds
    spot = {r.identity_name: r for r in corollaries_check(configure_chain(1, 1, "alpha"), 0, 1, 2)}
    criterion(f"{checked} clauses, {failures} failures; spot d(2)-d(-2) = {spot['corollary2'].lhs}")
    assert failures == 0
    assert spot["corollary2"].lhs == spot["corollary2"].rhs == F(-8, 3)
    assert spot["corollary1_i"].lhs == F(4, 3)


def test_6_oracle_equivalence(criterion):
    checked = failures = 0
    for spec in GRID:
        for n in IDX:
            table = chain_circle(spec, n)
            powers = [F(1)] if n == 0 else [F(1), orthogonal_power(spec.anchor_p1, table.circle)]
            for t in powers:
                checked += 1
                failures += ladder_chain_circle(spec, n, t) != table
    criterion(f"{checked} ladder constructions, {failures} mismatches")
    assert failures == 0


def test_7_tangency(criterion):
    checked = failures = 0
    for spec in GRID:
        bases = spec.base_circles()
        for n in IDX:
            member = chain_circle(spec, n).circle
            for name in spec.tangent_pair_names:
                checked += 1
                failures += tangency_classify(member, bases[name]) is not expected_base_tangency(spec, n, name)
            if n < BOUND:
                checked += 1
                nxt = chain_circle(spec, n + 1).circle
                failures += tangency_classify(member, nxt) is not expected_neighbor_tangency(spec, n)
    criterion(f"{checked} contacts, {failures} failures")
    assert failures == 0


def _rat(rng, positive=False):
    lo = 1 if positive else -50
    return F(rng.randint(lo, 50), rng.randint(1, 50))


def _point(rng):
    return Point(_rat(rng), _rat(rng))


def test_8_inversion_properties(criterion):
    rng = random.Random(20261014)
    involution_fail = fixing_fail = 0
    samples = 1000
    for _ in range(samples):
        m = InversionMap(_point(rng), _rat(rng, positive=True))
        p = _point(rng)
        while p == m.center:
            p = _point(rng)
        c = Circle(_point(rng), _rat(rng, positive=True))
        # a circle through the center along a rational direction, and its image line
        ux, uy = _rat(rng), _rat(rng)
        while ux == uy == 0:
            ux, uy = _rat(rng), _rat(rng)
        rho, n2 = _rat(rng, positive=True), ux * ux + uy * uy
        through = Circle(
            Point(m.center.x + rho * (ux * ux - uy * uy) / n2, m.center.y + rho * 2 * ux * uy / n2), rho
        )
        line = invert(m, through)
        objs = [p, c, through, line]
        involution_fail += any(invert(m, invert(m, x)) != x for x in objs)
        involution_fail += not isinstance(line, Line)

        target = Circle(_point(rng), _rat(rng, positive=True))
        center = _point(rng)
        while center.dist2(target.center) <= target.radius ** 2:
            center = _point(rng)
        fixing_fail += invert(InversionMap(center, orthogonal_power(center, target)), target) != target
    criterion(f"{samples} samples: {involution_fail} involution failures, {fixing_fail} fixing failures")
    assert involution_fail == 0 and fixing_fail == 0


def test_9_figures(tmp_path, criterion):
    notes = []
    ok = True
    for preset in ("fig1", "fig2", "fig3"):
        outs = []
        for k in range(2):
            path = tmp_path / f"{preset}_{k}.svg"
            ok &= run_cli(["figure", "--preset", preset, "--out", str(path)]) == 0
            outs.append(path.read_bytes())
        root = ET.fromstring(outs[0])
        ns = "{http://www.w3.org/2000/svg}"
        drawn = len(list(root.iter(ns + "circle"))) + len(list(root.iter(ns + "line")))
        budget = element_budget(preset_figure(preset))
        ok &= outs[0] == outs[1] and drawn == budget
        notes.append(f"{preset} {drawn}/{budget}")
    fig2 = ET.fromstring((tmp_path / "fig2_0.svg").read_bytes())
    (h,) = [e for e in fig2.iter("{http://www.w3.org/2000/svg}circle") if e.get("data-label") == "H1(3)"]
    spec = preset_figure("fig2").chain
    want = theorem1_point(spec, 1, 3)
    ok &= float(h.get("cx")) == float(want.x) and float(h.get("cy")) == float(-want.y)
    criterion("elements " + ", ".join(notes) + ", byte-identical reruns")
    assert ok
