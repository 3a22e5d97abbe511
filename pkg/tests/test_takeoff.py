"""Quantity mapping and bill-of-quantities assembly."""
import random

import pytest

from fourd.errors import TakeoffError
from fourd.extrusion import Mesh, Prism
from fourd.takeoff import (
    BoqLine,
    ResourceItem,
    boq_to_csv,
    build_boq,
    quantity_for,
)

EMPTY_MESH = Mesh((), ())


def block(aid, volume, footprint):
    return Prism(activity_id=aid, kind="block", mesh=EMPTY_MESH, base_z=0,
                 top_z=1, volume=volume, footprint_area=footprint)


def wall(aid, area, length):
    return Prism(activity_id=aid, kind="wall", mesh=EMPTY_MESH, base_z=0,
                 top_z=1, wall_area=area, base_length=length)


def column(aid, count):
    return Prism(activity_id=aid, kind="column", mesh=EMPTY_MESH, base_z=0,
                 top_z=1, point_count=count)


def item(aid, name, unit, rate, manual=None):
    return ResourceItem(activity_id=aid, item=name, unit=unit, unit_rate=rate,
                        manual_quantity=manual)


class TestQuantityFor:
    def test_block_volume(self):
        assert quantity_for(block("A", 3.0, 1.0), "m3") == 3.0

    def test_wall_area_and_length(self):
        w = wall("A", 10.0, 4.0)
        assert quantity_for(w, "m2") == 10.0
        assert quantity_for(w, "m") == 4.0

    def test_block_footprint(self):
        assert quantity_for(block("A", 3.0, 1.5), "m2") == 1.5

    def test_column_count(self):
        assert quantity_for(column("A", 4), "count") == 4.0

    def test_incompatible_pair(self):
        with pytest.raises(TakeoffError, match="incompatible unit 'm' for block"):
            quantity_for(block("A", 3.0, 1.0), "m")
        with pytest.raises(TakeoffError, match="incompatible"):
            quantity_for(column("A", 2), "m3")

    def test_manual_never_derives(self):
        with pytest.raises(TakeoffError, match="manual"):
            quantity_for(block("A", 3.0, 1.0), "manual")


class TestBuildBoq:
    def test_single_line(self):
        lines, report = build_boq([block("A", 3.0, 1.0)],
                                  [item("A", "Concrete", "m3", 100.0)])
        assert lines == [BoqLine("A", "Concrete", "m3", 3.0, 100.0, 300.0)]
        assert report.grand_total == 300.0
        assert report.omitted_activities == ()

    def test_duplicate_pair_reported_and_priced(self):
        lines, report = build_boq(
            [block("A", 3.0, 1.0)],
            [item("A", "Concrete", "m3", 100.0), item("A", "Concrete", "m3", 100.0)])
        assert len(lines) == 2
        assert report.duplicate_items == (("A", "Concrete"),)
        assert report.grand_total == 600.0

    def test_omission_reported(self):
        lines, report = build_boq([block("A", 3.0, 1.0), block("B", 1.0, 1.0)],
                                  [item("A", "Concrete", "m3", 100.0)])
        assert report.omitted_activities == ("B",)

    def test_resource_without_prism(self):
        lines, report = build_boq([], [item("A", "Concrete", "m3", 10.0)])
        assert report.unmatched_resources == (("A", "Concrete"),)
        assert lines[0].quantity == 0.0

    def test_manual_quantity(self):
        lines, report = build_boq([], [item("A", "Lump sum", "manual", 5000.0,
                                            manual=2.0)])
        assert lines[0].quantity == 2.0
        assert report.grand_total == 10000.0
        assert report.unmatched_resources == ()

    def test_unit_mismatch_reported_not_fatal(self):
        lines, report = build_boq([column("A", 3)], [item("A", "Concrete", "m3", 10.0)])
        assert lines[0].quantity == 0.0
        assert len(report.unit_mismatches) == 1

    def test_mixed_kinds_sum_compatible(self):
        prisms = [block("A", 2.0, 1.0), block("A", 3.0, 2.0), wall("A", 7.0, 3.0)]
        lines, _ = build_boq(prisms, [item("A", "Concrete", "m3", 1.0)])
        assert lines[0].quantity == 5.0  # walls ignored for m3

    def test_lines_sorted(self):
        lines, _ = build_boq(
            [block("B", 1.0, 1.0), block("A", 1.0, 1.0)],
            [item("B", "Z", "m3", 1.0), item("B", "A", "m3", 1.0),
             item("A", "M", "m3", 1.0)])
        assert [(ln.activity_id, ln.item) for ln in lines] == \
            [("A", "M"), ("B", "A"), ("B", "Z")]


class TestProperties:
    def _random_case(self, rng):
        prisms = []
        items = []
        for i in range(rng.randint(1, 8)):
            aid = f"A{i}"
            prisms.append(block(aid, rng.uniform(0.5, 20), rng.uniform(1, 10)))
            for j in range(rng.randint(0, 3)):
                items.append(item(aid, f"item{j}", "m3", rng.uniform(1, 500)))
        return prisms, items

    def test_total_permutation_invariant(self):
        rng = random.Random(808)
        for _ in range(20):
            prisms, items = self._random_case(rng)
            _, base = build_boq(prisms, items)
            rng.shuffle(prisms)
            rng.shuffle(items)
            _, shuffled = build_boq(prisms, items)
            assert shuffled.grand_total == pytest.approx(base.grand_total, rel=1e-9)

    def test_total_equals_independent_recomputation(self):
        rng = random.Random(809)
        prisms, items = self._random_case(rng)
        lines, report = build_boq(prisms, items)
        volumes = {p.activity_id: 0.0 for p in prisms}
        for p in prisms:
            volumes[p.activity_id] += p.volume
        expected = sum(volumes[i.activity_id] * i.unit_rate for i in items)
        assert report.grand_total == pytest.approx(expected, rel=1e-9)

    def test_rate_scaling(self):
        rng = random.Random(810)
        prisms, items = self._random_case(rng)
        _, base = build_boq(prisms, items)
        scaled = [item(i.activity_id, i.item, i.unit, i.unit_rate * 3.0)
                  for i in items]
        _, big = build_boq(prisms, scaled)
        assert big.grand_total == pytest.approx(3.0 * base.grand_total, rel=1e-12)


class TestCsv:
    def test_total_row(self):
        lines, report = build_boq([block("A", 3.0, 1.0)],
                                  [item("A", "Concrete", "m3", 100.0)])
        text = boq_to_csv(lines, report)
        rows = text.strip().splitlines()
        assert rows[0] == "Activity_ID,Item,Unit,Quantity,Unit_Rate,Amount"
        assert rows[-1].startswith("TOTAL")
        assert rows[-1].endswith("300.0")
