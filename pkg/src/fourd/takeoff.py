"""Quantity takeoff and bill of quantities.

Quantities derive from prism dimensions according to the resource item's
unit: m3 is block volume, m2 block footprint or wall face, m wall base
length, count column points; ``manual`` rows carry their own quantity.
The BOQ surfaces omissions and duplications instead of fixing them.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from fourd.errors import TakeoffError
from fourd.extrusion import Prism
from fourd.linkage import AttributeTable

UNITS = ("m3", "m2", "m", "count", "manual")
RESOURCE_HEADER = ("Activity_ID", "Item", "Unit", "Unit_Rate", "Manual_Quantity")


@dataclass(frozen=True)
class ResourceItem:
    activity_id: str
    item: str
    unit: str
    unit_rate: float
    manual_quantity: float | None = None


@dataclass(frozen=True)
class BoqLine:
    activity_id: str
    item: str
    unit: str
    quantity: float
    unit_rate: float
    amount: float


@dataclass(frozen=True)
class TakeoffReport:
    omitted_activities: tuple[str, ...]       # prisms but no resource rows
    duplicate_items: tuple[tuple[str, str], ...]
    unmatched_resources: tuple[tuple[str, str], ...]  # no prism for activity
    unit_mismatches: tuple[tuple[str, str, str], ...]  # (activity, item, reason)
    grand_total: float

    def to_dict(self) -> dict:
        return {
            "omitted_activities": list(self.omitted_activities),
            "duplicate_items": [list(p) for p in self.duplicate_items],
            "unmatched_resources": [list(p) for p in self.unmatched_resources],
            "unit_mismatches": [list(p) for p in self.unit_mismatches],
            "grand_total": self.grand_total,
        }


def resources_from_table(table: AttributeTable) -> list[ResourceItem]:
    """Validate a resource table (header per RESOURCE_HEADER) into items."""
    missing = [h for h in RESOURCE_HEADER if h not in table.field_names()]
    if missing:
        raise TakeoffError(f"resource table missing columns: {', '.join(missing)}")
    items = []
    for i, row in enumerate(table.rows, start=2):
        aid = row.get("Activity_ID")
        item = row.get("Item")
        unit = row.get("Unit")
        rate = row.get("Unit_Rate")
        manual = row.get("Manual_Quantity")
        if aid is None or item is None:
            raise TakeoffError(f"resource row {i}: Activity_ID and Item are required")
        if unit not in UNITS:
            raise TakeoffError(f"resource row {i}: unknown unit {unit!r}")
        if rate is None or not isinstance(rate, (int, float)) or rate < 0:
            raise TakeoffError(f"resource row {i}: Unit_Rate must be a number >= 0")
        if unit == "manual":
            if manual is None:
                raise TakeoffError(f"resource row {i}: manual unit requires Manual_Quantity")
        elif manual is not None:
            raise TakeoffError(f"resource row {i}: Manual_Quantity only valid with unit 'manual'")
        items.append(ResourceItem(activity_id=str(aid), item=str(item), unit=str(unit),
                                  unit_rate=float(rate),
                                  manual_quantity=None if manual is None else float(manual)))
    return items


def quantity_for(prism: Prism, unit: str) -> float:
    """The prism measure selected by unit; errors on incompatible pairs."""
    if unit == "m3":
        if prism.kind != "block":
            raise TakeoffError(f"incompatible unit 'm3' for {prism.kind}")
        return prism.volume
    if unit == "m2":
        if prism.kind == "block":
            return prism.footprint_area
        if prism.kind == "wall":
            return prism.wall_area
        raise TakeoffError(f"incompatible unit 'm2' for {prism.kind}")
    if unit == "m":
        if prism.kind != "wall":
            raise TakeoffError(f"incompatible unit 'm' for {prism.kind}")
        return prism.base_length
    if unit == "count":
        if prism.kind != "column":
            raise TakeoffError(f"incompatible unit 'count' for {prism.kind}")
        return float(prism.point_count)
    if unit == "manual":
        raise TakeoffError("manual quantities do not derive from geometry")
    raise TakeoffError(f"unknown unit {unit!r}")


def _activity_quantity(prisms: list[Prism], unit: str) -> float:
    """Sum the unit's measure over the compatible prisms of one activity."""
    total = 0.0
    matched = False
    for prism in prisms:
        try:
            total += quantity_for(prism, unit)
            matched = True
        except TakeoffError:
            continue
    if not matched:
        kinds = sorted({p.kind for p in prisms})
        raise TakeoffError(
            f"incompatible unit {unit!r} for geometry kinds: {', '.join(kinds)}")
    return total


def build_boq(prisms: list[Prism],
              resources: list[ResourceItem]) -> tuple[list[BoqLine], TakeoffReport]:
    """One priced line per resource row, plus the omission/duplication report."""
    by_activity: dict[str, list[Prism]] = {}
    for prism in prisms:
        if prism.activity_id is not None:
            by_activity.setdefault(prism.activity_id, []).append(prism)

    lines: list[BoqLine] = []
    unmatched: list[tuple[str, str]] = []
    mismatches: list[tuple[str, str, str]] = []
    pair_counts: dict[tuple[str, str], int] = {}
    for item in resources:
        pair = (item.activity_id, item.item)
        pair_counts[pair] = pair_counts.get(pair, 0) + 1
        if item.unit == "manual":
            quantity = item.manual_quantity or 0.0
        elif item.activity_id not in by_activity:
            quantity = 0.0
            unmatched.append(pair)
        else:
            try:
                quantity = _activity_quantity(by_activity[item.activity_id], item.unit)
            except TakeoffError as exc:
                quantity = 0.0
                mismatches.append((item.activity_id, item.item, str(exc)))
        lines.append(BoqLine(activity_id=item.activity_id, item=item.item,
                             unit=item.unit, quantity=quantity,
                             unit_rate=item.unit_rate,
                             amount=quantity * item.unit_rate))

    lines.sort(key=lambda ln: (ln.activity_id, ln.item))
    covered = {item.activity_id for item in resources}
    omitted = tuple(sorted(aid for aid in by_activity if aid not in covered))
    duplicates = tuple(sorted(p for p, n in pair_counts.items() if n > 1))
    report = TakeoffReport(
        omitted_activities=omitted,
        duplicate_items=duplicates,
        unmatched_resources=tuple(sorted(set(unmatched))),
        unit_mismatches=tuple(sorted(mismatches)),
        grand_total=sum(ln.amount for ln in lines),
    )
    return lines, report


def boq_to_csv(lines: list[BoqLine], report: TakeoffReport) -> str:
    """BOQ as CSV with a final TOTAL row."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["Activity_ID", "Item", "Unit", "Quantity", "Unit_Rate", "Amount"])
    for ln in lines:
        writer.writerow([ln.activity_id, ln.item, ln.unit,
                         repr(ln.quantity), repr(ln.unit_rate), repr(ln.amount)])
    writer.writerow(["TOTAL", "", "", "", "", repr(report.grand_total)])
    return buf.getvalue()
