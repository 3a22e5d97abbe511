"""CPM schedule: parsing, network validation, solving, and queries.

Activities use finish-to-start, zero-lag precedence and whole-day
durations.  Day offsets map to calendar dates through a consecutive-day
calendar (no working-day exclusions).
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from datetime import date, timedelta

from fourd.errors import CyclicNetworkError, ScheduleParseError

CSV_HEADER = ("Activity_ID", "Name", "Duration", "Predecessors")
SORT_FIELDS = ("es", "ef", "ls", "lf", "total_float", "free_float",
               "duration", "activity_id")


@dataclass(frozen=True)
class Activity:
    activity_id: str
    name: str
    duration: int
    predecessors: frozenset[str]


@dataclass(frozen=True)
class Schedule:
    activities: tuple[Activity, ...]

    def __len__(self) -> int:
        return len(self.activities)

    def __iter__(self):
        return iter(self.activities)

    @property
    def by_id(self) -> dict[str, Activity]:
        return {a.activity_id: a for a in self.activities}

    def ids(self) -> tuple[str, ...]:
        return tuple(a.activity_id for a in self.activities)


@dataclass(frozen=True)
class ValidationReport:
    unknown_references: tuple[tuple[str, str], ...] = ()  # (activity, missing pred)
    cycles: tuple[tuple[str, ...], ...] = ()
    empty: bool = False

    @property
    def is_valid(self) -> bool:
        return not (self.unknown_references or self.cycles or self.empty)

    def messages(self) -> list[str]:
        out = []
        if self.empty:
            out.append("schedule is empty")
        for act, missing in self.unknown_references:
            out.append(f"activity {act!r} references unknown predecessor {missing!r}")
        for cycle in self.cycles:
            out.append("dependency cycle: " + " -> ".join(cycle))
        return out

    def to_dict(self) -> dict:
        return {
            "is_valid": self.is_valid,
            "empty": self.empty,
            "unknown_references": [list(p) for p in self.unknown_references],
            "cycles": [list(c) for c in self.cycles],
        }


@dataclass(frozen=True)
class ActivityTimes:
    activity_id: str
    name: str
    duration: int
    es: int
    ef: int
    ls: int
    lf: int
    total_float: int
    free_float: int
    is_critical: bool


@dataclass(frozen=True)
class CpmResult:
    times: tuple[ActivityTimes, ...]  # schedule order
    project_duration: int
    critical_activity_ids: tuple[str, ...]

    @property
    def by_id(self) -> dict[str, ActivityTimes]:
        return {t.activity_id: t for t in self.times}


@dataclass(frozen=True)
class ProjectCalendar:
    """Consecutive-day calendar: day offset d is project_start + d days."""

    project_start: date

    def date_of(self, offset: int) -> date:
        return self.project_start + timedelta(days=offset)

    def offset_of(self, d: date) -> int:
        return (d - self.project_start).days


# ---------------------------------------------------------------------------
# parsing

def parse_schedule(csv_text: str) -> Schedule:
    """Parse schedule CSV (``Activity_ID,Name,Duration,Predecessors``).

    Predecessors are semicolon-separated.  Errors name the offending
    1-based line number (the header is line 1).
    """
    reader = csv.reader(io.StringIO(csv_text))
    try:
        header = next(reader)
    except StopIteration:
        raise ScheduleParseError("empty file: missing header") from None
    if tuple(h.strip() for h in header) != CSV_HEADER:
        raise ScheduleParseError(
            f"bad header at line 1: expected {','.join(CSV_HEADER)}")
    activities: list[Activity] = []
    seen: set[str] = set()
    for line_no, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 4:
            raise ScheduleParseError(
                f"malformed row at line {line_no}: expected 4 columns, got {len(row)}")
        raw_id, name, raw_duration, raw_preds = (cell.strip() for cell in row)
        if not raw_id:
            raise ScheduleParseError(f"empty Activity_ID at line {line_no}")
        if raw_id in seen:
            raise ScheduleParseError(f"duplicate Activity_ID {raw_id!r} at line {line_no}")
        seen.add(raw_id)
        try:
            duration = int(raw_duration)
        except ValueError:
            raise ScheduleParseError(
                f"non-integer duration {raw_duration!r} at line {line_no}") from None
        if duration < 0:
            raise ScheduleParseError(f"negative duration at line {line_no}")
        preds = frozenset(p.strip() for p in raw_preds.split(";") if p.strip())
        if raw_id in preds:
            raise ScheduleParseError(f"self-referential predecessor at line {line_no}")
        activities.append(Activity(raw_id, name, duration, preds))
    return Schedule(tuple(activities))


# ---------------------------------------------------------------------------
# network validation

def validate_network(schedule: Schedule) -> ValidationReport:
    """Report unknown predecessor references, cycles, and emptiness."""
    ids = set(schedule.ids())
    unknown = []
    for a in schedule:
        for p in sorted(a.predecessors):
            if p not in ids:
                unknown.append((a.activity_id, p))

    cycles = _find_cycles(schedule)
    return ValidationReport(
        unknown_references=tuple(unknown),
        cycles=tuple(cycles),
        empty=len(schedule) == 0,
    )


def _find_cycles(schedule: Schedule) -> list[tuple[str, ...]]:
    """One representative cycle per strongly connected component of size > 1."""
    ids = set(schedule.ids())
    succ: dict[str, list[str]] = {i: [] for i in ids}
    for a in schedule:
        for p in a.predecessors:
            if p in ids:
                succ[p].append(a.activity_id)
    for lst in succ.values():
        lst.sort()

    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    counter = [0]
    sccs: list[list[str]] = []

    def strongconnect(v: str) -> None:
        work = [(v, iter(succ[v]))]
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        while work:
            node, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                if len(comp) > 1:
                    sccs.append(comp)

    for v in sorted(ids):
        if v not in index:
            strongconnect(v)

    cycles = []
    for comp in sccs:
        cycles.append(_order_cycle(comp, succ))
    cycles.sort()
    return cycles


def _order_cycle(component: list[str], succ: dict[str, list[str]]) -> tuple[str, ...]:
    """Walk the component from its smallest id along in-component successors."""
    members = set(component)
    start = min(component)
    order = [start]
    seen = {start}
    node = start
    while True:
        nxt = next((w for w in succ[node] if w in members and w not in seen), None)
        if nxt is None:
            break
        order.append(nxt)
        seen.add(nxt)
        node = nxt
    return tuple(order)


# ---------------------------------------------------------------------------
# CPM

def _topological_order(schedule: Schedule) -> list[Activity]:
    by_id = schedule.by_id
    indeg = {a.activity_id: len([p for p in a.predecessors if p in by_id])
             for a in schedule}
    succ: dict[str, list[str]] = {a.activity_id: [] for a in schedule}
    for a in schedule:
        for p in a.predecessors:
            if p in succ:
                succ[p].append(a.activity_id)
    ready = [a.activity_id for a in schedule if indeg[a.activity_id] == 0]
    order: list[Activity] = []
    while ready:
        nid = ready.pop()
        order.append(by_id[nid])
        for s in succ[nid]:
            indeg[s] -= 1
            if indeg[s] == 0:
                ready.append(s)
    if len(order) != len(schedule):
        stuck = sorted(i for i, d in indeg.items() if d > 0)
        raise CyclicNetworkError(f"network contains a cycle involving: {', '.join(stuck)}")
    return order


def compute_cpm(schedule: Schedule) -> CpmResult:
    """Forward/backward pass over the precedence network.

    Expects a schedule that passed :func:`validate_network`; cyclic input
    is re-checked defensively and raises :class:`CyclicNetworkError`.
    """
    if len(schedule) == 0:
        return CpmResult(times=(), project_duration=0, critical_activity_ids=())
    by_id = schedule.by_id
    order = _topological_order(schedule)

    succ: dict[str, list[str]] = {a.activity_id: [] for a in schedule}
    for a in schedule:
        for p in a.predecessors:
            if p in succ:
                succ[p].append(a.activity_id)

    es: dict[str, int] = {}
    ef: dict[str, int] = {}
    for a in order:
        preds = [p for p in a.predecessors if p in by_id]
        es[a.activity_id] = max((ef[p] for p in preds), default=0)
        ef[a.activity_id] = es[a.activity_id] + a.duration

    project_duration = max(ef.values())

    ls: dict[str, int] = {}
    lf: dict[str, int] = {}
    for a in reversed(order):
        aid = a.activity_id
        lf[aid] = min((ls[s] for s in succ[aid]), default=project_duration)
        ls[aid] = lf[aid] - a.duration

    times = []
    for a in schedule:
        aid = a.activity_id
        total_float = ls[aid] - es[aid]
        free_float = min((es[s] for s in succ[aid]), default=project_duration) - ef[aid]
        times.append(ActivityTimes(
            activity_id=aid,
            name=a.name,
            duration=a.duration,
            es=es[aid],
            ef=ef[aid],
            ls=ls[aid],
            lf=lf[aid],
            total_float=total_float,
            free_float=free_float,
            is_critical=total_float == 0,
        ))
    critical = tuple(t.activity_id for t in sorted(
        (t for t in times if t.is_critical), key=lambda t: (t.es, t.activity_id)))
    return CpmResult(times=tuple(times), project_duration=project_duration,
                     critical_activity_ids=critical)


# ---------------------------------------------------------------------------
# temporal and tabular queries

def query_starting_on(result: CpmResult, calendar: ProjectCalendar,
                      on: date) -> list[str]:
    """Activity ids whose early start falls exactly on the given date."""
    if on < calendar.project_start:
        raise ValueError(f"date before project start: {on.isoformat()}")
    offset = calendar.offset_of(on)
    return sorted(t.activity_id for t in result.times if t.es == offset)


def query_starting_between(result: CpmResult, calendar: ProjectCalendar,
                           start: date, end: date) -> list[str]:
    """Activity ids with early start in the closed date interval."""
    if start > end:
        raise ValueError(
            f"invalid interval: {start.isoformat()} > {end.isoformat()}")
    lo = calendar.offset_of(start)
    hi = calendar.offset_of(end)
    hits = [t for t in result.times if lo <= t.es <= hi]
    hits.sort(key=lambda t: (t.es, t.activity_id))
    return [t.activity_id for t in hits]


def sort_table(result: CpmResult, sort_field: str, order: str = "asc",
               promoted: frozenset[str] | set[str] = frozenset()) -> list[ActivityTimes]:
    """Schedule table sorted on one column, promoted rows first.

    Promoted rows are sorted by the same key among themselves; ties always
    break by activity_id ascending.
    """
    if sort_field not in SORT_FIELDS:
        raise ValueError(f"unknown sort field {sort_field!r}")
    if order not in ("asc", "desc"):
        raise ValueError(f"unknown sort order {order!r}")
    reverse = order == "desc"

    def key(t: ActivityTimes):
        return getattr(t, sort_field)

    def sort_rows(rows):
        rows = sorted(rows, key=lambda t: t.activity_id)
        return sorted(rows, key=key, reverse=reverse)

    top = sort_rows(t for t in result.times if t.activity_id in promoted)
    rest = sort_rows(t for t in result.times if t.activity_id not in promoted)
    return top + rest


def cpm_to_csv(result: CpmResult) -> str:
    """CPM result as CSV: ``Activity_ID,ES,EF,LS,LF,TF,FF,Critical``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["Activity_ID", "ES", "EF", "LS", "LF", "TF", "FF", "Critical"])
    for t in result.times:
        writer.writerow([t.activity_id, t.es, t.ef, t.ls, t.lf,
                         t.total_float, t.free_float,
                         "true" if t.is_critical else "false"])
    return buf.getvalue()
