"""HTTP service for the evaluate-revise loop.

All endpoints live under ``/api/v1`` and read from one immutable project
snapshot, so every response is internally consistent with the revision
number it carries (``X-Revision`` header, plus a ``revision`` field on
JSON envelopes).  ``POST /revisions`` swaps in a complete new snapshot or
leaves everything untouched.
"""
from __future__ import annotations

from datetime import date

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from fourd.bundle import BundleState, ProjectBundle
from fourd.errors import FourdError
from fourd.schedule import query_starting_between, query_starting_on, sort_table
from fourd.scene import build_scene, export_scene, scene_document, scene_sequence
from fourd.takeoff import build_boq


def _parse_date(value: str | None, name: str) -> date:
    if not value:
        raise ValueError(f"missing {name!r} date parameter")
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise ValueError(f"bad {name!r} date {value!r}; expected YYYY-MM-DD") from None


def _times_row(t) -> dict:
    return {
        "activity_id": t.activity_id,
        "name": t.name,
        "duration": t.duration,
        "es": t.es,
        "ef": t.ef,
        "ls": t.ls,
        "lf": t.lf,
        "total_float": t.total_float,
        "free_float": t.free_float,
        "is_critical": t.is_critical,
    }


def create_app(bundle: ProjectBundle) -> FastAPI:
    app = FastAPI(title="fourd", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"],
        expose_headers=["X-Revision"],
    )
    app.state.bundle = bundle

    @app.exception_handler(ValueError)
    async def on_value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(FourdError)
    async def on_engine_error(request: Request, exc: FourdError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    def respond(state: BundleState, payload: dict, status_code: int = 200) -> JSONResponse:
        return JSONResponse(status_code=status_code, content=payload,
                            headers={"X-Revision": str(state.revision)})

    @app.get("/api/v1/project")
    async def get_project():
        state = bundle.current()
        p = state.project
        return respond(state, {
            "name": p.name,
            "revision": state.revision,
            "project_start": p.calendar.project_start.isoformat(),
            "project_end": p.project_end.isoformat(),
            "project_duration": p.cpm.project_duration,
            "activity_count": len(p.schedule),
            "critical_activity_ids": list(p.cpm.critical_activity_ids),
            "layers": [layer.name for layer in p.layers],
            "validation": p.validation.to_dict(),
            "linkage": p.linkage.to_dict(),
            "merge_warnings": list(p.merge_warnings),
            "extrusion_issues": [
                {"feature_index": i.feature_index, "activity_id": i.activity_id,
                 "message": i.message}
                for i in p.extrusion_issues
            ],
        })

    @app.get("/api/v1/schedule")
    async def get_schedule(sort: str = "activity_id", order: str = "asc",
                           promote: str = ""):
        state = bundle.current()
        promoted = frozenset(p.strip() for p in promote.split(",") if p.strip())
        rows = sort_table(state.project.cpm, sort, order, promoted)
        return respond(state, {
            "revision": state.revision,
            "sort": sort,
            "order": order,
            "promoted": sorted(promoted),
            "rows": [_times_row(t) for t in rows],
        })

    @app.get("/api/v1/scene")
    async def get_scene(date: str = ""):
        state = bundle.current()
        p = state.project
        on = _parse_date(date, "date")
        snapshot = build_scene(p.cpm, p.calendar, p.element_meshes, on)
        return Response(content=export_scene(snapshot, "scene_json"),
                        media_type="application/json",
                        headers={"X-Revision": str(state.revision)})

    @app.get("/api/v1/scenes")
    async def get_scenes(request: Request, step: int = 1):
        state = bundle.current()
        p = state.project
        start = _parse_date(request.query_params.get("from"), "from")
        end = _parse_date(request.query_params.get("to"), "to")
        snapshots = scene_sequence(p.cpm, p.calendar, p.element_meshes,
                                   start, end, step)
        return respond(state, {
            "revision": state.revision,
            "scenes": [scene_document(s) for s in snapshots],
        })

    @app.get("/api/v1/activities/{activity_id}")
    async def get_activity(activity_id: str):
        state = bundle.current()
        p = state.project
        times = p.cpm.by_id.get(activity_id)
        if times is None:
            return JSONResponse(status_code=404,
                                content={"error": f"unknown activity {activity_id!r}"},
                                headers={"X-Revision": str(state.revision)})
        prisms = p.activity_prisms(activity_id)
        related = (p.resource_relate.lookup(activity_id)
                   if p.resource_relate is not None else ())
        quantities = {
            "volume_m3": sum(pr.volume for pr in prisms),
            "footprint_m2": sum(pr.footprint_area for pr in prisms),
            "wall_area_m2": sum(pr.wall_area for pr in prisms),
            "length_m": sum(pr.base_length for pr in prisms),
            "point_count": sum(pr.point_count for pr in prisms),
        }
        return respond(state, {
            "revision": state.revision,
            "activity": _times_row(times),
            "has_geometry": activity_id in p.element_meshes,
            "prism_kinds": sorted({pr.kind for pr in prisms}),
            "quantities": quantities,
            "resources": [dict(r) for r in related],
        })

    @app.get("/api/v1/queries/starting_on")
    async def get_starting_on(date: str = ""):
        state = bundle.current()
        p = state.project
        on = _parse_date(date, "date")
        ids = query_starting_on(p.cpm, p.calendar, on)
        return respond(state, {"revision": state.revision,
                               "date": on.isoformat(), "activity_ids": ids})

    @app.get("/api/v1/queries/starting_between")
    async def get_starting_between(request: Request):
        state = bundle.current()
        p = state.project
        start = _parse_date(request.query_params.get("from"), "from")
        end = _parse_date(request.query_params.get("to"), "to")
        ids = query_starting_between(p.cpm, p.calendar, start, end)
        return respond(state, {"revision": state.revision,
                               "from": start.isoformat(), "to": end.isoformat(),
                               "activity_ids": ids})

    @app.get("/api/v1/boq")
    async def get_boq():
        state = bundle.current()
        p = state.project
        lines, report = build_boq(list(p.prisms), list(p.resources))
        return respond(state, {
            "revision": state.revision,
            "lines": [
                {"activity_id": ln.activity_id, "item": ln.item, "unit": ln.unit,
                 "quantity": ln.quantity, "unit_rate": ln.unit_rate,
                 "amount": ln.amount}
                for ln in lines
            ],
            "report": report.to_dict(),
            "grand_total": report.grand_total,
        })

    @app.post("/api/v1/revisions")
    async def post_revision(request: Request):
        body = await request.body()
        result = bundle.submit_revision(body.decode("utf-8"))
        payload = {
            "accepted": result.accepted,
            "revision": result.revision,
            "errors": list(result.errors),
            "validation": result.validation.to_dict() if result.validation else None,
            "diff": result.diff.to_dict() if result.diff else None,
            "linkage": result.linkage.to_dict() if result.linkage else None,
        }
        return JSONResponse(status_code=200 if result.accepted else 422,
                            content=payload,
                            headers={"X-Revision": str(result.revision)})

    return app


def serve(bundle: ProjectBundle, host: str, port: int, log_level: str = "info") -> None:
    import uvicorn

    uvicorn.run(create_app(bundle), host=host, port=port,
                log_level=log_level.lower())
