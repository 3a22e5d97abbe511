"""Command-line interface.

    fourd validate <manifest>
    fourd cpm <manifest> [-o FILE]
    fourd boq <manifest> [-o FILE]
    fourd scene <manifest> --date D [--format scene_json|gltf_like] -o FILE
    fourd serve <manifest> --bind ADDR:PORT

Log level comes from the FOURD_LOG environment variable; everything else
is flags.
"""
from __future__ import annotations

import logging
import os
import sys
from datetime import date

import click

from fourd.bundle import load_bundle
from fourd.errors import FourdError
from fourd.schedule import cpm_to_csv
from fourd.scene import build_scene, export_scene
from fourd.takeoff import boq_to_csv, build_boq

log = logging.getLogger("fourd")


def _setup_logging() -> None:
    level = os.environ.get("FOURD_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


@click.group()
def main() -> None:
    """4D construction scheduling engine."""
    _setup_logging()


def _load(manifest: str):
    try:
        return load_bundle(manifest)
    except FourdError as exc:
        raise click.ClickException(str(exc)) from exc


@main.command()
@click.argument("manifest", type=click.Path(exists=True))
def validate(manifest: str) -> None:
    """Check the network and the schedule/geometry linkage."""
    bundle = _load(manifest)
    project = bundle.current().project
    click.echo(f"project: {project.name}")
    click.echo(f"activities: {len(project.schedule)}; "
               f"project duration: {project.cpm.project_duration} days")
    click.echo("network: valid")
    for warning in project.merge_warnings:
        click.echo(f"merge warning: {warning}")
    for issue in project.extrusion_issues:
        click.echo(f"extrusion issue: feature {issue.feature_index} "
                   f"({issue.activity_id}): {issue.message}")
    report = project.linkage
    for aid in report.unlinked_activities:
        click.echo(f"unlinked activity (no geometry): {aid}")
    for layer, idx, aid in report.orphan_features:
        click.echo(f"orphan feature: layer {layer!r} feature {idx} "
                   f"references {aid!r}")
    for aid, occ in report.duplicate_linkages:
        where = ", ".join(f"{layer}[{idx}]" for layer, idx in occ)
        click.echo(f"duplicate linkage: {aid} appears in {where}")
    if report.complete:
        click.echo("linkage: complete")
    else:
        click.echo("linkage: INCOMPLETE")
        sys.exit(1)


@main.command()
@click.argument("manifest", type=click.Path(exists=True))
@click.option("-o", "--output", type=click.Path(), default=None,
              help="Write CSV here instead of stdout.")
def cpm(manifest: str, output: str | None) -> None:
    """Solve the CPM network and emit the times table as CSV."""
    bundle = _load(manifest)
    text = cpm_to_csv(bundle.current().project.cpm)
    _write_text(text, output)


@main.command()
@click.argument("manifest", type=click.Path(exists=True))
@click.option("-o", "--output", type=click.Path(), default=None,
              help="Write CSV here instead of stdout.")
def boq(manifest: str, output: str | None) -> None:
    """Derive the bill of quantities from geometry and resource rates."""
    bundle = _load(manifest)
    project = bundle.current().project
    lines, report = build_boq(list(project.prisms), list(project.resources))
    _write_text(boq_to_csv(lines, report), output)
    for aid in report.omitted_activities:
        click.echo(f"omission: activity {aid} has geometry but no resource items",
                   err=True)
    for aid, item in report.duplicate_items:
        click.echo(f"duplicate: ({aid}, {item}) priced more than once", err=True)
    for aid, item in report.unmatched_resources:
        click.echo(f"no geometry: resource ({aid}, {item}) has no prism", err=True)


@main.command()
@click.argument("manifest", type=click.Path(exists=True))
@click.option("--date", "on", required=True, help="Snapshot date (YYYY-MM-DD).")
@click.option("--format", "fmt", default="scene_json",
              type=click.Choice(["scene_json", "gltf_like"]))
@click.option("-o", "--output", type=click.Path(), default=None,
              help="Write the scene here instead of stdout.")
def scene(manifest: str, on: str, fmt: str, output: str | None) -> None:
    """Export the dated 3D scene snapshot."""
    bundle = _load(manifest)
    project = bundle.current().project
    try:
        when = date.fromisoformat(on)
        snapshot = build_scene(project.cpm, project.calendar,
                               project.element_meshes, when)
        data = export_scene(snapshot, fmt)
    except (FourdError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc
    if output:
        with open(output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.write(b"\n")


@main.command()
@click.argument("manifest", type=click.Path(exists=True))
@click.option("--bind", default="127.0.0.1:8000", show_default=True,
              help="ADDR:PORT to listen on.")
def serve(manifest: str, bind: str) -> None:
    """Serve the project over HTTP for the viewer."""
    from fourd.service import serve as run_service

    bundle = _load(manifest)
    host, _, port_text = bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise click.ClickException(f"bad --bind {bind!r}; expected ADDR:PORT")
    level = os.environ.get("FOURD_LOG", "info")
    run_service(bundle, host, int(port_text), log_level=level)


def _write_text(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":
    main()
