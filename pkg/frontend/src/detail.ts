/** Activity inspection panel: CPM row, resources, prism quantities. */
import type { ActivityDetail } from './types.js';

function fmt(value: number): string {
    return Number.isInteger(value) ? String(value) : value.toFixed(3);
}

export class DetailPanel {
    constructor(private readonly root: HTMLElement) {}

    clear(): void {
        this.root.innerHTML = '<p class="hint">Select an activity</p>';
    }

    showError(message: string): void {
        this.root.innerHTML = `<p class="error">${message}</p>`;
    }

    render(detail: ActivityDetail): void {
        const a = detail.activity;
        const quantityRows = [
            ['Volume', `${fmt(detail.quantities.volume_m3)} m³`],
            ['Footprint', `${fmt(detail.quantities.footprint_m2)} m²`],
            ['Wall area', `${fmt(detail.quantities.wall_area_m2)} m²`],
            ['Length', `${fmt(detail.quantities.length_m)} m`],
            ['Points', String(detail.quantities.point_count)],
        ]
            .map(([k, v]) => `<tr><td>${k}</td><td>${v}</td></tr>`)
            .join('');
        const resources = detail.resources.length
            ? detail.resources
                  .map((r) => `<li>${r['Item']} — ${r['Unit']} @ ${r['Unit_Rate']}</li>`)
                  .join('')
            : '<li class="hint">no resource rows</li>';
        const badge = detail.has_geometry
            ? ''
            : '<span class="badge warn">no spatial representation</span>';
        const critical = a.is_critical ? '<span class="badge critical">critical</span>' : '';
        this.root.innerHTML = `
            <h3>${a.activity_id} — ${a.name} ${critical} ${badge}</h3>
            <table class="cpm">
                <tr><td>ES/EF</td><td>${a.es} / ${a.ef}</td></tr>
                <tr><td>LS/LF</td><td>${a.ls} / ${a.lf}</td></tr>
                <tr><td>Float (total/free)</td><td>${a.total_float} / ${a.free_float}</td></tr>
                <tr><td>Duration</td><td>${a.duration} d</td></tr>
            </table>
            <h4>Quantities</h4>
            <table class="quantities">${quantityRows}</table>
            <h4>Resources</h4>
            <ul class="resources">${resources}</ul>`;
    }
}
