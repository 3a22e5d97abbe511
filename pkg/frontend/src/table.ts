/** Schedule table: rendering follows server order exactly (no client sort). */
import type { SchedulePage } from './types.js';

const COLUMNS: { key: string; label: string }[] = [
    { key: 'activity_id', label: 'Activity' },
    { key: 'name', label: 'Name' },
    { key: 'duration', label: 'Dur' },
    { key: 'es', label: 'ES' },
    { key: 'ef', label: 'EF' },
    { key: 'ls', label: 'LS' },
    { key: 'lf', label: 'LF' },
    { key: 'total_float', label: 'TF' },
    { key: 'free_float', label: 'FF' },
];

export interface TableCallbacks {
    onSort(field: string): void;
    onSelect(activityId: string): void;
    onPromoteToggle(activityId: string): void;
}

export class ScheduleTable {
    private page: SchedulePage | null = null;
    private selected: string | null = null;

    constructor(
        private readonly root: HTMLElement,
        private readonly callbacks: TableCallbacks,
    ) {}

    render(page: SchedulePage): void {
        this.page = page;
        this.redraw();
    }

    setSelected(activityId: string | null): void {
        this.selected = activityId;
        this.redraw();
    }

    /** Row order currently rendered, for tests and debugging. */
    renderedOrder(): string[] {
        return Array.from(this.root.querySelectorAll('tbody tr')).map(
            (tr) => (tr as HTMLElement).dataset.activityId ?? '',
        );
    }

    private redraw(): void {
        if (!this.page) {
            return;
        }
        const page = this.page;
        const head = COLUMNS.map((col) => {
            const marker =
                page.sort === col.key ? (page.order === 'asc' ? ' ▲' : ' ▼') : '';
            return `<th data-field="${col.key}">${col.label}${marker}</th>`;
        }).join('');
        const body = page.rows
            .map((row) => {
                const classes = [
                    row.is_critical ? 'critical' : '',
                    page.promoted.includes(row.activity_id) ? 'promoted' : '',
                    row.activity_id === this.selected ? 'selected' : '',
                ]
                    .filter(Boolean)
                    .join(' ');
                const cells = COLUMNS.map(
                    (col) => `<td>${String(row[col.key as keyof typeof row])}</td>`,
                ).join('');
                return `<tr data-activity-id="${row.activity_id}" class="${classes}">${cells}</tr>`;
            })
            .join('');
        this.root.innerHTML =
            `<table><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>`;

        for (const th of this.root.querySelectorAll('th')) {
            th.addEventListener('click', () => {
                this.callbacks.onSort((th as HTMLElement).dataset.field ?? 'activity_id');
            });
        }
        for (const tr of this.root.querySelectorAll('tbody tr')) {
            const id = (tr as HTMLElement).dataset.activityId ?? '';
            tr.addEventListener('click', () => this.callbacks.onSelect(id));
            tr.addEventListener('dblclick', () => this.callbacks.onPromoteToggle(id));
        }
    }
}
