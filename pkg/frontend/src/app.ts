/** Orchestrator: the evaluate-revise loop against /api/v1.

All scheduling and geometry math stays server-side; this class only
fetches, renders what the server said, and posts whole-CSV revisions.
*/
import * as THREE from 'three';

import { ApiClient, ApiError } from './api.js';
import { DetailPanel } from './detail.js';
import { STATUS_LABELS } from './palette.js';
import { applySelection, applyTransparency, buildSceneGroup } from './sceneGraph.js';
import { ScheduleTable } from './table.js';
import { Timeline } from './timeline.js';
import type { ProjectInfo, SceneDoc, Status, ViewState } from './types.js';
import { UploadPanel } from './upload.js';

/** The 3D surface the app renders into; the WebGL one lives in viewer3d. */
export interface RendererHost {
    setSceneGroup(group: THREE.Group): void;
    onPick(callback: (activityId: string | null) => void): void;
}

export interface AppElements {
    table: HTMLElement;
    timeline: HTMLElement;
    detail: HTMLElement;
    upload: HTMLElement;
    summary: HTMLElement;
    status: HTMLElement;
}

export class App {
    readonly state: ViewState = {
        currentDate: '',
        revision: 0,
        selected: null,
        transparent: new Set<string>(),
        sort: 'activity_id',
        order: 'asc',
        promoted: [],
    };

    readonly table: ScheduleTable;
    readonly timeline: Timeline;
    readonly detail: DetailPanel;
    readonly upload: UploadPanel;

    project: ProjectInfo | null = null;
    sceneGroup: THREE.Group | null = null;
    currentSceneDoc: SceneDoc | null = null;

    constructor(
        readonly api: ApiClient,
        private readonly elements: AppElements,
        private readonly host: RendererHost,
    ) {
        this.table = new ScheduleTable(elements.table, {
            onSort: (field) => void this.sortBy(field),
            onSelect: (id) => void this.select(id),
            onPromoteToggle: (id) => void this.togglePromoted(id),
        });
        this.timeline = new Timeline(elements.timeline);
        this.timeline.onScrub = (date) => void this.scrubTo(date);
        this.detail = new DetailPanel(elements.detail);
        this.upload = new UploadPanel(elements.upload);
        this.upload.onSubmit = (text) => this.submitRevision(text);
        this.host.onPick((id) => void this.select(id));
    }

    async start(): Promise<void> {
        const project = await this.api.getProject();
        this.project = project;
        this.state.revision = project.revision;
        this.timeline.setRange(project.project_start, project.project_duration);
        this.timeline.setDate(project.project_start);
        this.detail.clear();
        await this.scrubTo(project.project_start);
        await this.refreshTable();
    }

    async scrubTo(date: string): Promise<void> {
        let doc: SceneDoc | null;
        try {
            doc = await this.api.getScene(date);
        } catch (error) {
            // keep the last good scene; surface the failure
            this.setStatusLine(`scene fetch failed: ${message(error)}`);
            return;
        }
        if (doc === null) {
            return; // superseded by a newer scrub
        }
        this.renderScene(doc);
        this.state.currentDate = doc.date;
        this.timeline.setDate(doc.date);
    }

    private renderScene(doc: SceneDoc): void {
        const group = buildSceneGroup(doc);
        applyTransparency(group, this.state.transparent);
        applySelection(group, this.state.selected);
        this.sceneGroup = group;
        this.currentSceneDoc = doc;
        this.host.setSceneGroup(group);
        this.renderSummary(doc);
    }

    private renderSummary(doc: SceneDoc): void {
        const bits = (Object.keys(STATUS_LABELS) as Status[]).map(
            (status) => `<span class="chip ${status}">${STATUS_LABELS[status]}: ${doc.summary[status]}</span>`,
        );
        this.elements.summary.innerHTML =
            `<span class="chip date">${doc.date}</span>${bits.join('')}` +
            `<span class="chip revision">rev ${this.state.revision}</span>`;
    }

    async refreshTable(): Promise<void> {
        const page = await this.api.getSchedule(this.state.sort, this.state.order, this.state.promoted);
        // render exactly the server order; sorting never happens client-side
        this.state.sort = page.sort;
        this.state.order = page.order;
        this.state.promoted = page.promoted;
        this.table.render(page);
        this.table.setSelected(this.state.selected);
    }

    async sortBy(field: string): Promise<void> {
        if (this.state.sort === field) {
            this.state.order = this.state.order === 'asc' ? 'desc' : 'asc';
        } else {
            this.state.sort = field;
            this.state.order = 'asc';
        }
        await this.refreshTable();
    }

    async togglePromoted(activityId: string): Promise<void> {
        const index = this.state.promoted.indexOf(activityId);
        if (index >= 0) {
            this.state.promoted.splice(index, 1);
        } else {
            this.state.promoted.push(activityId);
        }
        await this.refreshTable();
    }

    async select(activityId: string | null): Promise<void> {
        this.state.selected = activityId;
        if (this.sceneGroup) {
            applySelection(this.sceneGroup, activityId);
        }
        this.table.setSelected(activityId);
        if (activityId === null) {
            this.detail.clear();
            return;
        }
        try {
            this.detail.render(await this.api.getActivity(activityId));
        } catch (error) {
            if (error instanceof ApiError && error.status === 404) {
                this.detail.showError(`unknown activity ${activityId}`);
            } else {
                this.detail.showError(message(error));
            }
        }
    }

    toggleTransparency(activityId: string): void {
        if (this.state.transparent.has(activityId)) {
            this.state.transparent.delete(activityId);
        } else {
            this.state.transparent.add(activityId);
        }
        if (this.sceneGroup) {
            applyTransparency(this.sceneGroup, this.state.transparent);
        }
    }

    async submitRevision(csvText: string): Promise<void> {
        let response;
        try {
            response = await this.api.postRevision(csvText);
        } catch (error) {
            this.upload.showTransportError(message(error));
            return;
        }
        this.upload.showOutcome(response);
        if (!response.accepted) {
            return; // rejected: rendered scene and state stay untouched
        }
        this.state.revision = response.revision;
        this.project = await this.api.getProject();
        this.timeline.setRange(this.project.project_start, this.project.project_duration);
        await this.scrubTo(this.state.currentDate || this.project.project_start);
        await this.refreshTable();
        if (this.state.selected) {
            await this.select(this.state.selected);
        }
    }

    private setStatusLine(text: string): void {
        this.elements.status.textContent = text;
    }
}

function message(error: unknown): string {
    return error instanceof Error ? error.message : String(error);
}
