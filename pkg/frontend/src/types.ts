/** Payload shapes of the /api/v1 endpoints the viewer consumes. */

export type Status = 'not_started' | 'in_progress' | 'completed';

export interface MeshData {
    positions: number[];
    indices: number[];
}

export interface SceneElement {
    activity_id: string;
    status: Status;
    progress: number;
    mesh: MeshData;
}

export interface SceneDoc {
    date: string;
    elements: SceneElement[];
    summary: Record<Status, number>;
}

export interface ProjectInfo {
    name: string;
    revision: number;
    project_start: string;
    project_end: string;
    project_duration: number;
    activity_count: number;
    critical_activity_ids: string[];
    layers: string[];
    validation: { is_valid: boolean };
    linkage: {
        complete: boolean;
        unlinked_activities: string[];
        orphan_features: { layer: string; feature_index: number; activity_id: string | null }[];
    };
    merge_warnings: string[];
}

export interface ScheduleRow {
    activity_id: string;
    name: string;
    duration: number;
    es: number;
    ef: number;
    ls: number;
    lf: number;
    total_float: number;
    free_float: number;
    is_critical: boolean;
}

export interface SchedulePage {
    revision: number;
    sort: string;
    order: 'asc' | 'desc';
    promoted: string[];
    rows: ScheduleRow[];
}

export interface ActivityDetail {
    revision: number;
    activity: ScheduleRow;
    has_geometry: boolean;
    prism_kinds: string[];
    quantities: {
        volume_m3: number;
        footprint_m2: number;
        wall_area_m2: number;
        length_m: number;
        point_count: number;
    };
    resources: Record<string, string | number | null>[];
}

export interface RevisionDiff {
    added: string[];
    removed: string[];
    changed: { activity_id: string; field: string; old: unknown; new: unknown }[];
    retimed: string[];
}

export interface RevisionResponse {
    accepted: boolean;
    revision: number;
    errors: string[];
    diff: RevisionDiff | null;
    linkage: ProjectInfo['linkage'] | null;
}

/** Everything the viewer tracks about what it is showing. */
export interface ViewState {
    currentDate: string;
    revision: number;
    selected: string | null;
    transparent: Set<string>;
    sort: string;
    order: 'asc' | 'desc';
    promoted: string[];
}
