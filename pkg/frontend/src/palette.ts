/** Viewer-local styling constants; the engine only emits status strings. */
import type { Status } from './types.js';

export const STATUS_COLORS: Record<Status, number> = {
    not_started: 0x9e9e9e,
    in_progress: 0xf5c542,
    completed: 0x4a90d9,
};

export const STATUS_LABELS: Record<Status, string> = {
    not_started: 'not started',
    in_progress: 'in progress',
    completed: 'completed',
};

export const SELECTION_EMISSIVE = 0x2bd46a;
export const TRANSPARENT_OPACITY = 0.25;
