/** Thin client for the documented /api/v1 endpoints — nothing else. */
import type {
    ActivityDetail,
    ProjectInfo,
    RevisionResponse,
    SceneDoc,
    SchedulePage,
} from './types.js';

export type FetchFn = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
    constructor(message: string, public readonly status: number) {
        super(message);
    }
}

export class ApiClient {
    private sceneEpoch = 0;

    constructor(
        private readonly baseUrl: string = '',
        private readonly fetchFn: FetchFn = (input, init) => globalThis.fetch(input, init),
    ) {}

    private async getJson<T>(path: string): Promise<T> {
        const response = await this.fetchFn(`${this.baseUrl}/api/v1${path}`);
        if (!response.ok) {
            const body = await response.text();
            throw new ApiError(extractError(body) ?? `HTTP ${response.status}`, response.status);
        }
        return (await response.json()) as T;
    }

    getProject(): Promise<ProjectInfo> {
        return this.getJson<ProjectInfo>('/project');
    }

    getSchedule(sort: string, order: string, promoted: string[]): Promise<SchedulePage> {
        const params = new URLSearchParams({ sort, order });
        if (promoted.length > 0) {
            params.set('promote', promoted.join(','));
        }
        return this.getJson<SchedulePage>(`/schedule?${params.toString()}`);
    }

    /**
     * Fetch a dated scene with latest-wins semantics: when several scrubs
     * overlap, only the most recent call resolves with a document and the
     * superseded ones resolve null.
     */
    async getScene(date: string): Promise<SceneDoc | null> {
        const epoch = ++this.sceneEpoch;
        const doc = await this.getJson<SceneDoc>(`/scene?date=${encodeURIComponent(date)}`);
        return epoch === this.sceneEpoch ? doc : null;
    }

    getScenes(from: string, to: string, step: number): Promise<{ revision: number; scenes: SceneDoc[] }> {
        const params = new URLSearchParams({ from, to, step: String(step) });
        return this.getJson(`/scenes?${params.toString()}`);
    }

    getActivity(activityId: string): Promise<ActivityDetail> {
        return this.getJson<ActivityDetail>(`/activities/${encodeURIComponent(activityId)}`);
    }

    async postRevision(csvText: string): Promise<RevisionResponse> {
        const response = await this.fetchFn(`${this.baseUrl}/api/v1/revisions`, {
            method: 'POST',
            headers: { 'Content-Type': 'text/csv' },
            body: csvText,
        });
        // 422 carries the structured rejection; other failures are transport errors
        if (!response.ok && response.status !== 422) {
            const body = await response.text();
            throw new ApiError(extractError(body) ?? `HTTP ${response.status}`, response.status);
        }
        return (await response.json()) as RevisionResponse;
    }
}

function extractError(body: string): string | null {
    try {
        const parsed = JSON.parse(body) as { error?: string };
        return parsed.error ?? null;
    } catch {
        return null;
    }
}
