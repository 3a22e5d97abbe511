/** Mock transport that replays recorded /api/v1 responses. */
import { readFileSync } from 'node:fs';
import path from 'node:path';
import { fileURLToPath } from 'node:url';

const FIXTURES = path.join(path.dirname(fileURLToPath(import.meta.url)), 'fixtures');

export function fixtureText(name: string): string {
    return readFileSync(path.join(FIXTURES, name), 'utf-8');
}

export function fixtureJson<T>(name: string): T {
    return JSON.parse(fixtureText(name)) as T;
}

const CYCLE_CSV = 'Activity_ID,Name,Duration,Predecessors\nA,X,1,B\nB,Y,1,A\n';

/**
 * Replays the recorded conversation: phase 1 is the freshly loaded
 * project (revision 1); an accepted revision switches to phase 2.
 * Rejected submissions never change phase — like the real server.
 */
export class ReplayServer {
    phase: 1 | 2 = 1;
    requests: string[] = [];

    private routes: Record<string, [string, string]> = {
        // key -> [phase1 fixture, phase2 fixture]
        'GET /api/v1/project': ['project.json', 'project_rev2.json'],
        'GET /api/v1/schedule?sort=activity_id&order=asc':
            ['schedule_default.json', 'schedule_rev2.json'],
        'GET /api/v1/schedule?sort=total_float&order=desc&promote=FIN%2CSLB':
            ['schedule_tf_desc_promoted.json', 'schedule_tf_desc_promoted.json'],
        'GET /api/v1/scene?date=2007-01-01':
            ['scene_2007-01-01.json', 'scene_2007-01-01.json'],
        'GET /api/v1/scene?date=2007-01-08':
            ['scene_2007-01-08.json', 'scene_rev2_2007-01-08.json'],
        'GET /api/v1/scene?date=2007-01-15':
            ['scene_2007-01-15.json', 'scene_2007-01-15.json'],
        'GET /api/v1/activities/FND': ['activity_FND.json', 'activity_rev2_FND.json'],
    };

    fetch = async (input: string, init?: RequestInit): Promise<Response> => {
        const method = init?.method ?? 'GET';
        const key = `${method} ${input}`;
        this.requests.push(key);
        if (method === 'POST' && input === '/api/v1/revisions') {
            if (init?.body === CYCLE_CSV) {
                return jsonResponse(fixtureText('revision_reject.json'), 422);
            }
            this.phase = 2;
            return jsonResponse(fixtureText('revision_accept.json'), 200);
        }
        const route = this.routes[key];
        if (!route) {
            return jsonResponse(JSON.stringify({ error: `no fixture for ${key}` }), 404);
        }
        return jsonResponse(fixtureText(route[this.phase - 1]), 200);
    };
}

function jsonResponse(body: string, status: number): Response {
    return new Response(body, {
        status,
        headers: { 'Content-Type': 'application/json', 'X-Revision': '1' },
    });
}

export { CYCLE_CSV };
