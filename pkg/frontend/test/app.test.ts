/** Viewer contract against the recorded /api/v1 conversation. */
import * as THREE from 'three';
import { beforeEach, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { App, type AppElements, type RendererHost } from '../src/app.js';
import { elementMeshes, findElement } from '../src/sceneGraph.js';
import type { SceneDoc } from '../src/types.js';
import { CYCLE_CSV, ReplayServer, fixtureJson, fixtureText } from './helpers.js';

class StubHost implements RendererHost {
    group: THREE.Group | null = null;
    swaps = 0;
    private callback: (id: string | null) => void = () => undefined;

    setSceneGroup(group: THREE.Group): void {
        this.group = group;
        this.swaps += 1;
    }

    onPick(callback: (id: string | null) => void): void {
        this.callback = callback;
    }

    clickOn(activityId: string | null): void {
        this.callback(activityId);
    }
}

function domElements(): AppElements {
    const make = () => document.createElement('div');
    return { table: make(), timeline: make(), detail: make(),
             upload: make(), summary: make(), status: make() };
}

let server: ReplayServer;
let host: StubHost;
let app: App;

beforeEach(async () => {
    server = new ReplayServer();
    host = new StubHost();
    app = new App(new ApiClient('', server.fetch), domElements(), host);
    await app.start();
});

describe('timeline scrubbing', () => {
    it('renders the server-stated status for every element at three dates', async () => {
        for (const date of ['2007-01-01', '2007-01-08', '2007-01-15']) {
            await app.scrubTo(date);
            const expected = fixtureJson<SceneDoc>(`scene_${date}.json`);
            expect(app.state.currentDate).toBe(date);
            const meshes = elementMeshes(host.group!);
            expect(meshes.length).toBe(expected.elements.length);
            for (const element of expected.elements) {
                const mesh = findElement(host.group!, element.activity_id)!;
                expect(mesh.userData.status, `${date}/${element.activity_id}`)
                    .toBe(element.status);
                expect((mesh.material as THREE.MeshLambertMaterial).wireframe)
                    .toBe(element.status === 'not_started');
            }
        }
    });

    it('rescrubbing the same date reproduces the identical scene', async () => {
        await app.scrubTo('2007-01-08');
        const first = app.currentSceneDoc;
        await app.scrubTo('2007-01-15');
        await app.scrubTo('2007-01-08');
        expect(app.currentSceneDoc).toEqual(first);
    });
});

describe('schedule table', () => {
    it('renders the server order for the default sort', () => {
        const page = fixtureJson<{ rows: { activity_id: string }[] }>('schedule_default.json');
        expect(app.table.renderedOrder()).toEqual(page.rows.map((r) => r.activity_id));
    });

    it('sort and promotion parameters round-trip through the server', async () => {
        app.state.sort = 'total_float';
        app.state.order = 'asc';
        app.state.promoted = ['FIN', 'SLB'];
        await app.sortBy('total_float'); // toggles asc -> desc
        expect(server.requests).toContain(
            'GET /api/v1/schedule?sort=total_float&order=desc&promote=FIN%2CSLB');
        const page = fixtureJson<{ rows: { activity_id: string }[] }>(
            'schedule_tf_desc_promoted.json');
        expect(app.table.renderedOrder()).toEqual(page.rows.map((r) => r.activity_id));
        expect(app.table.renderedOrder().slice(0, 2)).toEqual(['FIN', 'SLB']);
    });
});

describe('activity inspection', () => {
    it('clicking a mesh selects the activity and highlights its mesh', async () => {
        host.clickOn('FND');
        await new Promise((r) => setTimeout(r, 0)); // let the async select settle
        expect(app.state.selected).toBe('FND');
        const material = findElement(host.group!, 'FND')!
            .material as THREE.MeshLambertMaterial;
        expect(material.emissive.getHex()).not.toBe(0);
        expect(server.requests).toContain('GET /api/v1/activities/FND');
    });

    it('transparency override applies to the selected element only', async () => {
        await app.select('EXC');
        app.toggleTransparency('EXC');
        const exc = findElement(host.group!, 'EXC')!.material as THREE.MeshLambertMaterial;
        expect(exc.transparent).toBe(true);
        const other = findElement(host.group!, 'FND')!.material as THREE.MeshLambertMaterial;
        expect(other.transparent).toBe(false);
        // overrides survive a scrub
        await app.scrubTo('2007-01-08');
        const after = findElement(host.group!, 'EXC')!.material as THREE.MeshLambertMaterial;
        expect(after.transparent).toBe(true);
    });
});

describe('revision upload', () => {
    it('a rejection leaves the rendered scene and state untouched', async () => {
        await app.scrubTo('2007-01-08');
        const groupBefore = host.group;
        const docBefore = app.currentSceneDoc;
        const swapsBefore = host.swaps;

        await app.upload.submitText(CYCLE_CSV);

        expect(host.group).toBe(groupBefore);       // same object, no re-render
        expect(host.swaps).toBe(swapsBefore);
        expect(app.currentSceneDoc).toBe(docBefore);
        expect(app.state.revision).toBe(1);
        expect(app.upload.reportText()).toContain('Revision rejected');
        expect(server.phase).toBe(1);
    });

    it('an acceptance bumps the revision and re-renders the current date', async () => {
        await app.scrubTo('2007-01-08');
        const before = app.currentSceneDoc!;
        const accepted = fixtureText('schedule_accept_body.csv');

        await app.upload.submitText(accepted);

        expect(app.state.revision).toBe(2);
        expect(app.upload.reportText()).toContain('Revision 2 accepted');
        const after = app.currentSceneDoc!;
        expect(after).not.toEqual(before); // EXC slowed down; statuses moved
        const expected = fixtureJson<SceneDoc>('scene_rev2_2007-01-08.json');
        for (const element of expected.elements) {
            expect(findElement(host.group!, element.activity_id)!.userData.status)
                .toBe(element.status);
        }
    });
});
