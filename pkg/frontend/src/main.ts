/** Browser entry point. */
import { ApiClient } from './api.js';
import { App } from './app.js';
import { Viewer3d } from './viewer3d.js';

function el(id: string): HTMLElement {
    const node = document.getElementById(id);
    if (!node) {
        throw new Error(`missing #${id}`);
    }
    return node;
}

const viewer = new Viewer3d(el('viewport'));
const app = new App(new ApiClient(), {
    table: el('table'),
    timeline: el('timeline'),
    detail: el('detail'),
    upload: el('upload'),
    summary: el('summary'),
    status: el('status'),
}, viewer);

for (const axis of ['x', 'y', 'z'] as const) {
    el(`rotate-${axis}`).addEventListener('click', () => viewer.rotateAround(axis));
}
el('ghost').addEventListener('click', () => {
    if (app.state.selected) {
        app.toggleTransparency(app.state.selected);
    }
});

app.start().catch((error) => {
    el('status').textContent = `failed to load project: ${error}`;
});
