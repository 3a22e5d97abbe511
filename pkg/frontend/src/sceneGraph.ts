/** scene_json -> three.js scene graph, styled purely from server statuses. */
import * as THREE from 'three';

import { SELECTION_EMISSIVE, STATUS_COLORS, TRANSPARENT_OPACITY } from './palette.js';
import type { SceneDoc, Status } from './types.js';

export interface ElementUserData {
    activityId: string;
    status: Status;
    progress: number;
}

function materialFor(status: Status): THREE.MeshLambertMaterial {
    // not_started is a gray wireframe ghost; in_progress and completed are solid
    return new THREE.MeshLambertMaterial({
        color: STATUS_COLORS[status],
        wireframe: status === 'not_started',
        transparent: false,
        opacity: 1.0,
        side: THREE.DoubleSide,
    });
}

export function buildSceneGroup(doc: SceneDoc): THREE.Group {
    const group = new THREE.Group();
    group.name = `scene:${doc.date}`;
    for (const element of doc.elements) {
        const geometry = new THREE.BufferGeometry();
        geometry.setAttribute(
            'position',
            new THREE.BufferAttribute(new Float32Array(element.mesh.positions), 3),
        );
        geometry.setIndex(element.mesh.indices);
        geometry.computeVertexNormals();
        const mesh = new THREE.Mesh(geometry, materialFor(element.status));
        mesh.name = element.activity_id;
        mesh.userData = {
            activityId: element.activity_id,
            status: element.status,
            progress: element.progress,
        } satisfies ElementUserData;
        group.add(mesh);
    }
    return group;
}

export function elementMeshes(group: THREE.Group): THREE.Mesh[] {
    return group.children.filter((c): c is THREE.Mesh => c instanceof THREE.Mesh);
}

export function findElement(group: THREE.Group, activityId: string): THREE.Mesh | null {
    return elementMeshes(group).find((m) => m.name === activityId) ?? null;
}

/** Re-apply per-activity transparency overrides to every element. */
export function applyTransparency(group: THREE.Group, transparent: Set<string>): void {
    for (const mesh of elementMeshes(group)) {
        const material = mesh.material as THREE.MeshLambertMaterial;
        const ghosted = transparent.has(mesh.name);
        material.transparent = ghosted;
        material.opacity = ghosted ? TRANSPARENT_OPACITY : 1.0;
        material.needsUpdate = true;
    }
}

/** Emphasize the selected element (emissive tint); clear the rest. */
export function applySelection(group: THREE.Group, selected: string | null): void {
    for (const mesh of elementMeshes(group)) {
        const material = mesh.material as THREE.MeshLambertMaterial;
        material.emissive.setHex(mesh.name === selected ? SELECTION_EMISSIVE : 0x000000);
    }
}
