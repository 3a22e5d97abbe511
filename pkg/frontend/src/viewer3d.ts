/** WebGL renderer host: orbit/pan/zoom, axis spins, click picking. */
import * as THREE from 'three';
import { OrbitControls } from 'three/examples/jsm/controls/OrbitControls.js';

import type { RendererHost } from './app.js';

export class Viewer3d implements RendererHost {
    private readonly scene = new THREE.Scene();
    private readonly camera: THREE.PerspectiveCamera;
    private readonly renderer: THREE.WebGLRenderer;
    private readonly controls: OrbitControls;
    private readonly raycaster = new THREE.Raycaster();
    private group: THREE.Group | null = null;
    private pickCallback: (activityId: string | null) => void = () => undefined;

    constructor(private readonly container: HTMLElement) {
        this.scene.background = new THREE.Color(0x1c1f26);
        this.scene.add(new THREE.AmbientLight(0xffffff, 0.65));
        const sun = new THREE.DirectionalLight(0xffffff, 1.1);
        sun.position.set(30, -40, 60);
        this.scene.add(sun);
        this.scene.add(new THREE.GridHelper(40, 40, 0x39404f, 0x2a2f3a));

        this.camera = new THREE.PerspectiveCamera(
            50, container.clientWidth / Math.max(container.clientHeight, 1), 0.1, 2000);
        this.camera.up.set(0, 0, 1); // engine coordinates are x/y plan, z up
        this.camera.position.set(18, -18, 14);

        this.renderer = new THREE.WebGLRenderer({ antialias: true });
        this.renderer.setSize(container.clientWidth, container.clientHeight);
        container.appendChild(this.renderer.domElement);

        this.controls = new OrbitControls(this.camera, this.renderer.domElement);
        this.controls.target.set(5, 4, 1);

        this.renderer.domElement.addEventListener('click', (event) => this.pick(event));
        window.addEventListener('resize', () => this.resize());

        const animate = () => {
            requestAnimationFrame(animate);
            this.controls.update();
            this.renderer.render(this.scene, this.camera);
        };
        animate();
    }

    setSceneGroup(group: THREE.Group): void {
        if (this.group) {
            this.scene.remove(this.group);
        }
        this.group = group;
        this.scene.add(group);
    }

    onPick(callback: (activityId: string | null) => void): void {
        this.pickCallback = callback;
    }

    /** Spin the model a quarter turn around one world axis. */
    rotateAround(axis: 'x' | 'y' | 'z'): void {
        if (!this.group) {
            return;
        }
        const vector = { x: new THREE.Vector3(1, 0, 0), y: new THREE.Vector3(0, 1, 0),
                         z: new THREE.Vector3(0, 0, 1) }[axis];
        this.group.rotateOnWorldAxis(vector, Math.PI / 2);
    }

    private pick(event: MouseEvent): void {
        if (!this.group) {
            return;
        }
        const rect = this.renderer.domElement.getBoundingClientRect();
        const ndc = new THREE.Vector2(
            ((event.clientX - rect.left) / rect.width) * 2 - 1,
            -((event.clientY - rect.top) / rect.height) * 2 + 1,
        );
        this.raycaster.setFromCamera(ndc, this.camera);
        const hits = this.raycaster.intersectObjects(this.group.children, false);
        this.pickCallback(hits.length ? hits[0].object.name : null);
    }

    private resize(): void {
        const width = this.container.clientWidth;
        const height = Math.max(this.container.clientHeight, 1);
        this.camera.aspect = width / height;
        this.camera.updateProjectionMatrix();
        this.renderer.setSize(width, height);
    }
}
