// Orbitable 3-D point cloud of the demihypercube, with the current game
// position highlighted when it fits inside the loaded cube. Scene
// construction is renderer-free so tests can run it headless; WebGL is only
// touched when a canvas is supplied.

import * as THREE from "three";
import { OrbitControls } from "three/addons/controls/OrbitControls.js";
import { FractalResponse } from "./api.js";

export function buildPositions(points: number[][]): Float32Array {
  const positions = new Float32Array(points.length * 3);
  for (let i = 0; i < points.length; i++) {
    positions[3 * i] = points[i][0];
    positions[3 * i + 1] = points[i][1];
    positions[3 * i + 2] = points[i][2];
  }
  return positions;
}

export class FractalViewer {
  readonly scene = new THREE.Scene();
  readonly camera: THREE.PerspectiveCamera;
  private cloud: THREE.Points | null = null;
  private readonly highlight: THREE.Mesh;
  private axes: THREE.AxesHelper | null = null;
  private renderer: THREE.WebGLRenderer | null = null;
  private controls: OrbitControls | null = null;
  private side = 2;
  private highlightedPiles: number[] | null = null;

  constructor(canvas?: HTMLCanvasElement) {
    this.camera = new THREE.PerspectiveCamera(50, 1, 0.01, 10_000);
    this.highlight = new THREE.Mesh(
      new THREE.SphereGeometry(1, 16, 16),
      new THREE.MeshBasicMaterial({ color: 0xe04040 }),
    );
    this.highlight.visible = false;
    this.scene.add(this.highlight);
    this.scene.background = new THREE.Color(0x10141a);
    if (canvas) {
      this.renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
      this.controls = new OrbitControls(this.camera, canvas);
      this.controls.enableDamping = true;
      this.renderer.setAnimationLoop(() => {
        this.controls?.update();
        this.renderer?.render(this.scene, this.camera);
      });
    }
    this.frame();
  }

  get pointCount(): number {
    if (this.cloud === null) return 0;
    return this.cloud.geometry.getAttribute("position").count;
  }

  setPoints(data: FractalResponse): number {
    if (this.cloud !== null) {
      this.scene.remove(this.cloud);
      this.cloud.geometry.dispose();
      (this.cloud.material as THREE.Material).dispose();
    }
    this.side = 1 << data.n;
    const geometry = new THREE.BufferGeometry();
    geometry.setAttribute(
      "position", new THREE.BufferAttribute(buildPositions(data.points), 3));
    const material = new THREE.PointsMaterial({
      color: 0x7fd4ff,
      size: Math.max(0.02 * this.side, 0.05),
    });
    this.cloud = new THREE.Points(geometry, material);
    this.scene.add(this.cloud);
    if (this.axes !== null) this.scene.remove(this.axes);
    this.axes = new THREE.AxesHelper(this.side);
    this.scene.add(this.axes);
    this.frame();
    this.applyHighlight();
    return this.pointCount;
  }

  // Highlight only when the position is 3-dimensional and inside the cube.
  setHighlight(piles: number[] | null): void {
    this.highlightedPiles = piles;
    this.applyHighlight();
  }

  get highlightVisible(): boolean {
    return this.highlight.visible;
  }

  private applyHighlight(): void {
    const piles = this.highlightedPiles;
    const fits = piles !== null && piles.length === 3
      && piles.every((p) => p >= 0 && p < this.side);
    this.highlight.visible = fits;
    if (fits && piles !== null) {
      this.highlight.position.set(piles[0], piles[1], piles[2]);
      const radius = Math.max(0.04 * this.side, 0.1);
      this.highlight.scale.setScalar(radius);
    }
  }

  private frame(): void {
    const center = (this.side - 1) / 2;
    this.camera.position.set(this.side * 1.7, this.side * 1.3, this.side * 2.1);
    this.camera.lookAt(center, center, center);
    if (this.controls) {
      this.controls.target.set(center, center, center);
    }
  }

  resize(width: number, height: number): void {
    this.camera.aspect = width / height;
    this.camera.updateProjectionMatrix();
    this.renderer?.setSize(width, height, false);
  }
}
