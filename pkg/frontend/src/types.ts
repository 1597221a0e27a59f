// Wire types mirroring the service's scene and trace JSON formats.

export interface PoseJson {
  x: number;
  y: number;
  rot_rad: number;
}

export type ModelJson =
  | { kind: "constant"; n: number }
  | { kind: "cauchy"; a: number; b_nm2: number };

export interface MediumJson {
  name: string;
  model: ModelJson;
}

export interface ElementJson {
  id: string;
  medium: string;
  pose: PoseJson;
  vertices: [number, number][];
}

export type BeamJson = { kind: "single" } | { kind: "fan"; count: number; spread_rad: number };
export type SpectrumJson = { kind: "mono"; lambda_nm: number } | { kind: "white" };

export interface SourceJson {
  id: string;
  pose: PoseJson;
  beam: BeamJson;
  spectrum: SpectrumJson;
}

export interface BoundsJson {
  x_min: number;
  y_min: number;
  x_max: number;
  y_max: number;
}

export interface SceneJson {
  version: number;
  background: string;
  media: MediumJson[];
  elements: ElementJson[];
  sources: SourceJson[];
  bounds: BoundsJson;
}

export interface SegmentJson {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
  medium: string;
}

export interface PathJson {
  lambda_nm: number;
  segments: SegmentJson[];
  events: string[];
  terminal: string;
  grazing_dir?: [number, number];
}

export interface TraceJson {
  version: number;
  paths: PathJson[];
}

export interface ScenarioParamJson {
  name: string;
  type: string;
  default: unknown;
  min?: number;
  max?: number;
  choices?: string[];
}

export interface ScenarioDescriptorJson {
  name: string;
  params: ScenarioParamJson[];
}

export type Violation = { kind: string; ids: string[]; message: string };
