/** Figure specification consumed by the render CLI. */
export interface FigureSpec {
  kind: "pdf-overlay" | "contrast-vs-u"
  artifacts: {
    /** Directory holding the artifact set; individual paths override it. */
    dir?: string
    pdf?: string
    summary?: string
    contrast?: string
    meta?: string
  }
  axes?: {
    xMin?: number
    xMax?: number
    yMin?: number
    yMax?: number
  }
  title?: string
  output: string
}

export interface PdfRow {
  binCenter: number
  density: number
  count: number
  channel: string
}

export interface ContrastRow {
  channel: string
  u: number
  window: string
  mean: number
  stderr: number
  nSeeds: number
}

export interface FitEntry {
  kind: string
  status: string
  params?: Record<string, unknown>
  model_contrast?: number
  ks_distance?: number | null
}

export interface ChannelSummary {
  channel: string
  subspace: string
  U: number
  mean: number
  contrast: number
  fits?: FitEntry[]
}

export interface SummaryFile {
  schema_version: number
  experiment: string
  mode: string
  channels: Record<string, ChannelSummary>
}

export interface MetaFile {
  schema_version: number
  tool: string
  experiment: string
  mode: string
}

/** Schema version this renderer understands. */
export const SUPPORTED_SCHEMA = 1
