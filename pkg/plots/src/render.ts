import { existsSync, readFileSync, writeFileSync } from "node:fs"
import { join } from "node:path"

import { readContrastCsv, readPdfCsv } from "./csv.js"
import { pdfCompoundRician, pdfExponential, pdfK, pdfRician, pdfWeibullBound } from "./math.js"
import { Axis, PALETTE, el, esc, marker, panelFrame, polylinePath, svgDocument, toPx } from "./svg.js"
import { ChannelSummary, ContrastRow, FigureSpec, FitEntry, MetaFile, PdfRow, SUPPORTED_SCHEMA, SummaryFile } from "./types.js"

const PANEL_W = 330
const PANEL_H = 300
const MARGIN = { left: 64, right: 18, top: 36, bottom: 48 }

function requireFile(path: string, role: string): string {
  if (!existsSync(path)) {
    throw new Error(`missing ${role} artifact: ${path}`)
  }
  return path
}

function artifactPath(spec: FigureSpec, key: "pdf" | "summary" | "contrast" | "meta", name: string): string {
  const direct = spec.artifacts[key]
  if (direct) return requireFile(direct, key)
  if (!spec.artifacts.dir) {
    throw new Error(`figure spec names neither artifacts.${key} nor artifacts.dir`)
  }
  return requireFile(join(spec.artifacts.dir, name), key)
}

function readJson<T>(path: string): T {
  return JSON.parse(readFileSync(path, "utf8")) as T
}

function checkSchema(meta: MetaFile, path: string): void {
  if (meta.schema_version !== SUPPORTED_SCHEMA) {
    throw new Error(`artifact ${path} has schema_version ${meta.schema_version}, renderer supports ${SUPPORTED_SCHEMA}`)
  }
}

/** Normalized-axis density of a fitted model: x is I/<I> of the channel. */
function fitDensity(fit: FitEntry, channelMean: number, x: number): number | null {
  const p = fit.params ?? {}
  const i = x * channelMean
  switch (fit.kind) {
    case "exponential":
      return channelMean * pdfExponential(i, p["mean"] as number)
    case "k1":
    case "k2":
    case "k_solve": {
      const shape = p["shape"] as number
      if (!Number.isInteger(shape)) return null
      return channelMean * pdfK(i, p["mean"] as number, shape)
    }
    case "weibull_bound":
      return channelMean * pdfWeibullBound(i, p["mean"] as number)
    case "rician":
      return channelMean * pdfRician(i, p["ratio"] as number, p["background"] as number)
    case "compound_rician":
      return channelMean * pdfCompoundRician(i, p["r_samples"] as number[], p["background"] as number)
    default:
      return null
  }
}

function logSpace(lo: number, hi: number, n: number): number[] {
  const out: number[] = []
  const llo = Math.log10(lo)
  const lhi = Math.log10(hi)
  for (let k = 0; k < n; k++) out.push(10 ** (llo + ((lhi - llo) * k) / (n - 1)))
  return out
}

function fmtU(u: number): string {
  return `${u}`.replace(/\.0$/, "")
}

/** Log-log density overlays: empirical points per channel plus fitted and
 * reference curves, one panel per interaction value. */
export function renderPdfOverlay(spec: FigureSpec): string {
  const metaPath = artifactPath(spec, "meta", "meta.json")
  const meta = readJson<MetaFile>(metaPath)
  checkSchema(meta, metaPath)
  const summaryPath = artifactPath(spec, "summary", "summary.json")
  const summary = readJson<SummaryFile>(summaryPath)
  checkSchema(summary as unknown as MetaFile, summaryPath)
  const pdfPath = artifactPath(spec, "pdf", "pdf.csv")
  const rows = readPdfCsv(pdfPath)

  const byInstance = new Map<string, PdfRow[]>()
  for (const row of rows) {
    const list = byInstance.get(row.channel) ?? []
    list.push(row)
    byInstance.set(row.channel, list)
  }

  const uValues = [...new Set(Object.values(summary.channels).map((c) => c.U))].sort((a, b) => a - b)
  const channelNames = [...new Set(Object.values(summary.channels).map((c) => c.channel))]

  const occupied = rows.filter((r) => r.density > 0)
  if (occupied.length === 0) {
    throw new Error(`artifact ${pdfPath} has no occupied bins to plot`)
  }
  const xMin = spec.axes?.xMin ?? Math.max(1e-6, Math.min(...occupied.map((r) => r.binCenter)) / 1.5)
  const xMax = spec.axes?.xMax ?? Math.max(...occupied.map((r) => r.binCenter)) * 1.5
  const yMin = spec.axes?.yMin ?? Math.min(...occupied.map((r) => r.density)) / 3
  const yMax = spec.axes?.yMax ?? Math.max(...occupied.map((r) => r.density)) * 3

  const panels: string[] = []
  uValues.forEach((u, pi) => {
    const x0 = MARGIN.left + pi * (PANEL_W + MARGIN.left)
    const xAxis: Axis = { min: xMin, max: xMax, log: true, px0: x0, px1: x0 + PANEL_W }
    const yAxis: Axis = { min: yMin, max: yMax, log: true, px0: MARGIN.top + PANEL_H, px1: MARGIN.top }
    const parts: string[] = []
    parts.push(
      panelFrame({
        x: xAxis,
        y: yAxis,
        title: `${spec.title ?? summary.experiment}  U = ${fmtU(u)}`,
        xLabel: "I / ⟨I⟩",
        yLabel: "probability density",
      }),
    )

    const clipY = (v: number): number | null => (v > 0 && Number.isFinite(v) ? v : null)
    const instances = Object.entries(summary.channels).filter(([, c]) => c.U === u)
    instances.forEach(([instance, channel]) => {
      const color = PALETTE[channelNames.indexOf(channel.channel) % PALETTE.length]
      const markerKind = channelNames.indexOf(channel.channel)
      const series: string[] = []
      for (const row of byInstance.get(instance) ?? []) {
        if (row.density <= 0 || row.binCenter < xMin || row.binCenter > xMax) continue
        if (row.density < yMin || row.density > yMax) continue
        series.push(marker(markerKind, toPx(xAxis, row.binCenter), toPx(yAxis, row.density), color))
      }
      for (const fit of channel.fits ?? []) {
        if (fit.status !== "ok") continue
        const grid = logSpace(xMin, xMax, 240)
        const xs: number[] = []
        const ys: number[] = []
        for (const x of grid) {
          const d = fitDensity(fit, channel.mean, x)
          const dc = d === null ? null : clipY(d)
          xs.push(toPx(xAxis, x))
          ys.push(dc === null || dc < yMin || dc > yMax ? NaN : toPx(yAxis, dc))
        }
        const path = polylinePath(xs, ys)
        if (path.length > 0) {
          series.push(
            el("path", {
              d: path,
              fill: "none",
              stroke: color,
              "stroke-width": 1.4,
              class: "fit-curve",
              "data-fit": fit.kind,
              "data-channel": channel.channel,
            }),
          )
        }
      }
      parts.push(el("g", { class: "series", "data-channel": channel.channel }, series.join("\n")))
    })

    // unit-mean exponential reference, dashed, on every panel
    const grid = logSpace(xMin, xMax, 240)
    const xs: number[] = []
    const ys: number[] = []
    for (const x of grid) {
      const d = Math.exp(-x)
      xs.push(toPx(xAxis, x))
      ys.push(d < yMin || d > yMax ? NaN : toPx(yAxis, d))
    }
    parts.push(
      el("path", {
        d: polylinePath(xs, ys),
        fill: "none",
        stroke: "black",
        "stroke-width": 1.2,
        "stroke-dasharray": "6 4",
        class: "ref-exponential",
      }),
    )

    // legend
    const legend: string[] = []
    channelNames.forEach((name, i) => {
      const lx = x0 + 10
      const ly = MARGIN.top + 14 + i * 14
      legend.push(marker(i, lx, ly - 3, PALETTE[i % PALETTE.length]))
      legend.push(el("text", { x: lx + 8, y: ly, "font-size": 10 }, esc(name)))
    })
    parts.push(el("g", { class: "legend" }, legend.join("\n")))

    panels.push(el("g", { class: "panel", "data-panel": `U=${fmtU(u)}` }, parts.join("\n")))
  })

  const width = MARGIN.left + uValues.length * (PANEL_W + MARGIN.left) + MARGIN.right
  const height = MARGIN.top + PANEL_H + MARGIN.bottom
  return svgDocument(width, height, panels.join("\n"))
}

const CONTRAST_REFS: Array<[string, number]> = [
  ["1", 1.0],
  ["sqrt2", Math.SQRT2],
  ["sqrt3", Math.sqrt(3)],
  ["sqrt5", Math.sqrt(5)],
]

/** Contrast against interaction strength, one curve per time window and one
 * panel per channel, with the reference contrast levels marked. */
export function renderContrastVsU(spec: FigureSpec): string {
  const metaPath = artifactPath(spec, "meta", "meta.json")
  const meta = readJson<MetaFile>(metaPath)
  checkSchema(meta, metaPath)
  const contrastPath = artifactPath(spec, "contrast", "contrast.csv")
  const rows = readContrastCsv(contrastPath)

  const channels = [...new Set(rows.map((r) => r.channel))]
  const windows = [...new Set(rows.map((r) => r.window))]
  const positiveU = rows.map((r) => r.u).filter((u) => u > 0)
  if (positiveU.length === 0) {
    throw new Error(`artifact ${contrastPath} carries no positive interaction values`)
  }
  const uMin = Math.min(...positiveU)
  const uMax = Math.max(...positiveU)
  const zeroU = uMin / 10 // plotting position for U = 0 on the log axis
  const xMin = spec.axes?.xMin ?? zeroU / 1.5
  const xMax = spec.axes?.xMax ?? uMax * 1.5
  const cMax = Math.max(...rows.map((r) => r.mean + r.stderr))
  const yMax = spec.axes?.yMax ?? Math.max(Math.sqrt(5) + 0.15, cMax + 0.15)
  const yMin = spec.axes?.yMin ?? 0

  const panels: string[] = []
  channels.forEach((channelName, pi) => {
    const x0 = MARGIN.left + pi * (PANEL_W + MARGIN.left)
    const xAxis: Axis = { min: xMin, max: xMax, log: true, px0: x0, px1: x0 + PANEL_W }
    const yAxis: Axis = { min: yMin, max: yMax, log: false, px0: MARGIN.top + PANEL_H, px1: MARGIN.top }
    const tickValues = [zeroU, ...logTicksWithin(uMin, uMax)]
    const tickLabels = ["0", ...logTicksWithin(uMin, uMax).map((v) => (v >= 1 ? String(v) : String(v)))]
    const parts: string[] = []
    parts.push(
      panelFrame({
        x: xAxis,
        y: yAxis,
        title: `${spec.title ?? meta.experiment}  ${channelName}`,
        xLabel: "U / J",
        yLabel: "contrast C",
        xTickValues: tickValues,
        xTickLabels: tickLabels,
      }),
    )

    for (const [label, level] of CONTRAST_REFS) {
      if (level > yMax) continue
      const py = toPx(yAxis, level)
      parts.push(
        el("line", {
          x1: xAxis.px0,
          y1: py,
          x2: xAxis.px1,
          y2: py,
          stroke: "#999",
          "stroke-dasharray": "4 4",
          class: "ref-contrast",
          "data-level": label,
        }),
      )
      parts.push(el("text", { x: xAxis.px1 - 4, y: py - 3, "text-anchor": "end", "font-size": 9, fill: "#777" }, esc(label)))
    }

    windows.forEach((windowName, wi) => {
      const color = PALETTE[wi % PALETTE.length]
      const pts = rows
        .filter((r) => r.channel === channelName && r.window === windowName)
        .sort((a, b) => a.u - b.u)
      const xs = pts.map((p) => toPx(xAxis, p.u === 0 ? zeroU : p.u))
      const ys = pts.map((p) => toPx(yAxis, p.mean))
      const series: string[] = [
        el("path", {
          d: polylinePath(xs, ys),
          fill: "none",
          stroke: color,
          "stroke-width": 1.5,
          class: "window-curve",
          "data-window": windowName,
        }),
      ]
      pts.forEach((p, i) => {
        series.push(marker(wi, xs[i], ys[i], color))
        if (p.stderr > 0) {
          series.push(
            el("line", {
              x1: xs[i],
              y1: toPx(yAxis, p.mean - p.stderr),
              x2: xs[i],
              y2: toPx(yAxis, p.mean + p.stderr),
              stroke: color,
              class: "errorbar",
            }),
          )
        }
      })
      parts.push(el("g", { class: "series", "data-window": windowName }, series.join("\n")))
    })

    const legend: string[] = []
    windows.forEach((name, i) => {
      const lx = x0 + 10
      const ly = MARGIN.top + 14 + i * 14
      legend.push(marker(i, lx, ly - 3, PALETTE[i % PALETTE.length]))
      legend.push(el("text", { x: lx + 8, y: ly, "font-size": 10 }, esc(name)))
    })
    parts.push(el("g", { class: "legend" }, legend.join("\n")))

    panels.push(el("g", { class: "panel", "data-panel": channelName }, parts.join("\n")))
  })

  const width = MARGIN.left + channels.length * (PANEL_W + MARGIN.left) + MARGIN.right
  const height = MARGIN.top + PANEL_H + MARGIN.bottom
  return svgDocument(width, height, panels.join("\n"))
}

function logTicksWithin(lo: number, hi: number): number[] {
  const out: number[] = []
  for (let k = Math.ceil(Math.log10(lo) - 1e-9); k <= Math.floor(Math.log10(hi) + 1e-9); k++) {
    out.push(10 ** k)
  }
  return out
}

export function renderFigure(spec: FigureSpec): string {
  if (spec.kind === "pdf-overlay") return renderPdfOverlay(spec)
  if (spec.kind === "contrast-vs-u") return renderContrastVsU(spec)
  throw new Error(`unknown figure kind ${(spec as { kind?: string }).kind}`)
}

/** Read a figure-spec file, render it and write the SVG; returns the output path. */
export function renderSpecFile(specPath: string): string {
  const spec = readJson<FigureSpec>(requireFile(specPath, "figure spec"))
  if (!spec.output) {
    throw new Error("figure spec is missing the output path")
  }
  const svg = renderFigure(spec)
  writeFileSync(spec.output, svg)
  return spec.output
}
