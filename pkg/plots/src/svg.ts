/** Tiny SVG plot toolkit: scales, axes, paths and markers as plain strings. */

export interface Axis {
  min: number
  max: number
  log: boolean
  px0: number
  px1: number
}

export function toPx(ax: Axis, v: number): number {
  const t = ax.log
    ? (Math.log10(v) - Math.log10(ax.min)) / (Math.log10(ax.max) - Math.log10(ax.min))
    : (v - ax.min) / (ax.max - ax.min)
  return ax.px0 + t * (ax.px1 - ax.px0)
}

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;")
}

export function el(tag: string, attrs: Record<string, string | number>, body = ""): string {
  const a = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? fmt(v) : esc(v)}"`)
    .join(" ")
  return body === "" ? `<${tag} ${a}/>` : `<${tag} ${a}>${body}</${tag}>`
}

function fmt(v: number): string {
  return Number.isInteger(v) ? String(v) : v.toFixed(2)
}

export function polylinePath(xs: number[], ys: number[]): string {
  const parts: string[] = []
  let pen = false
  for (let i = 0; i < xs.length; i++) {
    if (!Number.isFinite(xs[i]) || !Number.isFinite(ys[i])) {
      pen = false
      continue
    }
    parts.push(`${pen ? "L" : "M"}${fmt(xs[i])} ${fmt(ys[i])}`)
    pen = true
  }
  return parts.join(" ")
}

export function logTicks(ax: Axis): number[] {
  const lo = Math.ceil(Math.log10(ax.min) - 1e-9)
  const hi = Math.floor(Math.log10(ax.max) + 1e-9)
  const out: number[] = []
  for (let k = lo; k <= hi; k++) out.push(10 ** k)
  return out
}

export function linearTicks(ax: Axis, approx = 5): number[] {
  const span = ax.max - ax.min
  const raw = span / approx
  const mag = 10 ** Math.floor(Math.log10(raw))
  const step = [1, 2, 2.5, 5, 10].map((m) => m * mag).find((s) => span / s <= approx + 1) ?? mag * 10
  const out: number[] = []
  for (let v = Math.ceil(ax.min / step) * step; v <= ax.max + 1e-12; v += step) out.push(Number(v.toFixed(12)))
  return out
}

function tickLabel(v: number, log: boolean): string {
  if (!log) return String(Number(v.toPrecision(3)))
  const e = Math.round(Math.log10(v))
  if (e >= -2 && e <= 2) return String(10 ** e)
  return `1e${e}`
}

export interface PanelFrameOpts {
  x: Axis
  y: Axis
  title: string
  xLabel: string
  yLabel: string
  xTickValues?: number[]
  xTickLabels?: string[]
}

/** Frame, tick marks and labels for one panel. */
export function panelFrame(opts: PanelFrameOpts): string {
  const { x, y } = opts
  const top = Math.min(y.px0, y.px1)
  const bottom = Math.max(y.px0, y.px1)
  const parts: string[] = []
  parts.push(
    el("rect", {
      x: x.px0,
      y: top,
      width: x.px1 - x.px0,
      height: bottom - top,
      fill: "none",
      stroke: "#333",
      "stroke-width": 1,
    }),
  )
  const xt = opts.xTickValues ?? (x.log ? logTicks(x) : linearTicks(x))
  const xl = opts.xTickLabels ?? xt.map((v) => tickLabel(v, x.log))
  xt.forEach((v, i) => {
    const px = toPx(x, v)
    if (px < x.px0 - 0.5 || px > x.px1 + 0.5) return
    parts.push(el("line", { x1: px, y1: bottom, x2: px, y2: bottom - 5, stroke: "#333" }))
    parts.push(
      el("text", { x: px, y: bottom + 14, "text-anchor": "middle", "font-size": 10, class: "tick" }, esc(xl[i])),
    )
  })
  for (const v of y.log ? logTicks(y) : linearTicks(y)) {
    const py = toPx(y, v)
    if (py < top - 0.5 || py > bottom + 0.5) continue
    parts.push(el("line", { x1: x.px0, y1: py, x2: x.px0 + 5, y2: py, stroke: "#333" }))
    parts.push(
      el(
        "text",
        { x: x.px0 - 4, y: py + 3, "text-anchor": "end", "font-size": 10, class: "tick" },
        esc(tickLabel(v, y.log)),
      ),
    )
  }
  parts.push(
    el(
      "text",
      { x: (x.px0 + x.px1) / 2, y: top - 8, "text-anchor": "middle", "font-size": 12, "font-weight": "bold" },
      esc(opts.title),
    ),
  )
  parts.push(
    el("text", { x: (x.px0 + x.px1) / 2, y: bottom + 30, "text-anchor": "middle", "font-size": 11 }, esc(opts.xLabel)),
  )
  parts.push(
    el(
      "text",
      {
        x: x.px0 - 38,
        y: (top + bottom) / 2,
        "text-anchor": "middle",
        "font-size": 11,
        transform: `rotate(-90 ${fmt(x.px0 - 38)} ${fmt((top + bottom) / 2)})`,
      },
      esc(opts.yLabel),
    ),
  )
  return parts.join("\n")
}

export const PALETTE = ["#2a7f3f", "#c23b22", "#1f5fbf", "#7a7a7a", "#a65ab8", "#b8860b"]

export function marker(kind: number, px: number, py: number, color: string): string {
  switch (kind % 4) {
    case 0:
      return el("circle", { cx: px, cy: py, r: 2.6, fill: color, class: "pt" })
    case 1:
      return el("rect", { x: px - 2.4, y: py - 2.4, width: 4.8, height: 4.8, fill: color, class: "pt" })
    case 2:
      return el("path", { d: `M${px} ${py - 3} L${px + 3} ${py + 2.6} L${px - 3} ${py + 2.6} Z`, fill: color, class: "pt" })
    default:
      return el("path", { d: `M${px} ${py + 3} L${px + 3} ${py - 2.6} L${px - 3} ${py - 2.6} Z`, fill: color, class: "pt" })
  }
}

export function svgDocument(width: number, height: number, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    el("rect", { x: 0, y: 0, width, height, fill: "white" }),
    body,
    "</svg>",
    "",
  ].join("\n")
}
