import { readFileSync } from "node:fs"

import type { ContrastRow, PdfRow } from "./types.js"

/** Parse a simple comma-separated file (no quoting: the artifacts never quote). */
export function readCsv(path: string): Record<string, string>[] {
  const text = readFileSync(path, "utf8").trim()
  if (text.length === 0) {
    throw new Error(`artifact ${path} is empty`)
  }
  const lines = text.split(/\r?\n/)
  const header = lines[0].split(",")
  const rows: Record<string, string>[] = []
  for (let i = 1; i < lines.length; i++) {
    if (lines[i].length === 0) continue
    const cells = lines[i].split(",")
    if (cells.length !== header.length) {
      throw new Error(`artifact ${path}: row ${i + 1} has ${cells.length} fields, expected ${header.length}`)
    }
    const row: Record<string, string> = {}
    header.forEach((name, k) => (row[name] = cells[k]))
    rows.push(row)
  }
  if (rows.length === 0) {
    throw new Error(`artifact ${path} holds a header but no rows`)
  }
  return rows
}

function num(row: Record<string, string>, key: string, path: string): number {
  const v = Number(row[key])
  if (!Number.isFinite(v)) {
    throw new Error(`artifact ${path}: field ${key} is not numeric (got ${row[key]})`)
  }
  return v
}

export function readPdfCsv(path: string): PdfRow[] {
  return readCsv(path).map((row) => ({
    binCenter: num(row, "bin_center", path),
    density: num(row, "density", path),
    count: num(row, "count", path),
    channel: row["channel"],
  }))
}

export function readContrastCsv(path: string): ContrastRow[] {
  return readCsv(path).map((row) => ({
    channel: row["channel"],
    u: num(row, "U", path),
    window: row["window"],
    mean: num(row, "contrast_mean", path),
    stderr: num(row, "contrast_stderr", path),
    nSeeds: num(row, "n_seeds", path),
  }))
}
