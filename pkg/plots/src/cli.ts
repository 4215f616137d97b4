#!/usr/bin/env node
import { renderSpecFile } from "./render.js"

function usage(): void {
  console.error("usage: tpspeckle-render render <figure-spec.json>")
  console.error("  figure spec: { kind: pdf-overlay | contrast-vs-u, artifacts: {dir | pdf/summary/contrast/meta}, output }")
}

export function main(argv: string[]): number {
  if (argv.length !== 2 || argv[0] !== "render") {
    usage()
    return 2
  }
  try {
    const out = renderSpecFile(argv[1])
    console.log(`wrote ${out}`)
    return 0
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`)
    return 1
  }
}

process.exit(main(process.argv.slice(2)))
