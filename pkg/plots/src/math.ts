/** Density evaluators for the intensity-law family, used to redraw fitted
 * curves from summary.json parameters. Mirrors the simulation package:
 * exponentially scaled Bessel functions via power series below the switch
 * points and Chebyshev/asymptotic expansions above them. */

const EULER_GAMMA = 0.5772156649015328606

// Chebyshev coefficients of K0(x) e^x sqrt(x) and K1(x) e^x sqrt(x)
// in z = 4/x - 1, valid for x >= 2
const CHEB_K0_BIG = [
  1.2201515410329777273, -0.031448101311964500543, 0.0015698838857300533749,
  -0.00012849549581627802638, 1.3949813718876499364e-5, -1.8317555227191194848e-6,
  2.7668136394450150761e-7, -4.6604898976879476656e-8, 8.5740340174142260858e-9,
  -1.6975345093890615156e-9, 3.5773972814003284472e-10, -7.9574892444773970377e-11,
  1.855949114954926555e-11, -4.5145978833745191751e-12, 1.1403405882073442347e-12,
  -2.9800969231481783548e-13, 8.0328907750683743694e-14, -2.2275133267462963604e-14,
  6.3400764762766459642e-15, -1.8485933779209071651e-15, 5.5120559994043332676e-16,
  -1.6782311257549004166e-16, 5.210391777643549035e-17, -1.6475805939842515956e-17,
  5.3004337711770654714e-18, -1.7331712005814715966e-18, 5.7551092028680416494e-19,
  -1.9390956052838415779e-19,
]
const CHEB_K1_BIG = [
  1.3603130952422213347, 0.10392373657681723844, -0.0028578168596227793868,
  0.00019521551847135163111, -1.93619797416608296e-5, 2.4064849478372171171e-6,
  -3.5019606030878125421e-7, 5.7410841254500492923e-8, -1.0345762465678097027e-8,
  2.0150497551970346161e-9, -4.1903547593419255842e-10, 9.2183151876053141258e-11,
  -2.1299678384277910216e-11, 5.1396396734823435404e-12, -1.2891739609498229352e-12,
  3.3484196660522431201e-13, -8.9767051820101460691e-14, 2.4771544242195986812e-14,
  -7.0198370892147688493e-15, 2.0387031662398608755e-15, -6.0570472706430177212e-16,
  1.838093575243045194e-16, -5.6894628491936430675e-17, 1.7940510478863450716e-17,
  -5.7567444820730196429e-18, 1.8778651901616688517e-18, -6.2216452873372238705e-19,
  2.091912526946938434e-19,
]

function clenshaw(coeffs: readonly number[], z: number): number {
  let b1 = 0
  let b2 = 0
  for (let i = coeffs.length - 1; i >= 1; i--) {
    const next = 2 * z * b1 - b2 + coeffs[i]
    b2 = b1
    b1 = next
  }
  return z * b1 - b2 + coeffs[0]
}

function i0Series(x: number): number {
  const q = (x * x) / 4
  let term = 1
  let acc = 1
  for (let k = 1; k <= 41; k++) {
    term *= q / (k * k)
    acc += term
  }
  return acc
}

/** Exponentially scaled modified Bessel I0: exp(-x) I0(x). */
export function i0e(x: number): number {
  if (x < 0) throw new Error("i0e: argument must be non-negative")
  if (x < 18) return Math.exp(-x) * i0Series(x)
  const inv = 1 / (8 * x)
  let term = 1
  let acc = 1
  for (let k = 1; k <= 25; k++) {
    term *= ((2 * k - 1) ** 2 * inv) / k
    acc += term
  }
  return acc / Math.sqrt(2 * Math.PI * x)
}

function k0Series(x: number): number {
  const q = (x * x) / 4
  let term = 1
  let acc = 0
  let h = 0
  for (let k = 1; k <= 25; k++) {
    term *= q / (k * k)
    h += 1 / k
    acc += term * h
  }
  return -(Math.log(x / 2) + EULER_GAMMA) * i0Series(x) + acc
}

function k1Series(x: number): number {
  const q = (x * x) / 4
  let term = 1
  let acc = 1 - 2 * EULER_GAMMA
  let h1 = 0
  let h2 = 1
  let i1 = 1
  let i1term = 1
  for (let k = 1; k <= 25; k++) {
    term *= q / (k * (k + 1))
    h1 += 1 / k
    h2 += 1 / (k + 1)
    acc += (h1 + h2 - 2 * EULER_GAMMA) * term
    i1term *= q / (k * (k + 1))
    i1 += i1term
  }
  return 1 / x + Math.log(x / 2) * (0.5 * x * i1) - 0.25 * x * acc
}

/** Exponentially scaled modified Bessel K0: exp(x) K0(x). */
export function k0e(x: number): number {
  if (x < 0) throw new Error("k0e: argument must be non-negative")
  if (x === 0) return Infinity
  if (x <= 2) return Math.exp(x) * k0Series(x)
  return clenshaw(CHEB_K0_BIG, 4 / x - 1) / Math.sqrt(x)
}

/** Exponentially scaled modified Bessel K1: exp(x) K1(x). */
export function k1e(x: number): number {
  if (x < 0) throw new Error("k1e: argument must be non-negative")
  if (x === 0) return Infinity
  if (x <= 2) return Math.exp(x) * k1Series(x)
  return clenshaw(CHEB_K1_BIG, 4 / x - 1) / Math.sqrt(x)
}

/** Exponentially scaled K_n for integer order, by upward recurrence. */
export function kne(order: number, x: number): number {
  if (!Number.isInteger(order) || order < 0) throw new Error("kne: order must be a non-negative integer")
  if (order === 0) return k0e(x)
  if (order === 1) return k1e(x)
  let prev = k0e(x)
  let cur = k1e(x)
  for (let j = 1; j < order; j++) {
    const next = prev + ((2 * j) / x) * cur
    prev = cur
    cur = next
  }
  return cur
}

function factorial(n: number): number {
  let out = 1
  for (let k = 2; k <= n; k++) out *= k
  return out
}

/** Exponential intensity density with the given mean. */
export function pdfExponential(i: number, mean: number): number {
  return Math.exp(-i / mean) / mean
}

/** K-distribution density, integer shape >= 1. */
export function pdfK(i: number, mean: number, shape: number): number {
  if (!Number.isInteger(shape) || shape < 1) throw new Error("pdfK: integer shape >= 1 required")
  if (i === 0) return shape === 1 ? Infinity : shape / (mean * (shape - 1))
  const root = Math.sqrt((i * shape) / mean)
  return ((2 * shape) / (mean * factorial(shape - 1))) * root ** (shape - 1) * Math.exp(-2 * root) * kne(shape - 1, 2 * root)
}

/** Bound-pair Weibull density (squared exponential intensity). */
export function pdfWeibullBound(i: number, mean: number): number {
  if (i === 0) return Infinity
  const y2 = (2 * i) / mean
  return Math.exp(-Math.sqrt(y2)) / (mean * Math.sqrt(y2))
}

/** Rician intensity density: dominance ratio r over diffuse background s_n. */
export function pdfRician(i: number, ratio: number, background: number): number {
  const root = 2 * Math.sqrt((i * ratio) / background)
  return (Math.exp(root - ratio - i / background) * i0e(root)) / background
}

/** Rician density averaged over empirical dominance-ratio samples. */
export function pdfCompoundRician(i: number, rSamples: readonly number[], background: number): number {
  let acc = 0
  for (const r of rSamples) acc += pdfRician(i, r, background)
  return acc / rSamples.length
}
