//! Diagnostics separating conditionally from unconditionally convergent
//! frame expansions at finite truncation.
//!
//! A series is a finite list of terms `t_n = c_n v_n`. Reordering cannot
//! change the full sum, but it can push intermediate partial sums far from
//! the limit; how far, relative to the natural order, is the evidence used
//! here.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{FrameError, Result};
use crate::family::FrameFamily;
use crate::linalg::{inner_product, Scalar, Vector};
use crate::Tolerances;

/// Rearranged deviation above this multiple of the natural-order deviation
/// (at the largest cut) is needed for conditional evidence.
pub const CONDITIONAL_FACTOR: f64 = 3.0;
/// Rearranged deviation within this multiple at every cut is unconditional
/// evidence.
pub const UNCONDITIONAL_FACTOR: f64 = 2.0;

/// Terms `c_n v_n` of a finite series together with their coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    dim: usize,
    coefficients: Vec<Scalar>,
    terms: Vec<Vector>,
}

impl Series {
    /// `Σ c_n x_n`.
    pub fn from_coefficients(f: &FrameFamily, c: &[Scalar]) -> Result<Self> {
        if c.len() != f.count() {
            return Err(FrameError::CountMismatch {
                expected: f.count(),
                found: c.len(),
            });
        }
        let terms = f
            .vectors()
            .iter()
            .zip(c)
            .map(|(v, cn)| v.scale(*cn))
            .collect();
        Ok(Self {
            dim: f.ambient_dim(),
            coefficients: c.to_vec(),
            terms,
        })
    }

    /// `Σ ⟨p, y_n⟩ x_n`, the expansion of `p` through the alternative-dual
    /// identity.
    pub fn analysis_expansion(x: &FrameFamily, y: &FrameFamily, probe: &Vector) -> Result<Self> {
        x.check_same_shape(y)?;
        let c = coefficients_against(y, probe)?;
        Self::from_coefficients(x, &c)
    }

    /// `Σ ⟨p, x_n⟩ y_n`, the expansion of `p` through the synthesis
    /// pseudo-dual identity.
    pub fn synthesis_expansion(x: &FrameFamily, y: &FrameFamily, probe: &Vector) -> Result<Self> {
        x.check_same_shape(y)?;
        let c = coefficients_against(x, probe)?;
        Self::from_coefficients(y, &c)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Vector] {
        &self.terms
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    /// Sum of the first `k` terms.
    pub fn partial_sum(&self, k: usize) -> Result<Vector> {
        if k > self.len() {
            return Err(FrameError::CutOutOfRange {
                cut: k,
                len: self.len(),
            });
        }
        let mut s = Vector::zeros(self.dim);
        for t in &self.terms[..k] {
            s.axpy(Scalar::new(1.0, 0.0), t)?;
        }
        Ok(s)
    }
}

fn coefficients_against(f: &FrameFamily, probe: &Vector) -> Result<Vec<Scalar>> {
    f.vectors()
        .iter()
        .map(|v| inner_product(probe, v))
        .collect()
}

/// Budget and seed for the random part of rearrangement searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            budget: 16,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    UnconditionalEvidence,
    ConditionalEvidence,
    Inconclusive,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::UnconditionalEvidence => "UnconditionalEvidence",
            Verdict::ConditionalEvidence => "ConditionalEvidence",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub cut: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartialSum {
    pub cut: usize,
    pub value: Vector,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceDiagnostic {
    pub partial_sums: Vec<PartialSum>,
    /// Largest natural-order deviation over the last 90% of each cut.
    pub identity_deviation: Vec<CurvePoint>,
    /// Largest deviation found by rearranging the last 90% of each cut.
    pub rearranged_deviation: Vec<CurvePoint>,
    /// `Σ_{n ≤ K} |c_n|²`.
    pub coeff_growth: Vec<CurvePoint>,
    pub verdict: Verdict,
}

/// About ten evenly spaced cuts covering the top decade `[⌈len/10⌉, len]`.
pub fn default_cuts(len: usize) -> Vec<usize> {
    if len == 0 {
        return vec![0];
    }
    let lo = len.div_ceil(10).max(1);
    let mut cuts: Vec<usize> = (0..=9).map(|i| lo + ((len - lo) * i + 4) / 9).collect();
    cuts.dedup();
    cuts
}

fn check_limit(series: &Series, limit: &Vector) -> Result<()> {
    if limit.dim() != series.dim() {
        return Err(FrameError::DimMismatch {
            expected: series.dim(),
            found: limit.dim(),
        });
    }
    Ok(())
}

// Residuals S_p − limit for p = 0..=len.
fn prefix_residuals(series: &Series, limit: &Vector, upto: usize) -> Result<Vec<Vector>> {
    let mut r = limit.scale(Scalar::new(-1.0, 0.0));
    let mut out = Vec::with_capacity(upto + 1);
    out.push(r.clone());
    for t in &series.terms[..upto] {
        r.axpy(Scalar::new(1.0, 0.0), t)?;
        out.push(r.clone());
    }
    Ok(out)
}

struct WindowSearch {
    max_deviation: f64,
    order: Vec<usize>,
    prefix: usize,
}

// Largest ‖start + Σ_{prefix of π} t‖ over the natural order of `window`,
// the greedy order and `budget` random orders.
fn search_window(
    terms: &[Vector],
    window: std::ops::Range<usize>,
    start: &Vector,
    search: &SearchConfig,
) -> Result<WindowSearch> {
    let identity: Vec<usize> = window.clone().collect();
    let mut best = scan_order(terms, &identity, start)?;
    let mut consider = |order: Vec<usize>| -> Result<()> {
        let cand = scan_order(terms, &order, start)?;
        if cand.max_deviation > best.max_deviation {
            best = cand;
        }
        Ok(())
    };
    consider(greedy_order(terms, &identity, start)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    for _ in 0..search.budget.max(1) {
        let mut order = identity.clone();
        order.shuffle(&mut rng);
        consider(order)?;
    }
    Ok(best)
}

fn scan_order(terms: &[Vector], order: &[usize], start: &Vector) -> Result<WindowSearch> {
    let mut r = start.clone();
    let mut max_deviation = r.norm();
    let mut prefix = 0;
    for (i, &n) in order.iter().enumerate() {
        r.axpy(Scalar::new(1.0, 0.0), &terms[n])?;
        let d = r.norm();
        if d > max_deviation {
            max_deviation = d;
            prefix = i + 1;
        }
    }
    Ok(WindowSearch {
        max_deviation,
        order: order.to_vec(),
        prefix,
    })
}

// Repeatedly appends the unused term that moves the running residual
// farthest from zero; ties go to the smallest index.
fn greedy_order(terms: &[Vector], candidates: &[usize], start: &Vector) -> Result<Vec<usize>> {
    let mut r = start.clone();
    let mut unused: Vec<usize> = candidates.to_vec();
    let sq: Vec<f64> = terms.iter().map(|t| t.norm_sqr()).collect();
    let mut order = Vec::with_capacity(unused.len());
    while !unused.is_empty() {
        let mut best_pos = 0;
        let mut best_val = f64::NEG_INFINITY;
        for (pos, &n) in unused.iter().enumerate() {
            let val = 2.0 * inner_product(&r, &terms[n])?.re + sq[n];
            if val > best_val {
                best_val = val;
                best_pos = pos;
            }
        }
        let n = unused.remove(best_pos);
        r.axpy(Scalar::new(1.0, 0.0), &terms[n])?;
        order.push(n);
    }
    Ok(order)
}

/// Partial sums, natural and rearranged deviation curves, coefficient
/// growth and a verdict.
///
/// At each cut `K` the first `h = ⌊K/10⌋` terms are held fixed and the rest
/// are rearranged. With `I(K)` the largest natural-order deviation after
/// `h` terms, `R(K)` the largest rearranged deviation and `ε` a small floor:
/// conditional evidence needs `R > 3(I + ε)` at the largest cut and a ratio
/// `R/(I + ε)` that grows across the top decade of cuts; unconditional
/// evidence needs `R ≤ 2(I + ε)` at every cut.
pub fn partial_sum_trajectory(
    series: &Series,
    limit: &Vector,
    cuts: &[usize],
    search: &SearchConfig,
    tol: &Tolerances,
) -> Result<ConvergenceDiagnostic> {
    check_limit(series, limit)?;
    let mut cuts = cuts.to_vec();
    cuts.sort_unstable();
    cuts.dedup();
    if let Some(&bad) = cuts.iter().find(|&&k| k > series.len()) {
        return Err(FrameError::CutOutOfRange {
            cut: bad,
            len: series.len(),
        });
    }
    let top = cuts.last().copied().unwrap_or(0);
    let residuals = prefix_residuals(series, limit, top)?;
    let deviations: Vec<f64> = residuals.iter().map(|r| r.norm()).collect();
    let floor = tol.dual * limit.norm().max(1.0);

    let mut partial_sums = Vec::new();
    let mut identity_deviation = Vec::new();
    let mut rearranged_deviation = Vec::new();
    let mut coeff_growth = Vec::new();
    let mut growth = 0.0;
    let mut counted = 0;
    for &k in &cuts {
        let mut value = residuals[k].clone();
        value.axpy(Scalar::new(1.0, 0.0), limit)?;
        partial_sums.push(PartialSum {
            cut: k,
            value,
            deviation: deviations[k],
        });
        let head = k / 10;
        let natural = deviations[head..=k].iter().copied().fold(0.0, f64::max);
        identity_deviation.push(CurvePoint {
            cut: k,
            value: natural,
        });
        let found = search_window(&series.terms, head..k, &residuals[head], search)?;
        rearranged_deviation.push(CurvePoint {
            cut: k,
            value: found.max_deviation.max(natural),
        });
        while counted < k {
            growth += series.coefficients[counted].norm_sqr();
            counted += 1;
        }
        coeff_growth.push(CurvePoint {
            cut: k,
            value: growth,
        });
    }

    let verdict = decide(&identity_deviation, &rearranged_deviation, floor);
    Ok(ConvergenceDiagnostic {
        partial_sums,
        identity_deviation,
        rearranged_deviation,
        coeff_growth,
        verdict,
    })
}

fn decide(natural: &[CurvePoint], rearranged: &[CurvePoint], floor: f64) -> Verdict {
    let (Some(last_i), Some(last_r)) = (natural.last(), rearranged.last()) else {
        return Verdict::Inconclusive;
    };
    let ratio = |i: &CurvePoint, r: &CurvePoint| r.value / (i.value + floor);
    let low = natural
        .iter()
        .position(|p| p.cut * 10 >= last_i.cut)
        .unwrap_or(natural.len() - 1);
    let grows = ratio(last_i, last_r) > ratio(&natural[low], &rearranged[low]);
    if last_r.value > CONDITIONAL_FACTOR * (last_i.value + floor) && grows {
        return Verdict::ConditionalEvidence;
    }
    if natural
        .iter()
        .zip(rearranged)
        .all(|(i, r)| r.value <= UNCONDITIONAL_FACTOR * (i.value + floor))
    {
        return Verdict::UnconditionalEvidence;
    }
    Verdict::Inconclusive
}

#[derive(Debug, Clone, PartialEq)]
pub struct RearrangementResult {
    pub max_deviation: f64,
    /// Order of the terms achieving `max_deviation`.
    pub witness: Vec<usize>,
    /// Number of leading witness terms at which the maximum occurs.
    pub witness_prefix: usize,
    /// `‖Σ_n t_n − limit‖` in the natural order.
    pub identity_residual: f64,
}

/// Searches whole-series rearrangements for the prefix sum farthest from
/// `limit`: the natural order, the greedy order and `budget` seeded random
/// orders.
pub fn rearrangement_search(
    series: &Series,
    limit: &Vector,
    search: &SearchConfig,
) -> Result<RearrangementResult> {
    check_limit(series, limit)?;
    let start = limit.scale(Scalar::new(-1.0, 0.0));
    let found = search_window(&series.terms, 0..series.len(), &start, search)?;
    let identity_residual = series.partial_sum(series.len())?.sub(limit)?.norm();
    Ok(RearrangementResult {
        max_deviation: found.max_deviation,
        witness: found.order,
        witness_prefix: found.prefix,
        identity_residual,
    })
}

/// `Σ_{n ≤ K} |⟨probe, y_n⟩|²` at each cut.
pub fn bessel_growth(
    dual: &FrameFamily,
    probe: &Vector,
    cuts: &[usize],
) -> Result<Vec<CurvePoint>> {
    if probe.dim() != dual.ambient_dim() {
        return Err(FrameError::DimMismatch {
            expected: dual.ambient_dim(),
            found: probe.dim(),
        });
    }
    let mut cuts = cuts.to_vec();
    cuts.sort_unstable();
    cuts.dedup();
    if let Some(&bad) = cuts.iter().find(|&&k| k > dual.count()) {
        return Err(FrameError::CutOutOfRange {
            cut: bad,
            len: dual.count(),
        });
    }
    let mut out = Vec::with_capacity(cuts.len());
    let mut acc = 0.0;
    let mut n = 0;
    for k in cuts {
        while n < k {
            acc += inner_product(probe, dual.vector(n))?.norm_sqr();
            n += 1;
        }
        out.push(CurvePoint { cut: k, value: acc });
    }
    Ok(out)
}

/// Closed form of `Σ_{n ≤ k} ⟨x, y_n⟩ x_n` for the `Example31Frame` /
/// `Example31Dual` pair, in the ambient space of truncation `k`.
///
/// Odd `k` gives the orthogonal projection of `x` onto the first
/// `(k−1)/2` coordinates. Even `k` gives the projection onto the first
/// `k/2 − 1` coordinates plus `(√(2/k)⟨x, e_1⟩ + ½⟨x, e_{k/2}⟩) e_{k/2}`.
pub fn example31_partial_sum(x: &Vector, k: usize) -> Result<Vector> {
    let dim = crate::family::example31_dim(k);
    if k < 4 || x.dim() != dim {
        return Err(FrameError::DimMismatch {
            expected: dim,
            found: x.dim(),
        });
    }
    let c = x.coords();
    let mut out = vec![Scalar::new(0.0, 0.0); dim];
    if k % 2 == 1 {
        out[..(k - 1) / 2].copy_from_slice(&c[..(k - 1) / 2]);
    } else {
        let m = k / 2;
        out[..m - 1].copy_from_slice(&c[..m - 1]);
        out[m - 1] = c[0] * (2.0 / k as f64).sqrt() + c[m - 1] * 0.5;
    }
    Vector::new(out)
}

/// `H_n = Σ_{k ≤ n} 1/k` by direct summation.
pub fn harmonic(n: usize) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeSymmetry {
    pub analysis_verdict: Verdict,
    pub synthesis_verdict: Verdict,
    pub analysis_deviation: f64,
    pub synthesis_deviation: f64,
    /// Smallest margin of the adjoint transfer inequalities; negative means
    /// a failure.
    pub transfer_margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub probes: Vec<ProbeSymmetry>,
    /// Some transfer inequality failed.
    pub disagreement: bool,
}

/// Compares the two expansions `Σ ⟨p, y_n⟩ x_n` and `Σ ⟨p, x_n⟩ y_n` of each
/// probe.
///
/// Partial sums of the two series over a common index set `G` are
/// `T_G p` and `T_G* p` for `T_G = Σ_{n∈G} x_n y_n*`, so a large
/// rearranged partial sum on one side forces one of comparable size on the
/// other: `‖T_G* u‖ ≥ ‖T_G p‖/‖p‖` for `u = T_G p/‖T_G p‖`. Each search
/// witness is pushed through this inequality in both directions; the
/// individual verdicts are reported alongside.
pub fn symmetry_check(
    x: &FrameFamily,
    y: &FrameFamily,
    probes: &[Vector],
    search: &SearchConfig,
    tol: &Tolerances,
) -> Result<SymmetryReport> {
    x.check_same_shape(y)?;
    let cuts = default_cuts(x.count());
    let mut out = Vec::with_capacity(probes.len());
    for p in probes {
        let a = Series::analysis_expansion(x, y, p)?;
        let s = Series::synthesis_expansion(x, y, p)?;
        let da = partial_sum_trajectory(&a, p, &cuts, search, tol)?;
        let ds = partial_sum_trajectory(&s, p, &cuts, search, tol)?;
        let wa = rearrangement_search(&a, p, search)?;
        let ws = rearrangement_search(&s, p, search)?;
        let ma = transfer_margin(x, y, p, &wa.witness[..wa.witness_prefix])?;
        let ms = transfer_margin(y, x, p, &ws.witness[..ws.witness_prefix])?;
        out.push(ProbeSymmetry {
            analysis_verdict: da.verdict,
            synthesis_verdict: ds.verdict,
            analysis_deviation: wa.max_deviation,
            synthesis_deviation: ws.max_deviation,
            transfer_margin: ma.min(ms),
        });
    }
    let disagreement = out.iter().any(|p| p.transfer_margin < 0.0);
    Ok(SymmetryReport {
        probes: out,
        disagreement,
    })
}

// ‖T_G* u‖ − ‖T_G p‖/‖p‖ + slack with T_G = Σ_{n∈G} x_n y_n*.
fn transfer_margin(x: &FrameFamily, y: &FrameFamily, p: &Vector, subset: &[usize]) -> Result<f64> {
    let pn = p.norm();
    let mut tp = Vector::zeros(x.ambient_dim());
    for &n in subset {
        tp.axpy(inner_product(p, y.vector(n))?, x.vector(n))?;
    }
    let size = tp.norm();
    if pn == 0.0 || size == 0.0 {
        return Ok(0.0);
    }
    let u = tp.scale(Scalar::new(1.0 / size, 0.0));
    let mut back = Vector::zeros(x.ambient_dim());
    for &n in subset {
        back.axpy(inner_product(&u, x.vector(n))?, y.vector(n))?;
    }
    let slack = 1e-9 * size.max(1.0);
    Ok(back.norm() - size / pn + slack)
}

/// Curve as a JSON array of `{"K": k, key: value}` objects.
pub fn curve_json(points: &[CurvePoint], key: &str) -> Value {
    Value::Array(
        points
            .iter()
            .map(|p| {
                let mut obj = serde_json::Map::new();
                obj.insert("K".into(), json!(p.cut));
                obj.insert(key.into(), json!(p.value));
                Value::Object(obj)
            })
            .collect(),
    )
}
