//! Graph lower limits of operator sequences, computed two independent ways,
//! and finite-horizon epi-convergence diagnostics for function sequences.
//!
//! Everything here is evidence over a tail window, not a proof: a sequence
//! is examined at indices `n_max - tail + 1 ..= n_max` and verdicts carry
//! the tail and ladder metadata needed to reproduce them. In the Euclidean
//! finite-dimensional setting epi- and Mosco-convergence coincide, so a
//! single diagnostic serves both notions.

use crate::error::{Error, Result};
use crate::resolvent::resolve;
use crate::types::ext::ExtReal;
use crate::types::graph::{dist_to_graph, OperatorGraph};
use crate::types::grid::{Axis, Grid2};
use crate::types::point::DualPair;
use crate::types::report::{ConvergenceReport, Witness};
use crate::types::sampled::{BiFn, SampledFn};
use crate::types::spec::{FnSpec, OperatorSpec};

/// Default tail horizon for sequences.
pub const DEFAULT_N_MAX: u32 = 200;
/// Default tail window length (the last 50 indices of `n_max = 200`).
pub const DEFAULT_TAIL: u32 = 50;
/// Cap on stored witnesses per report.
const WITNESS_CAP: usize = 64;

/// A sequence of closed-form operators, given by a total rule in the index.
pub struct OperatorSequence {
    rule: Box<dyn Fn(u32) -> OperatorSpec + Send + Sync>,
    n_max: u32,
}

impl OperatorSequence {
    pub fn new(
        n_max: u32,
        rule: impl Fn(u32) -> OperatorSpec + Send + Sync + 'static,
    ) -> OperatorSequence {
        assert!(n_max >= 1);
        OperatorSequence {
            rule: Box::new(rule),
            n_max,
        }
    }

    pub fn constant(spec: OperatorSpec, n_max: u32) -> OperatorSequence {
        OperatorSequence::new(n_max, move |_| spec.clone())
    }

    /// Even indices take the first operator, odd indices the second.
    pub fn alternating(even: OperatorSpec, odd: OperatorSpec, n_max: u32) -> OperatorSequence {
        OperatorSequence::new(n_max, move |n| {
            if n % 2 == 0 {
                even.clone()
            } else {
                odd.clone()
            }
        })
    }

    pub fn term(&self, n: u32) -> OperatorSpec {
        (self.rule)(n)
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }
}

/// One term of a function sequence: a closed form on the line, a sampled
/// function on the line, or a sampled bifunction on the product window.
#[derive(Clone, Debug)]
pub enum FnTerm {
    Spec(FnSpec),
    Sampled(SampledFn),
    Product(BiFn),
}

/// A sequence of convex functions, given by a total rule in the index.
pub struct FnSequence {
    rule: Box<dyn Fn(u32) -> FnTerm + Send + Sync>,
    n_max: u32,
}

impl FnSequence {
    pub fn new(n_max: u32, rule: impl Fn(u32) -> FnTerm + Send + Sync + 'static) -> FnSequence {
        assert!(n_max >= 1);
        FnSequence {
            rule: Box::new(rule),
            n_max,
        }
    }

    pub fn term(&self, n: u32) -> FnTerm {
        (self.rule)(n)
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }
}

fn tail_range(n_max: u32, tail: u32) -> Result<std::ops::RangeInclusive<u32>> {
    if tail == 0 || tail > n_max {
        return Err(Error::EmptyTail);
    }
    Ok((n_max - tail + 1)..=n_max)
}

/// Settings for the graph lower-limit probes.
#[derive(Clone, Copy, Debug)]
pub struct LiminfConfig {
    /// Acceptance distance.
    pub tol: f64,
    /// Tail window length.
    pub tail: u32,
    /// Vanishing slack coefficient: term `n` may miss by an extra `slack/n`.
    pub slack: f64,
}

impl LiminfConfig {
    pub fn new(tol: f64, tail: u32) -> LiminfConfig {
        LiminfConfig {
            tol,
            tail,
            slack: 1.0,
        }
    }
}

/// Finite-horizon graph lower limit: a probe point survives when it lies
/// within `tol + slack/n` of the sampled term for every tail index `n`.
pub fn liminf_graphs(
    seq: &OperatorSequence,
    window: &Grid2,
    probes: &[DualPair],
    cfg: &LiminfConfig,
) -> Result<OperatorGraph> {
    let range = tail_range(seq.n_max(), cfg.tail)?;
    let mut alive = vec![true; probes.len()];
    for n in range {
        let cloud = seq.term(n).sample(window)?;
        if cloud.is_empty() {
            return Err(Error::EmptyOperator);
        }
        let allowed = cfg.tol + cfg.slack / n as f64;
        for (keep, p) in alive.iter_mut().zip(probes) {
            if *keep && dist_to_graph(p, &cloud)? > allowed {
                *keep = false;
            }
        }
    }
    Ok(OperatorGraph::new(
        probes
            .iter()
            .zip(&alive)
            .filter(|(_, keep)| **keep)
            .map(|(p, _)| *p)
            .collect(),
    ))
}

/// Graph lower limit through the resolvent characterization: a probe
/// `(x, x*)` survives when `|J_{T_n}(x, x*) - x| <= tol` for every tail
/// index. Requires closed-form (maximal monotone) terms.
pub fn liminf_resolvent(
    seq: &OperatorSequence,
    probes: &[DualPair],
    cfg: &LiminfConfig,
) -> Result<OperatorGraph> {
    let range = tail_range(seq.n_max(), cfg.tail)?;
    let mut alive = vec![true; probes.len()];
    for n in range {
        let term = seq.term(n);
        for (keep, p) in alive.iter_mut().zip(probes) {
            if *keep {
                let z = resolve(&term, p)?;
                if z.sub(&p.x).norm() > cfg.tol {
                    *keep = false;
                }
            }
        }
    }
    Ok(OperatorGraph::new(
        probes
            .iter()
            .zip(&alive)
            .filter(|(_, keep)| **keep)
            .map(|(p, _)| *p)
            .collect(),
    ))
}

/// Largest resolvent norm over the probes and the tail window. Bounded
/// whenever the lower limit is nonempty; reported by the scenario runner.
pub fn resolvent_sup_norm(
    seq: &OperatorSequence,
    probes: &[DualPair],
    tail: u32,
) -> Result<f64> {
    let range = tail_range(seq.n_max(), tail)?;
    let mut sup = 0.0f64;
    for n in range {
        let term = seq.term(n);
        for p in probes {
            sup = sup.max(resolve(&term, p)?.norm());
        }
    }
    Ok(sup)
}

/// Probe domain for the epi diagnostics: a window plus the probe indices.
#[derive(Clone, Debug)]
pub enum EpiDomain {
    Line {
        axis: Axis,
        probes: Vec<usize>,
    },
    Plane {
        grid: Grid2,
        probes: Vec<(usize, usize)>,
    },
}

impl EpiDomain {
    /// Interior probe lattice on an axis.
    pub fn line(axis: Axis, stride: usize, margin: f64) -> EpiDomain {
        let probes = axis.probe_indices(stride, margin);
        EpiDomain::Line { axis, probes }
    }

    /// Interior probe lattice on a product window.
    pub fn plane(grid: Grid2, stride: usize, margin: f64) -> EpiDomain {
        let xi = grid.x.probe_indices(stride, margin);
        let yi = grid.y.probe_indices(stride, margin);
        let mut probes = Vec::with_capacity(xi.len() * yi.len());
        for &ix in &xi {
            for &iy in &yi {
                probes.push((ix, iy));
            }
        }
        EpiDomain::Plane { grid, probes }
    }

    fn step(&self) -> f64 {
        match self {
            EpiDomain::Line { axis, .. } => axis.step(),
            EpiDomain::Plane { grid, .. } => grid.step(),
        }
    }

    fn probe_count(&self) -> usize {
        match self {
            EpiDomain::Line { probes, .. } => probes.len(),
            EpiDomain::Plane { probes, .. } => probes.len(),
        }
    }

    fn witness_for(&self, i: usize, measured: ExtReal, bound: ExtReal) -> Witness {
        match self {
            EpiDomain::Line { axis, probes } => {
                Witness::at_scalar(axis.point(probes[i]), measured, bound)
            }
            EpiDomain::Plane { grid, probes } => {
                let (ix, iy) = probes[i];
                let (x, s) = grid.point(ix, iy);
                Witness::at_pair(&DualPair::one(x, s), measured, bound)
            }
        }
    }
}

/// Settings for the epi-convergence diagnostic.
#[derive(Clone, Debug)]
pub struct EpiConfig {
    /// Strictly decreasing ball radii; the smallest drives the lower bound.
    pub ladder: Vec<f64>,
    pub tail: u32,
    pub tol: f64,
}

impl EpiConfig {
    pub fn new(ladder: Vec<f64>, tail: u32, tol: f64) -> EpiConfig {
        EpiConfig { ladder, tail, tol }
    }

    /// Default settings for a window with grid step `step`: radii
    /// `{0.5, 0.25, 0.1, 2 step}` (sorted, deduplicated, clipped at the
    /// resolution), tail 50, tolerance `10 step`.
    pub fn default_for_step(step: f64) -> EpiConfig {
        let mut ladder: Vec<f64> = [0.5, 0.25, 0.1, 2.0 * step]
            .into_iter()
            .filter(|r| *r >= step - 1e-12)
            .collect();
        ladder.sort_by(|a, b| b.total_cmp(a));
        ladder.dedup();
        EpiConfig {
            ladder,
            tail: DEFAULT_TAIL,
            tol: 10.0 * step,
        }
    }
}

/// Ball minima of one term at every probe and ladder radius.
struct TermEvaluator<'a> {
    domain: &'a EpiDomain,
    /// For sampled terms: grid indices inside each probe/radius ball.
    balls: Vec<Vec<Vec<usize>>>,
}

impl<'a> TermEvaluator<'a> {
    fn new(domain: &'a EpiDomain, ladder: &[f64]) -> TermEvaluator<'a> {
        // Precompute ball memberships once; terms only change the values.
        let mut balls = Vec::with_capacity(domain.probe_count());
        match domain {
            EpiDomain::Line { axis, probes } => {
                for &pi in probes {
                    let x = axis.point(pi);
                    let mut per_radius = Vec::with_capacity(ladder.len());
                    for &r in ladder {
                        let members = (0..axis.len())
                            .filter(|&j| (axis.point(j) - x).abs() <= r + 1e-9)
                            .collect();
                        per_radius.push(members);
                    }
                    balls.push(per_radius);
                }
            }
            EpiDomain::Plane { grid, probes } => {
                let (nx, ny) = (grid.x.len(), grid.y.len());
                let (hx, hy) = (grid.x.step(), grid.y.step());
                for &(px, py) in probes {
                    let (x, y) = grid.point(px, py);
                    let mut per_radius = Vec::with_capacity(ladder.len());
                    for &r in ladder {
                        let mut members = Vec::new();
                        let ix_lo = px.saturating_sub((r / hx).ceil() as usize + 1);
                        let ix_hi = (px + (r / hx).ceil() as usize + 1).min(nx - 1);
                        let iy_lo = py.saturating_sub((r / hy).ceil() as usize + 1);
                        let iy_hi = (py + (r / hy).ceil() as usize + 1).min(ny - 1);
                        for ix in ix_lo..=ix_hi {
                            for iy in iy_lo..=iy_hi {
                                let (u, v) = grid.point(ix, iy);
                                let d2 = (u - x) * (u - x) + (v - y) * (v - y);
                                if d2.sqrt() <= r + 1e-9 {
                                    members.push(grid.idx(ix, iy));
                                }
                            }
                        }
                        per_radius.push(members);
                    }
                    balls.push(per_radius);
                }
            }
        }
        TermEvaluator { domain, balls }
    }

    /// `inf { term(y) : |y - probe| <= r }` for every probe and radius.
    /// Closed forms are minimized exactly over the real interval; sampled
    /// terms over the grid points inside the ball.
    fn ball_minima(
        &self,
        term: &FnTerm,
        ladder: &[f64],
    ) -> Result<Vec<Vec<ExtReal>>> {
        let mut out = Vec::with_capacity(self.balls.len());
        match (term, self.domain) {
            (FnTerm::Spec(f), EpiDomain::Line { axis, probes }) => {
                for &pi in probes {
                    let x = axis.point(pi);
                    out.push(
                        ladder
                            .iter()
                            .map(|&r| f.inf_on_interval(x - r, x + r))
                            .collect(),
                    );
                }
            }
            (FnTerm::Sampled(f), EpiDomain::Line { axis, .. }) => {
                if f.axis() != axis {
                    return Err(Error::WindowMismatch);
                }
                for per_radius in &self.balls {
                    out.push(
                        per_radius
                            .iter()
                            .map(|members| {
                                members
                                    .iter()
                                    .map(|&j| f.value(j))
                                    .fold(ExtReal::INF, ExtReal::min)
                            })
                            .collect(),
                    );
                }
            }
            (FnTerm::Product(f), EpiDomain::Plane { grid, .. }) => {
                if f.grid() != grid {
                    return Err(Error::WindowMismatch);
                }
                let values = f.values();
                for per_radius in &self.balls {
                    out.push(
                        per_radius
                            .iter()
                            .map(|members| {
                                members
                                    .iter()
                                    .map(|&j| values[j])
                                    .fold(ExtReal::INF, ExtReal::min)
                            })
                            .collect(),
                    );
                }
            }
            _ => return Err(Error::WindowMismatch),
        }
        Ok(out)
    }

    fn candidate_values(&self, candidate: &FnTerm) -> Result<Vec<ExtReal>> {
        match (candidate, self.domain) {
            (FnTerm::Spec(f), EpiDomain::Line { axis, probes }) => {
                Ok(probes.iter().map(|&pi| f.eval(axis.point(pi))).collect())
            }
            (FnTerm::Sampled(f), EpiDomain::Line { axis, probes }) => {
                if f.axis() != axis {
                    return Err(Error::WindowMismatch);
                }
                Ok(probes.iter().map(|&pi| f.value(pi)).collect())
            }
            (FnTerm::Product(f), EpiDomain::Plane { grid, probes }) => {
                if f.grid() != grid {
                    return Err(Error::WindowMismatch);
                }
                Ok(probes.iter().map(|&(ix, iy)| f.value(ix, iy)).collect())
            }
            _ => Err(Error::WindowMismatch),
        }
    }
}

/// Finite-horizon epi-convergence diagnostic of a function sequence toward
/// a candidate limit.
///
/// With `m_n(x, r) = inf { f_n(y) : |y - x| <= r }`, the recovery condition
/// asks for some ladder radius at which the tail supremum of `m_n` stays at
/// or below `candidate(x) + tol`; the lower-bound condition asks that at the
/// smallest radius the tail infimum stays at or above `candidate(x) - tol`.
/// Where the candidate is `+inf`, the lower bound degenerates to demanding
/// that every tail term is `+inf` on the smallest ball; a finite value there
/// is exactly the oscillation evidence reported as a witness.
pub fn epi_convergence_report(
    seq: &FnSequence,
    candidate: &FnTerm,
    domain: &EpiDomain,
    cfg: &EpiConfig,
) -> Result<ConvergenceReport> {
    validate_ladder(&cfg.ladder, domain.step())?;
    let range = tail_range(seq.n_max(), cfg.tail)?;
    let (first, last) = (*range.start(), *range.end());
    if domain.probe_count() == 0 {
        return Ok(ConvergenceReport::inconclusive(
            "no probe points inside the window at the requested margin",
        ));
    }

    let evaluator = TermEvaluator::new(domain, &cfg.ladder);
    let n_probes = domain.probe_count();
    let n_radii = cfg.ladder.len();
    let mut tail_sup = vec![vec![ExtReal::finite(f64::MIN); n_radii]; n_probes];
    let mut tail_inf = vec![vec![ExtReal::INF; n_radii]; n_probes];

    for n in range {
        let term = seq.term(n);
        let minima = evaluator.ball_minima(&term, &cfg.ladder)?;
        for (pi, per_radius) in minima.into_iter().enumerate() {
            for (ri, m) in per_radius.into_iter().enumerate() {
                tail_sup[pi][ri] = tail_sup[pi][ri].max(m);
                tail_inf[pi][ri] = tail_inf[pi][ri].min(m);
            }
        }
    }

    let cand = evaluator.candidate_values(candidate)?;
    let smallest = n_radii - 1;
    let mut witnesses = Vec::new();
    let mut failures = 0usize;
    for pi in 0..n_probes {
        match cand[pi].as_finite() {
            Some(c) => {
                // Recovery: the most favorable ladder radius must reach c.
                let best = (0..n_radii)
                    .map(|ri| tail_sup[pi][ri])
                    .fold(ExtReal::INF, ExtReal::min);
                if best > ExtReal::finite(c + cfg.tol) {
                    failures += 1;
                    if witnesses.len() < WITNESS_CAP {
                        witnesses.push(
                            domain
                                .witness_for(pi, best, ExtReal::finite(c + cfg.tol))
                                .with_note("no recovery radius reaches the candidate value"),
                        );
                    }
                    continue;
                }
                // Lower bound at the smallest radius.
                let low = tail_inf[pi][smallest];
                if low < ExtReal::finite(c - cfg.tol) {
                    failures += 1;
                    if witnesses.len() < WITNESS_CAP {
                        witnesses.push(
                            domain
                                .witness_for(pi, low, ExtReal::finite(c - cfg.tol))
                                .with_note("tail values undercut the candidate"),
                        );
                    }
                }
            }
            None => {
                // Candidate is +inf: every tail term must be +inf nearby.
                let low = tail_inf[pi][smallest];
                if low.is_finite() {
                    failures += 1;
                    if witnesses.len() < WITNESS_CAP {
                        witnesses.push(domain.witness_for(pi, low, ExtReal::INF).with_note(
                            "finite tail values at a point outside the candidate domain",
                        ));
                    }
                }
            }
        }
    }

    let mut report = if witnesses.is_empty() {
        ConvergenceReport::pass()
    } else {
        ConvergenceReport::fail(witnesses)
    }
    .with_tolerance("tol", cfg.tol)
    .with_tail(first, last)
    .with_ladder(&cfg.ladder);
    if failures > WITNESS_CAP {
        report = report.with_note(format!("{failures} failing probes in total"));
    }
    Ok(report)
}

fn validate_ladder(ladder: &[f64], step: f64) -> Result<()> {
    if ladder.is_empty() {
        return Err(Error::InvalidLadder("empty".into()));
    }
    for w in ladder.windows(2) {
        if w[1] >= w[0] {
            return Err(Error::InvalidLadder(format!(
                "radii must strictly decrease, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    let min = ladder[ladder.len() - 1];
    if min < step - 1e-12 {
        return Err(Error::InvalidLadder(format!(
            "smallest radius {min} is below the grid resolution {step}"
        )));
    }
    Ok(())
}
