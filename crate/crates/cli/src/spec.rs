//! JSON input model and its translation into library objects.
//!
//! Sequence parameters are affine in `1/n` (`{"base": b, "over_n": c}`
//! evaluates to `b + c/n`; a bare number is a constant), which covers every
//! catalog family while staying trivially validatable. See `schema.json`
//! next to this crate for the full format.

use anyhow::{anyhow, bail, Context};
use serde::Deserialize;

use monolim::limits::{FnSequence, FnTerm, OperatorSequence};
use monolim::types::ext::ExtReal;
use monolim::{Axis, BiFn, DualPair, FnSpec, Grid2, OperatorGraph, OperatorSpec, Point};

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum AffineParam {
    Const(f64),
    Affine {
        #[serde(default)]
        base: f64,
        #[serde(default)]
        over_n: f64,
    },
}

impl AffineParam {
    pub fn at(&self, n: u32) -> f64 {
        match *self {
            AffineParam::Const(v) => v,
            AffineParam::Affine { base, over_n } => base + over_n / n as f64,
        }
    }

    fn constant(&self) -> Option<f64> {
        match *self {
            AffineParam::Const(v) => Some(v),
            AffineParam::Affine { base, over_n: 0.0 } => Some(base),
            _ => None,
        }
    }
}

fn default_dimension() -> u32 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorJson {
    pub kind: String,
    #[serde(default)]
    pub a: Option<AffineParam>,
    #[serde(default)]
    pub b: Option<AffineParam>,
    #[serde(default)]
    pub c: Option<AffineParam>,
    #[serde(default)]
    pub shift: Option<AffineParam>,
    #[serde(default)]
    pub lo: Option<AffineParam>,
    #[serde(default)]
    pub hi: Option<AffineParam>,
    #[serde(default)]
    pub points: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionJson {
    pub kind: String,
    #[serde(default)]
    pub a: Option<AffineParam>,
    #[serde(default)]
    pub c: Option<AffineParam>,
    #[serde(default)]
    pub shift: Option<AffineParam>,
    #[serde(default)]
    pub lo: Option<AffineParam>,
    #[serde(default)]
    pub hi: Option<AffineParam>,
    #[serde(default)]
    pub slope: Option<AffineParam>,
    #[serde(default)]
    pub parts: Option<Vec<FunctionJson>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckJson {
    pub kind: String,
    #[serde(default)]
    pub source: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeJson {
    pub x: f64,
    pub xstar: f64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolerancesJson {
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub class: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbesJson {
    #[serde(default = "default_stride")]
    pub stride: usize,
    #[serde(default = "default_margin")]
    pub margin: f64,
}

fn default_stride() -> usize {
    4
}

fn default_margin() -> f64 {
    1.0
}

impl Default for ProbesJson {
    fn default() -> Self {
        ProbesJson {
            stride: default_stride(),
            margin: default_margin(),
        }
    }
}

/// Top-level spec file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default = "default_dimension")]
    pub dimension: u32,
    pub window: WindowSpec,
    #[serde(default)]
    pub operator: Option<OperatorJson>,
    #[serde(default)]
    pub function: Option<FunctionJson>,
    #[serde(default)]
    pub sequence: Option<OperatorJson>,
    #[serde(default)]
    pub function_sequence: Option<FunctionJson>,
    #[serde(default)]
    pub candidate: Option<FunctionJson>,
    #[serde(default)]
    pub check: Option<CheckJson>,
    #[serde(default)]
    pub probe: Option<ProbeJson>,
    #[serde(default)]
    pub tolerances: TolerancesJson,
    #[serde(default)]
    pub probes: ProbesJson,
    #[serde(default)]
    pub tail: Option<u32>,
    #[serde(default)]
    pub nmax: Option<u32>,
}

impl SpecFile {
    pub fn parse(text: &str) -> anyhow::Result<SpecFile> {
        let spec: SpecFile = serde_json::from_str(text)
            .map_err(|e| anyhow!("spec parse error at line {}, column {}: {e}", e.line(), e.column()))?;
        if spec.dimension != 1 {
            bail!("grid-based commands require dimension 1, got {}", spec.dimension);
        }
        Ok(spec)
    }

    pub fn axis(&self) -> anyhow::Result<Axis> {
        Axis::new(self.window.lo, self.window.hi, self.window.n).context("invalid window")
    }

    pub fn grid(&self) -> anyhow::Result<Grid2> {
        Ok(Grid2::square(self.axis()?))
    }
}

fn require(p: &Option<AffineParam>, name: &str, kind: &str) -> anyhow::Result<AffineParam> {
    p.ok_or_else(|| anyhow!("operator/function kind '{kind}' requires field '{name}'"))
}

impl OperatorJson {
    /// Instantiates the operator at sequence index `n` (constants ignore `n`).
    pub fn at(&self, n: u32) -> anyhow::Result<OperatorSpec> {
        let kind = self.kind.as_str();
        Ok(match kind {
            "linear" => {
                let a = require(&self.a, "a", kind)?.at(n);
                let b = self.b.map(|p| p.at(n)).unwrap_or(0.0);
                OperatorSpec::linear_1d(a, b).map_err(|e| anyhow!("{e}"))?
            }
            "subdiff_quadratic" => {
                let a = require(&self.a, "a", kind)?.at(n);
                let c = self.c.map(|p| p.at(n)).unwrap_or(0.0);
                if a <= 0.0 {
                    bail!("subdiff_quadratic requires a > 0, got {a}");
                }
                OperatorSpec::subdiff_quadratic(a, c)
            }
            "subdiff_abs" => {
                OperatorSpec::subdiff_abs(self.shift.map(|p| p.at(n)).unwrap_or(0.0))
            }
            "normal_cone_box" => {
                let lo = require(&self.lo, "lo", kind)?.at(n);
                let hi = require(&self.hi, "hi", kind)?.at(n);
                if lo > hi {
                    bail!("normal_cone_box requires lo <= hi, got [{lo}, {hi}]");
                }
                OperatorSpec::normal_cone_box(lo, hi)
            }
            "vertical_line" => {
                OperatorSpec::vertical_line(self.c.map(|p| p.at(n)).unwrap_or(0.0))
            }
            "horizontal_line" => {
                OperatorSpec::horizontal_line(self.c.map(|p| p.at(n)).unwrap_or(0.0))
            }
            "finite_graph" => {
                let pts = self
                    .points
                    .as_ref()
                    .ok_or_else(|| anyhow!("finite_graph requires 'points'"))?;
                if pts.is_empty() {
                    bail!("finite_graph requires at least one point");
                }
                OperatorSpec::FiniteGraph(OperatorGraph::new(
                    pts.iter()
                        .map(|[x, s]| DualPair::new(Point::one(*x), Point::one(*s)))
                        .collect(),
                ))
            }
            "alternating_axes" => {
                if n.is_multiple_of(2) {
                    OperatorSpec::vertical_line(0.0)
                } else {
                    OperatorSpec::horizontal_line(0.0)
                }
            }
            other => bail!(
                "unknown operator kind '{other}' (expected linear, subdiff_quadratic, \
                 subdiff_abs, normal_cone_box, vertical_line, horizontal_line, finite_graph, \
                 alternating_axes)"
            ),
        })
    }

    pub fn fixed(&self) -> anyhow::Result<OperatorSpec> {
        // A static operator must not use drifting parameters.
        for (name, p) in [
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("shift", &self.shift),
            ("lo", &self.lo),
            ("hi", &self.hi),
        ] {
            if let Some(p) = p {
                if p.constant().is_none() {
                    bail!("field '{name}' drifts with n; only sequences may do that");
                }
            }
        }
        self.at(1)
    }

    pub fn sequence(&self, n_max: u32) -> anyhow::Result<OperatorSequence> {
        // Validate once at a sample index so rule evaluation cannot fail.
        self.at(1).context("invalid sequence term")?;
        self.at(n_max).context("invalid sequence term")?;
        let json = OperatorJsonOwned::from(self);
        Ok(OperatorSequence::new(n_max, move |n| {
            json.at(n).expect("validated at construction")
        }))
    }
}

// Owned copy for moving into sequence closures.
#[derive(Clone)]
struct OperatorJsonOwned {
    kind: String,
    a: Option<AffineParam>,
    b: Option<AffineParam>,
    c: Option<AffineParam>,
    shift: Option<AffineParam>,
    lo: Option<AffineParam>,
    hi: Option<AffineParam>,
    points: Option<Vec<[f64; 2]>>,
}

impl From<&OperatorJson> for OperatorJsonOwned {
    fn from(j: &OperatorJson) -> Self {
        OperatorJsonOwned {
            kind: j.kind.clone(),
            a: j.a,
            b: j.b,
            c: j.c,
            shift: j.shift,
            lo: j.lo,
            hi: j.hi,
            points: j.points.clone(),
        }
    }
}

impl OperatorJsonOwned {
    fn at(&self, n: u32) -> anyhow::Result<OperatorSpec> {
        OperatorJson {
            kind: self.kind.clone(),
            a: self.a,
            b: self.b,
            c: self.c,
            shift: self.shift,
            lo: self.lo,
            hi: self.hi,
            points: self.points.clone(),
        }
        .at(n)
    }
}

impl FunctionJson {
    pub fn at(&self, n: u32) -> anyhow::Result<FnSpec> {
        let kind = self.kind.as_str();
        Ok(match kind {
            "quadratic" => {
                let a = require(&self.a, "a", kind)?.at(n);
                if a <= 0.0 {
                    bail!("quadratic requires a > 0, got {a}");
                }
                FnSpec::quadratic(a, self.c.map(|p| p.at(n)).unwrap_or(0.0))
            }
            "abs_shift" => FnSpec::abs_shift(self.shift.map(|p| p.at(n)).unwrap_or(0.0)),
            "indicator_box" => {
                let lo = require(&self.lo, "lo", kind)?.at(n);
                let hi = require(&self.hi, "hi", kind)?.at(n);
                if lo > hi {
                    bail!("indicator_box requires lo <= hi, got [{lo}, {hi}]");
                }
                FnSpec::indicator_box(lo, hi)
            }
            "linear" => FnSpec::linear(self.slope.map(|p| p.at(n)).unwrap_or(0.0)),
            "sum" => {
                let parts = self
                    .parts
                    .as_ref()
                    .ok_or_else(|| anyhow!("sum requires 'parts'"))?;
                if parts.is_empty() {
                    bail!("sum requires at least one part");
                }
                FnSpec::sum(
                    parts
                        .iter()
                        .map(|p| p.at(n))
                        .collect::<anyhow::Result<Vec<_>>>()?,
                )
            }
            other => bail!(
                "unknown function kind '{other}' (expected quadratic, abs_shift, \
                 indicator_box, linear, sum)"
            ),
        })
    }

    pub fn fixed(&self) -> anyhow::Result<FnSpec> {
        self.at(1)
    }

    pub fn sequence(&self, n_max: u32) -> anyhow::Result<FnSequence> {
        self.at(1).context("invalid sequence term")?;
        self.at(n_max).context("invalid sequence term")?;
        let json = FunctionJsonOwned::from(self);
        Ok(FnSequence::new(n_max, move |n| {
            FnTerm::Spec(json.at(n).expect("validated at construction"))
        }))
    }
}

#[derive(Clone)]
struct FunctionJsonOwned {
    kind: String,
    a: Option<AffineParam>,
    c: Option<AffineParam>,
    shift: Option<AffineParam>,
    lo: Option<AffineParam>,
    hi: Option<AffineParam>,
    slope: Option<AffineParam>,
    parts: Option<Vec<FunctionJsonOwned>>,
}

impl From<&FunctionJson> for FunctionJsonOwned {
    fn from(j: &FunctionJson) -> Self {
        FunctionJsonOwned {
            kind: j.kind.clone(),
            a: j.a,
            c: j.c,
            shift: j.shift,
            lo: j.lo,
            hi: j.hi,
            slope: j.slope,
            parts: j.parts.as_ref().map(|ps| ps.iter().map(Into::into).collect()),
        }
    }
}

impl FunctionJsonOwned {
    fn at(&self, n: u32) -> anyhow::Result<FnSpec> {
        FunctionJson {
            kind: self.kind.clone(),
            a: self.a,
            c: self.c,
            shift: self.shift,
            lo: self.lo,
            hi: self.hi,
            slope: self.slope,
            parts: self.parts.as_ref().map(|ps| {
                ps.iter()
                    .map(|p| FunctionJson {
                        kind: p.kind.clone(),
                        a: p.a,
                        c: p.c,
                        shift: p.shift,
                        lo: p.lo,
                        hi: p.hi,
                        slope: p.slope,
                        parts: None,
                    })
                    .collect()
            }),
        }
        .at(n)
    }
}

/// The bifunction a `check` spec refers to.
pub fn check_target(spec: &SpecFile, grid: &Grid2) -> anyhow::Result<BiFn> {
    let source = spec
        .check
        .as_ref()
        .and_then(|c| c.source.clone())
        .unwrap_or_else(|| {
            if spec.function.is_some() {
                "separable".to_string()
            } else {
                "fitzpatrick".to_string()
            }
        });
    match source.as_str() {
        "separable" => {
            let f = spec
                .function
                .as_ref()
                .ok_or_else(|| anyhow!("source 'separable' requires a 'function'"))?
                .fixed()?;
            monolim::subdiff::separable_bifn(&f, grid).map_err(|e| anyhow!("{e}"))
        }
        "fitzpatrick" => {
            let op = spec
                .operator
                .as_ref()
                .ok_or_else(|| anyhow!("source 'fitzpatrick' requires an 'operator'"))?
                .fixed()?;
            monolim::fitzpatrick::fitzpatrick_fn_of(&op, grid).map_err(|e| anyhow!("{e}"))
        }
        "representative" => {
            let op = spec
                .operator
                .as_ref()
                .ok_or_else(|| anyhow!("source 'representative' requires an 'operator'"))?
                .fixed()?;
            monolim::fitzpatrick::representative_of_convex_graph(&op, grid)
                .map_err(|e| anyhow!("{e}"))
        }
        "origin_indicator" => BiFn::sample(grid, |x, s| {
            if x == 0.0 && s == 0.0 {
                ExtReal::ZERO
            } else {
                ExtReal::INF
            }
        })
        .map_err(|e| anyhow!("{e}")),
        other => bail!("unknown check source '{other}'"),
    }
}
