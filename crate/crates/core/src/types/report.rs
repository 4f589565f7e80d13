use std::collections::BTreeMap;

use serde::Serialize;

use crate::types::ext::ExtReal;
use crate::types::point::DualPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// One point of evidence: where a bound was checked, what was measured, and
/// the bound it was checked against.
///
/// `location` holds the flat coordinates of the probe: `[x]` for a point on
/// the line, `[x, xstar]` for a dual pair, four entries in the plane.
/// `partner` is set by pairwise checks (monotonicity), absent elsewhere.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub location: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner: Option<Vec<f64>>,
    pub measured: ExtReal,
    pub bound: ExtReal,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn pair_coords(p: &DualPair) -> Vec<f64> {
    let mut c = p.x.coords().to_vec();
    c.extend_from_slice(p.xstar.coords());
    c
}

impl Witness {
    pub fn at_pair(p: &DualPair, measured: ExtReal, bound: ExtReal) -> Witness {
        Witness {
            location: pair_coords(p),
            partner: None,
            measured,
            bound,
            note: None,
        }
    }

    pub fn at_scalar(x: f64, measured: ExtReal, bound: ExtReal) -> Witness {
        Witness {
            location: vec![x],
            partner: None,
            measured,
            bound,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Witness {
        self.note = Some(note.into());
        self
    }

    pub fn with_partner(mut self, partner: &DualPair) -> Witness {
        self.partner = Some(pair_coords(partner));
        self
    }
}

/// Structured verdict for any numeric check. A `Fail` always carries at
/// least one witness; reports also record the tolerances, tail window, and
/// radius ladder that produced them, so a verdict can be reproduced.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub tolerances: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail: Option<(u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ladder: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ConvergenceReport {
    pub fn pass() -> ConvergenceReport {
        ConvergenceReport {
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            tolerances: BTreeMap::new(),
            tail: None,
            ladder: None,
            notes: Vec::new(),
        }
    }

    pub fn fail(witnesses: Vec<Witness>) -> ConvergenceReport {
        assert!(!witnesses.is_empty(), "a failing report needs a witness");
        let mut r = ConvergenceReport::pass();
        r.verdict = Verdict::Fail;
        r.witnesses = witnesses;
        r
    }

    pub fn inconclusive(note: impl Into<String>) -> ConvergenceReport {
        let mut r = ConvergenceReport::pass();
        r.verdict = Verdict::Inconclusive;
        r.notes.push(note.into());
        r
    }

    /// Pass when `measured <= bound`, fail with a witness otherwise. Used by
    /// the metric-style checks (Hausdorff distances, residual bounds).
    pub fn from_bound(name: &str, measured: f64, bound: f64) -> ConvergenceReport {
        let r = if measured <= bound {
            ConvergenceReport::pass()
        } else {
            ConvergenceReport::fail(vec![Witness {
                location: vec![],
                partner: None,
                measured: ExtReal::finite(measured),
                bound: ExtReal::finite(bound),
                note: Some(name.to_string()),
            }])
        };
        r.with_tolerance(name, bound)
            .with_note(format!("{name}: measured {measured:.6e}, bound {bound:.6e}"))
    }

    pub fn with_tolerance(mut self, name: &str, value: f64) -> ConvergenceReport {
        self.tolerances.insert(name.to_string(), value);
        self
    }

    pub fn with_tail(mut self, first: u32, last: u32) -> ConvergenceReport {
        self.tail = Some((first, last));
        self
    }

    pub fn with_ladder(mut self, ladder: &[f64]) -> ConvergenceReport {
        self.ladder = Some(ladder.to_vec());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> ConvergenceReport {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}
