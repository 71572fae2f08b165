//! Report types shared by the harnesses, with JSON and CSV emission.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Width of the boundary band: samples whose decisive margin is below this
/// are counted as indeterminate.
pub const BAND: f64 = 1e-6;

/// One named check with its residual and verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The statement being checked, in words.
    pub claim: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

impl Check {
    pub fn flag(name: &str, claim: &str, passed: bool) -> Self {
        Check { name: name.into(), claim: claim.into(), passed, residual: None, tolerance: None, detail: None }
    }

    /// Passes iff `residual < tolerance` (a NaN residual fails).
    pub fn residual(name: &str, claim: &str, residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            claim: claim.into(),
            passed: residual < tolerance,
            residual: Some(residual),
            tolerance: Some(tolerance),
            detail: None,
        }
    }

    /// A check that could not run because of an error.
    pub fn error(name: &str, claim: &str, err: &Error) -> Self {
        Check::flag(name, claim, false).with_detail(serde_json::json!({ "error": err.to_string() }))
    }

    pub fn with_detail(mut self, detail: serde_json::Value) -> Self {
        self.detail = Some(detail);
        self
    }

    pub fn with_serialized<T: Serialize>(self, detail: &T) -> Self {
        let v = serde_json::to_value(detail).unwrap_or(serde_json::Value::Null);
        self.with_detail(v)
    }
}

/// Checks of one suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub n: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, n: usize) -> Self {
        SuiteReport { suite: suite.into(), seed, n, passed: true, checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// How a sample was generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleClass {
    /// From the polar parametrization of the wedge.
    Polar,
    /// Uniform in an ambient box; lands inside and outside the wedge.
    Box,
    /// Within a small distance of the wedge boundary.
    Band,
    /// A hand-picked point.
    Fixed,
}

impl SampleClass {
    pub fn label(self) -> &'static str {
        match self {
            SampleClass::Polar => "polar",
            SampleClass::Box => "box",
            SampleClass::Band => "band",
            SampleClass::Fixed => "fixed",
        }
    }
}

/// Verdicts of several membership tests on one sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleOutcome {
    pub index: usize,
    pub class: SampleClass,
    pub point: Vec<f64>,
    pub verdicts: Vec<bool>,
    /// Decisive margin; the sample is indeterminate when this is below the band.
    pub margin: f64,
}

impl SampleOutcome {
    pub fn unanimous(&self) -> bool {
        self.verdicts.windows(2).all(|w| w[0] == w[1])
    }
}

/// A sample on which the tests disagree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub index: usize,
    pub class: SampleClass,
    pub point: Vec<f64>,
    pub verdicts: Vec<bool>,
    pub margin: f64,
    /// True when the margin lies inside the boundary band.
    pub indeterminate: bool,
}

/// Sample counts that partition `n`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tallies {
    pub agree_inside: usize,
    pub agree_outside: usize,
    pub disagree: usize,
    pub indeterminate: usize,
}

impl Tallies {
    pub fn total(&self) -> usize {
        self.agree_inside + self.agree_outside + self.disagree + self.indeterminate
    }
}

/// Agreement of several membership tests over a sample set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityReport {
    pub spec: String,
    pub seed: u64,
    pub n: usize,
    pub band: f64,
    pub domains: Vec<String>,
    /// Number of samples accepted by each test.
    pub members: BTreeMap<String, usize>,
    pub tallies: Tallies,
    pub indeterminate_count: usize,
    pub class_counts: BTreeMap<String, usize>,
    /// `agreement[i][j]`: determinate samples on which tests `i` and `j` agree.
    pub agreement: Vec<Vec<usize>>,
    pub witnesses: Vec<Witness>,
}

impl EqualityReport {
    pub fn from_outcomes(spec: &str, seed: u64, domains: &[&str], outcomes: &[SampleOutcome], band: f64) -> Self {
        let k = domains.len();
        let mut members: BTreeMap<String, usize> = domains.iter().map(|d| (d.to_string(), 0)).collect();
        let mut tallies = Tallies::default();
        let mut class_counts = BTreeMap::new();
        let mut agreement = vec![vec![0usize; k]; k];
        let mut witnesses = Vec::new();
        for o in outcomes {
            *class_counts.entry(o.class.label().to_string()).or_insert(0) += 1;
            for (d, v) in domains.iter().zip(&o.verdicts) {
                if *v {
                    *members.get_mut(*d).unwrap() += 1;
                }
            }
            let indeterminate = !(o.margin.abs() >= band);
            if indeterminate {
                tallies.indeterminate += 1;
            } else {
                for i in 0..k {
                    for j in 0..k {
                        if o.verdicts[i] == o.verdicts[j] {
                            agreement[i][j] += 1;
                        }
                    }
                }
                if !o.unanimous() {
                    tallies.disagree += 1;
                } else if o.verdicts.first().copied().unwrap_or(false) {
                    tallies.agree_inside += 1;
                } else {
                    tallies.agree_outside += 1;
                }
            }
            if !o.unanimous() {
                witnesses.push(Witness {
                    index: o.index,
                    class: o.class,
                    point: o.point.clone(),
                    verdicts: o.verdicts.clone(),
                    margin: o.margin,
                    indeterminate,
                });
            }
        }
        witnesses.sort_by_key(|w| w.index);
        EqualityReport {
            spec: spec.into(),
            seed,
            n: outcomes.len(),
            band,
            domains: domains.iter().map(|d| d.to_string()).collect(),
            members,
            indeterminate_count: tallies.indeterminate,
            tallies,
            class_counts,
            agreement,
            witnesses,
        }
    }

    /// Disagreements outside the boundary band.
    pub fn interior_disagreements(&self) -> usize {
        self.tallies.disagree
    }

    pub fn passed(&self) -> bool {
        self.tallies.disagree == 0 && self.tallies.total() == self.n
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Shortest round-trip decimal for a float.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

/// CSV with a header row: index, class, coordinates, one boolean column per
/// test, margin.
pub fn write_points_csv<W: Write>(
    out: W,
    coord_names: &[String],
    domains: &[&str],
    outcomes: &[SampleOutcome],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["index".to_string(), "class".to_string()];
    header.extend(coord_names.iter().cloned());
    header.extend(domains.iter().map(|d| d.to_string()));
    header.push("margin".into());
    w.write_record(&header).map_err(|e| Error::Serde(e.to_string()))?;
    for o in outcomes {
        let mut row = vec![o.index.to_string(), o.class.label().to_string()];
        row.extend(o.point.iter().map(|x| fmt_f64(*x)));
        row.extend(o.verdicts.iter().map(|v| v.to_string()));
        row.push(fmt_f64(o.margin));
        w.write_record(&row).map_err(|e| Error::Serde(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Serde(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(index: usize, verdicts: Vec<bool>, margin: f64) -> SampleOutcome {
        SampleOutcome { index, class: SampleClass::Box, point: vec![0.1, 1e-7], verdicts, margin }
    }

    #[test]
    fn tallies_partition_samples() {
        let os = vec![
            outcome(0, vec![true, true], 0.5),
            outcome(1, vec![false, false], -0.5),
            outcome(2, vec![true, false], 1e-9),
            outcome(3, vec![true, false], 0.2),
        ];
        let r = EqualityReport::from_outcomes("t", 1, &["a", "b"], &os, BAND);
        assert_eq!(r.tallies, Tallies { agree_inside: 1, agree_outside: 1, disagree: 1, indeterminate: 1 });
        assert_eq!(r.tallies.total(), 4);
        assert_eq!(r.witnesses.len(), 2);
        assert!(r.witnesses[0].indeterminate && !r.witnesses[1].indeterminate);
        assert_eq!(r.agreement[0][1], 2);
        assert!(!r.passed());
        let empty = EqualityReport::from_outcomes("t", 1, &["a"], &[], BAND);
        assert!(empty.passed() && empty.n == 0);
    }

    #[test]
    fn csv_round_trips_floats() {
        let mut buf = Vec::new();
        write_points_csv(&mut buf, &["x0".into(), "x1".into()], &["a"], &[outcome(0, vec![true], 0.1 + 0.2)]).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "index,class,x0,x1,a,margin\n0,box,0.1,1e-7,true,0.30000000000000004\n");
    }
}
