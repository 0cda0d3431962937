//! Check reports, witnesses and the instance tally every suite feeds.

use std::fmt::Debug;

use nccumulant::{Error, Partition};
use serde::{Deserialize, Serialize};

use crate::data::{FamilyEntry, MatrixData, Num, PolyData, ScalarMatrixData, VariableEntry};

/// Bounds a check runs at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub dim: usize,
    pub max_order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check could not be set up, e.g. a capacity error.
    Error,
}

/// The single instance on which an identity failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Which identity of the suite failed.
    pub identity: String,
    /// Partitions of the instance in block notation.
    pub partitions: Vec<String>,
    pub left: String,
    pub right: String,
}

/// Every value a check drew, enough to evaluate it again without the
/// random generator.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Drawn {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub variables: Vec<VariableEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilyEntry>,
    /// Keep-variables of the conditioning σ-field.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub keep: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<MatrixData>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub polys: Vec<PolyData>,
    /// Coefficients `c_k` of `Σ c_k g^k` for free-generator arguments.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub words: Vec<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coefficients: Vec<ScalarMatrixData>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<Num>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<Num>>,
}

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub params: Params,
    pub seed: u64,
    pub status: Status,
    /// Number of identity instances evaluated.
    pub instances: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub drawn: Drawn,
    pub wall_time_ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Field-for-field equality except for the wall time.
    pub fn same_outcome(&self, other: &CheckReport) -> bool {
        CheckReport { wall_time_ms: 0, ..self.clone() } == CheckReport { wall_time_ms: 0, ..other.clone() }
    }

    pub fn text_line(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let mut line = format!(
            "{status} {} n={} d={} D={} seed={} instances={} {}ms",
            self.id,
            self.params.n,
            self.params.dim,
            self.params.max_order,
            self.seed,
            self.instances,
            self.wall_time_ms
        );
        if let Some(w) = &self.witness {
            line +=
                &format!("\n  {} at {}\n  left:  {}\n  right: {}", w.identity, w.partitions.join(" "), w.left, w.right);
        }
        if let Some(e) = &self.error {
            line += &format!("\n  {e}");
        }
        line
    }
}

/// Counts evaluated instances and keeps the first failure. With a
/// witness to replay, only that instance is evaluated.
#[derive(Debug, Default)]
pub struct Tally {
    only: Option<Witness>,
    pub instances: usize,
    pub failure: Option<Witness>,
}

impl Tally {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn replaying(witness: Witness) -> Self {
        Tally { only: Some(witness), ..Self::default() }
    }

    /// Evaluates `f` for one instance and compares the two sides.
    pub fn check<T: PartialEq + Debug>(
        &mut self,
        identity: &str,
        partitions: &[&Partition],
        f: impl FnOnce() -> Result<(T, T), Error>,
    ) -> Result<(), Error> {
        if self.failure.is_some() {
            return Ok(());
        }
        let names: Vec<String> = partitions.iter().map(|p| p.to_string()).collect();
        if let Some(w) = &self.only {
            if w.identity != identity || w.partitions != names {
                return Ok(());
            }
        }
        let (left, right) = f()?;
        self.instances += 1;
        if left != right {
            self.failure =
                Some(Witness { identity: identity.into(), partitions: names, left: show(&left), right: show(&right) });
        }
        Ok(())
    }

    /// Shorthand for a predicate that must hold.
    pub fn holds(
        &mut self,
        identity: &str,
        partitions: &[&Partition],
        f: impl FnOnce() -> Result<bool, Error>,
    ) -> Result<(), Error> {
        self.check(identity, partitions, || Ok((f()?, true)))
    }
}

/// Debug text with rationals written as `p/q`.
fn show<T: Debug>(value: &T) -> String {
    let text = format!("{value:?}");
    let mut out = String::with_capacity(text.len());
    let mut rest = text.as_str();
    while let Some(at) = rest.find("Ratio { numer: ") {
        out += &rest[..at];
        let tail = &rest[at + "Ratio { numer: ".len()..];
        let (Some(comma), Some(close)) = (tail.find(", denom: "), tail.find(" }")) else {
            out += &rest[at..];
            return out;
        };
        let (numer, denom) = (&tail[..comma], &tail[comma + ", denom: ".len()..close]);
        out += numer;
        if denom != "1" {
            out += "/";
            out += denom;
        }
        rest = &tail[close + 2..];
    }
    out + rest
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_first_failure_only() {
        let p: Partition = "{1,2}".parse().unwrap();
        let mut t = Tally::new();
        t.check("a", &[&p], || Ok((1, 1))).unwrap();
        t.check("b", &[&p], || Ok((1, 2))).unwrap();
        t.check("c", &[&p], || Ok((3, 4))).unwrap();
        assert_eq!(t.instances, 2);
        let w = t.failure.clone().unwrap();
        assert_eq!((w.identity.as_str(), w.left.as_str(), w.right.as_str()), ("b", "1", "2"));

        let mut replay = Tally::replaying(w);
        replay.check("a", &[&p], || -> Result<(i32, i32), Error> { panic!("skipped") }).unwrap();
        replay.check("b", &[&p], || Ok((1, 2))).unwrap();
        assert_eq!(replay.instances, 1);
        assert!(replay.failure.is_some());
    }

    #[test]
    fn rationals_shown_compactly() {
        let v = vec![nccumulant::algebra::rational(-35, 27), nccumulant::algebra::int(4)];
        assert_eq!(show(&v), "[-35/27, 4]");
    }
}
