//! Ordered sets of directed lines with a target pairwise distance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{classify, distance, normalize_line, DirectedLine, PairClass, RigidMotion, Vector3};
use crate::scalar::Scalar;
use crate::signed_graph::{chirality_graph, SignedCompleteGraph};

#[derive(Debug, Clone, PartialEq)]
pub struct LineConfiguration<T> {
    pub lines: Vec<DirectedLine<T>>,
    pub target_distance: T,
    pub label: String,
}

impl<T: Scalar> LineConfiguration<T> {
    pub fn new(lines: Vec<DirectedLine<T>>, target_distance: T) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::InvalidInput("configuration needs at least one line".into()));
        }
        if !(target_distance > T::zero() && target_distance.is_finite()) {
            return Err(Error::InvalidInput("target distance must be positive".into()));
        }
        Ok(Self {
            lines,
            target_distance,
            label: String::new(),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn n(&self) -> usize {
        self.lines.len()
    }

    /// 0-based index pairs `(i, j)`, `i < j`, lexicographic.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n();
        (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
    }

    pub fn pairwise_distances(&self) -> Vec<T> {
        self.pairs().map(|(i, j)| distance(&self.lines[i], &self.lines[j])).collect()
    }

    pub fn pair_classes(&self) -> Vec<PairClass> {
        self.pairs().map(|(i, j)| classify(&self.lines[i], &self.lines[j])).collect()
    }

    /// First non-skew pair, 1-based.
    pub fn first_coplanar_pair(&self) -> Option<(usize, usize)> {
        self.pairs()
            .find(|&(i, j)| classify(&self.lines[i], &self.lines[j]) != PairClass::Skew)
            .map(|(i, j)| (i + 1, j + 1))
    }

    pub fn max_abs_deviation(&self) -> T {
        self.pairwise_distances()
            .into_iter()
            .fold(T::zero(), |m, d| m.max((d - self.target_distance).abs()))
    }

    pub fn chirality_graph(&self) -> Result<SignedCompleteGraph> {
        chirality_graph(&self.lines)
    }

    pub fn directions(&self) -> Vec<Vector3<T>> {
        self.lines.iter().map(DirectedLine::direction).collect()
    }

    /// Reverses the lines with the given 1-based labels.
    pub fn with_reversed(&self, which: &[usize]) -> Self {
        let mut out = self.clone();
        for &i in which {
            out.lines[i - 1] = out.lines[i - 1].reverse();
        }
        out
    }

    pub fn reflect_z(&self) -> Self {
        self.map_lines(DirectedLine::reflect_z)
    }

    pub fn transformed(&self, motion: &RigidMotion<T>) -> Self {
        self.map_lines(|l| l.transformed(motion))
    }

    /// Dilates space by `factor` around the origin; the target is kept.
    pub fn scaled(&self, factor: T) -> Self {
        self.map_lines(|l| l.scaled(factor))
    }

    fn map_lines(&self, f: impl Fn(&DirectedLine<T>) -> DirectedLine<T>) -> Self {
        Self {
            lines: self.lines.iter().map(f).collect(),
            target_distance: self.target_distance,
            label: self.label.clone(),
        }
    }
}

/// One line on the wire: any point on it plus a direction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineRecord {
    pub point: [f64; 3],
    pub direction: [f64; 3],
}

/// Wire format:
/// `{"pair_distance": 1.0, "lines": [{"point": [x,y,z], "direction": [x,y,z]}, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigFile {
    #[serde(alias = "target_distance")]
    pub pair_distance: f64,
    pub lines: Vec<LineRecord>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
}

impl ConfigFile {
    /// Canonicalizes every line.
    pub fn into_configuration(self) -> Result<LineConfiguration<f64>> {
        let lines = self
            .lines
            .iter()
            .enumerate()
            .map(|(i, r)| {
                normalize_line(r.point.into(), r.direction.into())
                    .map_err(|e| Error::InvalidInput(format!("line {}: {e}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LineConfiguration::new(lines, self.pair_distance)?.with_label(self.label))
    }

    pub fn from_configuration(c: &LineConfiguration<f64>) -> Self {
        ConfigFile {
            pair_distance: c.target_distance,
            lines: c
                .lines
                .iter()
                .map(|l| LineRecord {
                    point: l.moment_point().into(),
                    direction: l.direction().into(),
                })
                .collect(),
            label: c.label.clone(),
        }
    }
}

impl LineConfiguration<f64> {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConfigFile = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        file.into_configuration()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ConfigFile::from_configuration(self)).expect("plain data serializes")
    }
}
