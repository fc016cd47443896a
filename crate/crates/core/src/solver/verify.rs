use serde::Serialize;

use crate::config::LineConfiguration;
use crate::error::{Error, Result};
use crate::geometry::{chirality, PairClass, Sign};
use crate::scalar::Scalar;
use crate::signed_graph::{CliqueWitness, SignedCompleteGraph};
use crate::spectral::{cross_norm_matrix, signed_gram_matrix, Signature};

/// Everything checked about a candidate configuration.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport<T> {
    pub n: usize,
    pub target_distance: T,
    pub tolerance: T,
    /// Lexicographic over pairs `i < j`.
    pub pairwise_distances: Vec<T>,
    pub max_abs_deviation: T,
    pub pair_classes: Vec<PairClass>,
    /// Present when all pairs are skew.
    pub chirality_graph: Option<SignedCompleteGraph>,
    /// Under the given orientation.
    pub mono_clique_5: Option<CliqueWitness>,
    /// Whether some reorientation of the lines would create a monochromatic K5.
    pub mono_k5_possible: Option<bool>,
    pub signed_gram_signature: Option<Signature>,
    pub lemma_signature: Option<Signature>,
    pub passed: bool,
}

/// Checks distances against the target, skewness, and the absence of a
/// monochromatic K5; records both signatures.
pub fn verify<T: Scalar>(config: &LineConfiguration<T>, tol: T) -> VerificationReport<T> {
    let n = config.n();
    let pairwise_distances = config.pairwise_distances();
    let max_abs_deviation = config.max_abs_deviation();
    let pair_classes = config.pair_classes();
    let all_skew = pair_classes.iter().all(|&c| c == PairClass::Skew);
    let chirality_graph = if all_skew { config.chirality_graph().ok() } else { None };
    let mono_clique_5 = chirality_graph.as_ref().filter(|g| g.n() >= 5).and_then(|g| g.find_mono_clique(5));
    let mono_k5_possible = chirality_graph.as_ref().map(|g| g.n() >= 5 && g.mono_k_possible(5));
    let signed_gram_signature = all_skew
        .then(|| signed_gram_matrix(&config.lines).ok().map(|r| r.signature()))
        .flatten();
    let lemma_signature = cross_norm_matrix(&config.directions()).ok().map(|r| r.signature());
    let passed = max_abs_deviation <= tol && chirality_graph.is_some() && mono_clique_5.is_none();
    VerificationReport {
        n,
        target_distance: config.target_distance,
        tolerance: tol,
        pairwise_distances,
        max_abs_deviation,
        pair_classes,
        chirality_graph,
        mono_clique_5,
        mono_k5_possible,
        signed_gram_signature,
        lemma_signature,
        passed,
    }
}

/// Reverses lines `2..n` as needed so that every edge `{1, i}` is positive.
pub fn orient_first_positive<T: Scalar>(config: &LineConfiguration<T>) -> Result<LineConfiguration<T>> {
    if let Some((i, j)) = config.first_coplanar_pair() {
        return Err(Error::CoplanarPair(i, j));
    }
    let first = config.lines[0];
    let mut flip = Vec::new();
    for (k, line) in config.lines.iter().enumerate().skip(1) {
        if chirality(&first, line)? == Sign::Minus {
            flip.push(k + 1);
        }
    }
    Ok(config.with_reversed(&flip))
}
