//! Signed complete graphs.
//!
//! Vertices are labeled `1..=n` throughout the public API so that graphs
//! transcribed from figures can be compared label for label. Switching a
//! vertex set negates every edge with exactly one endpoint in the set; for a
//! chirality graph this is the effect of reversing the corresponding lines.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{chirality, DirectedLine, Sign};
use crate::scalar::Scalar;

/// Brute-force ceiling for [`switching_isomorphic`].
pub const ISOMORPHISM_LIMIT: usize = 9;
/// Brute-force ceiling for [`contains_switching_subgraph`].
pub const CONTAINMENT_LIMIT: usize = 10;

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 5] = ["example1", "blr_graph_a", "blr_graph_b", "blr_canonical", "p250"];

/// Nonzero quadratic residues modulo 17.
pub const PALEY_17_RESIDUES: [usize; 8] = [1, 2, 4, 8, 9, 13, 15, 16];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedCompleteGraph {
    n: usize,
    /// Upper triangle, row-major over `0 ≤ i < j < n`.
    signs: Vec<Sign>,
}

#[inline]
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl SignedCompleteGraph {
    /// Builds a graph from a sign function on 1-based pairs `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Sign) -> Self {
        assert!(n >= 1, "a signed complete graph needs at least one vertex");
        let mut signs = Vec::with_capacity(n * (n - 1) / 2);
        for i in 1..=n {
            for j in (i + 1)..=n {
                signs.push(f(i, j));
            }
        }
        Self { n, signs }
    }

    pub fn all_positive(n: usize) -> Self {
        Self::from_fn(n, |_, _| Sign::Plus)
    }

    /// All edges positive except the listed (1-based, either order) pairs.
    pub fn with_negative_edges(n: usize, negative: &[(usize, usize)]) -> Self {
        let neg: BTreeSet<(usize, usize)> = negative.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        Self::from_fn(n, |i, j| if neg.contains(&(i, j)) { Sign::Minus } else { Sign::Plus })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sign of edge `{i, j}`, 1-based, either order.
    ///
    /// Panics on a loop or an out-of-range label.
    pub fn sign(&self, i: usize, j: usize) -> Sign {
        assert!(i != j && (1..=self.n).contains(&i) && (1..=self.n).contains(&j), "bad edge {{{i},{j}}}");
        let (a, b) = (i.min(j) - 1, i.max(j) - 1);
        self.signs[pair_index(self.n, a, b)]
    }

    /// `(i, j, sign)` with `i < j`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Sign)> + '_ {
        (1..=self.n)
            .flat_map(move |i| ((i + 1)..=self.n).map(move |j| (i, j)))
            .zip(self.signs.iter().copied())
            .map(|((i, j), s)| (i, j, s))
    }

    pub fn negative_edges(&self) -> Vec<(usize, usize)> {
        self.edges().filter(|e| e.2 == Sign::Minus).map(|(i, j, _)| (i, j)).collect()
    }

    pub fn negated(&self) -> Self {
        Self {
            n: self.n,
            signs: self.signs.iter().map(|&s| -s).collect(),
        }
    }

    /// Induced subgraph on `vertices` (1-based), relabeled `1..=k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        Self::from_fn(vertices.len(), |a, b| self.sign(vertices[a - 1], vertices[b - 1]))
    }

    /// The graph `π(g)` with `π(g)(π(i), π(j)) = g(i, j)`; `perm[i − 1] = π(i)`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut inverse = vec![0; self.n + 1];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i + 1;
        }
        Self::from_fn(self.n, |a, b| self.sign(inverse[a], inverse[b]))
    }

    /// Negates every edge with exactly one endpoint in `subset`.
    pub fn switch(&self, subset: &[usize]) -> Self {
        let mut inside = vec![false; self.n + 1];
        for &v in subset {
            assert!((1..=self.n).contains(&v), "vertex {v} out of range");
            inside[v] = true;
        }
        Self::from_fn(self.n, |i, j| {
            let s = self.sign(i, j);
            if inside[i] != inside[j] {
                -s
            } else {
                s
            }
        })
    }

    /// Switchable to all-positive.
    ///
    /// Switches vertex 1's star to all-positive and scans the rest: for
    /// `i, j ≠ 1` the switched sign of `{i, j}` is the triangle product
    /// `σ(1i) σ(1j) σ(ij)`.
    pub fn is_balanced(&self) -> bool {
        (2..=self.n).all(|i| {
            ((i + 1)..=self.n).all(|j| self.sign(1, i) * self.sign(1, j) * self.sign(i, j) == Sign::Plus)
        })
    }

    /// Lexicographically first `k`-subset whose induced edges share one sign.
    ///
    /// Panics unless `k ≥ 2`. Returns `None` when `k > n`.
    pub fn find_mono_clique(&self, k: usize) -> Option<CliqueWitness> {
        assert!(k >= 2, "clique size must be at least 2");
        (1..=self.n).combinations(k).find_map(|vs| {
            let s = self.sign(vs[0], vs[1]);
            vs.iter()
                .array_combinations()
                .all(|[&a, &b]| self.sign(a, b) == s)
                .then_some(CliqueWitness { vertices: vs, sign: s })
        })
    }

    /// Whether some orientation of the lines produces a monochromatic `K_k`:
    /// some `k`-subset is balanced or anti-balanced.
    pub fn mono_k_possible(&self, k: usize) -> bool {
        self.find_switchable_clique(k).is_some()
    }

    /// First `k`-subset that some switching turns monochromatic.
    pub fn find_switchable_clique(&self, k: usize) -> Option<Vec<usize>> {
        assert!(k >= 2, "clique size must be at least 2");
        (1..=self.n).combinations(k).find(|vs| {
            let sub = self.induced(vs);
            sub.is_balanced() || sub.negated().is_balanced()
        })
    }
}

/// A monochromatic clique.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueWitness {
    /// Sorted, 1-based.
    pub vertices: Vec<usize>,
    pub sign: Sign,
}

/// A vertex map with a switching that carries one signed graph onto (part of)
/// another.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchingMap {
    /// `mapping[i − 1]` is the image of vertex `i`.
    pub mapping: Vec<usize>,
    /// Switched vertices, in the target's labels, sorted.
    pub switching: Vec<usize>,
}

pub fn switch(g: &SignedCompleteGraph, subset: &[usize]) -> SignedCompleteGraph {
    g.switch(subset)
}

/// Finds `π` and `s` with `switch(π(g1), s) = g2`.
pub fn switching_isomorphic(g1: &SignedCompleteGraph, g2: &SignedCompleteGraph) -> Result<Option<SwitchingMap>> {
    let n = g1.n().max(g2.n());
    if n > ISOMORPHISM_LIMIT {
        return Err(Error::TooLarge { n, limit: ISOMORPHISM_LIMIT });
    }
    if g1.n() != g2.n() {
        return Ok(None);
    }
    Ok(switching_embedding(g1, g2))
}

/// Finds an injective map `φ: V(h) → V(g)` and a switching of the image under
/// which `h` matches the subgraph of `g` induced on `φ(V(h))`.
///
/// Containment is up to switching, i.e. independent of line orientations.
pub fn contains_switching_subgraph(g: &SignedCompleteGraph, h: &SignedCompleteGraph) -> Result<Option<SwitchingMap>> {
    if g.n() > CONTAINMENT_LIMIT {
        return Err(Error::TooLarge { n: g.n(), limit: CONTAINMENT_LIMIT });
    }
    if h.n() > g.n() {
        return Ok(None);
    }
    Ok(switching_embedding(h, g))
}

/// Depth-first search for `φ, τ` with `h(i, j) τ(φi) τ(φj) = g(φi, φj)`.
///
/// The first vertex's image gets `τ = +1` (a global switch changes nothing),
/// after which each new image's `τ` is forced by its edge to the first vertex.
fn switching_embedding(h: &SignedCompleteGraph, g: &SignedCompleteGraph) -> Option<SwitchingMap> {
    struct Search<'a> {
        h: &'a SignedCompleteGraph,
        g: &'a SignedCompleteGraph,
        phi: Vec<usize>,
        tau: Vec<Sign>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn extend(&mut self) -> bool {
            let i = self.phi.len() + 1;
            if i > self.h.n() {
                return true;
            }
            for u in 1..=self.g.n() {
                if self.used[u] {
                    continue;
                }
                let t = if i == 1 {
                    Sign::Plus
                } else {
                    let u1 = self.phi[0];
                    self.h.sign(1, i) * self.g.sign(u1, u) * self.tau[u1]
                };
                let consistent = (2..i).all(|j| {
                    let uj = self.phi[j - 1];
                    self.h.sign(j, i) * self.tau[uj] * t == self.g.sign(uj, u)
                });
                if !consistent {
                    continue;
                }
                self.phi.push(u);
                self.used[u] = true;
                self.tau[u] = t;
                if self.extend() {
                    return true;
                }
                self.phi.pop();
                self.used[u] = false;
            }
            false
        }
    }

    let mut s = Search {
        h,
        g,
        phi: Vec::with_capacity(h.n()),
        tau: vec![Sign::Plus; g.n() + 1],
        used: vec![false; g.n() + 1],
    };
    if !s.extend() {
        return None;
    }
    let mut switching: Vec<usize> = s.phi.iter().copied().filter(|&u| s.tau[u] == Sign::Minus).collect();
    switching.sort_unstable();
    Some(SwitchingMap {
        mapping: s.phi,
        switching,
    })
}

/// Chirality graph of pairwise skew lines; vertex `i` is `lines[i − 1]`.
pub fn chirality_graph<T: Scalar>(lines: &[DirectedLine<T>]) -> Result<SignedCompleteGraph> {
    if lines.is_empty() {
        return Err(Error::InvalidInput("empty configuration".into()));
    }
    let n = lines.len();
    let mut signs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            signs.push(chirality(&lines[i], &lines[j]).map_err(|_| Error::CoplanarPair(i + 1, j + 1))?);
        }
    }
    Ok(SignedCompleteGraph { n, signs })
}

/// Nonzero quadratic residues modulo an odd prime `p`, sorted.
pub fn quadratic_residues(p: usize) -> Vec<usize> {
    (1..p).map(|x| x * x % p).collect::<BTreeSet<_>>().into_iter().collect()
}

/// Paley graph on `p ≡ 1 (mod 4)` vertices as a signed complete graph:
/// `{i, j}` is positive iff `i − j` is a nonzero square mod `p`.
pub fn paley(p: usize) -> SignedCompleteGraph {
    assert!(p % 4 == 1, "Paley graphs need p ≡ 1 (mod 4)");
    let residues: BTreeSet<usize> = quadratic_residues(p).into_iter().collect();
    SignedCompleteGraph::from_fn(p, |i, j| {
        if residues.contains(&((j - i) % p)) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    })
}

pub fn paley_17() -> SignedCompleteGraph {
    paley(17)
}

pub fn builtin(name: &str) -> Result<SignedCompleteGraph> {
    let g = match name {
        "example1" => SignedCompleteGraph::with_negative_edges(4, &[(1, 3), (2, 4), (3, 4)]),
        "blr_graph_a" => SignedCompleteGraph::with_negative_edges(
            7,
            &[(1, 2), (1, 3), (1, 4), (1, 7), (2, 3), (2, 4), (2, 6), (3, 5), (3, 6), (4, 5), (4, 7)],
        ),
        "blr_graph_b" => SignedCompleteGraph::with_negative_edges(
            7,
            &[(1, 2), (1, 3), (1, 5), (1, 6), (1, 7), (2, 3), (2, 6), (2, 7), (3, 4), (3, 5), (5, 7)],
        ),
        "blr_canonical" => SignedCompleteGraph::with_negative_edges(7, &[(2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]),
        "p250" => SignedCompleteGraph::with_negative_edges(7, &[(3, 4), (3, 7), (4, 5), (5, 6), (6, 7)]),
        other => return Err(Error::UnknownName(other.to_string())),
    };
    Ok(g)
}

/// Wire format: `{"n": 7, "edges": [[1, 2, 1], [1, 3, -1], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[i64; 3]>,
}

impl From<&SignedCompleteGraph> for GraphFile {
    fn from(g: &SignedCompleteGraph) -> Self {
        GraphFile {
            n: g.n(),
            edges: g.edges().map(|(i, j, s)| [i as i64, j as i64, i64::from(s.value())]).collect(),
        }
    }
}

impl TryFrom<GraphFile> for SignedCompleteGraph {
    type Error = Error;

    fn try_from(f: GraphFile) -> Result<Self> {
        let n = f.n;
        if n == 0 {
            return Err(Error::InvalidInput("graph needs at least one vertex".into()));
        }
        let mut signs: Vec<Option<Sign>> = vec![None; n * (n - 1) / 2];
        for [i, j, s] in f.edges {
            if !(1 <= i && i < j && j <= n as i64) {
                return Err(Error::InvalidInput(format!("edge [{i}, {j}] must satisfy 1 <= i < j <= {n}")));
            }
            let sign = Sign::from_value(s).ok_or_else(|| Error::InvalidInput(format!("bad sign {s} on [{i}, {j}]")))?;
            let slot = &mut signs[pair_index(n, i as usize - 1, j as usize - 1)];
            if slot.replace(sign).is_some() {
                return Err(Error::InvalidInput(format!("duplicate edge [{i}, {j}]")));
            }
        }
        let signs = signs
            .into_iter()
            .enumerate()
            .map(|(k, s)| s.ok_or_else(|| Error::InvalidInput(format!("missing edge (pair #{})", k + 1))))
            .collect::<Result<Vec<_>>>()?;
        Ok(SignedCompleteGraph { n, signs })
    }
}

impl Serialize for SignedCompleteGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedCompleteGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        SignedCompleteGraph::try_from(GraphFile::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(name: &str) -> SignedCompleteGraph {
        builtin(name).unwrap()
    }

    #[test]
    fn builtin_spot_checks() {
        assert_eq!(g("blr_canonical").sign(1, 5), Sign::Plus);
        assert_eq!(g("p250").sign(3, 7), Sign::Minus);
        assert_eq!(g("example1").sign(1, 3), Sign::Minus);
        assert_eq!(g("example1").sign(1, 2), Sign::Plus);
        for name in BUILTIN_NAMES {
            let b = g(name);
            assert_eq!(b.edges().count(), b.n() * (b.n() - 1) / 2);
        }
        assert_eq!(g("blr_graph_a").negative_edges().len(), 11);
        assert_eq!(g("blr_graph_b").negative_edges().len(), 11);
        assert_eq!(builtin("petersen"), Err(Error::UnknownName("petersen".into())));
    }

    #[test]
    fn switch_examples() {
        let k4 = SignedCompleteGraph::all_positive(4);
        assert_eq!(k4.switch(&[]), k4);
        assert_eq!(k4.switch(&[1, 2, 3, 4]), k4);
        let s = k4.switch(&[1]);
        assert_eq!(s.negative_edges(), vec![(1, 2), (1, 3), (1, 4)]);
    }

    #[test]
    fn balance_examples() {
        assert!(SignedCompleteGraph::all_positive(5).is_balanced());
        assert!(!SignedCompleteGraph::with_negative_edges(3, &[(1, 2)]).is_balanced());
        assert!(SignedCompleteGraph::all_positive(6).switch(&[2, 5, 6]).is_balanced());
        assert!(SignedCompleteGraph::all_positive(1).is_balanced());
    }

    #[test]
    fn mono_clique_examples() {
        let w = SignedCompleteGraph::all_positive(5).find_mono_clique(5).unwrap();
        assert_eq!(w, CliqueWitness { vertices: vec![1, 2, 3, 4, 5], sign: Sign::Plus });
        assert_eq!(g("blr_canonical").find_mono_clique(5), None);
        let w = g("blr_canonical").find_mono_clique(4).unwrap();
        assert_eq!(w, CliqueWitness { vertices: vec![1, 2, 4, 6], sign: Sign::Plus });
        assert_eq!(SignedCompleteGraph::all_positive(3).find_mono_clique(4), None);
    }

    #[test]
    fn mono_possible_examples() {
        assert!(SignedCompleteGraph::all_positive(5).mono_k_possible(5));
        assert!(!g("blr_canonical").mono_k_possible(5));
        let c5 = SignedCompleteGraph::with_negative_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]);
        assert!(!c5.mono_k_possible(5));
    }

    #[test]
    fn paley_examples() {
        let p = paley_17();
        assert_eq!(quadratic_residues(17), PALEY_17_RESIDUES.to_vec());
        assert_eq!(p.sign(1, 2), Sign::Plus);
        assert_eq!(p.sign(1, 4), Sign::Minus);
        assert_eq!(p.find_mono_clique(4), None);
        assert_eq!(p.negative_edges().len(), 68);
    }

    #[test]
    fn isomorphism_examples() {
        let canon = g("blr_canonical");
        for name in ["blr_graph_a", "blr_graph_b"] {
            let a = g(name);
            let m = switching_isomorphic(&a, &canon).unwrap().expect(name);
            assert_eq!(a.relabel(&m.mapping).switch(&m.switching), canon);
        }
        let s = canon.switch(&[2, 7]);
        let m = switching_isomorphic(&canon, &s).unwrap().unwrap();
        assert_eq!(m.mapping, (1..=7).collect::<Vec<_>>());
        assert_eq!(canon.switch(&m.switching), s);
        // example1 has an unbalanced triangle, K4 all-positive does not
        let e1 = g("example1");
        assert_eq!(switching_isomorphic(&e1, &SignedCompleteGraph::all_positive(4)).unwrap(), None);
        assert!(matches!(
            switching_isomorphic(&paley_17(), &paley_17()),
            Err(Error::TooLarge { n: 17, limit: 9 })
        ));
    }

    #[test]
    fn containment_examples() {
        let canon = g("blr_canonical");
        let m = contains_switching_subgraph(&canon, &canon).unwrap().unwrap();
        assert_eq!(m.mapping, (1..=7).collect::<Vec<_>>());
        assert!(m.switching.is_empty());
        let k5 = SignedCompleteGraph::all_positive(5);
        let k7 = SignedCompleteGraph::all_positive(7);
        assert!(contains_switching_subgraph(&k7, &k5).unwrap().is_some());
        assert_eq!(contains_switching_subgraph(&k5, &k7).unwrap(), None);
        assert!(contains_switching_subgraph(&paley_17(), &k5).is_err());
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let canon = g("blr_canonical");
        let text = serde_json::to_string(&canon).unwrap();
        assert!(text.starts_with(r#"{"n":7,"edges":[[1,2,1],[1,3,1]"#));
        let back: SignedCompleteGraph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, canon);

        let missing = r#"{"n": 3, "edges": [[1,2,1],[1,3,-1]]}"#;
        assert!(serde_json::from_str::<SignedCompleteGraph>(missing).is_err());
        let duplicate = r#"{"n": 2, "edges": [[1,2,1],[1,2,1]]}"#;
        assert!(serde_json::from_str::<SignedCompleteGraph>(duplicate).is_err());
        let reversed = r#"{"n": 2, "edges": [[2,1,1]]}"#;
        assert!(serde_json::from_str::<SignedCompleteGraph>(reversed).is_err());
        let zero_sign = r#"{"n": 2, "edges": [[1,2,0]]}"#;
        assert!(serde_json::from_str::<SignedCompleteGraph>(zero_sign).is_err());
    }

    fn graph_of(n: usize) -> impl Strategy<Value = SignedCompleteGraph> {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            SignedCompleteGraph::from_fn(n, |_, _| if it.next().unwrap() { Sign::Plus } else { Sign::Minus })
        })
    }

    fn graph(max_n: usize) -> impl Strategy<Value = SignedCompleteGraph> {
        (1..=max_n).prop_flat_map(graph_of)
    }

    fn subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(any::<bool>(), n)
            .prop_map(|b| b.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i + 1).collect())
    }

    fn graph_and_subsets() -> impl Strategy<Value = (SignedCompleteGraph, Vec<usize>, Vec<usize>)> {
        graph(8).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), subset(n), subset(n))
        })
    }

    fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
        let a: BTreeSet<_> = a.iter().copied().collect();
        let b: BTreeSet<_> = b.iter().copied().collect();
        a.symmetric_difference(&b).copied().collect()
    }

    fn triangle_balance(g: &SignedCompleteGraph) -> bool {
        (1..=g.n())
            .array_combinations()
            .all(|[a, b, c]| g.sign(a, b) * g.sign(b, c) * g.sign(a, c) == Sign::Plus)
    }

    proptest! {
        #[test]
        fn switching_is_an_involution_composing_by_symmetric_difference((g, s, t) in graph_and_subsets()) {
            prop_assert_eq!(g.switch(&s).switch(&s), g.clone());
            prop_assert_eq!(g.switch(&s).switch(&t), g.switch(&symmetric_difference(&s, &t)));
        }

        #[test]
        fn balance_is_switching_invariant_and_matches_triangles((g, s, _) in graph_and_subsets()) {
            prop_assert_eq!(g.is_balanced(), triangle_balance(&g));
            prop_assert_eq!(g.switch(&s).is_balanced(), g.is_balanced());
            let perm: Vec<usize> = (1..=g.n()).rev().collect();
            prop_assert_eq!(g.relabel(&perm).is_balanced(), g.is_balanced());
        }

        #[test]
        fn mono_possible_is_orientation_free((g, s, _) in graph_and_subsets(), k in 2usize..6) {
            prop_assume!(k <= g.n());
            if g.find_mono_clique(k).is_some() {
                prop_assert!(g.mono_k_possible(k));
            }
            prop_assert_eq!(g.switch(&s).mono_k_possible(k), g.mono_k_possible(k));
        }

        #[test]
        fn isomorphism_finds_hidden_relabelings((g, s, _) in graph_and_subsets(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut perm: Vec<usize> = (1..=g.n()).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let target = g.relabel(&perm).switch(&s);
            let m = switching_isomorphic(&g, &target).unwrap();
            prop_assert!(m.is_some());
            let m = m.unwrap();
            prop_assert_eq!(g.relabel(&m.mapping).switch(&m.switching), target);
        }

        #[test]
        fn switching_isomorphism_is_an_equivalence((a, b, c) in (1usize..=6).prop_flat_map(|n| (graph_of(n), graph_of(n), graph_of(n)))) {
            let iso = |x: &SignedCompleteGraph, y: &SignedCompleteGraph| switching_isomorphic(x, y).unwrap().is_some();
            prop_assert!(iso(&a, &a));
            prop_assert_eq!(iso(&a, &b), iso(&b, &a));
            if iso(&a, &b) && iso(&b, &c) {
                prop_assert!(iso(&a, &c));
            }
        }
    }
}
