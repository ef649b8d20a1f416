//! Sparse order-3 tensors over the rationals, coordinate supports, and the
//! diagonal action of the symmetric group on index triples.
//!
//! All indices are 1-based, matching the JSON formats.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

/// An index triple `(i, j, k)`, 1-based.
pub type Triple = (usize, usize, usize);

pub fn is_diagonal(t: Triple) -> bool {
    t.0 == t.1 && t.1 == t.2
}

fn check_triple(t: Triple, n: usize) -> Result<()> {
    let ok = |v: usize| (1..=n).contains(&v);
    if ok(t.0) && ok(t.1) && ok(t.2) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { triple: t, n })
    }
}

/// All triples of `[n]^3` in lexicographic order.
pub fn all_triples(n: usize) -> impl Iterator<Item = Triple> {
    (1..=n).flat_map(move |i| (1..=n).flat_map(move |j| (1..=n).map(move |k| (i, j, k))))
}

/// A coordinate subspace of `A ⊗ B ⊗ C`, given by the triples spanning it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support {
    n: usize,
    triples: BTreeSet<Triple>,
}

impl Support {
    pub fn empty(n: usize) -> Self {
        Support { n, triples: BTreeSet::new() }
    }

    pub fn new(n: usize, triples: impl IntoIterator<Item = Triple>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroFormat);
        }
        let mut set = BTreeSet::new();
        for t in triples {
            check_triple(t, n)?;
            set.insert(t);
        }
        Ok(Support { n, triples: set })
    }

    pub fn full(n: usize) -> Self {
        Support { n, triples: all_triples(n).collect() }
    }

    pub fn diagonal(n: usize) -> Self {
        Support { n, triples: (1..=n).map(|i| (i, i, i)).collect() }
    }

    /// Every non-diagonal triple of `[n]^3`.
    pub fn off_diagonal(n: usize) -> Self {
        Support { n, triples: all_triples(n).filter(|&t| !is_diagonal(t)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, t: Triple) -> bool {
        self.triples.contains(&t)
    }

    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.triples.iter().copied()
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn insert(&mut self, t: Triple) -> Result<bool> {
        check_triple(t, self.n)?;
        Ok(self.triples.insert(t))
    }

    pub fn with(&self, t: Triple) -> Result<Support> {
        let mut s = self.clone();
        s.insert(t)?;
        Ok(s)
    }

    pub fn union(&self, other: &Support) -> Result<Support> {
        same_n(self.n, other.n)?;
        Ok(Support { n: self.n, triples: self.triples.union(&other.triples).copied().collect() })
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        self.n == other.n && self.triples.is_subset(&other.triples)
    }

    pub fn without_diagonal(&self) -> Support {
        Support { n: self.n, triples: self.iter().filter(|&t| !is_diagonal(t)).collect() }
    }

    pub fn has_diagonal_triple(&self) -> bool {
        self.iter().any(is_diagonal)
    }
}

impl fmt::Debug for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Support(n={}, {{", self.n)?;
        for (idx, t) in self.triples.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}{}{}", t.0, t.1, t.2)?;
        }
        write!(f, "}})")
    }
}

pub(crate) fn same_n(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// The three "smallest index distinguished" nullcone subspaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WVariant {
    /// at least one of `j, k` is less than `i`
    W,
    /// at least one of `i, k` is less than `j`
    WPrime,
    /// at least one of `i, j` is less than `k`
    WDoublePrime,
}

impl WVariant {
    pub const ALL: [WVariant; 3] = [WVariant::W, WVariant::WPrime, WVariant::WDoublePrime];

    pub fn contains(self, (i, j, k): Triple) -> bool {
        match self {
            WVariant::W => j < i || k < i,
            WVariant::WPrime => i < j || k < j,
            WVariant::WDoublePrime => i < k || j < k,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WVariant::W => "W",
            WVariant::WPrime => "W'",
            WVariant::WDoublePrime => "W''",
        }
    }
}

pub fn build_w(n: usize, variant: WVariant) -> Support {
    Support { n, triples: all_triples(n).filter(|&t| variant.contains(t)).collect() }
}

/// Closed form `(4n^3 - 3n^2 - n) / 6` for the size of each `W` variant.
pub fn w_dimension(n: usize) -> usize {
    (4 * n * n * n - 3 * n * n - n) / 6
}

/// Triples with `2i = j + k` off the diagonal.
pub fn build_tight_u(n: usize) -> Support {
    Support {
        n,
        triples: all_triples(n).filter(|&(i, j, k)| 2 * i == j + k && j != i).collect(),
    }
}

/// `{(i, j, k) : 2i = j + k}`, the diagonal together with [`build_tight_u`].
pub fn tight_support(n: usize) -> Support {
    Support { n, triples: all_triples(n).filter(|&(i, j, k)| 2 * i == j + k).collect() }
}

/// A bijection of `[n]`, stored by its images `σ(1), …, σ(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::ZeroFormat);
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation { n, images });
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v - 1]
    }

    pub fn apply_triple(&self, (i, j, k): Triple) -> Triple {
        (self.apply(i), self.apply(j), self.apply(k))
    }

    /// `self ∘ other`, i.e. `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        same_n(self.n(), other.n())?;
        Ok(Permutation { images: other.images.iter().map(|&v| self.apply(v)).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (idx, &v) in self.images.iter().enumerate() {
            inv[v - 1] = idx + 1;
        }
        Permutation { images: inv }
    }

    /// All `n!` permutations in lexicographic order of their image sequences.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(p) = (1..cur.len()).rev().find(|&p| cur[p - 1] < cur[p]) else {
                break;
            };
            let q = (p..cur.len()).rev().find(|&q| cur[q] > cur[p - 1]).unwrap();
            cur.swap(p - 1, q);
            cur[p..].reverse();
        }
        out
    }
}

pub fn apply_permutation(s: &Permutation, sup: &Support) -> Result<Support> {
    same_n(sup.n(), s.n())?;
    Ok(Support { n: sup.n, triples: sup.iter().map(|t| s.apply_triple(t)).collect() })
}

/// Sparse tensor `Σ T_ijk a_i ⊗ b_j ⊗ c_k`; absent triples are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor3 {
    n: usize,
    entries: BTreeMap<Triple, Rational>,
}

impl Tensor3 {
    pub fn zero(n: usize) -> Self {
        Tensor3 { n, entries: BTreeMap::new() }
    }

    /// Builds a tensor from arbitrary entries; zeros are dropped and repeated
    /// triples are summed.
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (Triple, Rational)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroFormat);
        }
        let mut t = Tensor3::zero(n);
        for (idx, c) in entries {
            check_triple(idx, n)?;
            t.add_entry(idx, c);
        }
        Ok(t)
    }

    pub(crate) fn add_entry(&mut self, idx: Triple, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(idx).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&idx);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, idx: Triple) -> Rational {
        self.entries.get(&idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Triple, &Rational)> + '_ {
        self.entries.iter().map(|(&t, c)| (t, c))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> Support {
        Support { n: self.n, triples: self.entries.keys().copied().collect() }
    }

    pub fn add(&self, other: &Tensor3) -> Result<Tensor3> {
        same_n(self.n, other.n)?;
        let mut out = self.clone();
        for (t, c) in other.entries() {
            out.add_entry(t, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Tensor3 {
        if c.is_zero() {
            return Tensor3::zero(self.n);
        }
        Tensor3 { n: self.n, entries: self.entries.iter().map(|(&t, v)| (t, v * c)).collect() }
    }

    /// Dense coordinates in lexicographic triple order (length `n^3`).
    pub fn to_dense(&self) -> Vec<Rational> {
        let n = self.n;
        let mut v = vec![Rational::zero(); n * n * n];
        for (t, c) in self.entries() {
            v[triple_index(n, t)] = c.clone();
        }
        v
    }
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor3(n={}", self.n)?;
        for (t, c) in self.entries() {
            write!(f, ", {}{}{}:{}", t.0, t.1, t.2, c)?;
        }
        write!(f, ")")
    }
}

/// Position of a 1-based triple in the lexicographic enumeration of `[n]^3`.
pub fn triple_index(n: usize, (i, j, k): Triple) -> usize {
    ((i - 1) * n + (j - 1)) * n + (k - 1)
}

pub fn unit_tensor(n: usize) -> Tensor3 {
    Tensor3 { n, entries: (1..=n).map(|i| ((i, i, i), int(1))).collect() }
}

/// Tensor whose support is exactly `sup`, with one coefficient per triple in
/// the support's lexicographic order.
pub fn tensor_from_support(sup: &Support, coeffs: &[Rational]) -> Result<Tensor3> {
    if coeffs.len() != sup.len() {
        return Err(Error::CoefficientMismatch(format!(
            "{} coefficients for {} triples",
            coeffs.len(),
            sup.len()
        )));
    }
    let mut entries = BTreeMap::new();
    for (t, c) in sup.iter().zip(coeffs) {
        if c.is_zero() {
            return Err(Error::ZeroCoefficient(t));
        }
        entries.insert(t, c.clone());
    }
    Ok(Tensor3 { n: sup.n(), entries })
}

/// Like [`tensor_from_support`] but keyed by triple; every triple of the
/// support must be assigned and nothing else.
pub fn tensor_from_assignment(sup: &Support, coeffs: &BTreeMap<Triple, Rational>) -> Result<Tensor3> {
    for t in coeffs.keys() {
        check_triple(*t, sup.n())?;
        if !sup.contains(*t) {
            return Err(Error::CoefficientMismatch(format!("triple {t:?} is not in the support")));
        }
    }
    let ordered: Vec<Rational> = sup
        .iter()
        .map(|t| {
            coeffs
                .get(&t)
                .cloned()
                .ok_or_else(|| Error::CoefficientMismatch(format!("no coefficient for {t:?}")))
        })
        .collect::<Result<_>>()?;
    tensor_from_support(sup, &ordered)
}

/// Deterministic sampler of nonzero integers in `[-3, 3]`.
pub struct CoefficientSampler {
    rng: ChaCha8Rng,
}

impl CoefficientSampler {
    pub fn new(seed: u64) -> Self {
        CoefficientSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn next_coefficient(&mut self) -> i64 {
        let v = self.rng.gen_range(1..=3i64);
        if self.rng.gen_bool(0.5) {
            v
        } else {
            -v
        }
    }

    pub fn coefficients(&mut self, count: usize) -> Vec<Rational> {
        (0..count).map(|_| int(self.next_coefficient())).collect()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

pub fn random_tensor_on(sup: &Support, seed: u64) -> Tensor3 {
    let coeffs = CoefficientSampler::new(seed).coefficients(sup.len());
    tensor_from_support(sup, &coeffs).expect("sampled coefficients are nonzero")
}

/// `M + w` with `w` random on `sup` (which must avoid the diagonal).
pub fn unit_plus_random(sup: &Support, seed: u64) -> Result<Tensor3> {
    if sup.has_diagonal_triple() {
        return Err(Error::Precondition("perturbation support meets the diagonal".into()));
    }
    unit_tensor(sup.n()).add(&random_tensor_on(sup, seed))
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    n: usize,
    entries: Vec<(usize, usize, usize, String)>,
}

#[derive(Serialize, Deserialize)]
struct SupportJson {
    n: usize,
    triples: Vec<[usize; 3]>,
}

impl Tensor3 {
    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = TensorJson {
            n: self.n,
            entries: self.entries().map(|(t, c)| (t.0, t.1, t.2, format_rational(c))).collect(),
        };
        serde_json::to_value(doc).expect("tensor serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("tensor serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: TensorJson = serde_json::from_str(s)?;
        let mut entries = Vec::with_capacity(doc.entries.len());
        for (i, j, k, c) in doc.entries {
            let c = parse_rational(&c)?;
            if c.is_zero() {
                return Err(Error::ZeroCoefficient((i, j, k)));
            }
            entries.push(((i, j, k), c));
        }
        Tensor3::from_entries(doc.n, entries)
    }
}

impl Support {
    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = SupportJson { n: self.n, triples: self.iter().map(|t| [t.0, t.1, t.2]).collect() };
        serde_json::to_value(doc).expect("support serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("support serializes")
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let doc: SupportJson = serde_json::from_value(v)?;
        Support::new(doc.n, doc.triples.into_iter().map(|[i, j, k]| (i, j, k)))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Support::from_json_value(serde_json::from_str(s)?)
    }
}
