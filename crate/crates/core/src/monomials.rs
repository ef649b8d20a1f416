//! Monomials in the coordinates `x_ijk` and their invariance under the torus
//! fixing the unit tensor.
//!
//! A monomial is a multiset of triples. Under `(λ, μ, ν)` with
//! `λ_v + μ_v + ν_v = 0` its weight is a linear form in `λ, μ` that vanishes
//! identically iff, for every index value `v`, `v` occurs equally often in
//! the first, second and third slots.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{Permutation, Support, Triple};

/// Degree cap `3n` used when checking the monomial side of the
/// destabilizing-cocharacter / invariant-monomial duality.
pub fn duality_degree_cap(n: usize) -> usize {
    3 * n
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    n: usize,
    factors: Vec<Triple>,
}

impl Monomial {
    pub fn new(n: usize, mut factors: Vec<Triple>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyMonomial);
        }
        for &t in &factors {
            if [t.0, t.1, t.2].iter().any(|v| !(1..=n).contains(v)) {
                return Err(Error::IndexOutOfRange { triple: t, n });
            }
        }
        factors.sort_unstable();
        Ok(Monomial { n, factors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[Triple] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn lies_in(&self, s: &Support) -> bool {
        self.factors.iter().all(|&t| s.contains(t))
    }

    pub fn permuted(&self, p: &Permutation) -> Result<Monomial> {
        crate::tensor::same_n(self.n, p.n())?;
        Monomial::new(self.n, self.factors.iter().map(|&t| p.apply_triple(t)).collect())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(MonomialJson {
            n: self.n,
            factors: self.factors.iter().map(|t| [t.0, t.1, t.2]).collect(),
        })
        .expect("monomial serializes")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: MonomialJson = serde_json::from_str(s)?;
        Monomial::new(doc.n, doc.factors.into_iter().map(|[i, j, k]| (i, j, k)).collect())
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialJson {
    n: usize,
    factors: Vec<[usize; 3]>,
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, &(i, j, k)) in self.factors.iter().enumerate() {
            if idx > 0 {
                write!(f, "·")?;
            }
            if self.n < 10 {
                write!(f, "x{i}{j}{k}")?;
            } else {
                write!(f, "x[{i},{j},{k}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

/// Per-slot occurrence counts of each index value must agree.
pub fn is_torus_invariant(m: &Monomial) -> bool {
    let mut counts = vec![[0usize; 3]; m.n + 1];
    for &(i, j, k) in &m.factors {
        counts[i][0] += 1;
        counts[j][1] += 1;
        counts[k][2] += 1;
    }
    counts.iter().all(|c| c[0] == c[1] && c[1] == c[2])
}

/// `x_iii`, `x_iij x_jji`, `x_iji x_jij`, `x_ijj x_jii` and the two cyclic
/// products `x_ijk x_jki x_kij` over distinct indices.
pub fn generator_family(n: usize) -> Vec<Monomial> {
    let mono = |f: Vec<Triple>| Monomial::new(n, f).expect("indices in range");
    let mut out: Vec<Monomial> = (1..=n).map(|i| mono(vec![(i, i, i)])).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(mono(vec![(i, i, j), (j, j, i)]));
            out.push(mono(vec![(i, j, i), (j, i, j)]));
            out.push(mono(vec![(i, j, j), (j, i, i)]));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push(mono(vec![(i, j, k), (j, k, i), (k, i, j)]));
                out.push(mono(vec![(i, k, j), (k, j, i), (j, i, k)]));
            }
        }
    }
    out
}

/// `n + 3·C(n,2) + 2·C(n,3)`.
pub fn generator_count(n: usize) -> usize {
    let c2 = n * n.saturating_sub(1) / 2;
    let c3 = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
    n + 3 * c2 + 2 * c3
}

/// Imbalance `(a_v - c_v, b_v - c_v)` of per-slot counts; zero iff invariant.
fn step(n: usize, (i, j, k): Triple) -> Vec<i32> {
    let mut d = vec![0i32; 2 * n];
    d[i - 1] += 1;
    d[k - 1] -= 1;
    d[n + j - 1] += 1;
    d[n + k - 1] -= 1;
    d
}

/// All invariant monomials of degree `<= max_degree` with every factor in
/// `s`, ordered by degree and then lexicographically.
pub fn invariant_monomials_within(s: &Support, max_degree: usize) -> Vec<Monomial> {
    let n = s.n();
    let triples: Vec<Triple> = s.iter().collect();
    let steps: Vec<Vec<i32>> = triples.iter().map(|&t| step(n, t)).collect();
    let mut out = Vec::new();
    for degree in 1..=max_degree {
        let mut chosen = Vec::with_capacity(degree);
        let mut state = vec![0i32; 2 * n];
        enumerate(&triples, &steps, 0, degree, &mut chosen, &mut state, &mut out, n);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    triples: &[Triple],
    steps: &[Vec<i32>],
    start: usize,
    remaining: usize,
    chosen: &mut Vec<Triple>,
    state: &mut [i32],
    out: &mut Vec<Monomial>,
    n: usize,
) {
    if remaining == 0 {
        if state.iter().all(|&v| v == 0) {
            out.push(Monomial { n, factors: chosen.clone() });
        }
        return;
    }
    // each factor moves the imbalance by at most 4 in L1
    let l1: i32 = state.iter().map(|v| v.abs()).sum();
    if l1 > 4 * remaining as i32 {
        return;
    }
    for idx in start..triples.len() {
        for (s, d) in state.iter_mut().zip(&steps[idx]) {
            *s += d;
        }
        chosen.push(triples[idx]);
        enumerate(triples, steps, idx, remaining - 1, chosen, state, out, n);
        chosen.pop();
        for (s, d) in state.iter_mut().zip(&steps[idx]) {
            *s -= d;
        }
    }
}

/// A minimum-degree invariant monomial supported in `s` of degree at most
/// `max_degree`, found by breadth-first search over imbalance vectors.
pub fn find_invariant_monomial_within(s: &Support, max_degree: usize) -> Option<Monomial> {
    let n = s.n();
    let triples: Vec<Triple> = s.iter().collect();
    let steps: Vec<Vec<i32>> = triples.iter().map(|&t| step(n, t)).collect();
    let origin = vec![0i32; 2 * n];
    // state -> (parent state, triple index)
    let mut parent: HashMap<Vec<i32>, Option<(Vec<i32>, usize)>> = HashMap::new();
    parent.insert(origin.clone(), None);
    let mut frontier = VecDeque::from([origin]);
    for _ in 0..max_degree {
        let mut next = VecDeque::new();
        while let Some(cur) = frontier.pop_front() {
            for (idx, d) in steps.iter().enumerate() {
                let nxt: Vec<i32> = cur.iter().zip(d).map(|(a, b)| a + b).collect();
                if nxt.iter().all(|&v| v == 0) {
                    let mut factors = vec![triples[idx]];
                    let mut at = cur.clone();
                    while let Some(Some((p, t))) = parent.get(&at) {
                        factors.push(triples[*t]);
                        at = p.clone();
                    }
                    return Some(Monomial::new(n, factors).expect("triples from support"));
                }
                if !parent.contains_key(&nxt) {
                    parent.insert(nxt.clone(), Some((cur.clone(), idx)));
                    next.push_back(nxt);
                }
            }
        }
        frontier = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{apply_permutation, build_w, WVariant};
    use proptest::prelude::*;

    fn m(n: usize, f: &[Triple]) -> Monomial {
        Monomial::new(n, f.to_vec()).unwrap()
    }

    #[test]
    fn invariance_examples() {
        assert!(is_torus_invariant(&m(1, &[(1, 1, 1)])));
        assert!(is_torus_invariant(&m(3, &[(1, 2, 3), (2, 1, 1), (3, 3, 2)])));
        assert!(is_torus_invariant(&m(3, &[(2, 3, 1), (3, 2, 2), (1, 1, 3)])));
        assert!(is_torus_invariant(&m(3, &[(1, 3, 2), (3, 2, 1), (2, 1, 3)])));
        assert!(!is_torus_invariant(&m(3, &[(1, 2, 3)])));
        assert!(Monomial::new(2, vec![]).is_err());
        assert!(Monomial::new(2, vec![(1, 3, 1)]).is_err());
        assert_eq!(m(2, &[(2, 1, 1), (1, 2, 2)]), m(2, &[(1, 2, 2), (2, 1, 1)]));
    }

    #[test]
    fn generator_counts() {
        assert_eq!(generator_family(1).len(), 1);
        assert_eq!(generator_family(3).len(), 14);
        assert_eq!(generator_family(4).len(), 30);
        for n in 1..=6 {
            let fam = generator_family(n);
            assert_eq!(fam.len(), generator_count(n));
            let w = build_w(n, WVariant::W);
            for g in &fam {
                assert!(is_torus_invariant(g));
                assert!(!g.lies_in(&w));
            }
            let mut dedup = fam.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), fam.len());
        }
    }

    #[test]
    fn within_examples() {
        assert!(invariant_monomials_within(&build_w(3, WVariant::W), 3).is_empty());
        let full2 = Support::full(2);
        assert_eq!(invariant_monomials_within(&full2, 1), vec![m(2, &[(1, 1, 1)]), m(2, &[(2, 2, 2)])]);
        let cyc = Support::new(3, [(1, 2, 3), (2, 3, 1), (3, 1, 2)]).unwrap();
        let found = invariant_monomials_within(&cyc, 3);
        assert_eq!(found, vec![m(3, &[(1, 2, 3), (2, 3, 1), (3, 1, 2)])]);
        assert_eq!(find_invariant_monomial_within(&cyc, 3), Some(found[0].clone()));
        assert_eq!(find_invariant_monomial_within(&cyc, 2), None);
        assert_eq!(find_invariant_monomial_within(&build_w(3, WVariant::W), 9), None);
    }

    #[test]
    fn within_is_graded_and_complete_at_degree_two() {
        let full2 = Support::full(2);
        let found = invariant_monomials_within(&full2, 2);
        // brute force over all multisets of size <= 2
        let ts: Vec<Triple> = full2.iter().collect();
        let mut brute = Vec::new();
        for &t in &ts {
            if is_torus_invariant(&m(2, &[t])) {
                brute.push(m(2, &[t]));
            }
        }
        for a in 0..ts.len() {
            for b in a..ts.len() {
                let mono = m(2, &[ts[a], ts[b]]);
                if is_torus_invariant(&mono) {
                    brute.push(mono);
                }
            }
        }
        assert_eq!(found, brute);
        assert!(found.windows(2).all(|w| w[0].degree() <= w[1].degree()));
    }

    #[test]
    fn json_round_trip() {
        let mono = m(3, &[(3, 3, 2), (1, 2, 3), (2, 1, 1)]);
        let s = mono.to_json();
        assert_eq!(s, r#"{"factors":[[1,2,3],[2,1,1],[3,3,2]],"n":3}"#);
        assert_eq!(Monomial::from_json(&s).unwrap(), mono);
    }

    fn monomial3() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec((1usize..=3, 1usize..=3, 1usize..=3), 1..7)
            .prop_map(|f| Monomial::new(3, f).unwrap())
    }

    proptest! {
        #[test]
        fn invariance_is_permutation_equivariant(mono in monomial3(), p in Just(vec![1usize, 2, 3]).prop_shuffle()) {
            let p = Permutation::new(p).unwrap();
            prop_assert_eq!(is_torus_invariant(&mono), is_torus_invariant(&mono.permuted(&p).unwrap()));
        }

        #[test]
        fn bfs_agrees_with_listing(sup in proptest::collection::btree_set((1usize..=2, 1usize..=2, 1usize..=2), 0..6)) {
            let s = Support::new(2, sup).unwrap();
            for d in 1..=4 {
                let listed = invariant_monomials_within(&s, d);
                let found = find_invariant_monomial_within(&s, d);
                prop_assert_eq!(listed.is_empty(), found.is_none());
                if let Some(f) = found {
                    prop_assert!(is_torus_invariant(&f) && f.lies_in(&s));
                    prop_assert_eq!(f.degree(), listed[0].degree());
                }
            }
            let p = Permutation::new(vec![2, 1]).unwrap();
            let image = apply_permutation(&p, &s).unwrap();
            prop_assert_eq!(
                find_invariant_monomial_within(&s, 6).is_some(),
                find_invariant_monomial_within(&image, 6).is_some()
            );
        }
    }
}
