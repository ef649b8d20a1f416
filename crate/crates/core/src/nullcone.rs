//! Nullcone membership of coordinate subspaces under the torus fixing the
//! unit tensor.
//!
//! The span of a support `S` lies in the nullcone iff some integer
//! cocharacter gives every triple of `S` positive weight. With `ν = -λ - μ`
//! this is the linear system `λ_i + μ_j - λ_k - μ_k >= 1` over `(λ, μ)`,
//! decided exactly by [`crate::lp`].

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lp::{find_feasible_point, Inequality};
use crate::rational::{int, Rational};
use crate::tensor::{Support, Triple};
use crate::torus::{positive_support, TorusWeight};

/// Largest format for which [`enumerate_maximal_components`] claims
/// completeness without the best-effort flag.
pub const DEFAULT_ENUMERATION_CAP: usize = 3;

/// LP budget applied to best-effort enumeration beyond the cap.
pub const BEST_EFFORT_LP_BUDGET: usize = 2_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityOutcome {
    pub feasible: bool,
    pub certificate: Option<TorusWeight>,
}

/// Weight of `(i, j, k)` as a linear form in `(λ_1..λ_n, μ_1..μ_n)`.
fn weight_form(n: usize, (i, j, k): Triple, sign: i64) -> Vec<Rational> {
    let mut c = vec![0i64; 2 * n];
    c[i - 1] += sign;
    c[n + j - 1] += sign;
    c[k - 1] -= sign;
    c[n + k - 1] -= sign;
    c.into_iter().map(int).collect()
}

/// Integer cocharacter with weight `>= 1` on `positive` and `<= -1` on
/// `negative`, reduced by the gcd of its entries; `None` if none exists.
pub fn signed_certificate(n: usize, positive: &[Triple], negative: &[Triple]) -> Result<Option<TorusWeight>> {
    let system: Vec<Inequality> = positive
        .iter()
        .map(|&t| Inequality { coeffs: weight_form(n, t, 1), rhs: int(1) })
        .chain(negative.iter().map(|&t| Inequality { coeffs: weight_form(n, t, -1), rhs: int(1) }))
        .collect();
    let Some(x) = find_feasible_point(2 * n, &system) else {
        return Ok(None);
    };
    let cert = integer_cocharacter(n, &x)?;
    for &t in positive {
        if cert.weight_of(t)? < 1 {
            return Err(Error::Invariant(format!("certificate gives {t:?} weight below 1")));
        }
    }
    for &t in negative {
        if cert.weight_of(t)? > -1 {
            return Err(Error::Invariant(format!("certificate gives {t:?} weight above -1")));
        }
    }
    Ok(Some(cert))
}

/// Scales a rational `(λ, μ)` by the lcm of its denominators, then divides
/// by the gcd of all of `λ, μ, ν`. Weights that were `>= 1` stay `>= 1`:
/// scaling by an integer `>= 1` keeps them so, and each weight is a multiple
/// of the gcd.
fn integer_cocharacter(n: usize, x: &[Rational]) -> Result<TorusWeight> {
    let lcm = x.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let scaled: Vec<BigInt> = x.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let (lambda, mu) = scaled.split_at(n);
    let nu: Vec<BigInt> = lambda.iter().zip(mu).map(|(l, m)| -(l + m)).collect();
    let g = lambda.iter().chain(mu).chain(&nu).fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let g = if g.is_zero() { BigInt::one() } else { g };
    let to_i64 = |v: &BigInt| {
        (v / &g).to_i64().ok_or_else(|| Error::Invariant(format!("cocharacter entry {v} exceeds i64")))
    };
    let lambda = lambda.iter().map(to_i64).collect::<Result<Vec<_>>>()?;
    let mu = mu.iter().map(to_i64).collect::<Result<Vec<_>>>()?;
    let nu = nu.iter().map(to_i64).collect::<Result<Vec<_>>>()?;
    TorusWeight::new(n, lambda, mu, nu)
}

pub fn nullcone_feasible(s: &Support) -> Result<FeasibilityOutcome> {
    if s.has_diagonal_triple() {
        return Ok(FeasibilityOutcome { feasible: false, certificate: None });
    }
    let triples: Vec<Triple> = s.iter().collect();
    let cert = signed_certificate(s.n(), &triples, &[])?;
    Ok(FeasibilityOutcome { feasible: cert.is_some(), certificate: cert })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Maximality {
    pub maximal: bool,
    /// Triples outside the support that can be added while staying feasible.
    pub extendable: Vec<Triple>,
}

pub fn is_maximal_nullcone_support(s: &Support) -> Result<Maximality> {
    if !nullcone_feasible(s)?.feasible {
        return Err(Error::Precondition("support is not in the nullcone".into()));
    }
    let candidates: Vec<Triple> =
        Support::off_diagonal(s.n()).iter().filter(|&t| !s.contains(t)).collect();
    let checks: Vec<Result<Option<Triple>>> = candidates
        .par_iter()
        .map(|&t| Ok(nullcone_feasible(&s.with(t)?)?.feasible.then_some(t)))
        .collect();
    let mut extendable = Vec::new();
    for c in checks {
        if let Some(t) = c? {
            extendable.push(t);
        }
    }
    Ok(Maximality { maximal: extendable.is_empty(), extendable })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub n: usize,
    pub supports: Vec<Support>,
    /// True when the list is provably the full set of maximal components.
    pub complete: bool,
}

/// Off-diagonal triples grouped by weight form up to sign. One
/// representative per group is enough to fix a chamber; e.g. `(i,j,j)` and
/// `(j,i,i)` carry opposite forms `λ_i - λ_j` and `λ_j - λ_i`.
fn hyperplane_representatives(n: usize) -> Vec<Triple> {
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for t in Support::off_diagonal(n).iter() {
        let form = weight_form(n, t, 1);
        let neg: Vec<Rational> = form.iter().map(|v| -v).collect();
        if seen.contains(&form) || seen.contains(&neg) {
            continue;
        }
        seen.insert(form);
        reps.push(t);
    }
    reps
}

struct ChamberSearch {
    n: usize,
    reps: Vec<Triple>,
    budget: Option<usize>,
    used: std::sync::atomic::AtomicUsize,
    truncated: std::sync::atomic::AtomicBool,
}

impl ChamberSearch {
    fn lp(&self, pos: &[Triple], neg: &[Triple]) -> Result<Option<TorusWeight>> {
        use std::sync::atomic::Ordering;
        let used = self.used.fetch_add(1, Ordering::Relaxed);
        if self.budget.is_some_and(|b| used >= b) {
            self.truncated.store(true, Ordering::Relaxed);
            return Ok(None);
        }
        signed_certificate(self.n, pos, neg)
    }

    /// Depth-first over sign choices for each representative hyperplane,
    /// pruning infeasible sign patterns; `cert` is strictly signed on every
    /// decided hyperplane, so one branch per node is free.
    fn dfs(&self, depth: usize, pos: Vec<Triple>, neg: Vec<Triple>, cert: TorusWeight) -> Result<Vec<Support>> {
        if depth == self.reps.len() {
            return Ok(vec![positive_support(&cert)]);
        }
        let t = self.reps[depth];
        let w = cert.weight_of(t)?;
        let branch = |positive: bool| -> Result<Vec<Support>> {
            let (mut p, mut q) = (pos.clone(), neg.clone());
            if positive {
                p.push(t);
            } else {
                q.push(t);
            }
            let agrees = if positive { w > 0 } else { w < 0 };
            let next = if agrees { Some(cert.clone()) } else { self.lp(&p, &q)? };
            match next {
                Some(c) => self.dfs(depth + 1, p, q, c),
                None => Ok(Vec::new()),
            }
        };
        let (a, b) = if depth < 6 { rayon::join(|| branch(true), || branch(false)) } else { (branch(true), branch(false)) };
        let mut out = a?;
        out.extend(b?);
        Ok(out)
    }
}

/// All maximal feasible supports of format `n`, in canonical order.
///
/// Every feasible support sits inside the positive set of a generic
/// cocharacter, i.e. of a chamber of the arrangement of weight hyperplanes,
/// so the maximal supports are the inclusion-maximal chamber positive sets.
/// Each returned support is re-verified with [`is_maximal_nullcone_support`].
pub fn enumerate_maximal_components(n: usize, best_effort: bool) -> Result<Components> {
    if n == 0 {
        return Err(Error::ZeroFormat);
    }
    if n > DEFAULT_ENUMERATION_CAP && !best_effort {
        return Err(Error::CapExceeded { n, cap: DEFAULT_ENUMERATION_CAP });
    }
    let search = ChamberSearch {
        n,
        reps: hyperplane_representatives(n),
        budget: (n > DEFAULT_ENUMERATION_CAP).then_some(BEST_EFFORT_LP_BUDGET),
        used: Default::default(),
        truncated: Default::default(),
    };
    let start = signed_certificate(n, &[], &[])?.expect("empty system is feasible");
    let leaves: BTreeSet<Support> = search.dfs(0, Vec::new(), Vec::new(), start)?.into_iter().collect();
    let leaves: Vec<Support> = leaves.into_iter().collect();
    let maximal: Vec<Support> = leaves
        .iter()
        .filter(|s| !leaves.iter().any(|o| o.len() > s.len() && s.is_subset(o)))
        .cloned()
        .collect();
    let verified: Vec<Result<bool>> = maximal.par_iter().map(|s| Ok(is_maximal_nullcone_support(s)?.maximal)).collect();
    for (s, ok) in maximal.iter().zip(verified) {
        if !ok? {
            return Err(Error::Invariant(format!("enumerated support {s:?} is not maximal")));
        }
    }
    let truncated = search.truncated.load(std::sync::atomic::Ordering::Relaxed);
    Ok(Components { n, supports: maximal, complete: n <= DEFAULT_ENUMERATION_CAP && !truncated })
}

pub fn outcome_json(o: &FeasibilityOutcome) -> serde_json::Value {
    serde_json::json!({
        "feasible": o.feasible,
        "certificate": o.certificate.as_ref().map(|c| serde_json::to_value(c).expect("serializes")),
    })
}

pub fn components_json(c: &Components) -> serde_json::Value {
    serde_json::json!({
        "n": c.n,
        "complete": c.complete,
        "supports": c.supports.iter().map(Support::to_json_value).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{apply_permutation, build_w, Permutation, WVariant};
    use crate::torus::{example_two, w_cocharacter};

    #[test]
    fn feasibility_examples() {
        let w3 = build_w(3, WVariant::W);
        let o = nullcone_feasible(&w3).unwrap();
        assert!(o.feasible);
        for t in w3.iter() {
            assert!(o.certificate.as_ref().unwrap().weight_of(t).unwrap() >= 1);
            assert!(w_cocharacter(3).weight_of(t).unwrap() >= 1);
        }
        let diag = Support::new(3, [(1, 1, 1), (1, 2, 3)]).unwrap();
        assert!(!nullcone_feasible(&diag).unwrap().feasible);
        let cyc = Support::new(3, [(1, 2, 3), (2, 3, 1), (3, 1, 2)]).unwrap();
        assert!(!nullcone_feasible(&cyc).unwrap().feasible);
        assert!(nullcone_feasible(&positive_support(&example_two())).unwrap().feasible);
        let empty = nullcone_feasible(&Support::empty(2)).unwrap();
        assert!(empty.feasible);
        assert_eq!(empty.certificate, Some(TorusWeight::zero(2)));
    }

    #[test]
    fn single_and_paired_triples() {
        let one = Support::new(2, [(1, 2, 2)]).unwrap();
        assert!(nullcone_feasible(&one).unwrap().feasible);
        let two = Support::new(2, [(1, 2, 2), (2, 1, 1)]).unwrap();
        assert!(!nullcone_feasible(&two).unwrap().feasible);
    }

    #[test]
    fn maximality() {
        assert!(is_maximal_nullcone_support(&build_w(3, WVariant::W)).unwrap().maximal);
        assert!(is_maximal_nullcone_support(&positive_support(&example_two())).unwrap().maximal);
        assert!(is_maximal_nullcone_support(&Support::empty(1)).unwrap().maximal);
        let small = Support::new(3, [(2, 1, 1)]).unwrap();
        let m = is_maximal_nullcone_support(&small).unwrap();
        assert!(!m.maximal && !m.extendable.is_empty());
        let cyc = Support::new(3, [(1, 2, 3), (2, 3, 1), (3, 1, 2)]).unwrap();
        assert!(matches!(is_maximal_nullcone_support(&cyc), Err(Error::Precondition(_))));
    }

    #[test]
    fn small_enumerations() {
        let c1 = enumerate_maximal_components(1, false).unwrap();
        assert_eq!(c1.supports, vec![Support::empty(1)]);
        assert!(c1.complete);
        let c2 = enumerate_maximal_components(2, false).unwrap();
        assert!(c2.supports.contains(&build_w(2, WVariant::W)));
        for s in &c2.supports {
            for p in Permutation::all(2) {
                assert!(c2.supports.contains(&apply_permutation(&p, s).unwrap()));
            }
        }
        assert!(matches!(enumerate_maximal_components(4, false), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn gcd_reduced_certificates() {
        let o = nullcone_feasible(&build_w(2, WVariant::W)).unwrap();
        let c = o.certificate.unwrap();
        let g = c.lambda().iter().chain(c.mu()).chain(c.nu()).fold(0i64, |a, &b| a.gcd(&b));
        assert_eq!(g.abs(), 1);
    }
}
