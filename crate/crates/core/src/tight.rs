//! Tight supports: injective integer gradings `τ_A, τ_B, τ_C` of the three
//! index sets with `τ_A(i) + τ_B(j) + τ_C(k) = 0` on every triple.
//!
//! The gradings satisfying the sum condition form a linear space `K` over ℚ.
//! A support is tight iff no collision hyperplane `τ_X(p) = τ_X(q)`
//! contains `K`; a rational point of `K` off every collision hyperplane
//! scales to an integer witness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::rational::{int, Rational};
use crate::tensor::{same_n, Support};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightWitness {
    pub n: usize,
    #[serde(rename = "tauA")]
    pub tau_a: Vec<i64>,
    #[serde(rename = "tauB")]
    pub tau_b: Vec<i64>,
    #[serde(rename = "tauC")]
    pub tau_c: Vec<i64>,
}

impl TightWitness {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let w: TightWitness = serde_json::from_str(s)?;
        for len in [w.tau_a.len(), w.tau_b.len(), w.tau_c.len()] {
            same_n(w.n, len)?;
        }
        Ok(w)
    }
}

/// `τ_A(i) = 3 - 2i`, `τ_B(j) = j`, `τ_C(k) = k - 3`, which grades
/// `{(i, j, k) : 2i = j + k}`.
pub fn arithmetic_witness(n: usize) -> TightWitness {
    let r = 1..=n as i64;
    TightWitness {
        n,
        tau_a: r.clone().map(|i| 3 - 2 * i).collect(),
        tau_b: r.clone().collect(),
        tau_c: r.map(|k| k - 3).collect(),
    }
}

fn injective(v: &[i64]) -> bool {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

pub fn check_tight_witness(s: &Support, w: &TightWitness) -> Result<bool> {
    same_n(s.n(), w.n)?;
    for len in [w.tau_a.len(), w.tau_b.len(), w.tau_c.len()] {
        same_n(w.n, len)?;
    }
    if !(injective(&w.tau_a) && injective(&w.tau_b) && injective(&w.tau_c)) {
        return Ok(false);
    }
    Ok(s.iter().all(|(i, j, k)| w.tau_a[i - 1] + w.tau_b[j - 1] + w.tau_c[k - 1] == 0))
}

/// Coordinates of the pair `τ_X(p), τ_X(q)` in the `3n` unknowns.
fn collisions(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for block in 0..3 {
        for p in 0..n {
            for q in p + 1..n {
                out.push((block * n + p, block * n + q));
            }
        }
    }
    out
}

fn grading_space(s: &Support) -> Vec<Vec<Rational>> {
    let n = s.n();
    let mut e = Echelon::new(3 * n);
    for (i, j, k) in s.iter() {
        let mut row = vec![BigInt::zero(); 3 * n];
        row[i - 1] += 1;
        row[n + j - 1] += 1;
        row[2 * n + k - 1] += 1;
        e.insert(row);
    }
    e.kernel()
}

pub fn find_tight_witness(s: &Support) -> Result<Option<TightWitness>> {
    let n = s.n();
    let basis = grading_space(s);
    let pairs = collisions(n);
    // a collision form vanishing on every basis vector vanishes on all of K
    for &(p, q) in &pairs {
        if basis.iter().all(|b| b[p] == b[q]) {
            return Ok(None);
        }
    }
    // Points on the moment curve Σ t^m b_m: each collision form restricts to
    // a nonzero polynomial of degree < dim K in t, so finitely many t fail.
    let mut t: i64 = 1;
    let point = loop {
        let mut v = vec![Rational::zero(); 3 * n];
        let mut power = Rational::one();
        for b in &basis {
            for (acc, x) in v.iter_mut().zip(b) {
                *acc += &power * x;
            }
            power *= int(t);
        }
        if pairs.iter().all(|&(p, q)| v[p] != v[q]) {
            break v;
        }
        t += 1;
    };
    let witness = normalize(n, &point)?;
    if !check_tight_witness(s, &witness)? {
        return Err(Error::Invariant("constructed grading fails its own check".into()));
    }
    Ok(Some(witness))
}

/// Clears denominators, shifts so `τ_C(n) = 0` (moving the offset into
/// `τ_A`), and divides by the gcd of all entries.
fn normalize(n: usize, v: &[Rational]) -> Result<TightWitness> {
    let lcm = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let shift = ints[3 * n - 1].clone();
    for a in ints[..n].iter_mut() {
        *a += &shift;
    }
    for c in ints[2 * n..].iter_mut() {
        *c -= &shift;
    }
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x /= &g;
        }
    }
    let out: Vec<i64> = ints
        .iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Invariant(format!("grading entry {x} exceeds i64"))))
        .collect::<Result<_>>()?;
    Ok(TightWitness {
        n,
        tau_a: out[..n].to_vec(),
        tau_b: out[n..2 * n].to_vec(),
        tau_c: out[2 * n..].to_vec(),
    })
}
