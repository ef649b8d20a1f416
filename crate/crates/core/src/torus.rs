//! Cocharacters `t ↦ (diag(t^λ), diag(t^μ), diag(t^ν))` of the torus fixing
//! the unit tensor, and the degeneration certificates they carry.
//!
//! A basis tensor `a_i ⊗ b_j ⊗ c_k` is scaled by `t^(λ_i + μ_j + ν_k)`, so it
//! vanishes in the limit `t → 0` exactly when that weight is positive.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{all_triples, is_diagonal, same_n, Support, Tensor3, Triple};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TorusWeightJson")]
pub struct TorusWeight {
    n: usize,
    lambda: Vec<i64>,
    mu: Vec<i64>,
    nu: Vec<i64>,
}

#[derive(Deserialize)]
struct TorusWeightJson {
    n: usize,
    lambda: Vec<i64>,
    mu: Vec<i64>,
    nu: Vec<i64>,
}

impl TryFrom<TorusWeightJson> for TorusWeight {
    type Error = Error;
    fn try_from(j: TorusWeightJson) -> Result<Self> {
        TorusWeight::new(j.n, j.lambda, j.mu, j.nu)
    }
}

impl TorusWeight {
    pub fn new(n: usize, lambda: Vec<i64>, mu: Vec<i64>, nu: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroFormat);
        }
        for len in [lambda.len(), mu.len(), nu.len()] {
            same_n(n, len)?;
        }
        for i in 0..n {
            if lambda[i] + mu[i] + nu[i] != 0 {
                return Err(Error::NotACocharacter(i + 1));
            }
        }
        Ok(TorusWeight { n, lambda, mu, nu })
    }

    /// Builds the cocharacter from `λ` and `μ`, with `ν = -λ - μ`.
    pub fn from_lambda_mu(lambda: Vec<i64>, mu: Vec<i64>) -> Result<Self> {
        let nu = lambda.iter().zip(&mu).map(|(l, m)| -l - m).collect();
        TorusWeight::new(lambda.len(), lambda, mu, nu)
    }

    pub fn zero(n: usize) -> Self {
        TorusWeight { n, lambda: vec![0; n], mu: vec![0; n], nu: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    pub fn nu(&self) -> &[i64] {
        &self.nu
    }

    pub fn weight_of(&self, t: Triple) -> Result<i64> {
        let ok = |v: usize| (1..=self.n).contains(&v);
        if !(ok(t.0) && ok(t.1) && ok(t.2)) {
            return Err(Error::IndexOutOfRange { triple: t, n: self.n });
        }
        Ok(self.lambda[t.0 - 1] + self.mu[t.1 - 1] + self.nu[t.2 - 1])
    }

    pub(crate) fn weight_unchecked(&self, t: Triple) -> i64 {
        self.lambda[t.0 - 1] + self.mu[t.1 - 1] + self.nu[t.2 - 1]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cocharacter serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// `λ_k = 2^n - 2^(n-k+1)`, `μ_k = ν_k = 2^(n-k) - 2^(n-1)`; every triple of
/// `W(n)` gets weight `2^(n-j) + 2^(n-k) - 2^(n-i+1) >= 1`.
pub fn w_cocharacter(n: usize) -> TorusWeight {
    assert!((1..=62).contains(&n), "n must be in 1..=62");
    let p = |e: usize| 1i64 << e;
    let lambda = (1..=n).map(|k| p(n) - p(n - k + 1)).collect();
    let mu: Vec<i64> = (1..=n).map(|k| p(n - k) - p(n - 1)).collect();
    TorusWeight { n, lambda, nu: mu.clone(), mu }
}

/// The first three-dimensional example: `λ = (5,0,2)`, `μ = (0,1,-3)`,
/// `ν = (-5,-1,1)`.
pub fn example_one() -> TorusWeight {
    TorusWeight::new(3, vec![5, 0, 2], vec![0, 1, -3], vec![-5, -1, 1]).expect("valid cocharacter")
}

/// The second example: `λ = (-2,-1,0)`, `μ = (3,-2,0)`, `ν = (-1,3,0)`.
pub fn example_two() -> TorusWeight {
    TorusWeight::new(3, vec![-2, -1, 0], vec![3, -2, 0], vec![-1, 3, 0]).expect("valid cocharacter")
}

/// Triples sent to zero in the limit.
pub fn positive_support(tw: &TorusWeight) -> Support {
    Support::new(tw.n, all_triples(tw.n).filter(|&t| tw.weight_unchecked(t) > 0))
        .expect("triples are in range")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The limit `Σ T_iii a_i ⊗ b_i ⊗ c_i` is a diagonal rescaling of the unit
    /// tensor, so the border subrank is `n`.
    Valid,
    MissingDiagonal { index: usize },
    NonPositiveWeight { triple: Triple, weight: i64 },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn describe(&self) -> String {
        match self {
            Verdict::Valid => "valid: lim c(t)·T = Σ T_iii a_i⊗b_i⊗c_i, a diagonal rescaling of the unit \
                               tensor; border subrank is maximal"
                .to_string(),
            Verdict::MissingDiagonal { index } => {
                format!("invalid: diagonal entry ({index},{index},{index}) is zero")
            }
            Verdict::NonPositiveWeight { triple: (i, j, k), weight } => {
                format!("invalid: triple ({i},{j},{k}) has weight {weight} < 1")
            }
        }
    }
}

/// Checks that `tw` degenerates `T` to a full-rank diagonal tensor: all
/// diagonal entries present and every other entry of positive weight.
pub fn check_degeneration_certificate(t: &Tensor3, tw: &TorusWeight) -> Result<Verdict> {
    same_n(t.n(), tw.n())?;
    for i in 1..=t.n() {
        if t.get((i, i, i)) == num_traits::Zero::zero() {
            return Ok(Verdict::MissingDiagonal { index: i });
        }
    }
    for (triple, _) in t.entries() {
        if is_diagonal(triple) {
            continue;
        }
        let weight = tw.weight_unchecked(triple);
        if weight < 1 {
            return Ok(Verdict::NonPositiveWeight { triple, weight });
        }
    }
    Ok(Verdict::Valid)
}
