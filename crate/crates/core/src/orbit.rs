//! Membership in the `GL(A)×GL(B)×GL(C)` orbit of the unit tensor, i.e.
//! maximal subrank, decided exactly from slices.
//!
//! A concise tensor lies in the orbit iff for an invertible combination
//! `X₀ = Σ t_i S_i` of its slices the matrices `N_i = S_i X₀⁻¹` commute and
//! are each diagonalizable over ℂ. Diagonalizability is checked exactly: the
//! squarefree part of the characteristic polynomial must annihilate `N_i`.
//!
//! Maximal *border* subrank is weaker: tensors degenerating to the unit
//! tensor need not lie in its orbit, and such tensors are reported as
//! non-members here.

use num_traits::Zero;
use rand::Rng;

use crate::linalg::Matrix;
use crate::rational::{int, Rational};
use crate::tensor::{CoefficientSampler, Tensor3};

/// Random slice combinations tried after the individual slices.
pub const RANDOM_COMBINATION_TRIES: usize = 5;

/// Side along which a tensor is cut into slices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `S_i[j][k] = T_ijk`
    A,
    /// `S_j[i][k] = T_ijk`
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceFamily {
    pub side: Side,
    pub slices: Vec<Matrix>,
}

impl SliceFamily {
    pub fn of(t: &Tensor3, side: Side) -> Self {
        let n = t.n();
        let mut slices = vec![Matrix::zeros(n, n); n];
        for ((i, j, k), c) in t.entries() {
            match side {
                Side::A => slices[i - 1][(j - 1, k - 1)] = c.clone(),
                Side::B => slices[j - 1][(i - 1, k - 1)] = c.clone(),
            }
        }
        SliceFamily { side, slices }
    }

    pub fn combination(&self, coeffs: &[Rational]) -> Matrix {
        let n = self.slices.len();
        let mut out = Matrix::zeros(n, n);
        for (s, c) in self.slices.iter().zip(coeffs) {
            if !c.is_zero() {
                out = out.add(&s.scale(c));
            }
        }
        out
    }
}

/// Ranks of the three `n × n²` flattenings.
pub fn flattening_ranks(t: &Tensor3) -> [usize; 3] {
    let n = t.n();
    let mut flats = [Matrix::zeros(n, n * n), Matrix::zeros(n, n * n), Matrix::zeros(n, n * n)];
    for ((i, j, k), c) in t.entries() {
        flats[0][(i - 1, (j - 1) * n + (k - 1))] = c.clone();
        flats[1][(j - 1, (i - 1) * n + (k - 1))] = c.clone();
        flats[2][(k - 1, (i - 1) * n + (j - 1))] = c.clone();
    }
    [flats[0].rank(), flats[1].rank(), flats[2].rank()]
}

pub fn is_concise(t: &Tensor3) -> bool {
    flattening_ranks(t).iter().all(|&r| r == t.n())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitVerdict {
    Member,
    NonMember { witness: String },
    Inconclusive { reason: String },
}

impl OrbitVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            OrbitVerdict::Member => "member",
            OrbitVerdict::NonMember { .. } => "non_member",
            OrbitVerdict::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            OrbitVerdict::Member => None,
            OrbitVerdict::NonMember { witness } => Some(witness),
            OrbitVerdict::Inconclusive { reason } => Some(reason),
        }
    }
}

pub fn is_diagonalizable(m: &Matrix) -> bool {
    m.charpoly().squarefree_part().eval_matrix(m).is_zero()
}

/// An invertible slice combination: each slice first, then seeded random
/// combinations with coefficients in `{±1, ±2, ±3}`.
fn invertible_combination(family: &SliceFamily, sampler: &mut CoefficientSampler) -> Option<(Matrix, Matrix)> {
    let n = family.slices.len();
    for s in &family.slices {
        if let Some(inv) = s.inverse() {
            return Some((s.clone(), inv));
        }
    }
    for _ in 0..RANDOM_COMBINATION_TRIES {
        let coeffs = sampler.coefficients(n);
        let x0 = family.combination(&coeffs);
        if let Some(inv) = x0.inverse() {
            return Some((x0, inv));
        }
    }
    None
}

fn side_verdict(t: &Tensor3, side: Side, sampler: &mut CoefficientSampler) -> OrbitVerdict {
    let family = SliceFamily::of(t, side);
    let Some((_, x0_inv)) = invertible_combination(&family, sampler) else {
        return OrbitVerdict::Inconclusive {
            reason: format!("no invertible slice combination found on side {side:?}"),
        };
    };
    let normalized: Vec<Matrix> = family.slices.iter().map(|s| s.mul(&x0_inv)).collect();
    for (a, na) in normalized.iter().enumerate() {
        for (b, nb) in normalized.iter().enumerate().skip(a + 1) {
            if na.mul(nb) != nb.mul(na) {
                return OrbitVerdict::NonMember {
                    witness: format!("side {side:?}: N_{} and N_{} do not commute", a + 1, b + 1),
                };
            }
        }
    }
    for (a, na) in normalized.iter().enumerate() {
        if !is_diagonalizable(na) {
            return OrbitVerdict::NonMember {
                witness: format!("side {side:?}: N_{} is not diagonalizable", a + 1),
            };
        }
    }
    OrbitVerdict::Member
}

pub fn unit_orbit_member(t: &Tensor3, seed: u64) -> OrbitVerdict {
    if !is_concise(t) {
        let r = flattening_ranks(t);
        return OrbitVerdict::NonMember {
            witness: format!("not concise: flattening ranks {:?} for n = {}", r, t.n()),
        };
    }
    let mut sampler = CoefficientSampler::new(seed);
    for side in [Side::A, Side::B] {
        match side_verdict(t, side, &mut sampler) {
            OrbitVerdict::Member => {}
            other => return other,
        }
    }
    OrbitVerdict::Member
}

/// `(g_A ⊗ g_B ⊗ g_C) · T`.
pub fn transform(t: &Tensor3, ga: &Matrix, gb: &Matrix, gc: &Matrix) -> Tensor3 {
    let n = t.n();
    let mut out = Tensor3::zero(n);
    for ((i, j, k), c) in t.entries() {
        for p in 0..n {
            let a = &ga[(p, i - 1)];
            if a.is_zero() {
                continue;
            }
            for q in 0..n {
                let b = &gb[(q, j - 1)];
                if b.is_zero() {
                    continue;
                }
                let ab = a * b * c;
                for r in 0..n {
                    let g = &gc[(r, k - 1)];
                    if !g.is_zero() {
                        out.add_entry((p + 1, q + 1, r + 1), &ab * g);
                    }
                }
            }
        }
    }
    out
}

/// Seeded invertible matrix with entries in `[-2, 2]`.
pub fn random_invertible(n: usize, sampler: &mut CoefficientSampler) -> Matrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| int(sampler.rng().gen_range(-2..=2))).collect()).collect();
        let m = Matrix::from_rows(rows);
        if m.inverse().is_some() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{build_w, random_tensor_on, unit_plus_random, unit_tensor, Support, WVariant};

    fn w_state() -> Tensor3 {
        Tensor3::from_entries(2, [((1, 1, 2), int(1)), ((1, 2, 1), int(1)), ((2, 1, 1), int(1))]).unwrap()
    }

    #[test]
    fn conciseness() {
        for n in 1..=4 {
            assert!(is_concise(&unit_tensor(n)));
        }
        let simple = Tensor3::from_entries(2, [((1, 1, 1), int(1))]).unwrap();
        assert!(!is_concise(&simple));
        assert!(is_concise(&unit_plus_random(&build_w(3, WVariant::W), 2).unwrap()));
        assert!(is_concise(&w_state()));
    }

    #[test]
    fn unit_members() {
        for n in 1..=6 {
            assert_eq!(unit_orbit_member(&unit_tensor(n), 0), OrbitVerdict::Member);
        }
    }

    #[test]
    fn w_state_is_not_a_member() {
        let v = unit_orbit_member(&w_state(), 0);
        assert_eq!(v.label(), "non_member");
        assert!(v.witness().unwrap().contains("not diagonalizable"), "{v:?}");
    }

    #[test]
    fn rank_two_perturbation_is_a_member() {
        let t = unit_tensor(2).add(&Tensor3::from_entries(2, [((2, 1, 2), int(1))]).unwrap()).unwrap();
        assert_eq!(unit_orbit_member(&t, 0), OrbitVerdict::Member);
    }

    #[test]
    fn nilpotent_slice_detected() {
        let m = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]);
        assert!(!is_diagonalizable(&m));
        assert!(is_diagonalizable(&Matrix::identity(3)));
        // irrational eigenvalues still diagonalize over C
        let rot = Matrix::from_rows(vec![vec![int(0), int(-1)], vec![int(1), int(0)]]);
        assert!(is_diagonalizable(&rot));
    }

    #[test]
    fn transformed_unit_tensor_stays_a_member() {
        let mut s = CoefficientSampler::new(4);
        let (a, b, c) = (random_invertible(3, &mut s), random_invertible(3, &mut s), random_invertible(3, &mut s));
        let t = transform(&unit_tensor(3), &a, &b, &c);
        assert_eq!(unit_orbit_member(&t, 1), OrbitVerdict::Member);
        let generic = random_tensor_on(&Support::full(3), 8);
        let moved = transform(&generic, &a, &b, &c);
        assert_eq!(unit_orbit_member(&generic, 3).label(), unit_orbit_member(&moved, 3).label());
    }
}
