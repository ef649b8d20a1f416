//! Action of `gl(A) ⊕ gl(B) ⊕ gl(C)` on tensors, stabilizer dimensions and
//! the tangent-space count behind the lower bound on the variety of
//! maximal border subrank tensors.
//!
//! Dimensions come in two conventions: `gl3` counts inside the full
//! `3n²`-dimensional algebra, `quotient` subtracts the 2-dimensional kernel
//! `{(a·Id, b·Id, c·Id) : a + b + c = 0}` of the action.

use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::linalg::{bareiss_rank, integer_row, Echelon, Matrix};
use crate::rational::{int, Rational};
use crate::tensor::{build_w, same_n, triple_index, unit_tensor, w_dimension, Tensor3, Triple, WVariant};

/// Dimension of the kernel of the action map `gl3 → gl(A⊗B⊗C)`.
pub const ACTION_KERNEL_DIM: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieTriple {
    pub x: Matrix,
    pub y: Matrix,
    pub z: Matrix,
}

impl LieTriple {
    pub fn zero(n: usize) -> Self {
        LieTriple { x: Matrix::zeros(n, n), y: Matrix::zeros(n, n), z: Matrix::zeros(n, n) }
    }

    pub fn n(&self) -> usize {
        self.x.rows
    }

    /// Coordinates ordered `x` row-major, then `y`, then `z`.
    pub fn from_coordinates(n: usize, v: &[Rational]) -> Self {
        assert_eq!(v.len(), 3 * n * n, "coordinate vector length");
        let block = |b: usize| {
            Matrix::from_rows((0..n).map(|p| v[b * n * n + p * n..b * n * n + (p + 1) * n].to_vec()).collect())
        };
        LieTriple { x: block(0), y: block(1), z: block(2) }
    }

    pub fn coordinates(&self) -> Vec<Rational> {
        [&self.x, &self.y, &self.z].iter().flat_map(|m| m.row_vecs().into_iter().flatten()).collect()
    }

    pub fn add(&self, o: &LieTriple) -> LieTriple {
        LieTriple { x: self.x.add(&o.x), y: self.y.add(&o.y), z: self.z.add(&o.z) }
    }

    /// The basis element with a single 1 at coordinate `u`.
    pub fn basis(n: usize, u: usize) -> Self {
        let mut v = vec![Rational::zero(); 3 * n * n];
        v[u] = int(1);
        LieTriple::from_coordinates(n, &v)
    }
}

/// Leibniz action `(x,y,z).(a⊗b⊗c) = x a⊗b⊗c + a⊗y b⊗c + a⊗b⊗z c`.
pub fn act(lt: &LieTriple, t: &Tensor3) -> Result<Tensor3> {
    let n = t.n();
    same_n(n, lt.n())?;
    let mut out = Tensor3::zero(n);
    for ((i, j, k), c) in t.entries() {
        for p in 1..=n {
            let xs = &lt.x[(p - 1, i - 1)];
            if !xs.is_zero() {
                out.add_entry((p, j, k), xs * c);
            }
            let ys = &lt.y[(p - 1, j - 1)];
            if !ys.is_zero() {
                out.add_entry((i, p, k), ys * c);
            }
            let zs = &lt.z[(p - 1, k - 1)];
            if !zs.is_zero() {
                out.add_entry((i, j, p), zs * c);
            }
        }
    }
    Ok(out)
}

/// Dense images of all `3n²` basis elements of `gl3` acting on the basis
/// tensor `a_i ⊗ b_j ⊗ c_k`, added into `images` with weight `coeff`.
fn accumulate_basis_images(n: usize, (i, j, k): Triple, coeff: &Rational, images: &mut [Vec<Rational>]) {
    let nn = n * n;
    for p in 1..=n {
        images[(p - 1) * n + (i - 1)][triple_index(n, (p, j, k))] += coeff;
        images[nn + (p - 1) * n + (j - 1)][triple_index(n, (i, p, k))] += coeff;
        images[2 * nn + (p - 1) * n + (k - 1)][triple_index(n, (i, j, p))] += coeff;
    }
}

/// `images[u]` is `act(basis(u), t)` as a dense vector of length `n³`.
pub fn basis_images(t: &Tensor3) -> Vec<Vec<Rational>> {
    let n = t.n();
    let mut images = vec![vec![Rational::zero(); n * n * n]; 3 * n * n];
    for (triple, c) in t.entries() {
        accumulate_basis_images(n, triple, c, &mut images);
    }
    images
}

/// Echelon form of the equations `act(lt, T) = 0` in the `3n²` unknowns.
fn stabilizer_equations(t: &Tensor3) -> Echelon {
    let n = t.n();
    let images = basis_images(t);
    let mut e = Echelon::new(3 * n * n);
    for coord in 0..n * n * n {
        let row: Vec<Rational> = images.iter().map(|img| img[coord].clone()).collect();
        if row.iter().any(|v| !v.is_zero()) {
            e.insert_rational(&row);
        }
    }
    e
}

/// `dim {(x,y,z) : (x,y,z).T = 0}` in the `gl3` convention.
pub fn stabilizer_dim(t: &Tensor3) -> usize {
    let n = t.n();
    3 * n * n - stabilizer_equations(t).rank()
}

pub fn stabilizer_basis(t: &Tensor3) -> Vec<LieTriple> {
    let n = t.n();
    stabilizer_equations(t).kernel().iter().map(|v| LieTriple::from_coordinates(n, v)).collect()
}

/// Rank of `gl3 · M` for the unit tensor `M`, i.e. the dimension of the
/// set of tensors of maximal subrank. Computed from the image vectors
/// directly, independently of the stabilizer kernel.
pub fn orbit_dim_unit(n: usize) -> usize {
    let rows = basis_images(&unit_tensor(n)).iter().map(|r| integer_row(r)).collect();
    bareiss_rank(rows)
}

/// A linear subspace of `Q^ambient` kept in canonical reduced echelon form.
#[derive(Clone, Debug)]
pub struct LinearSubspace {
    ambient: usize,
    rref: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl LinearSubspace {
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let e = Echelon::from_rows(ambient, vectors.iter().map(Vec::as_slice));
        let rref = e.rref();
        let pivots = rref.iter().map(|r| r.iter().position(|v| !v.is_zero()).expect("nonzero row")).collect();
        LinearSubspace { ambient, rref, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rref.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rref
    }

    /// `v` minus its projection along the echelon basis; zero on pivots and
    /// zero everywhere iff `v` lies in the subspace. Linear in `v`.
    pub fn residue(&self, v: &[Rational]) -> Vec<Rational> {
        let mut r = v.to_vec();
        for (row, &p) in self.rref.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (a, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.residue(v).iter().all(Zero::is_zero)
    }

    pub fn non_pivot_coordinates(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// `⟨M, W⟩`, the unit tensor together with the coordinate subspace `W(n)`.
pub fn unit_and_w_span(n: usize) -> LinearSubspace {
    let mut vectors = vec![unit_tensor(n).to_dense()];
    for t in build_w(n, WVariant::W).iter() {
        let mut v = vec![Rational::zero(); n * n * n];
        v[triple_index(n, t)] = int(1);
        vectors.push(v);
    }
    LinearSubspace::span(n * n * n, &vectors)
}

/// Echelon form of the conditions `act(lt, g) ∈ ⟨M, W⟩` for `g = M` and
/// each basis tensor `g` of `W`. Since the action is linear in `w`, these
/// are equivalent to `act(lt, M + w) ∈ ⟨M, W⟩` for all `w ∈ W`.
fn cone_stabilizer_equations(n: usize) -> Echelon {
    let target = unit_and_w_span(n);
    let free_coords = target.non_pivot_coordinates();
    let mut generators = vec![unit_tensor(n)];
    for t in build_w(n, WVariant::W).iter() {
        generators.push(Tensor3::from_entries(n, [(t, int(1))]).expect("in range"));
    }
    let mut e = Echelon::new(3 * n * n);
    for g in &generators {
        let residues: Vec<Vec<Rational>> = basis_images(g).iter().map(|img| target.residue(img)).collect();
        for &c in &free_coords {
            let row: Vec<Rational> = residues.iter().map(|r| r[c].clone()).collect();
            if row.iter().any(|v| !v.is_zero()) {
                e.insert_rational(&row);
            }
        }
    }
    e
}

/// Dimension of `{(x,y,z) : (x,y,z).(M + w) ∈ ⟨M, W⟩ ∀ w ∈ W}`, `gl3`
/// convention.
pub fn cone_stabilizer_dim_gl3(n: usize) -> usize {
    3 * n * n - cone_stabilizer_equations(n).rank()
}

/// The same dimension in the quotient convention; `(3n² + n - 2) / 2`.
pub fn cone_stabilizer_dim(n: usize) -> usize {
    cone_stabilizer_dim_gl3(n) - ACTION_KERNEL_DIM
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeStructure {
    pub n: usize,
    pub dim_gl3: usize,
    pub dim_quotient: usize,
    pub all_pass: bool,
    pub violations: Vec<String>,
    #[serde(skip)]
    pub basis: Vec<LieTriple>,
}

/// `x` lower triangular, `y` and `z` upper triangular, and
/// `x_ss + y_ss + z_ss` independent of `s`. Returns the violated clauses.
pub fn triangular_violations(lt: &LieTriple) -> Vec<String> {
    let n = lt.n();
    let mut out = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if q > p && !lt.x[(p, q)].is_zero() {
                out.push(format!("x[{},{}] != 0 above the diagonal", p + 1, q + 1));
            }
            if p > q && !lt.y[(p, q)].is_zero() {
                out.push(format!("y[{},{}] != 0 below the diagonal", p + 1, q + 1));
            }
            if p > q && !lt.z[(p, q)].is_zero() {
                out.push(format!("z[{},{}] != 0 below the diagonal", p + 1, q + 1));
            }
        }
    }
    let trace_at = |s: usize| &lt.x[(s, s)] + &lt.y[(s, s)] + &lt.z[(s, s)];
    for s in 1..n {
        if trace_at(s) != trace_at(0) {
            out.push(format!("diagonal sum at {} differs from the one at 1", s + 1));
        }
    }
    out
}

pub fn cone_stabilizer_structure(n: usize) -> ConeStructure {
    let e = cone_stabilizer_equations(n);
    let basis: Vec<LieTriple> = e.kernel().iter().map(|v| LieTriple::from_coordinates(n, v)).collect();
    let mut violations = Vec::new();
    for (idx, lt) in basis.iter().enumerate() {
        for v in triangular_violations(lt) {
            violations.push(format!("basis vector {idx}: {v}"));
        }
    }
    let dim_gl3 = basis.len();
    ConeStructure {
        n,
        dim_gl3,
        dim_quotient: dim_gl3 - ACTION_KERNEL_DIM,
        all_pass: violations.is_empty(),
        violations,
        basis,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentAttempt {
    pub seed: u64,
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentReport {
    pub n: usize,
    pub value: usize,
    pub expected: usize,
    pub attempts: Vec<TangentAttempt>,
}

pub const TANGENT_ATTEMPTS: usize = 3;

/// Projective dimension of `gl3·(M + w) + ⟨M, W⟩` for one sampled `w ∈ W`.
pub fn tangent_dim_at(n: usize, seed: u64) -> usize {
    let w = build_w(n, WVariant::W);
    let point = if w.is_empty() {
        unit_tensor(n)
    } else {
        crate::tensor::unit_plus_random(&w, seed).expect("W avoids the diagonal")
    };
    let mut rows: Vec<Vec<Rational>> = basis_images(&point);
    rows.push(unit_tensor(n).to_dense());
    for t in w.iter() {
        let mut v = vec![Rational::zero(); n * n * n];
        v[triple_index(n, t)] = int(1);
        rows.push(v);
    }
    bareiss_rank(rows.iter().map(|r| integer_row(r)).collect()).saturating_sub(1)
}

/// Tangent dimension of `G·Cone(M, W)` at a generic point, retrying on up to
/// [`TANGENT_ATTEMPTS`] consecutive seeds while the rank falls short.
pub fn orbit_cone_tangent_dim(n: usize, seed: u64) -> TangentReport {
    let expected = main_theorem_bound(n);
    let mut attempts = Vec::new();
    for a in 0..TANGENT_ATTEMPTS as u64 {
        let s = seed.wrapping_add(a);
        let value = tangent_dim_at(n, s);
        attempts.push(TangentAttempt { seed: s, value });
        if value >= expected {
            break;
        }
    }
    let value = attempts.iter().map(|a| a.value).max().expect("at least one attempt");
    TangentReport { n, value, expected, attempts }
}

/// `(2n³ + 3n² - 2n - 3) / 3`; the numerator is always divisible by 3.
pub fn main_theorem_bound(n: usize) -> usize {
    let num = 2 * n * n * n + 3 * n * n - 2 * n - 3;
    assert_eq!(num % 3, 0, "numerator divisible by 3");
    num / 3
}

/// `dim G - dim G_C' + dim C'` with `dim G = 3n² - 2`.
pub fn dimension_count(n: usize, cone_stab_quotient: usize) -> usize {
    (3 * n * n - 2) + w_dimension(n) - cone_stab_quotient
}

/// `(3n² + n - 2) / 2`.
pub fn expected_cone_stabilizer_dim(n: usize) -> usize {
    (3 * n * n + n - 2) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::tensor::{random_tensor_on, Support};
    use proptest::prelude::*;

    #[test]
    fn kernel_element_acts_trivially() {
        let n = 3;
        let id = Matrix::identity(n);
        let lt = LieTriple { x: id.clone(), y: id.scale(&int(-1)), z: Matrix::zeros(n, n) };
        let t = random_tensor_on(&Support::full(n), 3);
        assert!(act(&lt, &t).unwrap().is_zero());
    }

    #[test]
    fn single_elementary_action() {
        // x = E_21 on the unit tensor of size 2 gives a_2 ⊗ b_1 ⊗ c_1
        let mut lt = LieTriple::zero(2);
        lt.x[(1, 0)] = int(1);
        let out = act(&lt, &unit_tensor(2)).unwrap();
        assert_eq!(out, Tensor3::from_entries(2, [((2, 1, 1), int(1))]).unwrap());
    }

    #[test]
    fn stabilizer_dims() {
        assert_eq!(stabilizer_dim(&unit_tensor(3)), 6);
        assert_eq!(stabilizer_dim(&unit_tensor(2)), 4);
        assert_eq!(stabilizer_dim(&Tensor3::zero(3)), 27);
        for n in 1..=6 {
            assert_eq!(stabilizer_dim(&unit_tensor(n)), 2 * n);
        }
    }

    #[test]
    fn orbit_dims() {
        assert_eq!(orbit_dim_unit(1), 1);
        assert_eq!(orbit_dim_unit(2), 8);
        assert_eq!(orbit_dim_unit(3), 21);
    }

    #[test]
    fn stabilizer_basis_annihilates() {
        let t = unit_plus_w(3, 9);
        for lt in stabilizer_basis(&t) {
            assert!(act(&lt, &t).unwrap().is_zero());
        }
    }

    fn unit_plus_w(n: usize, seed: u64) -> Tensor3 {
        crate::tensor::unit_plus_random(&build_w(n, WVariant::W), seed).unwrap()
    }

    #[test]
    fn cone_stabilizer_small() {
        assert_eq!(cone_stabilizer_dim_gl3(1), 3);
        assert_eq!(cone_stabilizer_dim(2), 6);
        assert_eq!(cone_stabilizer_dim(3), 14);
        let s = cone_stabilizer_structure(3);
        assert_eq!(s.dim_gl3, 16);
        assert!(s.all_pass, "{:?}", s.violations);
        assert!(cone_stabilizer_structure(2).all_pass);
    }

    #[test]
    fn tangent_and_bound() {
        assert_eq!(main_theorem_bound(1), 0);
        assert_eq!(main_theorem_bound(3), 24);
        assert_eq!(main_theorem_bound(10), 759);
        assert_eq!(orbit_cone_tangent_dim(2, 1).value, 7);
        assert_eq!(orbit_cone_tangent_dim(3, 1).value, 24);
        assert_eq!(dimension_count(3, 14), 24);
    }

    #[test]
    fn subspace_residue() {
        let span = unit_and_w_span(2);
        assert_eq!(span.dim(), 4);
        assert!(span.contains(&unit_tensor(2).to_dense()));
        let mut v = vec![Rational::zero(); 8];
        v[triple_index(2, (1, 1, 1))] = int(1);
        assert!(!span.contains(&v));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn action_is_additive(seed in any::<u64>(), a in -3i64..=3, b in 1i64..=3) {
            let n = 2;
            let t = random_tensor_on(&Support::full(n), seed);
            let mut l1 = LieTriple::zero(n);
            let mut l2 = LieTriple::zero(n);
            l1.x[(0, 1)] = int(a);
            l1.z[(1, 1)] = ratio(1, b);
            l2.y[(1, 0)] = int(b);
            l2.x[(0, 1)] = int(-1);
            let lhs = act(&l1.add(&l2), &t).unwrap();
            let rhs = act(&l1, &t).unwrap().add(&act(&l2, &t).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn stabilizer_scale_invariant(seed in any::<u64>(), c in 1i64..=5, d in 1i64..=5) {
            let t = random_tensor_on(&Support::new(2, [(1, 1, 1), (1, 2, 2), (2, 1, 2)]).unwrap(), seed);
            prop_assert_eq!(stabilizer_dim(&t), stabilizer_dim(&t.scale(&ratio(-c, d))));
        }
    }
}
