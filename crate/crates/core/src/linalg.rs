//! Exact linear algebra over the rationals.
//!
//! Two elimination routes are provided. [`Echelon`] keeps an integer,
//! fully reduced row echelon form built one row at a time (fraction-free,
//! with row contents divided out), which is what kernels and subspace
//! membership use. [`bareiss_rank`] is a dense one-shot Bareiss elimination
//! used for plain rank counts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Clears denominators of a rational row, returning an integer multiple.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v /= &g;
    }
}

/// `target <- target * (p / g) - source * (target[col] / g)` with
/// `p = source[col]`, `g = gcd(p, target[col])`; clears `target[col]`.
fn eliminate(target: &mut [BigInt], source: &[BigInt], col: usize) {
    if target[col].is_zero() {
        return;
    }
    let g = source[col].gcd(&target[col]);
    let a = &source[col] / &g;
    let b = &target[col] / &g;
    for (t, s) in target.iter_mut().zip(source) {
        if s.is_zero() {
            if !t.is_zero() {
                *t *= &a;
            }
        } else {
            *t = &*t * &a - s * &b;
        }
    }
    make_primitive(target);
}

/// Incrementally built reduced row echelon form with primitive integer rows.
///
/// Every stored row has a positive pivot and zeros in the pivot columns of
/// all other stored rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a [Rational]>) -> Self {
        let mut e = Echelon::new(cols);
        for r in rows {
            e.insert_rational(r);
        }
        e
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Reduces `row` against the stored rows. The result is a nonzero integer
    /// multiple of the true residue and vanishes on every pivot column.
    pub fn reduce(&self, mut row: Vec<BigInt>) -> Vec<BigInt> {
        assert_eq!(row.len(), self.cols, "row length");
        make_primitive(&mut row);
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            eliminate(&mut row, r, p);
        }
        row
    }

    pub fn contains(&self, row: &[Rational]) -> bool {
        self.reduce(integer_row(row)).iter().all(Zero::is_zero)
    }

    pub fn insert_rational(&mut self, row: &[Rational]) -> bool {
        self.insert(integer_row(row))
    }

    /// Adds a row; returns whether it was independent of the stored ones.
    pub fn insert(&mut self, row: Vec<BigInt>) -> bool {
        let mut row = self.reduce(row);
        let Some(pivot) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        if row[pivot].is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
        // scaling factors in `eliminate` are positive, so stored pivots stay positive
        for r in self.rows.iter_mut() {
            eliminate(r, &row, pivot);
        }
        self.rows.push(row);
        self.pivots.push(pivot);
        true
    }

    /// Basis of `{v : r · v = 0 for every stored row r}`, one vector per
    /// free column, with a 1 in that column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![None; self.cols];
        for (idx, &p) in self.pivots.iter().enumerate() {
            is_pivot[p] = Some(idx);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                if !r[free].is_zero() {
                    v[p] = -Rational::new(r[free].clone(), r[p].clone());
                }
            }
            out.push(v);
        }
        out
    }

    /// The stored rows scaled so each pivot is 1 (canonical RREF).
    pub fn rref(&self) -> Vec<Vec<Rational>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        order
            .into_iter()
            .map(|i| {
                let p = &self.rows[i][self.pivots[i]];
                self.rows[i].iter().map(|v| Rational::new(v.clone(), p.clone())).collect()
            })
            .collect()
    }
}

/// Rank by dense fraction-free Bareiss elimination.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let num = &row[j] * &pivot_row[c] - &factor * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                row[j] = num / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

pub fn rank_rational(rows: &[Vec<Rational>]) -> usize {
    bareiss_rank(rows.iter().map(|r| integer_row(r)).collect())
}

/// Dense square-or-rectangular matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<Rational> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Matrix { rows: r, cols: c, data }
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        rank_rational(&self.row_vecs())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a[(i, c)].is_zero())?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let piv = a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] = &a[(c, j)] / &piv;
                inv[(c, j)] = &inv[(c, j)] / &piv;
            }
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..n {
                    let av = &a[(c, j)] * &f;
                    a[(i, j)] -= av;
                    let iv = &inv[(c, j)] * &f;
                    inv[(i, j)] -= iv;
                }
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial `det(tI - A)` by Faddeev-LeVerrier,
    /// coefficients from the constant term upward.
    pub fn charpoly(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "charpoly of non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            m = self.mul(&m).add(&Matrix::identity(n).scale(&coeffs[n - k + 1]));
            let am = self.mul(&m);
            coeffs[n - k] = -am.trace() / Rational::from_integer(BigInt::from(k));
        }
        Poly::new(coeffs)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Univariate polynomial over the rationals, coefficients low to high, with
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => Poly::new(self.coeffs.iter().map(|c| c / lead).collect()),
        }
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        let lead = d.coeffs[dd].clone();
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let f = &rem[top] / &lead;
            let shift = top - dd;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= c * &f;
            }
            quo[shift] = f;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quo), Poly::new(rem))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, the product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows;
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&Matrix::identity(n).scale(c));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn echelon_rank_and_kernel() {
        let rows = ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let e = Echelon::from_rows(3, rows.iter().map(Vec::as_slice));
        assert_eq!(e.rank(), 2);
        let ker = e.kernel();
        assert_eq!(ker.len(), 1);
        for r in &rows {
            let dot: Rational = r.iter().zip(&ker[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert!(e.contains(&ints(&[&[3, 2, 5]])[0]));
        assert!(!e.contains(&ints(&[&[0, 0, 1]])[0]));
        assert_eq!(rank_rational(&rows), 2);
    }

    #[test]
    fn bareiss_with_skipped_columns() {
        let rows = ints(&[&[0, 1, 1, 0], &[0, 2, 2, 1], &[0, 0, 0, 3], &[0, 1, 1, 1]]);
        assert_eq!(rank_rational(&rows), 2);
        assert_eq!(rank_rational(&[]), 0);
    }

    #[test]
    fn inverse_and_charpoly() {
        let m = Matrix::from_rows(ints(&[&[2, 1], &[1, 1]]));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_rows(ints(&[&[1, 2], &[2, 4]])).inverse().is_none());
        // t^2 - 3t + 1
        assert_eq!(m.charpoly().coeffs(), &[int(1), int(-3), int(1)]);
        assert!(m.charpoly().eval_matrix(&m).is_zero());
    }

    #[test]
    fn squarefree_detects_repeated_roots() {
        // (t-1)^2 (t+2)
        let p = Poly::new(vec![int(2), int(-3), int(0), int(1)]);
        let sf = p.squarefree_part();
        // (t-1)(t+2) = t^2 + t - 2
        assert_eq!(sf.coeffs(), &[int(-2), int(1), int(1)]);
        let nil = Matrix::from_rows(ints(&[&[0, 1], &[0, 0]]));
        let sf = nil.charpoly().squarefree_part();
        assert!(!sf.eval_matrix(&nil).is_zero());
    }

    fn small_matrix(r: usize, c: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
    }

    proptest! {
        #[test]
        fn two_rank_routes_agree(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            let rows: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
            let cols = rows[0].len();
            let e = Echelon::from_rows(cols, rows.iter().map(Vec::as_slice));
            prop_assert_eq!(e.rank(), rank_rational(&rows));
            prop_assert_eq!(e.rank() + e.kernel().len(), cols);
            for v in e.kernel() {
                for r in &rows {
                    let dot: Rational = r.iter().zip(&v).map(|(a, b)| a * b).sum();
                    prop_assert!(dot.is_zero());
                }
            }
        }

        #[test]
        fn cayley_hamilton(m in small_matrix(3, 3)) {
            let mat = Matrix::from_rows(m.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect());
            prop_assert!(mat.charpoly().eval_matrix(&mat).is_zero());
        }
    }
}
