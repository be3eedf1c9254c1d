//! Dense matrices and subspaces over F_p, plus the small amount of
//! univariate polynomial arithmetic needed for eigenvalue hunting.
//!
//! Row reduction is plain Gauss-Jordan; every routine that returns a basis
//! returns it in a canonical form so results are comparable across runs and
//! parallel schedules.

use crate::fp::PrimeField;
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let data = entries.iter().map(|&v| field.reduce_i64(v)).collect();
        Matrix { field, rows, cols, data }
    }

    pub fn random(field: PrimeField, rows: usize, cols: usize, rng: &mut SplitMix64) -> Self {
        let data = (0..rows * cols).map(|_| rng.below(field.p())).collect();
        Matrix { field, rows, cols, data }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(v < self.field.p());
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        assert_eq!(self.field, other.field);
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: u64) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = 0;
                for c in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(r, c), v[c]));
                }
                acc
            })
            .collect()
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    let (a, b) = (self.get(row, c), self.get(pr, c));
                    self.set(row, c, b);
                    self.set(pr, c, a);
                }
            }
            let inv = f.inv(self.get(row, col));
            for c in 0..self.cols {
                self.set(row, c, f.mul(self.get(row, c), inv));
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) != 0 {
                    let factor = self.get(r, col);
                    for c in 0..self.cols {
                        let v = f.sub(self.get(r, c), f.mul(factor, self.get(row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Canonical basis of `{ v : A v = 0 }`, one kernel vector per column.
    pub fn kernel_basis(&self) -> Matrix {
        let mut m = self.clone();
        let pivots = m.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (prow, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(m.get(prow, fc)));
            }
        }
        out
    }

    /// Solves `A X = B`; `None` when inconsistent.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let mut aug = self.hstack(b);
        let pivots = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (prow, &pc) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(pc, c, aug.get(prow, self.cols + c));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        let inv = self.solve(&id)?;
        if self.mul(&inv) == id {
            Some(inv)
        } else {
            None
        }
    }

    /// Random matrix of rank exactly `r`, by a product of full-rank factors.
    pub fn random_of_rank(
        field: PrimeField,
        rows: usize,
        cols: usize,
        r: usize,
        rng: &mut SplitMix64,
        retries: usize,
    ) -> Option<Matrix> {
        assert!(r <= rows.min(cols));
        if r == 0 {
            return Some(Matrix::zeros(field, rows, cols));
        }
        for _ in 0..retries {
            let a = Matrix::random(field, rows, r, rng);
            let b = Matrix::random(field, r, cols, rng);
            if a.rank() == r && b.rank() == r {
                let m = a.mul(&b);
                if m.rank() == r {
                    return Some(m);
                }
            }
        }
        None
    }

    /// Characteristic polynomial det(xI - A), little-endian coefficients.
    pub fn char_poly(&self) -> Poly {
        assert_eq!(self.rows, self.cols);
        let f = self.field;
        let n = self.rows;
        if n == 0 {
            return Poly::new(f, vec![1]);
        }
        // Reduce to upper Hessenberg form by similarity, then expand
        // det(xI - H) along last columns.
        let mut h = self.clone();
        for col in 0..n.saturating_sub(2) {
            let Some(pivot) = ((col + 1)..n).find(|&r| h.get(r, col) != 0) else {
                continue;
            };
            if pivot != col + 1 {
                for c in 0..n {
                    let (a, b) = (h.get(col + 1, c), h.get(pivot, c));
                    h.set(col + 1, c, b);
                    h.set(pivot, c, a);
                }
                for r in 0..n {
                    let (a, b) = (h.get(r, col + 1), h.get(r, pivot));
                    h.set(r, col + 1, b);
                    h.set(r, pivot, a);
                }
            }
            let inv = f.inv(h.get(col + 1, col));
            for r in (col + 2)..n {
                let factor = f.mul(h.get(r, col), inv);
                if factor == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.get(r, c), f.mul(factor, h.get(col + 1, c)));
                    h.set(r, c, v);
                }
                for rr in 0..n {
                    let v = f.add(h.get(rr, col + 1), f.mul(factor, h.get(rr, r)));
                    h.set(rr, col + 1, v);
                }
            }
        }
        // p_k(x) = (x - h[k-1][k-1]) p_{k-1}(x)
        //          - sum_i h[i-1][k-1] (prod_{j=i..k-1} h[j][j-1]) p_{i-1}(x)
        let mut ps: Vec<Poly> = vec![Poly::new(f, vec![1])];
        for k in 1..=n {
            let x_minus = Poly::new(f, vec![f.neg(h.get(k - 1, k - 1)), 1]);
            let mut pk = ps[k - 1].mul(&x_minus);
            let mut subdiag = 1u64;
            for i in (1..k).rev() {
                subdiag = f.mul(subdiag, h.get(i, i - 1));
                if subdiag == 0 {
                    break;
                }
                let coef = f.mul(h.get(i - 1, k - 1), subdiag);
                pk = pk.sub(&ps[i - 1].scale(coef));
            }
            ps.push(pk);
        }
        ps.pop().unwrap()
    }
}

/// Univariate polynomial over F_p, little-endian, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn x(field: PrimeField) -> Self {
        Poly::new(field, vec![0, 1])
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = self.field;
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::new(f, vec![]);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            out[i] = f.sub(a, b);
        }
        Poly::new(f, out)
    }

    pub fn scale(&self, s: u64) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn rem(&self, modulus: &Poly) -> Poly {
        let f = self.field;
        let dm = modulus.degree().expect("zero modulus");
        let lead_inv = f.inv(modulus.coeffs[dm]);
        let mut rem = self.coeffs.clone();
        while rem.len() > dm {
            let k = rem.len() - 1;
            let factor = f.mul(rem[k], lead_inv);
            if factor != 0 {
                for i in 0..=dm {
                    let idx = k - dm + i;
                    rem[idx] = f.sub(rem[idx], f.mul(factor, modulus.coeffs[i]));
                }
            }
            rem.pop();
        }
        Poly::new(f, rem)
    }

    pub fn monic(&self) -> Poly {
        match self.degree() {
            None => self.clone(),
            Some(d) => self.scale(self.field.inv(self.coeffs[d])),
        }
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while b.degree().is_some() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `base^exp mod modulus` by square and multiply.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Poly) -> Poly {
        let f = self.field;
        let mut acc = Poly::new(f, vec![1]).rem(modulus);
        let mut base = self.rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, (i as u64) % f.p()))
            .collect();
        Poly::new(f, coeffs)
    }

    /// Quotient of exact or inexact division (the remainder is discarded).
    pub fn div(&self, modulus: &Poly) -> Poly {
        let f = self.field;
        let dm = modulus.degree().expect("zero divisor");
        let lead_inv = f.inv(modulus.coeffs[dm]);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(dm)];
        while rem.len() > dm {
            let k = rem.len() - 1;
            let factor = f.mul(rem[k], lead_inv);
            if factor != 0 {
                quot[k - dm] = factor;
                for i in 0..=dm {
                    let idx = k - dm + i;
                    rem[idx] = f.sub(rem[idx], f.mul(factor, modulus.coeffs[i]));
                }
            }
            rem.pop();
        }
        Poly::new(f, quot)
    }

    /// Squarefree part: self / gcd(self, self').
    pub fn squarefree_part(&self) -> Poly {
        match self.degree() {
            None | Some(0) => self.clone(),
            Some(_) => {
                let g = self.gcd(&self.derivative());
                match g.degree() {
                    None | Some(0) => self.monic(),
                    Some(_) => self.div(&g).monic(),
                }
            }
        }
    }

    /// Largest degree of an irreducible factor, by distinct-degree
    /// factorization of the squarefree part.
    pub fn max_irreducible_factor_degree(&self) -> usize {
        let f = self.field;
        let p = f.p();
        let mut u = self.squarefree_part();
        if u.degree().is_none_or(|d| d == 0) {
            return 0;
        }
        let mut best = 0usize;
        let mut d = 0usize;
        let mut xq = Poly::x(f).rem(&u);
        loop {
            let deg_u = match u.degree() {
                None | Some(0) => break,
                Some(x) => x,
            };
            d += 1;
            // all factors of degree < d are gone, so a short remainder is
            // a single irreducible factor
            if 2 * d > deg_u {
                best = best.max(deg_u);
                break;
            }
            xq = xq.pow_mod(p, &u);
            let g = xq.sub(&Poly::x(f).rem(&u)).gcd(&u);
            if let Some(gd) = g.degree() {
                if gd > 0 {
                    best = best.max(d);
                    u = u.div(&g);
                    if u.degree().is_none_or(|x| x == 0) {
                        break;
                    }
                    xq = xq.rem(&u);
                }
            }
        }
        best
    }

    /// Some root of the polynomial in F_p, if one exists.
    ///
    /// Splits off the product of linear factors with gcd(self, x^p - x) and
    /// then isolates a single root (Cantor-Zassenhaus style for odd p).
    pub fn any_root(&self, rng: &mut SplitMix64) -> Option<u64> {
        let f = self.field;
        let p = f.p();
        self.degree()?;
        if p <= 11 {
            return (0..p).find(|&x| self.eval(x) == 0);
        }
        let xp = Poly::x(f).pow_mod(p, self);
        let lin = xp.sub(&Poly::x(f).rem(self)).gcd(self);
        let mut g = lin;
        loop {
            match g.degree() {
                None | Some(0) => return None,
                Some(1) => {
                    let root = f.mul(f.neg(g.coeffs[0]), f.inv(g.coeffs[1]));
                    return Some(root);
                }
                Some(_) => {
                    // random gcd((x+t)^((p-1)/2) - 1, g) splits g
                    let t = rng.below(p);
                    let shifted = Poly::new(f, vec![t, 1]);
                    let pw = shifted.pow_mod((p - 1) / 2, &g);
                    let h = pw.sub(&Poly::new(f, vec![1])).gcd(&g);
                    match h.degree() {
                        Some(d) if d > 0 && d < g.degree().unwrap() => g = h,
                        _ => continue,
                    }
                }
            }
        }
    }
}

/// Subspace of F_p^n with a canonical (column-echelon) basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(field, ambient, 0) }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(field, ambient) }
    }

    /// Span of the columns of `m`, canonicalized.
    pub fn from_columns(m: &Matrix) -> Self {
        let mut t = m.transpose();
        let pivots = t.rref();
        let k = pivots.len();
        let mut basis = Matrix::zeros(m.field(), m.rows(), k);
        for r in 0..k {
            for c in 0..m.rows() {
                basis.set(c, r, t.get(r, c));
            }
        }
        Subspace { ambient: m.rows(), basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        let f = self.basis.field();
        let mut rhs = Matrix::zeros(f, self.ambient, 1);
        for (i, &x) in v.iter().enumerate() {
            rhs.set(i, 0, x);
        }
        self.basis.solve(&rhs).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient);
        self.basis.solve(other.basis()).is_some()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_columns(&self.basis.hstack(other.basis()))
    }

    /// Rows holding the echelon pivots of the basis.
    pub fn pivot_rows(&self) -> Vec<usize> {
        let mut t = self.basis.transpose();
        t.rref()
    }

    /// Standard basis vectors completing this subspace to the full space.
    pub fn complement(&self) -> Matrix {
        let f = self.basis.field();
        let pivots = self.pivot_rows();
        let others: Vec<usize> = (0..self.ambient).filter(|r| !pivots.contains(r)).collect();
        let mut m = Matrix::zeros(f, self.ambient, others.len());
        for (c, &r) in others.iter().enumerate() {
            m.set(r, c, 1);
        }
        m
    }
}
