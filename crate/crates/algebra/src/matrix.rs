use crate::{poly_gcd, AlgebraError, GaussRat, Poly, RatFn, SymbolTable};

/// Dense matrix of rational functions, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RFMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<RatFn>,
}

/// Reduced row echelon form together with the row operations that produced it:
/// `transform * original = reduced`.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: RFMatrix,
    pub transform: RFMatrix,
    /// Pivot column of each nonzero row of `reduced`, in row order.
    pub pivots: Vec<usize>,
}

impl RFMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        RFMatrix { rows, cols, nvars, data: vec![RatFn::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m.set(i, i, RatFn::one(nvars));
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<RatFn>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(AlgebraError::Dimension(format!("ragged rows: {} vs {}", row.len(), c)));
            }
            data.extend(row);
        }
        Ok(RFMatrix { rows: r, cols: c, nvars, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFn {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFn) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RatFn] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFn::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &RFMatrix) -> Result<RFMatrix, AlgebraError> {
        if self.cols != o.rows {
            return Err(AlgebraError::Dimension(format!("{}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zeros(self.rows, o.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[RatFn]) -> Result<Vec<RatFn>, AlgebraError> {
        if x.len() != self.cols {
            return Err(AlgebraError::Dimension(format!("vector of length {} for {} columns", x.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(RatFn::zero(self.nvars), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    pub fn sub(&self, o: &RFMatrix) -> Result<RFMatrix, AlgebraError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(AlgebraError::Dimension("subtraction of different shapes".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        Ok(RFMatrix { rows: self.rows, cols: self.cols, nvars: self.nvars, data })
    }

    pub fn scale(&self, c: &RatFn) -> RFMatrix {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        RFMatrix { rows: self.rows, cols: self.cols, nvars: self.nvars, data }
    }

    /// Submatrix keeping the listed rows and columns in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RFMatrix {
        let mut out = Self::zeros(rows.len(), cols.len(), self.nvars);
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Horizontal concatenation `[self | o]`.
    pub fn hstack(&self, o: &RFMatrix) -> Result<RFMatrix, AlgebraError> {
        if self.rows != o.rows {
            return Err(AlgebraError::Dimension(format!("hstack of {} and {} rows", self.rows, o.rows)));
        }
        let mut out = Self::zeros(self.rows, self.cols + o.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..o.cols {
                out.set(i, self.cols + j, o.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn substitute(&self, values: &[Option<GaussRat>]) -> Result<RFMatrix, AlgebraError> {
        let data = self.data.iter().map(|a| a.substitute(values)).collect::<Result<Vec<_>, _>>()?;
        Ok(RFMatrix { rows: self.rows, cols: self.cols, nvars: self.nvars, data })
    }

    /// Inverse of a square matrix; `None` when singular.
    pub fn inverse(&self) -> Option<RFMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let r = self.rref();
        if r.pivots.len() < self.rows {
            return None;
        }
        Some(r.transform)
    }

    /// Gauss-Jordan elimination over the rational-function field, recording the
    /// row operations. Pivots are chosen left to right; within a column the
    /// nonzero entry with the smallest representation is used.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut t = RFMatrix::identity(self.rows, self.nvars);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pick = (r..self.rows)
                .filter(|&i| !m.get(i, c).is_zero())
                .min_by_key(|&i| weight(m.get(i, c)));
            let Some(p) = pick else { continue };
            m.swap_rows(r, p);
            t.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            if !inv.is_one() {
                scale_row(&mut m, r, &inv);
                scale_row(&mut t, r, &inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                axpy_row(&mut m, i, r, &f);
                axpy_row(&mut t, i, r, &f);
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, transform: t, pivots }
    }

    pub fn fmt_with(&self, table: &SymbolTable) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|a| a.fmt_with(table)).collect();
            out.push('[');
            out.push_str(&cells.join(", "));
            out.push_str("]\n");
        }
        out
    }
}

fn weight(a: &RatFn) -> usize {
    a.num().len() + a.den().len()
}

fn scale_row(m: &mut RFMatrix, i: usize, f: &RatFn) {
    for j in 0..m.cols {
        let v = m.get(i, j);
        if !v.is_zero() {
            let nv = v.mul(f);
            m.set(i, j, nv);
        }
    }
}

/// `row_i -= f * row_r`
fn axpy_row(m: &mut RFMatrix, i: usize, r: usize, f: &RatFn) {
    for j in 0..m.cols {
        let b = m.get(r, j);
        if b.is_zero() {
            continue;
        }
        let nv = m.get(i, j).sub(&f.mul(b));
        m.set(i, j, nv);
    }
}

/// Rank over the field of fractions, by fraction-free (Bareiss) elimination on the
/// matrix with row denominators cleared.
pub fn rf_rank(m: &RFMatrix) -> usize {
    let n = m.nvars;
    let mut a: Vec<Vec<Poly>> = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let mut l = Poly::one(n);
            for x in row {
                if !x.den().is_one() {
                    let g = poly_gcd(&l, x.den());
                    l = l.mul(&x.den().div_exact(&g).expect("gcd divides"));
                }
            }
            row.iter()
                .map(|x| {
                    if x.is_zero() {
                        Poly::zero(n)
                    } else {
                        x.num().mul(&l.div_exact(x.den()).expect("lcm is a multiple"))
                    }
                })
                .collect()
        })
        .collect();
    let rows = m.rows;
    let cols = m.cols;
    let mut prev = Poly::one(n);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].len()) else {
            continue;
        };
        a.swap(rank, p);
        let piv = a[rank][c].clone();
        for i in rank + 1..rows {
            let (top, rest) = a.split_at_mut(i);
            let (pivot_row, row) = (&top[rank], &mut rest[0]);
            let lead = row[c].clone();
            for (x, y) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                let v = piv.mul(x).sub(&lead.mul(y));
                *x = if prev.is_one() { v } else { v.div_exact(&prev).expect("Bareiss division is exact") };
            }
            row[c] = Poly::zero(n);
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// One solution of `m x = rhs` with free variables set to zero, or `None` when the
/// system is inconsistent.
pub fn rf_solve(m: &RFMatrix, rhs: &[RatFn]) -> Result<Option<Vec<RatFn>>, AlgebraError> {
    if rhs.len() != m.rows {
        return Err(AlgebraError::Dimension(format!("rhs of length {} for {} rows", rhs.len(), m.rows)));
    }
    let col = RFMatrix { rows: m.rows, cols: 1, nvars: m.nvars, data: rhs.to_vec() };
    let aug = m.hstack(&col)?;
    let r = aug.rref();
    if r.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![RatFn::zero(m.nvars); m.cols];
    for (row, &pc) in r.pivots.iter().enumerate() {
        x[pc] = r.reduced.get(row, m.cols).clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: i64) -> RatFn {
        RatFn::from_int(0, k)
    }

    #[test]
    fn identity_rank_and_solve() {
        let id = RFMatrix::identity(3, 0);
        assert_eq!(rf_rank(&id), 3);
        let rhs = vec![c(1), c(2), c(3)];
        assert_eq!(rf_solve(&id, &rhs).unwrap(), Some(rhs));
    }

    #[test]
    fn singular_inconsistent() {
        let m = RFMatrix::from_rows(0, vec![vec![c(1), c(2)], vec![c(2), c(4)]]).unwrap();
        assert_eq!(rf_rank(&m), 1);
        assert_eq!(rf_solve(&m, &[c(1), c(3)]).unwrap(), None);
        assert!(rf_solve(&m, &[c(1), c(2)]).unwrap().is_some());
    }

    #[test]
    fn symbolic_rank_drop() {
        let x = RatFn::var(1, 0);
        let m = RFMatrix::from_rows(1, vec![vec![x.clone(), x.mul(&x)], vec![RatFn::one(1), x.clone()]]).unwrap();
        assert_eq!(rf_rank(&m), 1);
        let m2 = RFMatrix::from_rows(1, vec![vec![x.clone(), RatFn::one(1)], vec![RatFn::one(1), x]]).unwrap();
        assert_eq!(rf_rank(&m2), 2);
        assert!(m2.inverse().is_some());
    }
}
