//! Square matrices and row-reduction over a cyclotomic field.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycNum, Rational};
use crate::error::{Error, Result};

pub type Vector = Vec<CycNum>;

/// Square matrix over `Q(ζ_m)`, row-major. All entries share one order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Matrix {
    dim: usize,
    order: u32,
    entries: Vec<CycNum>,
}

impl Matrix {
    pub fn identity(dim: usize, order: u32) -> Self {
        let mut entries = vec![CycNum::zero(order); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = CycNum::one(order);
        }
        Matrix {
            dim,
            order,
            entries,
        }
    }

    pub fn zero(dim: usize, order: u32) -> Self {
        Matrix {
            dim,
            order,
            entries: vec![CycNum::zero(order); dim * dim],
        }
    }

    /// Builds from rows; entries are lifted to the lcm of their orders
    /// (and of `min_order`).
    pub fn from_rows(rows: Vec<Vec<CycNum>>, min_order: u32) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension(
                "matrix must be square and non-empty".into(),
            ));
        }
        let order = rows
            .iter()
            .flatten()
            .fold(min_order.max(1), |acc, x| crate::cyclo::lcm(acc, x.order()));
        let entries = rows.into_iter().flatten().map(|x| x.lift(order)).collect();
        Ok(Matrix {
            dim,
            order,
            entries,
        })
    }

    pub fn diagonal(diag: Vec<CycNum>, min_order: u32) -> Self {
        let n = diag.len();
        let order = diag
            .iter()
            .fold(min_order.max(1), |acc, x| crate::cyclo::lcm(acc, x.order()));
        let mut m = Matrix::zero(n, order);
        for (i, x) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = x.lift(order);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.entries[i * self.dim + j] = v.lift(self.order);
    }

    pub fn rows(&self) -> Vec<Vector> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.dim).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn lift(&self, order: u32) -> Matrix {
        Matrix {
            dim: self.dim,
            order,
            entries: self.entries.iter().map(|x| x.lift(order)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        if self.order != other.order {
            let l = crate::cyclo::lcm(self.order, other.order);
            return self.lift(l).mul(&other.lift(l));
        }
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CycNum::zero(self.order);
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc + a * b;
                }
                entries.push(acc);
            }
        }
        Matrix {
            dim: n,
            order: self.order,
            entries,
        }
    }

    /// `M·v` for a column vector.
    pub fn apply(&self, v: &[CycNum]) -> Vector {
        (0..self.dim)
            .map(|i| {
                (0..self.dim).fold(CycNum::zero(self.order), |acc, k| {
                    let a = self.get(i, k);
                    if a.is_zero() || v[k].is_zero() {
                        acc
                    } else {
                        acc + a * &v[k]
                    }
                })
            })
            .collect()
    }

    /// `v·M` for a row vector (covector).
    pub fn apply_left(&self, v: &[CycNum]) -> Vector {
        (0..self.dim)
            .map(|j| {
                (0..self.dim).fold(CycNum::zero(self.order), |acc, k| {
                    let a = self.get(k, j);
                    if a.is_zero() || v[k].is_zero() {
                        acc
                    } else {
                        acc + &v[k] * a
                    }
                })
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let l = crate::cyclo::lcm(self.order, other.order);
        let (a, b) = (self.lift(l), other.lift(l));
        Matrix {
            dim: self.dim,
            order: l,
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let l = crate::cyclo::lcm(self.order, other.order);
        let (a, b) = (self.lift(l), other.lift(l));
        Matrix {
            dim: self.dim,
            order: l,
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> Matrix {
        Matrix {
            dim: self.dim,
            order: crate::cyclo::lcm(self.order, c.order()),
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Matrix {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).conj());
            }
        }
        Matrix {
            dim: n,
            order: self.order,
            entries,
        }
    }

    pub fn trace(&self) -> CycNum {
        (0..self.dim).fold(CycNum::zero(self.order), |acc, i| acc + self.get(i, i))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    pub fn det(&self) -> CycNum {
        let mut rows = self.rows();
        let n = self.dim;
        let mut det = CycNum::one(self.order);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return CycNum::zero(self.order);
            };
            if p != col {
                rows.swap(p, col);
                det = -det;
            }
            let pivot = rows[col][col].clone();
            det = det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let f = &rows[r][col] * &inv;
                let (top, bottom) = rows.split_at_mut(r);
                for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.dim;
        let id = Matrix::identity(n, self.order);
        let mut aug: Vec<Vector> = self
            .rows()
            .into_iter()
            .zip(id.rows())
            .map(|(mut r, e)| {
                r.extend(e);
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug, n);
        if pivots.len() < n {
            return None;
        }
        let entries = aug.into_iter().flat_map(|r| r[n..].to_vec()).collect();
        Some(Matrix {
            dim: n,
            order: self.order,
            entries,
        })
    }

    pub fn rank(&self) -> usize {
        rank(self.rows())
    }

    pub fn embed(&self) -> Vec<Vec<Complex64>> {
        self.entries
            .chunks(self.dim)
            .map(|r| r.iter().map(CycNum::embed).collect())
            .collect()
    }

    /// Exact hash key: concatenated canonical coefficients.
    pub fn key(&self) -> Vec<Rational> {
        self.entries
            .iter()
            .flat_map(|x| x.coeffs().iter().cloned())
            .collect()
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.entries == other.entries
    }
}

impl Eq for Matrix {}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

pub fn vector_key(v: &[CycNum]) -> Vec<Rational> {
    v.iter().flat_map(|x| x.coeffs().iter().cloned()).collect()
}

/// Reduced row echelon form on the first `ncols` columns; returns pivot columns.
pub fn rref_in_place(rows: &mut [Vector], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(mut rows: Vec<Vector>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    rref_in_place(&mut rows, ncols).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `ncols` columns.
pub fn nullspace(rows: &[Vector], ncols: usize, order: u32) -> Vec<Vector> {
    let mut a = rows.to_vec();
    let pivots = rref_in_place(&mut a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![CycNum::zero(order); ncols];
            x[f] = CycNum::one(order);
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -&a[r][f];
            }
            x
        })
        .collect()
}

/// Coordinates of `target` in the span of `basis` (vectors of equal length).
pub fn solve_in_span(basis: &[Vector], target: &[CycNum], order: u32) -> Option<Vector> {
    let n = target.len();
    let k = basis.len();
    // rows = coordinates, columns = basis vectors + target
    let mut rows: Vec<Vector> = (0..n)
        .map(|i| {
            let mut r: Vector = basis.iter().map(|b| b[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let pivots = rref_in_place(&mut rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![CycNum::zero(order); k];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = rows[r][k].clone();
    }
    Some(x)
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub fn normalize_first_nonzero(v: &[CycNum]) -> Option<Vector> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv().ok()?;
    Some(v.iter().map(|x| x * &inv).collect())
}

/// `true` iff `u` and `v` are proportional (exact 2×2 minors).
pub fn proportional(u: &[CycNum], v: &[CycNum]) -> bool {
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if &u[i] * &v[j] != &u[j] * &v[i] {
                return false;
            }
        }
    }
    true
}

/// Hermitian product `x̄ᵀ F y`.
pub fn hermitian(form: &Matrix, x: &[CycNum], y: &[CycNum]) -> CycNum {
    let fy = form.apply(y);
    x.iter()
        .zip(&fy)
        .fold(CycNum::zero(form.order()), |acc, (a, b)| {
            if a.is_zero() || b.is_zero() {
                acc
            } else {
                acc + a.conj() * b
            }
        })
}

pub fn dot(a: &[CycNum], b: &[CycNum]) -> CycNum {
    let order = a.first().map_or(1, CycNum::order);
    a.iter().zip(b).fold(CycNum::zero(order), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x * y
        }
    })
}
