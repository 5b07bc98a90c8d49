//! Small polynomial helpers: univariate polynomials over `Q(ζ_m)` (minimal
//! polynomials, squarefree tests) and integer polynomials (Poincaré
//! polynomials).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::CycNum;
use crate::matrix::{solve_in_span, Matrix};

/// Polynomial over `Q(ζ_m)`, coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct CycPoly {
    order: u32,
    coeffs: Vec<CycNum>,
}

impl CycPoly {
    pub fn new(order: u32, mut coeffs: Vec<CycNum>) -> Self {
        while coeffs.last().is_some_and(CycNum::is_zero) {
            coeffs.pop();
        }
        CycPoly { order, coeffs }
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> CycPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &CycNum::from_int(self.order, k as i64))
            .collect();
        CycPoly::new(self.order, coeffs)
    }

    fn rem(&self, divisor: &CycPoly) -> CycPoly {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd]
            .inv()
            .expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let f = &r[top] * &lead_inv;
            if !f.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    r[top - dd + j] = &r[top - dd + j] - &(&f * d);
                }
            }
            r.pop();
            while r.last().is_some_and(CycNum::is_zero) {
                r.pop();
            }
        }
        CycPoly::new(self.order, r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &CycPoly) -> CycPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while b.degree().is_some() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.degree() {
            None => a,
            Some(d) => {
                let inv = a.coeffs[d].inv().expect("nonzero leading coefficient");
                CycPoly::new(self.order, a.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

/// Minimal polynomial of a square matrix, from the first linear dependency
/// among `I, M, M², …`.
pub fn minimal_polynomial(m: &Matrix) -> CycPoly {
    let order = m.order();
    let flat = |x: &Matrix| -> Vec<CycNum> { x.rows().into_iter().flatten().collect() };
    let mut powers = vec![flat(&Matrix::identity(m.dim(), order))];
    let mut current = m.clone();
    loop {
        let v = flat(&current);
        if let Some(c) = solve_in_span(&powers, &v, order) {
            let mut coeffs: Vec<CycNum> = c.into_iter().map(|x| -x).collect();
            coeffs.push(CycNum::one(order));
            return CycPoly::new(order, coeffs);
        }
        powers.push(v);
        current = current.mul(m);
    }
}

/// Polynomial with integer coefficients, low to high.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPoly(pub Vec<i64>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn one_plus_t_pow(n: usize) -> Self {
        (0..n).fold(IntPoly(vec![1]), |acc, _| acc.mul(&IntPoly(vec![1, 1])))
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Synthetic division by `1 + t`; `None` if the remainder is nonzero.
    pub fn div_one_plus_t(&self) -> Option<IntPoly> {
        // p(t) = (1 + t) q(t); solve for q from the top coefficient down
        let n = self.0.len();
        if n < 2 {
            return None;
        }
        let mut q = vec![0i64; n - 1];
        let mut carry = 0i64;
        for k in (0..n - 1).rev() {
            q[k] = self.0[k + 1] - carry;
            carry = q[k];
        }
        (self.0[0] == q[0]).then(|| IntPoly::new(q))
    }

    /// Largest `k` with `(1 + t)^k` dividing the polynomial.
    pub fn one_plus_t_multiplicity(&self) -> usize {
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.div_one_plus_t() {
            p = q;
            k += 1;
        }
        k
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{}t", c),
                _ => format!("{}t^{}", c, k),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
