//! The map `Φ: ℂ𝒜 → S²V*`, `v_H ↦ α_H²`: rank, surjectivity and
//! equivariance of a chosen scaling of the forms.

use std::collections::HashMap;

use serde::Serialize;

use crate::arrangement::{is_essential, signed_roots, Arrangement};
use crate::catalog::{BuiltGroup, CoxeterType};
use crate::cyclo::{lcm, CycNum, Rational};
use crate::error::{Error, Result};
use crate::matgroup::GroupModel;
use crate::matrix::{normalize_first_nonzero, rank, vector_key, Matrix, Vector};

/// Element of `S²V*` in the lexicographic monomial basis `x₁², x₁x₂, …, xₙ²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadForm {
    pub dim: usize,
    pub coeffs: Vec<CycNum>,
}

impl QuadForm {
    pub fn square(alpha: &[CycNum]) -> QuadForm {
        let n = alpha.len();
        let two = Rational::from_integer(2.into());
        let mut coeffs = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                let p = &alpha[i] * &alpha[j];
                coeffs.push(if i == j { p } else { p.scale(&two) });
            }
        }
        QuadForm { dim: n, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycNum::is_zero)
    }

    pub fn add(&self, other: &QuadForm) -> QuadForm {
        QuadForm {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Gram matrix `S` with `q(x) = xᵀ S x`.
    pub fn gram(&self, order: u32) -> Matrix {
        let half = Rational::new(1.into(), 2.into());
        let mut s = Matrix::zero(self.dim, order);
        let mut k = 0;
        for i in 0..self.dim {
            for j in i..self.dim {
                let c = self.coeffs[k].lift(lcm(order, self.coeffs[k].order()));
                if i == j {
                    s.set(i, i, c);
                } else {
                    let h = c.scale(&half);
                    s.set(i, j, h.clone());
                    s.set(j, i, h);
                }
                k += 1;
            }
        }
        s
    }
}

pub fn sym2_dim(n: usize) -> usize {
    n * (n + 1) / 2
}

#[derive(Clone, Debug)]
pub struct PhiMap {
    dim: usize,
    order: u32,
    forms: Vec<Vector>,
    /// `n(n+1)/2` rows, one column per hyperplane.
    matrix: Vec<Vector>,
}

impl PhiMap {
    pub fn from_forms(dim: usize, order: u32, forms: &[Vector]) -> PhiMap {
        let order = forms
            .iter()
            .flatten()
            .fold(order, |acc, x| lcm(acc, x.order()));
        let forms: Vec<Vector> = forms
            .iter()
            .map(|f| f.iter().map(|x| x.lift(order)).collect())
            .collect();
        let cols: Vec<QuadForm> = forms.iter().map(|f| QuadForm::square(f)).collect();
        let matrix = (0..sym2_dim(dim))
            .map(|r| cols.iter().map(|c| c.coeffs[r].clone()).collect())
            .collect();
        PhiMap {
            dim,
            order,
            forms,
            matrix,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn forms(&self) -> &[Vector] {
        &self.forms
    }

    pub fn matrix(&self) -> &[Vector] {
        &self.matrix
    }

    /// `(rows, columns)` of the matrix.
    pub fn shape(&self) -> (usize, usize) {
        (sym2_dim(self.dim), self.forms.len())
    }

    pub fn rank(&self) -> usize {
        if self.forms.is_empty() {
            0
        } else {
            rank(self.matrix.clone())
        }
    }

    pub fn column(&self, h: usize) -> QuadForm {
        QuadForm::square(&self.forms[h])
    }

    pub fn sum_of_squares(&self) -> QuadForm {
        let zero = QuadForm {
            dim: self.dim,
            coeffs: vec![CycNum::zero(self.order); sym2_dim(self.dim)],
        };
        (0..self.forms.len()).fold(zero, |acc, h| acc.add(&self.column(h)))
    }
}

/// `Φ` for the normalized forms of an essential arrangement.
pub fn build_phi(a: &Arrangement) -> Result<PhiMap> {
    if !is_essential(a) {
        return Err(Error::NotEssential);
    }
    Ok(PhiMap::from_forms(
        a.dim(),
        a.cyclotomic_order(),
        &a.forms(),
    ))
}

/// Exact rank and whether it equals `dim S²V*`.
pub fn is_surjective(p: &PhiMap) -> (bool, usize) {
    let r = p.rank();
    (r == sym2_dim(p.dim), r)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivarianceReport {
    /// Pairs `(element, hyperplane)` with `w·α_H² ≠ α_{w(H)}²`.
    pub violations: Vec<(usize, usize)>,
    pub sum_of_squares_zero: bool,
    /// When there are no violations and the sum is nonzero: the sum is a
    /// `W`-invariant quadratic form.
    pub sum_is_invariant: Option<bool>,
}

impl EquivarianceReport {
    pub fn is_equivariant(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares `(α_H ∘ w⁻¹)²` with `α_{w(H)}²` for every element `w`.
pub fn equivariance_defect(p: &PhiMap, g: &GroupModel) -> EquivarianceReport {
    let order = lcm(p.order, g.cyclotomic_order());
    let forms: Vec<Vector> = p
        .forms
        .iter()
        .map(|f| f.iter().map(|x| x.lift(order)).collect())
        .collect();
    let index: HashMap<Vec<Rational>, usize> = forms
        .iter()
        .enumerate()
        .filter_map(|(i, f)| normalize_first_nonzero(f).map(|n| (vector_key(&n), i)))
        .collect();
    let squares: Vec<QuadForm> = forms.iter().map(|f| QuadForm::square(f)).collect();
    let mut violations = Vec::new();
    for w in 0..g.len() {
        let winv = g.element(g.inverse(w)).lift(order);
        for (h, f) in forms.iter().enumerate() {
            let moved = winv.apply_left(f);
            let target = normalize_first_nonzero(&moved).and_then(|n| index.get(&vector_key(&n)));
            let ok = target.is_some_and(|&k| QuadForm::square(&moved) == squares[k]);
            if !ok {
                violations.push((w, h));
            }
        }
    }
    let sum = p.sum_of_squares();
    let sum_of_squares_zero = sum.is_zero();
    let sum_is_invariant = (violations.is_empty() && !sum_of_squares_zero).then(|| {
        let s = sum.gram(order);
        g.generators().iter().all(|w| {
            let w = w.lift(order);
            transpose(&w).mul(&s).mul(&w) == s
        })
    });
    EquivarianceReport {
        violations,
        sum_of_squares_zero,
        sum_is_invariant,
    }
}

fn transpose(m: &Matrix) -> Matrix {
    let mut t = Matrix::zero(m.dim(), m.order());
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            t.set(j, i, m.get(i, j).clone());
        }
    }
    t
}

/// `α_H = F(e_H, ·)`, the covector `ē_Hᵀ F`.
pub fn forms_from_roots(form: &Matrix, roots: &[Vector]) -> Vec<Vector> {
    roots
        .iter()
        .map(|e| {
            let conj: Vector = e.iter().map(|x| x.lift(form.order()).conj()).collect();
            form.apply_left(&conj)
        })
        .collect()
}

/// Forms `F(e_H, ·)` for roots propagated along orbits with `w·e_H = ±e_{w(H)}`.
pub fn coxeter_equivariant_forms(b: &BuiltGroup) -> Result<Vec<Vector>> {
    match b.coxeter {
        Some((CoxeterType::A | CoxeterType::B | CoxeterType::D, _)) => {}
        Some((CoxeterType::I2, m)) if [3, 4, 6].contains(&m) => {}
        Some((CoxeterType::I2, m)) => {
            return Err(Error::NotCoxeter(format!(
                "I2({}) root coordinates leave the rational root path",
                m
            )))
        }
        None => return Err(Error::NotCoxeter(b.name.clone())),
    }
    let roots = signed_roots(&b.group, &b.arrangement)?;
    Ok(forms_from_roots(b.arrangement.form(), &roots))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct G12Report {
    /// Every listed vector spans the root line of a distinct hyperplane.
    pub vectors_are_roots: bool,
    pub violations: usize,
    pub sum_of_squares_zero: bool,
    pub form_proportional: bool,
    /// Generators act on the listed vectors by `{0, ±1}` monomial matrices.
    pub monomial_action: bool,
    pub passed: bool,
}

/// Checks the listed G₁₂ vectors: as roots `e_H` with `α_H = F(e_H, ·)` the
/// map Φ is equivariant with `Σ α_H² = 0`, and the invariant form is a
/// multiple of the reference form.
pub fn g12_vector_check(b: &BuiltGroup) -> G12Report {
    let a = &b.arrangement;
    let g = &b.group;
    let vectors: Vec<Vector> = crate::catalog::g12_listed_vectors()
        .into_iter()
        .map(|(_, v)| v)
        .collect();
    let mut hit: Vec<Option<usize>> = vectors.iter().map(|v| a.hyperplane_of_root(v)).collect();
    let vectors_are_roots = hit.iter().all(Option::is_some) && {
        let mut seen: Vec<usize> = hit.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == a.len() && vectors.len() == a.len()
    };
    let form = a.form();
    let reference = crate::catalog::g12_reference_form();
    let ratio = reference
        .get(0, 0)
        .checked_div(form.get(0, 0))
        .expect("positive form has nonzero diagonal");
    let form_proportional = form.scale(&ratio) == reference;
    if !vectors_are_roots {
        return G12Report {
            vectors_are_roots,
            violations: 0,
            sum_of_squares_zero: false,
            form_proportional,
            monomial_action: false,
            passed: false,
        };
    }
    let forms = forms_from_roots(form, &vectors);
    let p = PhiMap::from_forms(g.dim(), g.cyclotomic_order(), &forms);
    let report = equivariance_defect(&p, g);
    let index: HashMap<usize, usize> = hit
        .iter_mut()
        .enumerate()
        .map(|(i, h)| (h.expect("checked"), i))
        .collect();
    let monomial_action = g.generators().iter().all(|w| {
        vectors.iter().all(|v| {
            let image = w.apply(v);
            let target = a.hyperplane_of_root(&image).map(|h| &vectors[index[&h]]);
            target.is_some_and(|t| {
                let neg: Vector = t.iter().map(|x| -x).collect();
                &image == t || image == neg
            })
        })
    });
    let passed = report.is_equivariant()
        && report.sum_of_squares_zero
        && form_proportional
        && monomial_action;
    G12Report {
        vectors_are_roots,
        violations: report.violations.len(),
        sum_of_squares_zero: report.sum_of_squares_zero,
        form_proportional,
        monomial_action,
        passed,
    }
}
