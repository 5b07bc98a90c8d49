#![allow(dead_code)]

use crg_core::catalog::{build, BuiltGroup, CoxeterType, GroupSpec};
use crg_core::matgroup::DEFAULT_ORDER_BOUND;
use crg_core::{CycNum, Matrix};

/// Groups small enough to sweep in every test run.
pub fn catalog() -> Vec<GroupSpec> {
    let mut specs = vec![
        GroupSpec::exceptional(4),
        GroupSpec::exceptional(12),
        GroupSpec::coxeter(CoxeterType::A, 1),
        GroupSpec::coxeter(CoxeterType::A, 2),
        GroupSpec::coxeter(CoxeterType::A, 3),
        GroupSpec::coxeter(CoxeterType::A, 4),
        GroupSpec::coxeter(CoxeterType::B, 3),
        GroupSpec::coxeter(CoxeterType::D, 4),
        GroupSpec::coxeter(CoxeterType::I2, 5),
    ];
    for (d, e, r) in [
        (2, 1, 1),
        (3, 1, 1),
        (2, 1, 2),
        (3, 1, 2),
        (4, 1, 2),
        (1, 4, 2),
        (2, 2, 2),
        (4, 2, 2),
        (6, 3, 2),
        (2, 1, 3),
        (3, 1, 3),
        (1, 2, 3),
        (2, 2, 3),
        (1, 3, 3),
    ] {
        specs.push(GroupSpec::imprimitive(d, e, r));
    }
    specs
}

pub fn built(spec: &GroupSpec) -> BuiltGroup {
    build(spec, DEFAULT_ORDER_BOUND).unwrap_or_else(|e| panic!("{}: {}", spec.name(), e))
}

pub fn catalog_built() -> Vec<BuiltGroup> {
    catalog().iter().map(built).collect()
}

pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let order = crg_core::cyclo::lcm(a.order(), b.order());
    let n = a.dim() + b.dim();
    let mut m = Matrix::identity(n, order);
    for i in 0..n {
        for j in 0..n {
            let v = if i < a.dim() && j < a.dim() {
                a.get(i, j).lift(order)
            } else if i >= a.dim() && j >= a.dim() {
                b.get(i - a.dim(), j - a.dim()).lift(order)
            } else {
                CycNum::zero(order)
            };
            m.set(i, j, v);
        }
    }
    m
}

pub fn block(m: &Matrix, start: usize, len: usize) -> Matrix {
    let rows = (start..start + len)
        .map(|i| (start..start + len).map(|j| m.get(i, j).clone()).collect())
        .collect();
    Matrix::from_rows(rows, m.order()).unwrap()
}
