//! Built-in groups: the imprimitive family `G(de,e,r)`, the Coxeter types
//! A, B, D, I₂ realized inside it, and the exceptional groups G₄ and G₁₂.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::{arrangement_of, essentialize, Arrangement};
use crate::cyclo::{CycLiteral, CycNum};
use crate::error::{Error, Result};
use crate::matgroup::{generate, GroupModel};
use crate::matrix::{Matrix, Vector};

pub const SUPPORTED_EXCEPTIONAL: [u32; 2] = [4, 12];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoxeterType {
    A,
    B,
    D,
    I2,
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CoxeterType::A => "A",
            CoxeterType::B => "B",
            CoxeterType::D => "D",
            CoxeterType::I2 => "I2",
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Imprimitive {
        d: u32,
        e: u32,
        r: usize,
        #[serde(default)]
        essentialize: bool,
    },
    Coxeter {
        #[serde(rename = "type")]
        family: CoxeterType,
        n: usize,
    },
    Exceptional {
        st: u32,
    },
    Explicit {
        dim: usize,
        cyclotomic_order: u32,
        generators: Vec<Vec<Vec<CycLiteral>>>,
    },
}

impl GroupSpec {
    pub fn imprimitive(d: u32, e: u32, r: usize) -> Self {
        GroupSpec::Imprimitive {
            d,
            e,
            r,
            essentialize: false,
        }
    }

    pub fn coxeter(family: CoxeterType, n: usize) -> Self {
        GroupSpec::Coxeter { family, n }
    }

    pub fn exceptional(st: u32) -> Self {
        GroupSpec::Exceptional { st }
    }

    pub fn name(&self) -> String {
        match self {
            GroupSpec::Imprimitive {
                d,
                e,
                r,
                essentialize,
            } => {
                let base = format!("G({},{},{})", d * e, e, r);
                if *essentialize {
                    format!("{} essential", base)
                } else {
                    base
                }
            }
            GroupSpec::Coxeter { family, n } => format!("{}{}", family, n),
            GroupSpec::Exceptional { st } => format!("G{}", st),
            GroupSpec::Explicit { dim, .. } => format!("explicit rank {}", dim),
        }
    }
}

/// A catalog group with its arrangement.
#[derive(Clone, Debug)]
pub struct BuiltGroup {
    pub name: String,
    pub spec: GroupSpec,
    pub group: GroupModel,
    pub arrangement: Arrangement,
    /// Coxeter type and rank when the model is a real reflection group of
    /// type A, B, D or I₂ in its standard catalog realization.
    pub coxeter: Option<(CoxeterType, usize)>,
}

/// Transpositions `s_i`, the twisted swap `s'` when `e > 1`, and the diagonal
/// `t = diag(1, …, 1, ζ_{de}^e)` when `d > 1`.
pub fn imprimitive_generators(d: u32, e: u32, r: usize) -> Vec<Matrix> {
    let m = d * e;
    let mut gens = Vec::new();
    for i in 0..r.saturating_sub(1) {
        let mut s = Matrix::zero(r, m);
        for k in 0..r {
            let target = if k == i {
                i + 1
            } else if k == i + 1 {
                i
            } else {
                k
            };
            s.set(target, k, CycNum::one(m));
        }
        gens.push(s);
    }
    if e > 1 && r >= 2 {
        let mut s = Matrix::identity(r, m);
        let (a, b) = (r - 2, r - 1);
        s.set(a, a, CycNum::zero(m));
        s.set(b, b, CycNum::zero(m));
        s.set(a, b, CycNum::zeta_pow(m, -1));
        s.set(b, a, CycNum::zeta(m));
        gens.push(s);
    }
    if d > 1 {
        let mut t = Matrix::identity(r, m);
        t.set(r - 1, r - 1, CycNum::zeta_pow(m, e as i64));
        gens.push(t);
    }
    gens
}

/// `s = diag(1, j)` and `t = (1/3)(1+2j, j−1; 2j−2, j+2)` over `Q(ζ₃)`.
pub fn g4_generators() -> Vec<Matrix> {
    let j = CycNum::zeta(3);
    let one = CycNum::one(3);
    let s = Matrix::diagonal(vec![one.clone(), j.clone()], 3);
    let third = CycNum::from_frac(3, 1, 3);
    let two = CycNum::from_int(3, 2);
    let rows = vec![
        vec![&one + &(&two * &j), &j - &one],
        vec![&(&two * &j) - &two, &j + &two],
    ];
    let t = Matrix::from_rows(rows, 3).unwrap().scale(&third);
    vec![s, t]
}

/// `√−2 = ζ₈ + ζ₈³`.
pub fn sqrt_minus_two() -> CycNum {
    &CycNum::zeta(8) + &CycNum::zeta_pow(8, 3)
}

/// The three order-2 generators `a, b, c` of G₁₂ over `Q(ζ₈)`.
pub fn g12_generators() -> Vec<Matrix> {
    let r = sqrt_minus_two();
    let one = CycNum::one(8);
    let zero = CycNum::zero(8);
    let a = Matrix::from_rows(
        vec![vec![one.clone(), &one + &r], vec![zero.clone(), -&one]],
        8,
    )
    .unwrap();
    let b = Matrix::from_rows(
        vec![vec![-&one, zero.clone()], vec![&one - &r, one.clone()]],
        8,
    )
    .unwrap();
    let c = Matrix::from_rows(
        vec![vec![r.clone(), &r - &one], vec![-&(&one + &r), -&r]],
        8,
    )
    .unwrap();
    vec![a, b, c]
}

/// The twelve G₁₂ vectors, each labeled by a word in `a, b, c` whose
/// product fixes it.
pub fn g12_listed_vectors() -> Vec<(&'static str, Vector)> {
    let r = sqrt_minus_two();
    let n = |k: i64| CycNum::from_int(8, k);
    let v = |x: CycNum, y: CycNum| vec![x, y];
    vec![
        ("babab", v(&n(1) + &r, n(-2))),
        ("a", v(n(1), n(0))),
        ("b", v(n(0), n(1))),
        ("ababa", v(n(-2), &n(1) - &r)),
        ("bcb", v(n(1), r.clone())),
        ("c", v(n(1), n(-1))),
        ("acaca", v(&n(1) - &r, &n(1) + &r)),
        ("cbc", v(&n(-1) + &r, -&r)),
        ("aba", v(&n(-1) - &r, n(1))),
        ("bab", v(n(-1), &n(1) - &r)),
        ("cac", v(-&r, &n(1) + &r)),
        ("aca", v(-&r, n(1))),
    ]
}

/// The hermitian form `A = (2, 1+√−2; 1−√−2, 2)`.
pub fn g12_reference_form() -> Matrix {
    let r = sqrt_minus_two();
    let two = CycNum::from_int(8, 2);
    let one = CycNum::one(8);
    Matrix::from_rows(vec![vec![two.clone(), &one + &r], vec![&one - &r, two]], 8).unwrap()
}

/// Product of the generators named by a word in `a, b, c, …`.
pub fn word_element(generators: &[Matrix], word: &str) -> Result<Matrix> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidParameter("no generators".into()))?;
    let mut m = Matrix::identity(first.dim(), first.order());
    for ch in word.chars() {
        let idx = (ch as u32).checked_sub('a' as u32).map(|i| i as usize);
        let g = idx.and_then(|i| generators.get(i)).ok_or_else(|| {
            Error::InvalidParameter(format!("letter {:?} names no generator", ch))
        })?;
        m = m.mul(g);
    }
    Ok(m)
}

/// Coxeter type of a catalog `G(de,e,r)` in its standard realization.
pub fn imprimitive_coxeter_type(
    d: u32,
    e: u32,
    r: usize,
    essential: bool,
) -> Option<(CoxeterType, usize)> {
    match (d, e, r) {
        (1, 1, r) if essential && r >= 2 => Some((CoxeterType::A, r - 1)),
        (2, 1, r) if r >= 2 => Some((CoxeterType::B, r)),
        (1, 2, r) if r >= 3 => Some((CoxeterType::D, r)),
        (1, e, 2) if e >= 3 => Some((CoxeterType::I2, e as usize)),
        _ => None,
    }
}

fn validate_imprimitive(d: u32, e: u32, r: usize, essential: bool) -> Result<()> {
    if d == 0 || e == 0 || r == 0 {
        return Err(Error::Spec("d, e and r must be positive".into()));
    }
    if d * e == 1 && r < 2 {
        return Err(Error::Spec("G(1,1,1) is trivial".into()));
    }
    if r == 1 && d == 1 {
        return Err(Error::Spec(format!("G({},{},1) is trivial", e, e)));
    }
    if (d, e, r) == (1, 1, 2) && !essential {
        return Err(Error::Spec(
            "G(1,1,2) is not essential; set \"essentialize\": true".into(),
        ));
    }
    Ok(())
}

pub fn build(spec: &GroupSpec, order_bound: usize) -> Result<BuiltGroup> {
    let (group, arrangement, coxeter) = match spec {
        GroupSpec::Imprimitive {
            d,
            e,
            r,
            essentialize: ess,
        } => {
            validate_imprimitive(*d, *e, *r, *ess)?;
            let g = generate(&imprimitive_generators(*d, *e, *r), order_bound)?;
            let (g, a) = if *ess {
                essentialize(&g)?
            } else {
                let a = arrangement_of(&g)?;
                (g, a)
            };
            (g, a, imprimitive_coxeter_type(*d, *e, *r, *ess))
        }
        GroupSpec::Coxeter { family, n } => {
            let n = *n;
            let (d, e, r, ess) = match family {
                CoxeterType::A if n >= 1 => (1, 1, n + 1, true),
                CoxeterType::B if n >= 2 => (2, 1, n, false),
                CoxeterType::D if n >= 2 => (1, 2, n, false),
                CoxeterType::I2 if n >= 3 => (1, n as u32, 2, false),
                _ => {
                    return Err(Error::Spec(format!(
                        "{}{} is not a supported Coxeter type",
                        family, n
                    )))
                }
            };
            let g = generate(&imprimitive_generators(d, e, r), order_bound)?;
            let (g, a) = if ess {
                essentialize(&g)?
            } else {
                let a = arrangement_of(&g)?;
                (g, a)
            };
            // D₂ = A₁ × A₁ is reducible but still a Coxeter group
            (g, a, Some((*family, n)))
        }
        GroupSpec::Exceptional { st } => {
            let gens = match st {
                4 => g4_generators(),
                12 => g12_generators(),
                _ => {
                    return Err(Error::Spec(format!(
                        "no model for G{}; supported exceptional groups: {:?}",
                        st, SUPPORTED_EXCEPTIONAL
                    )))
                }
            };
            let g = generate(&gens, order_bound)?;
            let a = arrangement_of(&g)?;
            (g, a, None)
        }
        GroupSpec::Explicit {
            dim,
            cyclotomic_order,
            generators,
        } => {
            if *cyclotomic_order == 0 {
                return Err(Error::Spec("cyclotomic_order must be positive".into()));
            }
            if generators.is_empty() {
                return Err(Error::Spec("at least one generator is required".into()));
            }
            let mut gens = Vec::new();
            for (i, rows) in generators.iter().enumerate() {
                if rows.len() != *dim || rows.iter().any(|r| r.len() != *dim) {
                    return Err(Error::Spec(format!(
                        "generator {} is not {}×{}",
                        i, dim, dim
                    )));
                }
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_cyc(*cyclotomic_order)).collect())
                    .collect::<Result<Vec<Vector>>>()?;
                gens.push(Matrix::from_rows(rows, *cyclotomic_order)?);
            }
            let g = generate(&gens, order_bound)?;
            let a = arrangement_of(&g)?;
            (g, a, None)
        }
    };
    Ok(BuiltGroup {
        name: spec.name(),
        spec: spec.clone(),
        group,
        arrangement,
        coxeter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::DEFAULT_ORDER_BOUND;

    #[test]
    fn g4_generator_relations() {
        let [s, t] = <[Matrix; 2]>::try_from(g4_generators()).unwrap();
        assert!(s.mul(&s).mul(&s).is_identity());
        assert!(t.mul(&t).mul(&t).is_identity());
        assert_eq!(s.mul(&t).mul(&s), t.mul(&s).mul(&t));
        let b = build(&GroupSpec::exceptional(4), DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(
            (b.group.len(), b.arrangement.len(), b.group.center().len()),
            (24, 4, 2)
        );
    }

    #[test]
    fn g12_generator_relations() {
        let gens = g12_generators();
        for g in &gens {
            assert!(g.mul(g).is_identity());
        }
        let w = |s: &str| word_element(&gens, s).unwrap();
        assert_eq!(w("abca"), w("bcab"));
        assert_eq!(w("bcab"), w("cabc"));
        let b = build(&GroupSpec::exceptional(12), DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(b.group.len(), 48);
        assert_eq!(b.arrangement.len(), 12);
    }

    #[test]
    fn g12_vectors_are_fixed_by_their_words() {
        let gens = g12_generators();
        for (word, v) in g12_listed_vectors() {
            assert_eq!(word_element(&gens, word).unwrap().apply(&v), v, "{}", word);
        }
    }

    #[test]
    fn essential_a3() {
        let spec = GroupSpec::Imprimitive {
            d: 1,
            e: 1,
            r: 4,
            essentialize: true,
        };
        let b = build(&spec, DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(
            (b.group.dim(), b.group.len(), b.arrangement.len()),
            (3, 24, 6)
        );
        assert_eq!(b.coxeter, Some((CoxeterType::A, 3)));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(build(&GroupSpec::exceptional(5), 100).is_err());
        assert!(build(&GroupSpec::imprimitive(1, 1, 2), 100).is_err());
        assert!(build(&GroupSpec::imprimitive(1, 1, 1), 100).is_err());
        assert!(build(&GroupSpec::imprimitive(0, 1, 2), 100).is_err());
        let spec: GroupSpec =
            serde_json::from_str(r#"{"kind":"coxeter","type":"I2","n":5}"#).unwrap();
        assert_eq!(spec, GroupSpec::coxeter(CoxeterType::I2, 5));
        let spec: GroupSpec =
            serde_json::from_str(r#"{"kind":"imprimitive","d":2,"e":1,"r":2}"#).unwrap();
        assert_eq!(spec, GroupSpec::imprimitive(2, 1, 2));
    }

    #[test]
    fn explicit_spec_round_trip() {
        let text = r#"{"kind":"explicit","dim":2,"cyclotomic_order":1,
            "generators":[[[-1,0],[0,1]],[[1,0],[0,-1]]]}"#;
        let spec: GroupSpec = serde_json::from_str(text).unwrap();
        let b = build(&spec, DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(b.group.len(), 4);
        assert_eq!(b.arrangement.len(), 2);
    }

    #[test]
    fn monomial_entries_multiply_into_mu_d() {
        // the product of the nonzero entries of any element of G(de,e,r) lies in μ_d
        for (d, e, r) in [(2, 2, 2), (3, 1, 2), (1, 3, 3), (2, 3, 2)] {
            let g = generate(&imprimitive_generators(d, e, r), DEFAULT_ORDER_BOUND).unwrap();
            for w in g.elements() {
                let mut p = CycNum::one(d * e);
                for row in w.rows() {
                    let nz: Vec<_> = row.iter().filter(|x| !x.is_zero()).collect();
                    assert_eq!(nz.len(), 1);
                    p = &p * nz[0];
                }
                let k = p.as_root_of_unity().unwrap();
                assert_eq!(d % k, 0, "G({},{},{})", d * e, e, r);
            }
        }
    }
}
