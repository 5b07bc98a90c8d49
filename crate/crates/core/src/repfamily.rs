//! The characters χₙ of the representations Rₙ on `ℂ𝒜`, and the checks built
//! on them: periodicity, kernels, Galois action, parabolic restriction, the
//! Coxeter sign model and the G₄ decomposition table.

use serde::Serialize;

use crate::arrangement::{arrangement_of, positive_roots, Arrangement};
use crate::catalog::{build, BuiltGroup, GroupSpec};
use crate::cyclo::{lcm, CycNum, Rational};
use crate::error::{Error, Result};
use crate::kappa::a_indices;
use crate::matgroup::{parabolic_fixer, GroupModel, DEFAULT_ORDER_BOUND};
use crate::matrix::{dot, Matrix, Vector};

/// Values on conjugacy classes, with the class sizes needed for pairings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassFunction {
    pub values: Vec<CycNum>,
    pub class_sizes: Vec<usize>,
}

impl ClassFunction {
    pub fn group_order(&self) -> usize {
        self.class_sizes.iter().sum()
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
            class_sizes: self.class_sizes.clone(),
        }
    }

    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
            class_sizes: self.class_sizes.clone(),
        }
    }

    /// Pointwise product (tensor product of characters).
    pub fn mul(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
            class_sizes: self.class_sizes.clone(),
        }
    }

    pub fn galois(&self, n: i64) -> Result<ClassFunction> {
        Ok(ClassFunction {
            values: self
                .values
                .iter()
                .map(|v| v.galois(n))
                .collect::<Result<_>>()?,
            class_sizes: self.class_sizes.clone(),
        })
    }
}

/// `⟨f, h⟩ = |W|⁻¹ Σ_w f(w) conj(h(w))`.
pub fn inner_product(f: &ClassFunction, h: &ClassFunction) -> Result<CycNum> {
    if f.class_sizes != h.class_sizes {
        return Err(Error::Dimension(
            "class functions of different groups".into(),
        ));
    }
    let order = f
        .values
        .iter()
        .chain(&h.values)
        .fold(1, |acc, v| lcm(acc, v.order()));
    let mut sum = CycNum::zero(order);
    for ((a, b), &size) in f.values.iter().zip(&h.values).zip(&f.class_sizes) {
        sum = sum + (a * &b.conj()).scale(&Rational::from_integer(size.into()));
    }
    Ok(sum.scale(&Rational::new(1.into(), f.group_order().into())))
}

/// The class function with constant value.
pub fn constant(g: &GroupModel, c: i64) -> ClassFunction {
    ClassFunction {
        values: vec![CycNum::from_int(1, c); g.classes().len()],
        class_sizes: g.class_sizes(),
    }
}

/// Per-class eigen-data of the class representatives on the roots: for each
/// fixed hyperplane `H` with `w·e_H = ζ_K^k e_H`, the pair `(H, k)`.
#[derive(Clone, Debug)]
pub struct ChiFamily {
    modulus: u32,
    class_sizes: Vec<usize>,
    fixed: Vec<Vec<(usize, u32)>>,
    orbit_of: Vec<usize>,
}

impl ChiFamily {
    pub fn new(g: &GroupModel, a: &Arrangement) -> ChiFamily {
        let modulus = lcm(2, lcm(g.cyclotomic_order(), a.cyclotomic_order()));
        let fixed = (0..g.classes().len())
            .map(|c| {
                let w = g.element(g.class_representative(c));
                a.root_action(w)
                    .into_iter()
                    .enumerate()
                    .filter(|(h, (t, _))| t == h)
                    .map(|(h, (_, z))| {
                        let k = z
                            .root_exponent(modulus)
                            .expect("eigenvalue on a root is a root of unity");
                        (h, k)
                    })
                    .collect()
            })
            .collect();
        let orbit_of = a.hyperplanes().iter().map(|h| h.orbit).collect();
        ChiFamily {
            modulus,
            class_sizes: g.class_sizes(),
            fixed,
            orbit_of,
        }
    }

    /// Order of the root of unity used for the values.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    fn value(&self, class: usize, n: i64, orbit: Option<usize>) -> CycNum {
        let m = self.modulus as i64;
        self.fixed[class]
            .iter()
            .filter(|(h, _)| orbit.is_none_or(|o| self.orbit_of[*h] == o))
            .fold(CycNum::zero(self.modulus), |acc, &(_, k)| {
                acc + CycNum::zeta_pow(self.modulus, (k as i64 * n.rem_euclid(m)) % m)
            })
    }

    pub fn chi(&self, n: i64) -> ClassFunction {
        ClassFunction {
            values: (0..self.fixed.len())
                .map(|c| self.value(c, n, None))
                .collect(),
            class_sizes: self.class_sizes.clone(),
        }
    }

    /// Character of `Rₙ` on the block `ℂ𝒜_k` of one orbit.
    pub fn chi_on_orbit(&self, n: i64, orbit: usize) -> ClassFunction {
        ClassFunction {
            values: (0..self.fixed.len())
                .map(|c| self.value(c, n, Some(orbit)))
                .collect(),
            class_sizes: self.class_sizes.clone(),
        }
    }
}

pub fn chi(g: &GroupModel, a: &Arrangement, n: i64) -> ClassFunction {
    ChiFamily::new(g, a).chi(n)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelReport {
    pub n: i64,
    /// Elements with `χₙ(w) = χₙ(1)`.
    pub kernel: Vec<usize>,
    /// Central elements with `wⁿ = 1`.
    pub expected: Vec<usize>,
    pub matches: bool,
}

pub fn kernel_of_rn(g: &GroupModel, a: &Arrangement, n: i64) -> KernelReport {
    kernel_from_family(g, &ChiFamily::new(g, a), n)
}

fn kernel_from_family(g: &GroupModel, fam: &ChiFamily, n: i64) -> KernelReport {
    let values = fam.chi(n).values;
    let at_one = &values[g.conjugacy_class_of(0)];
    let kernel: Vec<usize> = (0..g.len())
        .filter(|&w| &values[g.conjugacy_class_of(w)] == at_one)
        .collect();
    let mut expected: Vec<usize> = g
        .center()
        .iter()
        .copied()
        .filter(|&z| n.rem_euclid(g.element_order(z) as i64) == 0)
        .collect();
    expected.sort_unstable();
    let matches = kernel == expected;
    KernelReport {
        n,
        kernel,
        expected,
        matches,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodReport {
    pub period: u32,
    pub kappa: u32,
    pub matches: bool,
}

/// Smallest `p ≥ 1` with `χ_{n+p} = χₙ` for all `n` over a window of length
/// `lcm(2, m)`, which is a period of every χₙ.
pub fn check_periodicity(g: &GroupModel, a: &Arrangement) -> PeriodReport {
    let kappa = a_indices(g, a).kappa;
    let fam = ChiFamily::new(g, a);
    period_from_family(&fam, kappa)
}

fn period_from_family(fam: &ChiFamily, kappa: u32) -> PeriodReport {
    let window = fam.modulus() as i64;
    let table: Vec<ClassFunction> = (0..2 * window + 2 * kappa as i64 + 1)
        .map(|n| fam.chi(n))
        .collect();
    let period = (1..=2 * kappa)
        .find(|&p| (0..window).all(|n| table[(n + p as i64) as usize] == table[n as usize]))
        .unwrap_or(0);
    PeriodReport {
        period,
        kappa,
        matches: period == kappa,
    }
}

/// Compares `c_n ∘ χ₁` with `χₙ`, `c_n` the automorphism `ζ ↦ ζⁿ`. Since
/// χₙ depends on `n` modulo κ, any `n' ≡ n (mod κ)` prime to the field order
/// realizes `c_n`.
pub fn galois_check(g: &GroupModel, a: &Arrangement, n: i64) -> Result<bool> {
    let kappa = a_indices(g, a).kappa;
    let fam = ChiFamily::new(g, a);
    galois_from_family(&fam, kappa, n)
}

fn galois_from_family(fam: &ChiFamily, kappa: u32, n: i64) -> Result<bool> {
    let k = kappa as i64;
    if num_integer::gcd(n, k) != 1 {
        return Err(Error::NotCoprime {
            n,
            modulus: kappa as u64,
        });
    }
    let m = fam.modulus() as i64;
    let base = n.rem_euclid(k);
    let lifted = (0..=m)
        .map(|t| base + t * k)
        .find(|&x| num_integer::gcd(x, m) == 1)
        .expect("an integer prime to the modulus exists in every coprime residue class");
    Ok(fam.chi(1).galois(lifted)? == fam.chi(n))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RestrictionReport {
    pub fixer_order: usize,
    /// Number of hyperplanes containing `v`.
    pub local_hyperplanes: usize,
    /// `(n, holds)` for `n = 0..=κ`.
    pub per_n: Vec<(i64, bool)>,
    pub passed: bool,
    pub notice: Option<String>,
}

/// Checks `χₙ|W₀ = χₙ^{W₀} + (permutation character of W₀ on 𝒜 ∖ 𝒜₀)`,
/// `W₀` the fixer of `v` and `𝒜₀` its own arrangement.
pub fn restriction_check(
    g: &GroupModel,
    a: &Arrangement,
    v: &[CycNum],
) -> Result<RestrictionReport> {
    let w0 = parabolic_fixer(g, v)?;
    let order = lcm(
        a.cyclotomic_order(),
        v.iter().fold(1, |acc, x| lcm(acc, x.order())),
    );
    let v: Vector = v.iter().map(|x| x.lift(order)).collect();
    let local: Vec<usize> = (0..a.len())
        .filter(|&h| {
            let alpha: Vector = a
                .hyperplane(h)
                .alpha
                .iter()
                .map(|x| x.lift(order))
                .collect();
            dot(&alpha, &v).is_zero()
        })
        .collect();
    if w0.len() == 1 {
        return Ok(RestrictionReport {
            fixer_order: 1,
            local_hyperplanes: local.len(),
            per_n: Vec::new(),
            passed: true,
            notice: Some("fixer is trivial; the check is vacuous".into()),
        });
    }
    let a0 = arrangement_of(&w0)?;
    if a0.len() != local.len() {
        return Err(Error::InvalidParameter(format!(
            "fixer has {} reflecting hyperplanes but {} hyperplanes contain v",
            a0.len(),
            local.len()
        )));
    }
    let kappa = a_indices(g, a).kappa;
    let fam = ChiFamily::new(g, a);
    let fam0 = ChiFamily::new(&w0, &a0);
    let in_g: Vec<usize> = (0..w0.len())
        .map(|w| g.index_of(w0.element(w)).expect("fixer is a subgroup"))
        .collect();
    // permutation character of W₀ on the hyperplanes not containing v
    let outside: Vec<usize> = (0..a.len()).filter(|h| !local.contains(h)).collect();
    let perm_char: Vec<i64> = (0..w0.classes().len())
        .map(|c| {
            let perm = a.permutation(w0.element(w0.class_representative(c)));
            outside.iter().filter(|&&h| perm[h] == h).count() as i64
        })
        .collect();
    let mut per_n = Vec::new();
    for n in 0..=kappa as i64 {
        let full = fam.chi(n);
        let local_chi = fam0.chi(n);
        let holds = (0..w0.classes().len()).all(|c| {
            let rep = w0.class_representative(c);
            let lhs = &full.values[g.conjugacy_class_of(in_g[rep])];
            let rhs = &local_chi.values[c] + &CycNum::from_int(1, perm_char[c]);
            lhs == &rhs
        });
        per_n.push((n, holds));
    }
    let passed = per_n.iter().all(|(_, ok)| *ok);
    Ok(RestrictionReport {
        fixer_order: w0.len(),
        local_hyperplanes: local.len(),
        per_n,
        passed,
        notice: None,
    })
}

/// Signed-permutation model of R₁ for a real reflection group on the basis
/// `f_H`: `w·f_H = ±f_{w(H)}` with sign `+` iff `w·e⁺_H` is positive.
#[derive(Clone, Debug, Serialize)]
pub struct SignModelRep {
    pub positive_roots: Vec<Vector>,
    /// One matrix per generator, rows and columns indexed by hyperplanes.
    pub matrices: Vec<Vec<Vec<i64>>>,
}

fn signed_matrix(a: &Arrangement, pos: &[Vector], w: &Matrix) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut m = vec![vec![0i64; n]; n];
    for (h, e) in pos.iter().enumerate() {
        let v = w.apply(e);
        let k = a
            .hyperplane_of_root(&v)
            .expect("group element permutes the arrangement");
        m[k][h] = if v == pos[k] { 1 } else { -1 };
    }
    m
}

fn int_mul(x: &[Vec<i64>], y: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum())
                .collect()
        })
        .collect()
}

fn int_identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn int_trace(x: &[Vec<i64>]) -> i64 {
    (0..x.len()).map(|i| x[i][i]).sum()
}

pub fn coxeter_sign_model(b: &BuiltGroup) -> Result<SignModelRep> {
    if b.coxeter.is_none() {
        return Err(Error::NotCoxeter(b.name.clone()));
    }
    let pos = positive_roots(&b.group, &b.arrangement)?;
    let matrices = b
        .group
        .generators()
        .iter()
        .map(|w| signed_matrix(&b.arrangement, &pos, w))
        .collect();
    Ok(SignModelRep {
        positive_roots: pos,
        matrices,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignModelReport {
    pub monomial: bool,
    pub homomorphism: bool,
    /// `(sᵢsⱼ)^{mᵢⱼ} = 1` for all generator pairs, `mᵢⱼ` the order in the group.
    pub relations: bool,
    pub character_matches_chi1: bool,
    pub differs_from_chi0: bool,
    /// `(tr R₁(s₁), tr R₀(s₁))`.
    pub trace_at_s1: (i64, i64),
}

pub fn check_sign_model(b: &BuiltGroup, rep: &SignModelRep) -> SignModelReport {
    let g = &b.group;
    let a = &b.arrangement;
    let all: Vec<Vec<Vec<i64>>> = g
        .elements()
        .iter()
        .map(|w| signed_matrix(a, &rep.positive_roots, w))
        .collect();
    let monomial = rep.matrices.iter().all(|m| {
        m.iter().all(|row| {
            row.iter().all(|x| [-1, 0, 1].contains(x))
                && row.iter().filter(|x| **x != 0).count() == 1
        })
    });
    let homomorphism = g
        .generator_indices()
        .iter()
        .zip(&rep.matrices)
        .all(|(&gi, mg)| (0..g.len()).all(|w| int_mul(mg, &all[w]) == all[g.product(gi, w)]));
    let gens = g.generator_indices();
    let mut relations = true;
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            let p = g.product(gens[i], gens[j]);
            let order = g.element_order(p);
            let m = int_mul(&rep.matrices[i], &rep.matrices[j]);
            let mut acc = int_identity(a.len());
            for _ in 0..order {
                acc = int_mul(&acc, &m);
            }
            relations &= acc == int_identity(a.len());
        }
    }
    let fam = ChiFamily::new(g, a);
    let chi1 = fam.chi(1);
    let chi0 = fam.chi(0);
    let character_matches_chi1 = (0..g.classes().len())
        .all(|c| CycNum::from_int(1, int_trace(&all[g.class_representative(c)])) == chi1.values[c]);
    let s1 = &rep.matrices[0];
    let tr0 = s1
        .iter()
        .enumerate()
        .filter(|(i, row)| row[*i] != 0)
        .count() as i64;
    SignModelReport {
        monomial,
        homomorphism,
        relations,
        character_matches_chi1,
        differs_from_chi0: chi1 != chi0,
        trace_at_s1: (int_trace(s1), tr0),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub n: i64,
    pub decomposition: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct G4TableReport {
    pub u_norm: CycNum,
    pub rows: Vec<TableRow>,
    pub period: u32,
    pub passed: bool,
}

/// Builds the linear characters `S_α` (`s, t ↦ α`), `A_{j²}` (the reflection
/// character), `A_α = A_{j²} ⊗ S_{αj}` and `U = χ₀ − 1`, and checks the
/// decomposition of `R₀, …, R₅`.
pub fn g4_table_check() -> Result<G4TableReport> {
    let b = build(&GroupSpec::exceptional(4), DEFAULT_ORDER_BOUND)?;
    let g = &b.group;
    let fam = ChiFamily::new(g, &b.arrangement);
    let sizes = g.class_sizes();
    let class_fn = |f: &dyn Fn(&Matrix) -> CycNum| ClassFunction {
        values: (0..g.classes().len())
            .map(|c| f(g.element(g.class_representative(c))))
            .collect(),
        class_sizes: sizes.clone(),
    };
    // S_{j^a}(w) = det(w)^a since det s = det t = j
    let s = |a: i64| class_fn(&|w: &Matrix| w.det().pow(a).expect("det is a unit"));
    let a_j2 = class_fn(&|w: &Matrix| w.trace());
    let a_alpha = |a: i64| a_j2.mul(&s(a + 1));
    let one = constant(g, 1);
    let u = fam.chi(0).sub(&one);
    let u_norm = inner_product(&u, &u)?;

    let rows_spec: [(i64, &str, ClassFunction); 6] = [
        (0, "S_1 + U", s(0).add(&u)),
        (1, "A_1 + A_{j^2}", a_alpha(0).add(&a_alpha(2))),
        (2, "S_{j^2} + U", s(2).add(&u)),
        (3, "A_j + A_{j^2}", a_alpha(1).add(&a_alpha(2))),
        (4, "S_j + U", s(1).add(&u)),
        (5, "A_1 + A_{j^2}", a_alpha(0).add(&a_alpha(2))),
    ];
    let rows: Vec<TableRow> = rows_spec
        .into_iter()
        .map(|(n, label, expected)| TableRow {
            n,
            decomposition: label.to_string(),
            holds: fam.chi(n) == expected,
        })
        .collect();
    let period = period_from_family(&fam, a_indices(g, &b.arrangement).kappa).period;
    let passed = u_norm.is_one() && rows.iter().all(|r| r.holds) && period == 6;
    Ok(G4TableReport {
        u_norm,
        rows,
        period,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{CoxeterType, GroupSpec};
    use crate::kappa::divisors;

    fn built(spec: GroupSpec) -> BuiltGroup {
        build(&spec, DEFAULT_ORDER_BOUND).unwrap()
    }

    #[test]
    fn chi0_at_identity_counts_hyperplanes() {
        let b = built(GroupSpec::exceptional(4));
        let c = chi(&b.group, &b.arrangement, 0);
        assert_eq!(
            c.values[b.group.conjugacy_class_of(0)],
            CycNum::from_int(1, 4)
        );
        let one = constant(&b.group, 1);
        assert!(inner_product(&c, &one).unwrap().is_one());
    }

    #[test]
    fn central_values() {
        let b = built(GroupSpec::exceptional(4));
        let g = &b.group;
        let z = *g.center().iter().find(|&&z| z != 0).unwrap();
        let lambda = g.is_scalar(z).unwrap();
        assert_eq!(lambda, CycNum::from_int(1, -1));
        let fam = ChiFamily::new(g, &b.arrangement);
        for n in 0..8 {
            let expect = lambda
                .pow(n)
                .unwrap()
                .scale(&Rational::from_integer(4.into()));
            assert_eq!(fam.chi(n).values[g.conjugacy_class_of(z)], expect);
        }
    }

    #[test]
    fn g4_chi1_norm_and_kernels() {
        let b = built(GroupSpec::exceptional(4));
        let c1 = chi(&b.group, &b.arrangement, 1);
        assert_eq!(inner_product(&c1, &c1).unwrap(), CycNum::from_int(1, 2));
        assert_eq!(kernel_of_rn(&b.group, &b.arrangement, 1).kernel, vec![0]);
        let k0 = kernel_of_rn(&b.group, &b.arrangement, 0);
        assert!(k0.matches);
        let mut center = b.group.center().to_vec();
        center.sort_unstable();
        assert_eq!(k0.kernel, center);
        assert_eq!(kernel_of_rn(&b.group, &b.arrangement, 2).kernel, center);
    }

    #[test]
    fn periods() {
        for (spec, p) in [
            (GroupSpec::exceptional(4), 6),
            (GroupSpec::exceptional(12), 2),
            (GroupSpec::imprimitive(1, 3, 2), 2),
        ] {
            let b = built(spec);
            let r = check_periodicity(&b.group, &b.arrangement);
            assert_eq!((r.period, r.kappa), (p, p), "{}", b.name);
        }
    }

    #[test]
    fn galois_relations() {
        let b = built(GroupSpec::exceptional(4));
        assert!(galois_check(&b.group, &b.arrangement, 1).unwrap());
        assert!(galois_check(&b.group, &b.arrangement, 5).unwrap());
        assert!(matches!(
            galois_check(&b.group, &b.arrangement, 2),
            Err(Error::NotCoprime { .. })
        ));
        let c = built(GroupSpec::imprimitive(4, 1, 2));
        assert!(galois_check(&c.group, &c.arrangement, 3).unwrap());
    }

    #[test]
    fn g4_fifth_character_is_conjugate_of_first() {
        let b = built(GroupSpec::exceptional(4));
        let fam = ChiFamily::new(&b.group, &b.arrangement);
        let conj = ClassFunction {
            values: fam.chi(1).values.iter().map(CycNum::conj).collect(),
            class_sizes: b.group.class_sizes(),
        };
        assert_eq!(fam.chi(5), conj);
        assert_ne!(fam.chi(5), fam.chi(1));
    }

    #[test]
    fn orbit_blocks_sum_to_chi() {
        let b = built(GroupSpec::imprimitive(2, 1, 3));
        let fam = ChiFamily::new(&b.group, &b.arrangement);
        for n in 0..4 {
            let sum = (1..b.arrangement.orbits().len()).fold(fam.chi_on_orbit(n, 0), |acc, o| {
                acc.add(&fam.chi_on_orbit(n, o))
            });
            assert_eq!(sum, fam.chi(n));
        }
    }

    #[test]
    fn restriction_on_g4_and_a3() {
        let b = built(GroupSpec::exceptional(4));
        let alpha = &b.arrangement.hyperplane(0).alpha;
        let v = vec![-&alpha[1], alpha[0].clone()];
        let r = restriction_check(&b.group, &b.arrangement, &v).unwrap();
        assert_eq!(r.fixer_order, 3);
        assert!(r.passed);
        let regular = vec![CycNum::from_int(3, 1), CycNum::from_int(3, 7)];
        let r = restriction_check(&b.group, &b.arrangement, &regular).unwrap();
        assert!(r.passed && r.notice.is_some());

        let a3 = built(GroupSpec::coxeter(CoxeterType::A, 3));
        let root = a3.arrangement.hyperplane(0).root.clone();
        // a vector orthogonal to one root and generic otherwise
        let form = a3.arrangement.form();
        let mut found = false;
        for coeffs in [[1, 2, 5], [2, 7, 3], [5, 1, 11]] {
            let x: Vector = coeffs.iter().map(|&k| CycNum::from_int(1, k)).collect();
            let c = crate::matrix::hermitian(form, &root, &x)
                .checked_div(&crate::matrix::hermitian(form, &root, &root))
                .unwrap();
            let v: Vector = x
                .iter()
                .zip(&root)
                .map(|(xi, ri)| xi - &(&c * ri))
                .collect();
            let r = restriction_check(&a3.group, &a3.arrangement, &v).unwrap();
            if r.local_hyperplanes == 1 {
                assert_eq!(r.fixer_order, 2);
                assert!(r.passed);
                found = true;
                break;
            }
        }
        assert!(found);
    }

    #[test]
    fn restriction_with_whole_group_as_fixer() {
        let b = built(GroupSpec::imprimitive(1, 1, 3));
        let v = vec![CycNum::one(1); 3];
        let r = restriction_check(&b.group, &b.arrangement, &v).unwrap();
        assert_eq!(r.fixer_order, 6);
        assert!(r.passed);
    }

    #[test]
    fn sign_models() {
        for (t, n) in [
            (CoxeterType::A, 2),
            (CoxeterType::B, 2),
            (CoxeterType::I2, 6),
        ] {
            let b = built(GroupSpec::coxeter(t, n));
            let rep = coxeter_sign_model(&b).unwrap();
            let r = check_sign_model(&b, &rep);
            assert!(r.monomial && r.homomorphism && r.relations, "{}", b.name);
            assert!(
                r.character_matches_chi1 && r.differs_from_chi0,
                "{}",
                b.name
            );
            assert_eq!(r.trace_at_s1.0, r.trace_at_s1.1 - 2, "{}", b.name);
        }
        assert!(coxeter_sign_model(&built(GroupSpec::exceptional(4))).is_err());
    }

    #[test]
    fn g4_table() {
        let r = g4_table_check().unwrap();
        assert!(r.u_norm.is_one());
        assert_eq!(r.period, 6);
        let holds: Vec<bool> = r.rows.iter().map(|x| x.holds).collect();
        // the fifth character is the complex conjugate of the first
        assert_eq!(holds, vec![true, true, true, true, true, false]);
    }

    #[test]
    fn period_equals_kappa_on_small_groups() {
        for (d, e, r) in [(2, 1, 2), (3, 1, 2), (1, 4, 2), (2, 2, 3)] {
            let b = built(GroupSpec::imprimitive(d, e, r));
            let p = check_periodicity(&b.group, &b.arrangement);
            assert!(p.matches, "G({},{},{})", d * e, e, r);
            assert_eq!(
                a_indices(&b.group, &b.arrangement).indices,
                divisors(p.kappa)
            );
        }
    }
}
