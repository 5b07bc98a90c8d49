//! Numeric monodromy of the connection `Σ h p_H dα_H/α_H` at small rank:
//! logarithmic path integrals with branch tracking, monodromy matrices on the
//! basis `v_H`, braided reflection paths, and comparison with χ_h.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::catalog::BuiltGroup;
use crate::error::{Error, Result};
use crate::matgroup::GroupModel;
use crate::matrix::Matrix;
use crate::repfamily::ChiFamily;

pub type Point = Vec<Complex64>;
pub type CMatrix = Vec<Vec<Complex64>>;

/// Relative distance below which a point counts as lying on a hyperplane.
pub const ON_HYPERPLANE: f64 = 1e-9;
const MAX_BISECTIONS: usize = 48;
const CIRCLE_SAMPLES: usize = 96;

/// Float image of an arrangement.
#[derive(Clone, Debug)]
pub struct NumericArrangement {
    forms: Vec<Vec<Complex64>>,
    roots: Vec<Vec<Complex64>>,
    form: CMatrix,
}

impl NumericArrangement {
    pub fn new(a: &Arrangement) -> Self {
        let embed = |v: &[crate::CycNum]| v.iter().map(|x| x.embed()).collect::<Vec<_>>();
        NumericArrangement {
            forms: a.hyperplanes().iter().map(|h| embed(&h.alpha)).collect(),
            roots: a.hyperplanes().iter().map(|h| embed(&h.root)).collect(),
            form: a.form().embed(),
        }
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    fn alpha(&self, h: usize, p: &[Complex64]) -> Complex64 {
        self.forms[h].iter().zip(p).map(|(a, x)| a * x).sum()
    }

    /// `x̄ᵀ F y`.
    pub fn hermitian(&self, x: &[Complex64], y: &[Complex64]) -> Complex64 {
        let fy = apply(&self.form, y);
        x.iter().zip(&fy).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm(&self, x: &[Complex64]) -> f64 {
        self.hermitian(x, x).re.max(0.0).sqrt()
    }

    /// Distance from `p` to hyperplane `h` in the invariant metric.
    pub fn distance(&self, h: usize, p: &[Complex64]) -> f64 {
        // α_H = c·F(e_H, ·) with |c| = |α_H(e_H)| / ‖e_H‖²
        let e = &self.roots[h];
        let scale = self.alpha(h, e).norm() / self.norm(e);
        self.alpha(h, p).norm() / scale
    }

    /// Rejects points within the relative tolerance of some hyperplane.
    pub fn check_regular(&self, p: &[Complex64]) -> Result<()> {
        let pn: f64 = p.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for h in 0..self.len() {
            let an: f64 = self.forms[h]
                .iter()
                .map(|a| a.norm_sqr())
                .sum::<f64>()
                .sqrt();
            if self.alpha(h, p).norm() <= ON_HYPERPLANE * an * pn.max(f64::MIN_POSITIVE) {
                return Err(Error::OnHyperplane(h));
            }
        }
        Ok(())
    }
}

pub fn apply(m: &CMatrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// A sampled path with its per-hyperplane integrals `∫ dα_H/α_H`.
#[derive(Clone, Debug, Serialize)]
pub struct PathTrace {
    #[serde(serialize_with = "ser_points")]
    pub samples: Vec<Point>,
    #[serde(serialize_with = "ser_complex")]
    pub integrals: Vec<Complex64>,
    /// Element `w` with the path running from `z` to `w·z`.
    pub endpoint: Option<usize>,
}

fn ser_complex<S: serde::Serializer>(
    v: &[Complex64],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

fn ser_points<S: serde::Serializer>(v: &[Point], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for p in v {
        let pairs: Vec<[f64; 2]> = p.iter().map(|z| [z.re, z.im]).collect();
        seq.serialize_element(&pairs)?;
    }
    seq.end()
}

impl PathTrace {
    /// Concatenation: `self` followed by `next`.
    pub fn then(&self, next: &PathTrace) -> PathTrace {
        let mut samples = self.samples.clone();
        samples.extend(next.samples.iter().skip(1).cloned());
        PathTrace {
            samples,
            integrals: self
                .integrals
                .iter()
                .zip(&next.integrals)
                .map(|(a, b)| a + b)
                .collect(),
            endpoint: None,
        }
    }

    pub fn with_endpoint(mut self, w: usize) -> PathTrace {
        self.endpoint = Some(w);
        self
    }
}

fn segment(
    na: &NumericArrangement,
    p: &[Complex64],
    q: &[Complex64],
    acc: &mut [Complex64],
    depth: usize,
) -> Result<()> {
    let ratios: Vec<Complex64> = (0..na.len())
        .map(|h| na.alpha(h, q) / na.alpha(h, p))
        .collect();
    if let Some(h) = ratios.iter().position(|r| r.arg().abs() >= PI / 4.0) {
        if depth >= MAX_BISECTIONS {
            return Err(Error::TooCoarse(h));
        }
        let mid: Point = p.iter().zip(q).map(|(a, b)| (a + b) * 0.5).collect();
        na.check_regular(&mid)?;
        segment(na, p, &mid, acc, depth + 1)?;
        return segment(na, &mid, q, acc, depth + 1);
    }
    for (a, r) in acc.iter_mut().zip(&ratios) {
        *a += r.ln();
    }
    Ok(())
}

/// Telescoping sum of principal logarithms of `α_H(next)/α_H(prev)` along the
/// polyline through `samples`, bisecting steps until every argument change is
/// below π/4.
pub fn integrate_path(a: &Arrangement, samples: &[Point]) -> Result<PathTrace> {
    integrate_numeric(&NumericArrangement::new(a), samples)
}

pub fn integrate_numeric(na: &NumericArrangement, samples: &[Point]) -> Result<PathTrace> {
    let mut integrals = vec![Complex64::new(0.0, 0.0); na.len()];
    for p in samples {
        na.check_regular(p)?;
    }
    for w in samples.windows(2) {
        segment(na, &w[0], &w[1], &mut integrals, 0)?;
    }
    Ok(PathTrace {
        samples: samples.to_vec(),
        integrals,
        endpoint: None,
    })
}

/// `R_h` of the path: `M[w(H)][H] = exp(h ∫_H)`.
pub fn monodromy_matrix(
    a: &Arrangement,
    g: &GroupModel,
    trace: &PathTrace,
    h: Complex64,
) -> Result<CMatrix> {
    let w = trace
        .endpoint
        .ok_or_else(|| Error::InvalidParameter("path endpoint element is unknown".into()))?;
    let perm = a.permutation(g.element(w));
    let n = a.len();
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (col, &row) in perm.iter().enumerate() {
        m[row][col] = (h * trace.integrals[col]).exp();
    }
    Ok(m)
}

pub fn cmat_mul(x: &CMatrix, y: &CMatrix) -> CMatrix {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn cmat_trace(x: &CMatrix) -> Complex64 {
    (0..x.len()).map(|i| x[i][i]).sum()
}

/// Largest deviation between `tr(Xᵏ)` and `tr(Yᵏ)` for `k = 1..=n`; equal
/// power traces pin down equal spectra.
pub fn spectrum_distance(x: &CMatrix, y: &CMatrix) -> f64 {
    let n = x.len();
    let (mut px, mut py) = (x.clone(), y.clone());
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        worst = worst.max((cmat_trace(&px) - cmat_trace(&py)).norm());
        px = cmat_mul(&px, x);
        py = cmat_mul(&py, y);
    }
    worst
}

fn embed_point(m: &Matrix, p: &[Complex64]) -> Point {
    apply(&m.embed(), p)
}

struct Waypoint {
    plus: Point,
    minus: Point,
    radius: f64,
}

/// Splits `z = z⁺ + z⁻` with `z⁺ ∈ H`, `z⁻ ∈ ℂe_H`, and picks the circle radius
/// as half the distance from `z⁺` to the nearest other hyperplane.
fn waypoint(na: &NumericArrangement, h: usize, z: &[Complex64]) -> Result<Waypoint> {
    let e = &na.roots[h];
    let c = na.hermitian(e, z) / na.hermitian(e, e);
    let minus: Point = e.iter().map(|x| x * c).collect();
    let plus: Point = z.iter().zip(&minus).map(|(a, b)| a - b).collect();
    let nearest = (0..na.len())
        .filter(|&k| k != h)
        .map(|k| na.distance(k, &plus))
        .fold(f64::INFINITY, f64::min);
    let pn = na.norm(&plus);
    if !(nearest.is_finite() && nearest > ON_HYPERPLANE * pn.max(1.0)) && na.len() > 1 {
        return Err(Error::NoWaypoint(h));
    }
    let mn = na.norm(&minus);
    if mn <= ON_HYPERPLANE {
        return Err(Error::OnHyperplane(h));
    }
    let radius = (0.5 * nearest).min(0.5 * mn);
    Ok(Waypoint {
        plus,
        minus,
        radius,
    })
}

fn circle(w: &Waypoint, na: &NumericArrangement, angle: f64) -> Vec<Point> {
    let scale = w.radius / na.norm(&w.minus);
    let steps = ((CIRCLE_SAMPLES as f64) * angle.abs() / (2.0 * PI))
        .ceil()
        .max(4.0) as usize;
    (0..=steps)
        .map(|k| {
            let t = Complex64::from_polar(scale, angle * k as f64 / steps as f64);
            w.plus
                .iter()
                .zip(&w.minus)
                .map(|(p, m)| p + m * t)
                .collect()
        })
        .collect()
}

/// Loop `γ₀⁻¹ · (small circle around H) · γ₀` based at `z`.
pub fn loop_around_hyperplane(a: &Arrangement, h: usize, z: &[Complex64]) -> Result<PathTrace> {
    let na = NumericArrangement::new(a);
    na.check_regular(z)?;
    let wp = waypoint(&na, h, z)?;
    let mut samples = vec![z.to_vec()];
    samples.extend(circle(&wp, &na, 2.0 * PI));
    samples.push(z.to_vec());
    Ok(integrate_numeric(&na, &samples)?.with_endpoint(0))
}

/// Path `(s·γ₀)⁻¹ · γ₁ · γ₀` from `z` to `s·z`, where `s` is the distinguished
/// reflection of `H`, `γ₀` runs straight to `z⁺ + ε ẑ⁻` and `γ₁` turns by
/// `2π/d_H` around `H`.
pub fn braided_reflection_path(
    a: &Arrangement,
    g: &GroupModel,
    h: usize,
    z: &[Complex64],
) -> Result<PathTrace> {
    let na = NumericArrangement::new(a);
    na.check_regular(z)?;
    let hp = a.hyperplane(h);
    let s = hp
        .distinguished_reflection
        .ok_or_else(|| Error::InvalidParameter(format!("hyperplane {} has no reflection", h)))?;
    let wp = waypoint(&na, h, z)?;
    let mut samples = vec![z.to_vec()];
    samples.extend(circle(&wp, &na, 2.0 * PI / hp.d as f64));
    samples.push(embed_point(g.element(s), z));
    Ok(integrate_numeric(&na, &samples)?.with_endpoint(s))
}

/// Path `t ↦ e^{iθt} z`, `t ∈ [0,1]`, ending at `λ·z` for the central element
/// acting by `λ = e^{iθ}`.
pub fn central_path(
    a: &Arrangement,
    z: &[Complex64],
    theta: f64,
    endpoint: usize,
) -> Result<PathTrace> {
    let na = NumericArrangement::new(a);
    let steps = 64;
    let samples: Vec<Point> = (0..=steps)
        .map(|k| {
            let f = Complex64::from_polar(1.0, theta * k as f64 / steps as f64);
            z.iter().map(|x| x * f).collect()
        })
        .collect();
    Ok(integrate_numeric(&na, &samples)?.with_endpoint(endpoint))
}

/// Basepoint with coordinates `p/97 + i q/97`, checked regular.
pub fn basepoint(a: &Arrangement, seed: u64) -> Result<Point> {
    let na = NumericArrangement::new(a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let p: Point = (0..a.dim())
            .map(|_| {
                Complex64::new(
                    rng.gen_range(-97i32..=97) as f64 / 97.0,
                    rng.gen_range(-97i32..=97) as f64 / 97.0,
                )
            })
            .collect();
        let far = (0..na.len()).all(|h| na.distance(h, &p) > 1e-3);
        if far && na.check_regular(&p).is_ok() {
            return Ok(p);
        }
    }
    Err(Error::InvalidParameter("no regular basepoint found".into()))
}

/// Random polyline from `z` through a few random points to `w·z`.
pub fn random_path(
    a: &Arrangement,
    g: &GroupModel,
    z: &[Complex64],
    rng: &mut ChaCha8Rng,
) -> Result<PathTrace> {
    let na = NumericArrangement::new(a);
    loop {
        let w = rng.gen_range(0..g.len());
        let hops = rng.gen_range(1..=3);
        let mut samples = vec![z.to_vec()];
        for _ in 0..hops {
            samples.push(
                (0..a.dim())
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            );
        }
        samples.push(embed_point(g.element(w), z));
        match integrate_numeric(&na, &samples) {
            Ok(t) => return Ok(t.with_endpoint(w)),
            Err(Error::OnHyperplane(_)) | Err(Error::TooCoarse(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyReport {
    pub basepoint: Vec<[f64; 2]>,
    /// Worst `|∫_H − 2πi|` over loops around each hyperplane.
    pub loop_error: f64,
    /// Worst `|∫_{H'}|` over the other hyperplanes of those loops.
    pub loop_leak: f64,
    /// Worst `|∫_H − 2πi/d_H|` over braided reflections.
    pub braided_error: f64,
    /// Worst `|∫_{H'}|` for hyperplanes with roots orthogonal to `e_H`.
    pub orthogonal_leak: f64,
    /// Worst `|M[H][H] − exp(2πi/d_H)|` at `h = 1`.
    pub diagonal_error: f64,
    /// Worst spectrum deviation between braided monodromy at `h = κ` and `R₀(s)`.
    pub spectrum_error: f64,
    /// Worst `|tr R_h(path) − χ_h(w)|` over random paths and `h ∈ {0,1,2}`.
    pub trace_error: f64,
    pub random_paths: usize,
    /// Worst `|∫_γ ω_H − (log ζ + 2πik)|` distance to `iθ + 2πiℤ` on random paths.
    pub winding_error: f64,
    /// Worst deviation of the central loop at `h = 1` from `λ·Id`.
    pub central_error: Option<f64>,
    /// Worst additivity defect under concatenation.
    pub additivity_error: f64,
}

fn dist_to_lattice(x: Complex64, target: Complex64) -> f64 {
    let d = x - target;
    let k = (d.im / (2.0 * PI)).round();
    (d - Complex64::new(0.0, 2.0 * PI * k)).norm()
}

/// Runs the numeric checks on a rank ≤ 2 group.
pub fn monodromy_suite(b: &BuiltGroup, seed: u64, random_paths: usize) -> Result<MonodromyReport> {
    let g = &b.group;
    let a = &b.arrangement;
    if g.dim() > 2 {
        return Err(Error::InvalidParameter(format!(
            "numeric monodromy is limited to rank 2, got rank {}",
            g.dim()
        )));
    }
    let na = NumericArrangement::new(a);
    let z = basepoint(a, seed)?;
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let kappa = crate::kappa::a_indices(g, a).kappa;
    let fam = ChiFamily::new(g, a);

    let mut loop_error: f64 = 0.0;
    let mut loop_leak: f64 = 0.0;
    let mut braided_error: f64 = 0.0;
    let mut orthogonal_leak: f64 = 0.0;
    let mut diagonal_error: f64 = 0.0;
    let mut spectrum_error: f64 = 0.0;
    let mut additivity_error: f64 = 0.0;
    for h in 0..a.len() {
        let l = loop_around_hyperplane(a, h, &z)?;
        loop_error = loop_error.max((l.integrals[h] - two_pi_i).norm());
        for k in (0..a.len()).filter(|&k| k != h) {
            loop_leak = loop_leak.max(l.integrals[k].norm());
        }
        let p = braided_reflection_path(a, g, h, &z)?;
        let d = a.hyperplane(h).d as f64;
        braided_error = braided_error.max((p.integrals[h] - two_pi_i / d).norm());
        for k in 0..a.len() {
            if k != h && na.hermitian(&na.roots[h], &na.roots[k]).norm() < 1e-12 {
                orthogonal_leak = orthogonal_leak.max(p.integrals[k].norm());
            }
        }
        let m1 = monodromy_matrix(a, g, &p, Complex64::new(1.0, 0.0))?;
        diagonal_error = diagonal_error.max((m1[h][h] - (two_pi_i / d).exp()).norm());
        let mk = monodromy_matrix(a, g, &p, Complex64::new(kappa as f64, 0.0))?;
        let m0 = monodromy_matrix(a, g, &p, Complex64::new(0.0, 0.0))?;
        spectrum_error = spectrum_error.max(spectrum_distance(&mk, &m0));

        // split the braided path at the circle and re-add
        let mid = p.samples.len() / 2;
        let first = integrate_numeric(&na, &p.samples[..=mid])?;
        let second = integrate_numeric(&na, &p.samples[mid..])?;
        let joined = first.then(&second);
        for (x, y) in joined.integrals.iter().zip(&p.integrals) {
            additivity_error = additivity_error.max((x - y).norm());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut trace_error: f64 = 0.0;
    let mut winding_error: f64 = 0.0;
    let chis: Vec<_> = (0..3).map(|h| fam.chi(h)).collect();
    for _ in 0..random_paths {
        let p = random_path(a, g, &z, &mut rng)?;
        let w = p.endpoint.expect("random paths carry their endpoint");
        for (h, chi) in chis.iter().enumerate() {
            let m = monodromy_matrix(a, g, &p, Complex64::new(h as f64, 0.0))?;
            let expect = chi.values[g.conjugacy_class_of(w)].embed();
            trace_error = trace_error.max((cmat_trace(&m) - expect).norm());
        }
        for (k, (target, c)) in a.root_action(g.element(w)).into_iter().enumerate() {
            if target == k {
                winding_error = winding_error.max(dist_to_lattice(p.integrals[k], c.embed().ln()));
            }
        }
    }

    let central_error = match g
        .center()
        .iter()
        .find(|&&zc| zc != 0 && g.is_scalar(zc).is_some())
    {
        Some(&zc) => {
            let lambda = g.is_scalar(zc).expect("scalar").embed();
            let path = central_path(a, &z, lambda.arg(), zc)?;
            let m = monodromy_matrix(a, g, &path, Complex64::new(1.0, 0.0))?;
            let mut worst: f64 = 0.0;
            for (i, row) in m.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let target = if i == j {
                        lambda
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    worst = worst.max((x - target).norm());
                }
            }
            Some(worst)
        }
        None => None,
    };

    Ok(MonodromyReport {
        basepoint: z.iter().map(|x| [x.re, x.im]).collect(),
        loop_error,
        loop_leak,
        braided_error,
        orthogonal_leak,
        diagonal_error,
        spectrum_error,
        trace_error,
        random_paths,
        winding_error,
        central_error,
        additivity_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, GroupSpec};
    use crate::matgroup::DEFAULT_ORDER_BOUND;
    use crate::CycNum;

    #[test]
    fn unit_circle_in_rank_one() {
        let a = Arrangement::from_forms(1, 1, &[vec![CycNum::one(1)]]).unwrap();
        let samples: Vec<Point> = (0..=16)
            .map(|k| vec![Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 16.0)])
            .collect();
        let t = integrate_path(&a, &samples).unwrap();
        assert!((t.integrals[0] - Complex64::new(0.0, 2.0 * PI)).norm() < 1e-8);
        // a coarse triangle still winds once: bisection is not needed for straight chords
        let coarse: Vec<Point> = (0..=3)
            .map(|k| vec![Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 3.0)])
            .collect();
        let t = integrate_path(&a, &coarse).unwrap();
        assert!((t.integrals[0] - Complex64::new(0.0, 2.0 * PI)).norm() < 1e-8);
    }

    #[test]
    fn rejects_points_on_hyperplanes() {
        let a = Arrangement::from_forms(1, 1, &[vec![CycNum::one(1)]]).unwrap();
        let bad = vec![
            vec![Complex64::new(1.0, 0.0)],
            vec![Complex64::new(0.0, 0.0)],
        ];
        assert!(matches!(
            integrate_path(&a, &bad),
            Err(Error::OnHyperplane(0))
        ));
        let through = vec![
            vec![Complex64::new(1.0, 0.0)],
            vec![Complex64::new(-1.0, 0.0)],
        ];
        assert!(integrate_path(&a, &through).is_err());
    }

    #[test]
    fn b2_braided_reflection() {
        let b = build(&GroupSpec::imprimitive(2, 1, 2), DEFAULT_ORDER_BOUND).unwrap();
        let a = &b.arrangement;
        let h = a
            .hyperplanes()
            .iter()
            .position(|x| x.alpha[1].is_zero())
            .unwrap();
        let other = a
            .hyperplanes()
            .iter()
            .position(|x| x.alpha[0].is_zero())
            .unwrap();
        let z = basepoint(a, 7).unwrap();
        let p = braided_reflection_path(a, &b.group, h, &z).unwrap();
        assert!((p.integrals[h] - Complex64::new(0.0, PI)).norm() < 1e-6);
        assert!(p.integrals[other].norm() < 1e-6);
    }

    #[test]
    fn g4_suite() {
        let b = build(&GroupSpec::exceptional(4), DEFAULT_ORDER_BOUND).unwrap();
        let r = monodromy_suite(&b, 1, 20).unwrap();
        assert!(r.loop_error < 1e-6, "{:?}", r);
        assert!(r.loop_leak < 1e-6, "{:?}", r);
        assert!(r.braided_error < 1e-6, "{:?}", r);
        assert!(r.diagonal_error < 1e-6, "{:?}", r);
        assert!(r.spectrum_error < 1e-5, "{:?}", r);
        assert!(r.trace_error < 1e-5, "{:?}", r);
        assert!(r.winding_error < 1e-6, "{:?}", r);
        assert!(r.central_error.unwrap() < 1e-6, "{:?}", r);
        assert!(r.additivity_error < 1e-9, "{:?}", r);
    }

    #[test]
    fn rank_three_is_refused() {
        let b = build(&GroupSpec::imprimitive(2, 1, 3), DEFAULT_ORDER_BOUND).unwrap();
        assert!(monodromy_suite(&b, 0, 1).is_err());
    }
}
