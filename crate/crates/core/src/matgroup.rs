//! Finite matrix groups over a cyclotomic field.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::cyclo::{lcm, CycNum, Rational};
use crate::error::{Error, Result};
use crate::matrix::{normalize_first_nonzero, vector_key, Matrix, Vector};
use crate::poly::minimal_polynomial;

pub const DEFAULT_ORDER_BOUND: usize = 10_000;

/// A finite matrix group with its full element list, conjugacy classes and
/// center. Element 0 is always the identity.
#[derive(Clone, Debug)]
pub struct GroupModel {
    dim: usize,
    order: u32,
    order_bound: usize,
    generators: Vec<Matrix>,
    generator_indices: Vec<usize>,
    elements: Vec<Matrix>,
    index: HashMap<Vec<Rational>, usize>,
    inverses: Vec<usize>,
    element_orders: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    center: Vec<usize>,
}

/// Breadth-first closure of `generators` under left multiplication.
pub fn generate(generators: &[Matrix], order_bound: usize) -> Result<GroupModel> {
    let dim = generators
        .first()
        .map(Matrix::dim)
        .ok_or_else(|| Error::Dimension("at least one generator is required".into()))?;
    if let Some(bad) = generators.iter().position(|g| g.dim() != dim) {
        return Err(Error::Dimension(format!(
            "generator {} has dimension {}, expected {}",
            bad,
            generators[bad].dim(),
            dim
        )));
    }
    let order = generators.iter().fold(1, |acc, g| lcm(acc, g.order()));
    let gens: Vec<Matrix> = generators.iter().map(|g| g.lift(order)).collect();
    for (i, g) in gens.iter().enumerate() {
        if g.det().is_zero() {
            return Err(Error::SingularGenerator(i));
        }
    }

    let identity = Matrix::identity(dim, order);
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity.key(), 0usize);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let y = g.mul(&elements[i]);
            let key = y.key();
            if index.contains_key(&key) {
                continue;
            }
            if elements.len() >= order_bound {
                return Err(Error::NotFinite(order_bound));
            }
            index.insert(key, elements.len());
            queue.push_back(elements.len());
            elements.push(y);
        }
    }
    Ok(GroupModel::assemble(
        dim,
        order,
        order_bound,
        gens,
        elements,
        index,
    ))
}

impl GroupModel {
    fn assemble(
        dim: usize,
        order: u32,
        order_bound: usize,
        generators: Vec<Matrix>,
        elements: Vec<Matrix>,
        index: HashMap<Vec<Rational>, usize>,
    ) -> GroupModel {
        let n = elements.len();
        let generator_indices: Vec<usize> = generators.iter().map(|g| index[&g.key()]).collect();

        // orders and inverses from powers
        let mut element_orders = vec![0usize; n];
        let mut inverses = vec![0usize; n];
        for i in 0..n {
            let x = &elements[i];
            let mut prev = Matrix::identity(dim, order);
            let mut p = x.clone();
            let mut k = 1;
            while !p.is_identity() {
                prev = p.clone();
                p = p.mul(x);
                k += 1;
            }
            element_orders[i] = k;
            inverses[i] = index[&prev.key()];
        }

        // conjugacy classes: orbits of x ↦ g x g⁻¹ over generators
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut members = vec![start];
            class_of[start] = cid;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &gi in &generator_indices {
                    let y = elements[gi].mul(&elements[x]).mul(&elements[inverses[gi]]);
                    let yi = index[&y.key()];
                    if class_of[yi] == usize::MAX {
                        class_of[yi] = cid;
                        members.push(yi);
                        queue.push_back(yi);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }

        let center = (0..n)
            .filter(|&i| {
                generator_indices
                    .iter()
                    .all(|&gi| elements[gi].mul(&elements[i]) == elements[i].mul(&elements[gi]))
            })
            .collect();

        GroupModel {
            dim,
            order,
            order_bound,
            generators,
            generator_indices,
            elements,
            index,
            inverses,
            element_orders,
            classes,
            class_of,
            center,
        }
    }

    /// Subgroup from a known closed element list (identity first).
    fn subgroup(&self, generators: Vec<Matrix>, members: &[usize]) -> GroupModel {
        let elements: Vec<Matrix> = members.iter().map(|&i| self.elements[i].clone()).collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, m)| (m.key(), i))
            .collect();
        GroupModel::assemble(
            self.dim,
            self.order,
            self.order_bound,
            generators,
            elements,
            index,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Cyclotomic order shared by all entries.
    pub fn cyclotomic_order(&self) -> u32 {
        self.order
    }

    pub fn order_bound(&self) -> usize {
        self.order_bound
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(&m.lift(self.order).key()).copied()
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn element_order(&self, i: usize) -> usize {
        self.element_orders[i]
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].mul(&self.elements[j]).key()]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn class_representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn center(&self) -> &[usize] {
        &self.center
    }

    /// Exponent of the center (lcm of element orders).
    pub fn center_exponent(&self) -> usize {
        self.center
            .iter()
            .fold(1, |acc, &z| num_integer::lcm(acc, self.element_orders[z]))
    }

    /// Index of the class containing element `w`.
    pub fn conjugacy_class_of(&self, w: usize) -> usize {
        self.class_of[w]
    }

    /// Exact semisimplicity test: the minimal polynomial is squarefree.
    pub fn is_semisimple(&self, w: usize) -> bool {
        minimal_polynomial(&self.elements[w]).is_squarefree()
    }

    /// `true` when every element acts by a scalar on `V`.
    pub fn is_scalar(&self, w: usize) -> Option<CycNum> {
        let m = &self.elements[w];
        let d = m.get(0, 0).clone();
        let ok = (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let x = m.get(i, j);
                if i == j {
                    *x == d
                } else {
                    x.is_zero()
                }
            })
        });
        ok.then_some(d)
    }
}

/// A reflection of a group together with its hyperplane class.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reflection {
    pub element: usize,
    pub hyperplane: usize,
    pub eigenvalue: CycNum,
    pub distinguished: bool,
}

/// Reflections grouped by reflecting hyperplane.
#[derive(Clone, Debug)]
pub struct ReflectionData {
    pub reflections: Vec<Reflection>,
    /// Normalized linear form of each hyperplane (first nonzero entry 1).
    pub forms: Vec<Vector>,
    /// Order `d_H` of the pointwise fixer of each hyperplane.
    pub orders: Vec<usize>,
}

/// Classifies all reflections; hyperplanes are numbered by first appearance
/// in the element list.
pub fn reflection_data(g: &GroupModel) -> ReflectionData {
    let id = Matrix::identity(g.dim(), g.cyclotomic_order());
    let mut forms: Vec<Vector> = Vec::new();
    let mut by_key: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut raw = Vec::new();
    for (i, w) in g.elements().iter().enumerate().skip(1) {
        let diff = w.sub(&id);
        if diff.rank() != 1 {
            continue;
        }
        // the rows of w - 1 span the annihilator of the fixed hyperplane
        let alpha = diff
            .rows()
            .into_iter()
            .find_map(|row| normalize_first_nonzero(&row))
            .expect("rank one matrix has a nonzero row");
        let key = vector_key(&alpha);
        let h = *by_key.entry(key).or_insert_with(|| {
            forms.push(alpha.clone());
            forms.len() - 1
        });
        raw.push((i, h, w.det()));
    }
    let mut orders = vec![1usize; forms.len()];
    for (_, h, _) in &raw {
        orders[*h] += 1;
    }
    let reflections = raw
        .into_iter()
        .map(|(element, hyperplane, eigenvalue)| {
            let d = orders[hyperplane] as u32;
            let zeta_h = CycNum::zeta_pow(
                lcm(2, g.cyclotomic_order()),
                (lcm(2, g.cyclotomic_order()) / d) as i64,
            );
            let distinguished = eigenvalue == zeta_h;
            Reflection {
                element,
                hyperplane,
                eigenvalue,
                distinguished,
            }
        })
        .collect();
    ReflectionData {
        reflections,
        forms,
        orders,
    }
}

pub fn reflections(g: &GroupModel) -> Vec<Reflection> {
    reflection_data(g).reflections
}

/// `W`-invariant hermitian form `Σ_w w* w`, normalized so the `(0,0)` entry
/// is 1, with an exact positive-definiteness certificate on the leading
/// principal minors.
pub fn invariant_hermitian_form(g: &GroupModel) -> Result<Matrix> {
    let mut f = Matrix::zero(g.dim(), g.cyclotomic_order());
    for w in g.elements() {
        f = f.add(&w.conj_transpose().mul(w));
    }
    let lead = f
        .get(0, 0)
        .inv()
        .map_err(|_| Error::NotPositive("zero diagonal".into()))?;
    let f = f.scale(&lead);
    for w in g.generators() {
        if w.conj_transpose().mul(&f).mul(w) != f {
            return Err(Error::NotPositive("averaged form is not invariant".into()));
        }
    }
    if f.conj_transpose() != f {
        return Err(Error::NotPositive("averaged form is not hermitian".into()));
    }
    for k in 1..=g.dim() {
        let rows: Vec<Vector> = f.rows()[..k].iter().map(|r| r[..k].to_vec()).collect();
        let minor = Matrix::from_rows(rows, f.order())?.det();
        let float_ok = minor.embed().re > 0.0;
        match minor.real_sign() {
            Some(std::cmp::Ordering::Greater) if float_ok => {}
            Some(_) => {
                return Err(Error::NotPositive(format!(
                    "leading minor {} is {}",
                    k, minor
                )))
            }
            None => {
                return Err(Error::NotPositive(format!(
                    "sign of leading minor {} ({}) could not be certified",
                    k, minor
                )))
            }
        }
    }
    Ok(f)
}

/// Pointwise fixer of `v`, generated by the reflections of `g` that fix `v`.
pub fn parabolic_fixer(g: &GroupModel, v: &[CycNum]) -> Result<GroupModel> {
    if v.len() != g.dim() {
        return Err(Error::Dimension(format!(
            "vector of length {} in dimension {}",
            v.len(),
            g.dim()
        )));
    }
    if v.iter().all(CycNum::is_zero) {
        return Err(Error::InvalidParameter(
            "fixer of the zero vector is the whole group".into(),
        ));
    }
    let v: Vector = v
        .iter()
        .map(|x| x.lift(lcm(x.order(), g.cyclotomic_order())))
        .collect();
    let members: Vec<usize> = (0..g.len())
        .filter(|&i| g.element(i).apply(&v) == v)
        .collect();
    let refl = reflections(g);
    let generators: Vec<Matrix> = refl
        .iter()
        .filter(|r| members.binary_search(&r.element).is_ok())
        .map(|r| g.element(r.element).clone())
        .collect();
    Ok(g.subgroup(generators, &members))
}

/// Shortest word for each element in the letters `a, b, c, …` naming the
/// generators; the word `xy` stands for the product `x·y`.
pub fn shortest_words(g: &GroupModel) -> Vec<String> {
    let mut words: Vec<Option<String>> = vec![None; g.len()];
    words[0] = Some(String::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let wx = words[x].clone().expect("visited");
        for (k, &gi) in g.generator_indices().iter().enumerate() {
            let y = g.product(gi, x);
            if words[y].is_none() {
                let letter = char::from_u32('a' as u32 + k as u32).unwrap_or('?');
                words[y] = Some(format!("{}{}", letter, wx));
                queue.push_back(y);
            }
        }
    }
    words.into_iter().map(|w| w.unwrap_or_default()).collect()
}

pub fn conjugacy_class_of(g: &GroupModel, w: usize) -> usize {
    g.conjugacy_class_of(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{g4_generators, imprimitive_generators};

    fn g4() -> GroupModel {
        generate(&g4_generators(), DEFAULT_ORDER_BOUND).unwrap()
    }

    #[test]
    fn g4_has_order_24() {
        let g = g4();
        assert_eq!(g.len(), 24);
        assert_eq!(g.center().len(), 2);
        assert_eq!(g.class_sizes().iter().sum::<usize>(), 24);
        assert!(g.class_sizes().iter().all(|s| 24 % s == 0));
    }

    #[test]
    fn trivial_group() {
        let g = generate(&[Matrix::identity(2, 1)], 10).unwrap();
        assert_eq!(g.len(), 1);
        assert!(reflections(&g).is_empty());
    }

    #[test]
    fn closure_bound_and_singular_generators() {
        let gens = imprimitive_generators(6, 1, 3);
        assert_eq!(generate(&gens, 100).unwrap_err(), Error::NotFinite(100));
        let sing = Matrix::zero(2, 1);
        assert_eq!(
            generate(&[sing], 10).unwrap_err(),
            Error::SingularGenerator(0)
        );
        let two = Matrix::diagonal(vec![CycNum::from_int(1, 2)], 1);
        assert_eq!(generate(&[two], 50).unwrap_err(), Error::NotFinite(50));
    }

    #[test]
    fn b2_order_and_reflections() {
        // brute-force oracle: |G(de,e,r)| = (de)^r r! / e
        let g = generate(&imprimitive_generators(2, 1, 2), DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(g.len(), 2 * 2 * 2);
        let r = reflections(&g);
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|x| x.distinguished));
        for (d, e, rank) in [(3, 1, 2), (1, 3, 3), (2, 2, 3), (4, 1, 2)] {
            let g = generate(&imprimitive_generators(d, e, rank), DEFAULT_ORDER_BOUND).unwrap();
            let m = (d * e) as usize;
            let fact: usize = (1..=rank).product();
            assert_eq!(g.len(), m.pow(rank as u32) * fact / e as usize);
        }
    }

    #[test]
    fn g4_reflections() {
        let g = g4();
        let data = reflection_data(&g);
        assert_eq!(data.reflections.len(), 8);
        assert_eq!(data.forms.len(), 4);
        assert!(data.orders.iter().all(|&d| d == 3));
        assert_eq!(
            data.reflections.iter().filter(|r| r.distinguished).count(),
            4
        );
        // distinguished reflection class has size 4
        let s = data.reflections.iter().find(|r| r.distinguished).unwrap();
        let c = g.conjugacy_class_of(s.element);
        assert_eq!(g.classes()[c].len(), 4);
        let id_class = g.conjugacy_class_of(0);
        assert_eq!(g.classes()[id_class].len(), 1);
        for &z in g.center() {
            assert_eq!(g.classes()[g.conjugacy_class_of(z)].len(), 1);
        }
    }

    #[test]
    fn reflections_closed_under_conjugation() {
        let g = g4();
        let data = reflection_data(&g);
        let refl_elems: Vec<usize> = data.reflections.iter().map(|r| r.element).collect();
        for &x in &refl_elems {
            for &gi in g.generator_indices() {
                let y = g.product(g.product(gi, x), g.inverse(gi));
                assert!(refl_elems.contains(&y));
                let rx = data.reflections.iter().find(|r| r.element == x).unwrap();
                let ry = data.reflections.iter().find(|r| r.element == y).unwrap();
                assert_eq!(rx.eigenvalue, ry.eigenvalue);
            }
        }
    }

    #[test]
    fn every_element_is_semisimple() {
        let g = g4();
        assert!((0..g.len()).all(|w| g.is_semisimple(w)));
    }

    #[test]
    fn invariant_form_of_monomial_group_is_identity() {
        let g = generate(&imprimitive_generators(4, 2, 2), DEFAULT_ORDER_BOUND).unwrap();
        let f = invariant_hermitian_form(&g).unwrap();
        assert_eq!(f, Matrix::identity(2, g.cyclotomic_order()));
    }

    #[test]
    fn invariant_form_transforms_contragrediently() {
        // conjugate G(3,1,2) by an integer change of basis P: forms go to P* F P
        let g = generate(&imprimitive_generators(3, 1, 2), DEFAULT_ORDER_BOUND).unwrap();
        let p = Matrix::from_rows(
            vec![
                vec![CycNum::from_int(3, 1), CycNum::from_int(3, 1)],
                vec![CycNum::from_int(3, 0), CycNum::from_int(3, 1)],
            ],
            3,
        )
        .unwrap();
        let pinv = p.inverse().unwrap();
        let conj_gens: Vec<Matrix> = g.generators().iter().map(|w| pinv.mul(w).mul(&p)).collect();
        let h = generate(&conj_gens, DEFAULT_ORDER_BOUND).unwrap();
        let fh = invariant_hermitian_form(&h).unwrap();
        let expected = p.conj_transpose().mul(&Matrix::identity(2, 3)).mul(&p);
        let ratio = fh.get(0, 0).checked_div(expected.get(0, 0)).unwrap();
        assert_eq!(fh, expected.scale(&ratio));
    }

    #[test]
    fn words_evaluate_to_their_elements() {
        let g = g4();
        let words = shortest_words(&g);
        assert_eq!(words[0], "");
        for (i, w) in words.iter().enumerate() {
            let m = crate::catalog::word_element(g.generators(), w).unwrap();
            assert_eq!(g.index_of(&m), Some(i));
        }
    }

    #[test]
    fn parabolic_fixers() {
        let g = g4();
        let regular = vec![CycNum::from_int(3, 1), CycNum::from_int(3, 5)];
        assert_eq!(parabolic_fixer(&g, &regular).unwrap().len(), 1);
        let data = reflection_data(&g);
        // a point on the first hyperplane: kernel of its form
        let a = &data.forms[0];
        let v = vec![-a[1].clone(), a[0].clone()];
        let w0 = parabolic_fixer(&g, &v).unwrap();
        assert_eq!(w0.len(), 3);
        assert!(w0.center().len() == 3);
        assert!(parabolic_fixer(&g, &[CycNum::zero(3), CycNum::zero(3)]).is_err());
    }
}
