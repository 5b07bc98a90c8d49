//! Reflection arrangements: hyperplanes with forms, roots and orbits, the
//! root graph, intersection-lattice Poincaré polynomials and essentialization.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cyclo::{lcm, CycNum, Rational};
use crate::error::{Error, Result};
use crate::matgroup::{generate, invariant_hermitian_form, reflection_data, GroupModel};
use crate::matrix::{
    dot, hermitian, normalize_first_nonzero, nullspace, proportional, rank, solve_in_span,
    vector_key, Matrix, Vector,
};
use crate::poly::IntPoly;

/// Largest arrangement accepted by [`poincare_polynomial`].
pub const DESK_SCALE_HYPERPLANES: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hyperplane {
    /// Linear form `α_H`, first nonzero coordinate 1.
    pub alpha: Vector,
    /// Root `e_H` spanning the form-orthogonal line, first nonzero coordinate 1.
    pub root: Vector,
    /// Order of the pointwise fixer. Arrangements given by forms alone use 2.
    pub d: usize,
    pub distinguished_reflection: Option<usize>,
    pub orbit: usize,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    dim: usize,
    order: u32,
    hyperplanes: Vec<Hyperplane>,
    orbits: Vec<Vec<usize>>,
    form: Matrix,
    root_index: HashMap<Vec<Rational>, usize>,
    alpha_index: HashMap<Vec<Rational>, usize>,
}

impl Arrangement {
    fn assemble(
        dim: usize,
        order: u32,
        mut hyperplanes: Vec<Hyperplane>,
        orbits: Vec<Vec<usize>>,
        form: Matrix,
    ) -> Arrangement {
        for (o, members) in orbits.iter().enumerate() {
            for &h in members {
                hyperplanes[h].orbit = o;
            }
        }
        let root_index = hyperplanes
            .iter()
            .enumerate()
            .map(|(i, h)| (vector_key(&h.root), i))
            .collect();
        let alpha_index = hyperplanes
            .iter()
            .enumerate()
            .map(|(i, h)| (vector_key(&h.alpha), i))
            .collect();
        Arrangement {
            dim,
            order,
            hyperplanes,
            orbits,
            form,
            root_index,
            alpha_index,
        }
    }

    /// Arrangement given by linear forms only, with roots taken for the
    /// standard hermitian form and each hyperplane in its own orbit.
    pub fn from_forms(dim: usize, order: u32, forms: &[Vector]) -> Result<Arrangement> {
        let mut hyperplanes = Vec::new();
        let mut seen = HashMap::new();
        let mut order = order;
        for f in forms {
            order = f.iter().fold(order, |acc, x| lcm(acc, x.order()));
        }
        for (i, f) in forms.iter().enumerate() {
            if f.len() != dim {
                return Err(Error::Dimension(format!(
                    "form {} has length {}, expected {}",
                    i,
                    f.len(),
                    dim
                )));
            }
            let lifted: Vector = f.iter().map(|x| x.lift(order)).collect();
            let alpha = normalize_first_nonzero(&lifted)
                .ok_or_else(|| Error::InvalidParameter(format!("form {} is zero", i)))?;
            if seen.insert(vector_key(&alpha), i).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "form {} repeats a hyperplane",
                    i
                )));
            }
            let conj: Vector = alpha.iter().map(CycNum::conj).collect();
            let root = normalize_first_nonzero(&conj).expect("nonzero");
            hyperplanes.push(Hyperplane {
                alpha,
                root,
                d: 2,
                distinguished_reflection: None,
                orbit: 0,
            });
        }
        let orbits = (0..hyperplanes.len()).map(|i| vec![i]).collect();
        Ok(Arrangement::assemble(
            dim,
            order,
            hyperplanes,
            orbits,
            Matrix::identity(dim, order),
        ))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cyclotomic_order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, h: usize) -> &Hyperplane {
        &self.hyperplanes[h]
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn forms(&self) -> Vec<Vector> {
        self.hyperplanes.iter().map(|h| h.alpha.clone()).collect()
    }

    pub fn roots(&self) -> Vec<Vector> {
        self.hyperplanes.iter().map(|h| h.root.clone()).collect()
    }

    /// Hyperplane whose root spans the same line as `v`.
    pub fn hyperplane_of_root(&self, v: &[CycNum]) -> Option<usize> {
        let lifted: Vector = v
            .iter()
            .map(|x| x.lift(lcm(x.order(), self.order)))
            .collect();
        if lifted.first().is_some_and(|x| x.order() != self.order) {
            return None;
        }
        let n = normalize_first_nonzero(&lifted)?;
        self.root_index.get(&vector_key(&n)).copied()
    }

    /// Hyperplane with linear form proportional to `alpha`.
    pub fn hyperplane_of_form(&self, alpha: &[CycNum]) -> Option<usize> {
        let lifted: Vector = alpha
            .iter()
            .map(|x| x.lift(lcm(x.order(), self.order)))
            .collect();
        if lifted.first().is_some_and(|x| x.order() != self.order) {
            return None;
        }
        let n = normalize_first_nonzero(&lifted)?;
        self.alpha_index.get(&vector_key(&n)).copied()
    }

    /// For each hyperplane `H`, the pair `(w(H), c)` with `w·e_H = c·e_{w(H)}`.
    pub fn root_action(&self, w: &Matrix) -> Vec<(usize, CycNum)> {
        let w = w.lift(lcm(w.order(), self.order));
        self.hyperplanes
            .iter()
            .map(|h| {
                let v = w.apply(&h.root);
                let lead = v
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("invertible matrix maps roots to nonzero vectors");
                let target = self
                    .hyperplane_of_root(&v)
                    .expect("group element permutes the arrangement");
                let first = self.hyperplanes[target]
                    .root
                    .iter()
                    .position(|x| !x.is_zero());
                debug_assert_eq!(first, Some(lead));
                (target, v[lead].clone())
            })
            .collect()
    }

    /// Permutation `H ↦ w(H)`.
    pub fn permutation(&self, w: &Matrix) -> Vec<usize> {
        self.root_action(w).into_iter().map(|(h, _)| h).collect()
    }

    /// Sub-arrangement on the given hyperplanes (same ambient space).
    pub fn restrict(&self, indices: &[usize]) -> Arrangement {
        let pos: HashMap<usize, usize> = indices.iter().enumerate().map(|(i, &h)| (h, i)).collect();
        let hyperplanes = indices
            .iter()
            .map(|&h| self.hyperplanes[h].clone())
            .collect();
        let orbits = self
            .orbits
            .iter()
            .map(|o| {
                o.iter()
                    .filter_map(|h| pos.get(h).copied())
                    .collect::<Vec<_>>()
            })
            .filter(|o: &Vec<usize>| !o.is_empty())
            .collect();
        Arrangement::assemble(self.dim, self.order, hyperplanes, orbits, self.form.clone())
    }

    /// Direct sum `𝒜₁ × 𝒜₂` on `V₁ ⊕ V₂`.
    pub fn product(&self, other: &Arrangement) -> Arrangement {
        let order = lcm(self.order, other.order);
        let dim = self.dim + other.dim;
        let pad = |v: &Vector, before: usize, after: usize| -> Vector {
            let mut out = vec![CycNum::zero(order); before];
            out.extend(v.iter().map(|x| x.lift(order)));
            out.extend(vec![CycNum::zero(order); after]);
            out
        };
        let mut hyperplanes: Vec<Hyperplane> = self
            .hyperplanes
            .iter()
            .map(|h| Hyperplane {
                alpha: pad(&h.alpha, 0, other.dim),
                root: pad(&h.root, 0, other.dim),
                ..h.clone()
            })
            .collect();
        hyperplanes.extend(other.hyperplanes.iter().map(|h| Hyperplane {
            alpha: pad(&h.alpha, self.dim, 0),
            root: pad(&h.root, self.dim, 0),
            ..h.clone()
        }));
        let shift = self.len();
        let mut orbits = self.orbits.clone();
        orbits.extend(
            other
                .orbits
                .iter()
                .map(|o| o.iter().map(|h| h + shift).collect()),
        );
        let mut form = Matrix::zero(dim, order);
        for i in 0..self.dim {
            for j in 0..self.dim {
                form.set(i, j, self.form.get(i, j).lift(order));
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                form.set(self.dim + i, self.dim + j, other.form.get(i, j).lift(order));
            }
        }
        Arrangement::assemble(dim, order, hyperplanes, orbits, form)
    }
}

/// Extracts `(𝒜, d)` from a reflection group, with roots for its invariant
/// hermitian form and orbits under the generators.
pub fn arrangement_of(g: &GroupModel) -> Result<Arrangement> {
    let data = reflection_data(g);
    let form = invariant_hermitian_form(g)?;
    let finv = form
        .inverse()
        .expect("positive definite form is invertible");
    let order = g.cyclotomic_order();
    let mut hyperplanes = Vec::with_capacity(data.forms.len());
    for (h, alpha) in data.forms.iter().enumerate() {
        let conj: Vector = alpha.iter().map(CycNum::conj).collect();
        let root = normalize_first_nonzero(&finv.apply(&conj)).expect("nonzero root");
        let refl = data
            .reflections
            .iter()
            .find(|r| r.hyperplane == h && r.distinguished)
            .or_else(|| data.reflections.iter().find(|r| r.hyperplane == h))
            .expect("every hyperplane carries a reflection");
        // the root must span the image of s - 1
        let image = g
            .element(refl.element)
            .sub(&Matrix::identity(g.dim(), order));
        let col = (0..g.dim())
            .map(|j| image.column(j))
            .find(|c| c.iter().any(|x| !x.is_zero()))
            .expect("reflection differs from the identity");
        if !proportional(&col, &root) {
            return Err(Error::NotPositive(format!(
                "root of hyperplane {} is not an eigenvector of its reflection",
                h
            )));
        }
        hyperplanes.push(Hyperplane {
            alpha: alpha.clone(),
            root,
            d: data.orders[h],
            distinguished_reflection: Some(refl.element),
            orbit: 0,
        });
    }
    let mut a = Arrangement::assemble(g.dim(), order, hyperplanes, Vec::new(), form);

    let perms: Vec<Vec<usize>> = g.generators().iter().map(|w| a.permutation(w)).collect();
    let mut orbit_of = vec![usize::MAX; a.len()];
    let mut orbits = Vec::new();
    for start in 0..a.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(h) = queue.pop_front() {
            for p in &perms {
                let k = p[h];
                if orbit_of[k] == usize::MAX {
                    orbit_of[k] = id;
                    members.push(k);
                    queue.push_back(k);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    a = Arrangement::assemble(a.dim, a.order, a.hyperplanes, orbits, a.form);
    Ok(a)
}

/// The forms span the dual space.
pub fn is_essential(a: &Arrangement) -> bool {
    a.dim == 0 || rank(a.forms()) == a.dim
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootGraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Graph on the roots of `vertices`, joining non-orthogonal pairs.
pub fn root_graph(a: &Arrangement, vertices: &[usize]) -> RootGraph {
    let mut edges = Vec::new();
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            if !hermitian(&a.form, &a.hyperplanes[u].root, &a.hyperplanes[v].root).is_zero() {
                edges.push((u, v));
            }
        }
    }
    RootGraph {
        vertices: vertices.to_vec(),
        edges,
    }
}

#[derive(Clone, Debug)]
pub enum Irreducibility {
    /// A basis of roots with connected root graph.
    Irreducible { basis: Vec<usize> },
    /// Orthogonal decomposition, one part per connected component.
    Reducible { parts: Vec<Arrangement> },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible { .. })
    }
}

/// Greedy growth of a connected independent set of roots: repeatedly add the
/// lowest-indexed root that is independent of the set and not orthogonal to
/// one of its members.
pub fn connected_root_basis(a: &Arrangement) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    if a.is_empty() {
        return chosen;
    }
    chosen.push(0);
    loop {
        let span: Vec<Vector> = chosen
            .iter()
            .map(|&h| a.hyperplanes[h].root.clone())
            .collect();
        let next = (0..a.len()).find(|&h| {
            !chosen.contains(&h)
                && chosen.iter().any(|&c| {
                    !hermitian(&a.form, &a.hyperplanes[c].root, &a.hyperplanes[h].root).is_zero()
                })
                && solve_in_span(&span, &a.hyperplanes[h].root, a.order).is_none()
        });
        match next {
            Some(h) => chosen.push(h),
            None => return chosen,
        }
    }
}

/// Connected components of the root graph on all hyperplanes.
pub fn root_components(a: &Arrangement) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..a.len()).collect();
    let graph = root_graph(a, &all);
    let mut adj = vec![Vec::new(); a.len()];
    for &(u, v) in &graph.edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut comp = vec![usize::MAX; a.len()];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for s in 0..a.len() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = parts.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    members.push(v);
                    queue.push_back(v);
                }
            }
        }
        members.sort_unstable();
        parts.push(members);
    }
    parts
}

pub fn irreducibility(a: &Arrangement) -> Result<Irreducibility> {
    if !is_essential(a) {
        return Err(Error::NotEssential);
    }
    let basis = connected_root_basis(a);
    if basis.len() == a.dim {
        return Ok(Irreducibility::Irreducible { basis });
    }
    let parts = root_components(a).iter().map(|c| a.restrict(c)).collect();
    Ok(Irreducibility::Reducible { parts })
}

/// Poincaré polynomial `Σ_X μ(X) (−t)^{rank X}` of the intersection lattice.
pub fn poincare_polynomial(a: &Arrangement) -> Result<IntPoly> {
    if a.len() > DESK_SCALE_HYPERPLANES {
        return Err(Error::TooManyHyperplanes {
            count: a.len(),
            bound: DESK_SCALE_HYPERPLANES,
        });
    }
    let forms = a.forms();
    // flats as bitmasks of the hyperplanes containing them, grouped by rank
    let closure = |mask: u32| -> u32 {
        let basis: Vec<Vector> = (0..forms.len())
            .filter(|&h| mask & (1 << h) != 0)
            .map(|h| forms[h].clone())
            .collect();
        let flat = nullspace(&basis, a.dim(), a.cyclotomic_order());
        (0..forms.len())
            .filter(|&h| flat.iter().all(|v| dot(&forms[h], v).is_zero()))
            .fold(0, |m, h| m | (1 << h))
    };
    let mut levels: Vec<Vec<u32>> = vec![vec![0]];
    loop {
        let mut next: Vec<u32> = Vec::new();
        for &x in levels.last().unwrap() {
            for h in 0..forms.len() {
                let joined = x | (1 << h);
                if x & (1 << h) != 0 || next.iter().any(|&y| y & joined == joined) {
                    continue;
                }
                next.push(closure(joined));
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        levels.push(next);
    }
    let mut mobius: HashMap<u32, i64> = HashMap::new();
    let mut coeffs = vec![0i64; levels.len()];
    for (rk, level) in levels.iter().enumerate() {
        for &x in level {
            let mu = if rk == 0 {
                1
            } else {
                -levels[..rk]
                    .iter()
                    .flatten()
                    .filter(|&&y| y & x == y)
                    .map(|y| mobius[y])
                    .sum::<i64>()
            };
            mobius.insert(x, mu);
            let sign = if rk % 2 == 0 { 1 } else { -1 };
            coeffs[rk] += sign * mu;
        }
    }
    Ok(IntPoly::new(coeffs))
}

/// Restricts `g` to the span of its roots, returning the essential model.
pub fn essentialize(g: &GroupModel) -> Result<(GroupModel, Arrangement)> {
    let a = arrangement_of(g)?;
    let order = g.cyclotomic_order();
    let mut basis: Vec<Vector> = Vec::new();
    for h in a.hyperplanes() {
        if solve_in_span(&basis, &h.root, order).is_none() {
            basis.push(h.root.clone());
        }
    }
    if basis.len() == g.dim() {
        return Ok((g.clone(), a));
    }
    if basis.is_empty() {
        return Err(Error::InvalidParameter("group has no reflections".into()));
    }
    let k = basis.len();
    let mut gens = Vec::new();
    for w in g.generators() {
        let mut m = Matrix::zero(k, order);
        for (j, b) in basis.iter().enumerate() {
            let coords = solve_in_span(&basis, &w.apply(b), order)
                .expect("the root span is stable under the group");
            for (i, c) in coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        gens.push(m);
    }
    let h = generate(&gens, g.order_bound())?;
    let a = arrangement_of(&h)?;
    Ok((h, a))
}

/// Roots rescaled along each orbit so that every generator maps each root to
/// plus or minus another. Later orbits are first rescaled into the real span
/// of the roots already placed, when that is possible.
pub fn signed_roots(g: &GroupModel, a: &Arrangement) -> Result<Vec<Vector>> {
    let order = a.order;
    let mut assigned: Vec<Option<Vector>> = vec![None; a.len()];
    let mut basis: Vec<Vector> = Vec::new();
    let gens: Vec<Matrix> = g.generators().iter().map(|w| w.lift(order)).collect();
    for orbit in &a.orbits {
        let start = orbit[0];
        let mut e = a.hyperplanes[start].root.clone();
        match solve_in_span(&basis, &e, order) {
            Some(c) => {
                let lead = c
                    .iter()
                    .find(|x| !x.is_zero())
                    .expect("nonzero root")
                    .conj();
                if c.iter().all(|x| {
                    let y = x * &lead;
                    y == y.conj()
                }) {
                    e = e.iter().map(|x| x * &lead).collect();
                }
            }
            None => basis.push(e.clone()),
        }
        assigned[start] = Some(e);
        let mut queue = VecDeque::from([start]);
        while let Some(h) = queue.pop_front() {
            let eh = assigned[h].clone().expect("assigned");
            for w in &gens {
                let v = w.apply(&eh);
                let k = a
                    .hyperplane_of_root(&v)
                    .expect("group element permutes the arrangement");
                match &assigned[k] {
                    None => {
                        assigned[k] = Some(v);
                        queue.push_back(k);
                    }
                    Some(ek) => {
                        let neg: Vector = ek.iter().map(|x| -x).collect();
                        if &v != ek && v != neg {
                            return Err(Error::NotCoxeter(format!(
                                "a generator maps the root of hyperplane {} to a non-real multiple of a root",
                                h
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(assigned
        .into_iter()
        .map(|e| e.expect("every orbit visited"))
        .collect())
}

fn certified(sign: Option<Ordering>) -> Result<Ordering> {
    sign.ok_or_else(|| {
        Error::NotPositive("sign of a root coordinate could not be certified".into())
    })
}

/// Lexicographic positivity on `(Re z₁, Im z₁, Re z₂, …)`.
pub fn lex_positive(v: &[CycNum]) -> Result<bool> {
    for x in v {
        match certified(x.re_part().real_sign())? {
            Ordering::Greater => return Ok(true),
            Ordering::Less => return Ok(false),
            Ordering::Equal => {}
        }
        let y = x.im_part_times_i();
        if y.is_zero() {
            continue;
        }
        let im = y.embed().im;
        let mass: f64 = y
            .coeffs()
            .iter()
            .map(|c| crate::cyclo::rat_to_f64(c).abs())
            .sum();
        if im.abs() <= 1e-9 * (1.0 + mass) {
            certified(None)?;
        }
        return Ok(im > 0.0);
    }
    Err(Error::InvalidParameter("zero vector has no sign".into()))
}

/// Signed roots made lexicographically positive.
pub fn positive_roots(g: &GroupModel, a: &Arrangement) -> Result<Vec<Vector>> {
    signed_roots(g, a)?
        .into_iter()
        .map(|e| {
            Ok(if lex_positive(&e)? {
                e
            } else {
                e.iter().map(|x| -x).collect()
            })
        })
        .collect()
}

/// Plain arrangement input: `{"dim", "cyclotomic_order", "hyperplanes"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrangementSpec {
    pub dim: usize,
    #[serde(default = "one")]
    pub cyclotomic_order: u32,
    pub hyperplanes: Vec<Vec<crate::cyclo::CycLiteral>>,
}

fn one() -> u32 {
    1
}

impl ArrangementSpec {
    pub fn build(&self) -> Result<Arrangement> {
        if self.cyclotomic_order == 0 {
            return Err(Error::Spec("cyclotomic_order must be positive".into()));
        }
        let forms = self
            .hyperplanes
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.to_cyc(self.cyclotomic_order))
                    .collect()
            })
            .collect::<Result<Vec<Vector>>>()?;
        Arrangement::from_forms(self.dim, self.cyclotomic_order, &forms)
    }
}
