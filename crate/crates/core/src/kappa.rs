//! 𝒜-indices and κ(W).

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::matgroup::GroupModel;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AIndexReport {
    /// Orders of the scalars `ζ` with `w·e_H = ζ e_H`.
    pub indices: BTreeSet<u32>,
    pub kappa: u32,
    /// One `(element, hyperplane)` pair per index.
    pub witnesses: BTreeMap<u32, (usize, usize)>,
}

pub fn a_indices(g: &GroupModel, a: &Arrangement) -> AIndexReport {
    let mut witnesses = BTreeMap::new();
    for w in 0..g.len() {
        for (h, (target, c)) in a.root_action(g.element(w)).into_iter().enumerate() {
            if target != h {
                continue;
            }
            let k = c
                .as_root_of_unity()
                .expect("finite group acts on a fixed root line by a root of unity");
            witnesses.entry(k).or_insert((w, h));
        }
    }
    let indices: BTreeSet<u32> = witnesses.keys().copied().collect();
    let kappa = indices.iter().fold(1, |acc, &k| num_integer::lcm(acc, k));
    AIndexReport {
        indices,
        kappa,
        witnesses,
    }
}

/// The closed form for `κ(G(de,e,r))`: `de` when `d ≠ 1` or `r ≥ 3`, `2` for
/// `G(e,e,2)`, and `d` in rank one.
pub fn kappa_formula(d: u32, e: u32, r: usize) -> Result<u32> {
    if d == 0 || e == 0 || r == 0 {
        return Err(Error::InvalidParameter(
            "d, e and r must be positive".into(),
        ));
    }
    if r == 1 {
        if d < 2 {
            return Err(Error::InvalidParameter(format!(
                "G({},{},1) is trivial",
                d * e,
                e
            )));
        }
        return Ok(d);
    }
    if (d, e, r) == (1, 1, 2) {
        return Err(Error::InvalidParameter("G(1,1,2) is excluded".into()));
    }
    if d == 1 && r == 2 {
        return Ok(2);
    }
    Ok(d * e)
}

/// κ for the exceptional groups, indexed by Shephard–Todd number.
pub fn reference_kappa_table() -> BTreeMap<u32, u32> {
    [
        (4, 6),
        (5, 6),
        (6, 12),
        (7, 12),
        (8, 4),
        (9, 8),
        (10, 12),
        (11, 24),
        (12, 2),
        (13, 8),
        (14, 6),
        (15, 24),
        (16, 10),
        (17, 20),
        (18, 30),
        (19, 60),
        (20, 6),
        (21, 12),
        (22, 4),
        (23, 2),
        (24, 2),
        (25, 6),
        (26, 6),
        (27, 6),
        (28, 2),
        (29, 4),
        (30, 2),
        (31, 4),
        (32, 6),
        (33, 6),
        (34, 6),
        (35, 2),
        (36, 2),
        (37, 2),
    ]
    .into_iter()
    .collect()
}

pub fn divisors(n: u32) -> BTreeSet<u32> {
    (1..=n).filter(|k| n.is_multiple_of(*k)).collect()
}
