//! Tate cohomology in degrees -1 and 0, first group cohomology, and the
//! flasque / coflasque tests built on them.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::group::{max_group_order, Subgroup};
use super::lattice::GLattice;
use crate::abelian::{hermite_rows, smith_normal_form, solve_echelon, IntegerMatrix, InvariantFactors, PresentedGroup};
use crate::error::{Error, Result};

/// `L / S` for lattices `S ⊆ L ⊆ Z^r`, given by a basis of `L` and generators
/// of `S` (both as columns).
fn quotient_of_lattices(l_basis: &IntegerMatrix, s_gens: &IntegerMatrix) -> InvariantFactors {
    let k = l_basis.cols();
    if s_gens.cols() == 0 {
        return InvariantFactors::free(k);
    }
    let s = smith_normal_form(l_basis);
    let rows: Vec<Vec<BigInt>> = s_gens
        .columns()
        .iter()
        .map(|c| s.solve(c).expect("sublattice lies in the ambient lattice"))
        .collect();
    PresentedGroup::new(k, IntegerMatrix::from_rows(k, &rows))
        .expect("shape")
        .canonical_form()
}

/// `Ĥ^{-1}(H, M) = ker(N_H) / I_H M`.
pub fn tate_h_minus1(h: &Subgroup, m: &GLattice) -> InvariantFactors {
    let norm = m.norm_matrix(h);
    let kernel = smith_normal_form(&norm).kernel_basis();
    let id = IntegerMatrix::identity(m.rank());
    let mut augmentation = IntegerMatrix::zeros(m.rank(), 0);
    for &g in h.elements() {
        if g != 0 {
            augmentation = augmentation.hstack(&m.action(g).sub(&id));
        }
    }
    quotient_of_lattices(&kernel, &augmentation)
}

/// `Ĥ^0(H, M) = M^H / N_H M`.
pub fn tate_h0(h: &Subgroup, m: &GLattice) -> InvariantFactors {
    let fixed = m.fixed_sublattice(h);
    let norm = m.norm_matrix(h);
    quotient_of_lattices(&fixed, &norm)
}

/// The nonzero rows of `m` up to sign, without repeats.
fn distinct_rows(m: &IntegerMatrix) -> IntegerMatrix {
    let mut seen = std::collections::BTreeSet::new();
    let mut rows = Vec::new();
    for i in 0..m.rows() {
        let mut row = m.row(i);
        let Some(lead) = row.iter().find(|x| !x.is_zero()) else {
            continue;
        };
        if lead.is_negative() {
            row.iter_mut().for_each(|x| *x = -&*x);
        }
        if seen.insert(row.clone()) {
            rows.push(row);
        }
    }
    IntegerMatrix::from_rows(m.cols(), &rows)
}

/// `H^1(H, M)` from the bar complex: cochains `c: H -> M` with
/// `c(ab) = c(a) + a c(b)`, modulo `c(a) = a b - b`.
///
/// A cocycle is determined by its values `x_1, ..., x_k` on generators
/// `s_1, ..., s_k` of `H`: walking words gives `c(g) = A_g x` for integer
/// matrices `A_g`. The cocycle condition for all pairs follows from the
/// conditions `c(s b) = c(s) + s c(b)` for generators `s` and all `b`, so
/// those are the constraints imposed on `x`.
pub fn h1(h: &Subgroup, m: &GLattice) -> Result<InvariantFactors> {
    let limit = max_group_order();
    if h.order() > limit {
        return Err(Error::LimitExceeded(format!("subgroup order {} exceeds the bound {limit}", h.order())));
    }
    let r = m.rank();
    let group = m.group();
    let gens = h.generating_set(group);
    if r == 0 || gens.is_empty() {
        return Ok(InvariantFactors::trivial());
    }
    let k = gens.len();
    let elems = h.elements();
    let pos = |g: usize| elems.binary_search(&g).expect("closed subgroup");
    let unit = |i: usize| {
        let mut e = IntegerMatrix::zeros(r, r * k);
        e.set_block(0, r * i, &IntegerMatrix::identity(r));
        e
    };

    // A_g by breadth-first search from the identity: c(s b) = c(s) + s c(b)
    let mut coeff: Vec<Option<IntegerMatrix>> = vec![None; elems.len()];
    coeff[pos(0)] = Some(IntegerMatrix::zeros(r, r * k));
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(b) = queue.pop_front() {
        let ab = coeff[pos(b)].clone().expect("visited");
        for (i, &s) in gens.iter().enumerate() {
            let sb = group.mul(s, b);
            if coeff[pos(sb)].is_none() {
                coeff[pos(sb)] = Some(unit(i).add(&(m.action(s) * &ab)));
                queue.push_back(sb);
            }
        }
    }
    let coeff: Vec<IntegerMatrix> = coeff.into_iter().map(|c| c.expect("generators generate")).collect();

    // intersect the kernels of the constraint blocks one at a time
    let mut cocycles = IntegerMatrix::identity(r * k);
    for (i, &s) in gens.iter().enumerate() {
        for (ib, &b) in elems.iter().enumerate() {
            let lhs = &coeff[pos(group.mul(s, b))];
            let rhs = unit(i).add(&(m.action(s) * &coeff[ib]));
            let restricted = distinct_rows(&(&lhs.sub(&rhs) * &cocycles));
            if restricted.rows() == 0 {
                continue;
            }
            let kernel = smith_normal_form(&restricted).kernel_basis();
            cocycles = if kernel.cols() == 0 {
                IntegerMatrix::zeros(r * k, 0)
            } else {
                hermite_rows(&(&cocycles * &kernel).transpose()).transpose()
            };
        }
    }

    let id = IntegerMatrix::identity(r);
    let mut coboundaries = IntegerMatrix::zeros(r * k, r);
    for (i, &s) in gens.iter().enumerate() {
        coboundaries.set_block(r * i, 0, &m.action(s).sub(&id));
    }
    let echelon = cocycles.transpose();
    let rows: Vec<Vec<BigInt>> = coboundaries
        .columns()
        .iter()
        .map(|c| solve_echelon(&echelon, c).expect("coboundaries are cocycles"))
        .collect();
    Ok(PresentedGroup::new(echelon.rows(), IntegerMatrix::from_rows(echelon.rows(), &rows))
        .expect("shape")
        .canonical_form())
}

/// Per-subgroup-class record of a flasque or coflasque check.
#[derive(Clone, Debug)]
pub struct ClassCheck {
    pub representative: Subgroup,
    pub h1: InvariantFactors,
}

/// Result of [`flasque_report`] / [`coflasque_report`].
#[derive(Clone, Debug)]
pub struct VanishingReport {
    pub holds: bool,
    pub classes: Vec<ClassCheck>,
}

fn vanishing_over_classes(m: &GLattice) -> Result<VanishingReport> {
    let reps = m.group().subgroup_class_representatives();
    let classes: Result<Vec<ClassCheck>> = reps
        .into_par_iter()
        .map(|representative| {
            let h1 = h1(&representative, m)?;
            Ok(ClassCheck { representative, h1 })
        })
        .collect();
    let classes = classes?;
    Ok(VanishingReport {
        holds: classes.iter().all(|c| c.h1.is_trivial()),
        classes,
    })
}

/// `H^1(H, Hom(M, Z))` for one subgroup in each conjugacy class.
pub fn flasque_report(m: &GLattice) -> Result<VanishingReport> {
    vanishing_over_classes(&m.dual())
}

/// `H^1(H, M)` for one subgroup in each conjugacy class.
pub fn coflasque_report(m: &GLattice) -> Result<VanishingReport> {
    vanishing_over_classes(m)
}

pub fn is_flasque(m: &GLattice) -> Result<bool> {
    Ok(flasque_report(m)?.holds)
}

pub fn is_coflasque(m: &GLattice) -> Result<bool> {
    Ok(coflasque_report(m)?.holds)
}
