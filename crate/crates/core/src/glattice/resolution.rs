//! Flasque resolutions `0 -> T -> Q -> S -> 0` of character lattices, with `Q`
//! a permutation lattice and `S` flasque.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::cohomology::{flasque_report, VanishingReport};
use super::group::{FiniteGroup, Subgroup};
use super::lattice::GLattice;
use crate::abelian::{smith_normal_form, IntegerMatrix};
use crate::error::{Error, Result};

/// A short sequence of `G`-lattices `0 -> sub -> mid -> quot -> 0`.
#[derive(Clone, Debug)]
pub struct LatticeSequence {
    pub sub: GLattice,
    pub mid: GLattice,
    pub quot: GLattice,
    /// `rank(mid) x rank(sub)`
    pub inject: IntegerMatrix,
    /// `rank(quot) x rank(mid)`
    pub surject: IntegerMatrix,
}

/// Outcome of [`LatticeSequence::verify`]; every flag must hold for an exact sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SequenceChecks {
    pub equivariant: bool,
    pub inject_injective: bool,
    pub surject_surjective: bool,
    pub composite_zero: bool,
    pub image_equals_kernel: bool,
    pub rank_additive: bool,
}

impl SequenceChecks {
    pub fn all(&self) -> bool {
        self.equivariant
            && self.inject_injective
            && self.surject_surjective
            && self.composite_zero
            && self.image_equals_kernel
            && self.rank_additive
    }
}

impl LatticeSequence {
    pub fn verify(&self) -> SequenceChecks {
        let (a, b, c) = (self.sub.rank(), self.mid.rank(), self.quot.rank());
        let shapes_ok = self.inject.rows() == b
            && self.inject.cols() == a
            && self.surject.rows() == c
            && self.surject.cols() == b;
        if !shapes_ok {
            return SequenceChecks::default();
        }
        let equivariant = GLattice::is_equivariant_map(&self.sub, &self.mid, &self.inject)
            && GLattice::is_equivariant_map(&self.mid, &self.quot, &self.surject);
        let inj = smith_normal_form(&self.inject);
        let surj = smith_normal_form(&self.surject);
        let surject_surjective = surj.rank == c && surj.diagonal().iter().all(One::is_one);
        let composite_zero = (&self.surject * &self.inject).is_zero();
        let kernel = surj.kernel_basis();
        let image_equals_kernel = composite_zero && kernel.columns().iter().all(|k| inj.solve(k).is_some());
        SequenceChecks {
            equivariant,
            inject_injective: inj.rank == a,
            surject_surjective,
            composite_zero,
            image_equals_kernel,
            rank_additive: b == a + c,
        }
    }
}

/// A flasque resolution together with the data certifying it.
#[derive(Clone, Debug)]
pub struct FlasqueResolution {
    pub sequence: LatticeSequence,
    /// The permutation summands `Z[G/H]` of the middle term, with multiplicities.
    pub permutation_summands: Vec<(Subgroup, usize)>,
    pub checks: SequenceChecks,
    pub flasque: VanishingReport,
}

/// Builds a flasque resolution of `t_hat`.
///
/// With `M = Hom(t_hat, Z)`: for each conjugacy class representative `H`, the
/// fixed sublattice `M^H` has a basis; each basis vector `v` contributes a copy
/// of `Z[G/H]` mapping the coset `gH` to `g v`. This gives an equivariant
/// surjection `P -> M` that is onto on `H`-fixed points for every `H`, so its
/// kernel `N` is coflasque. Dualizing `0 -> N -> P -> M -> 0` gives the result.
///
/// The output is verified before it is returned; a failed check is an error.
pub fn flasque_resolution(t_hat: &GLattice) -> Result<FlasqueResolution> {
    let group = t_hat.group().clone();
    let m = t_hat.dual();
    let r = m.rank();

    let mut summands: Vec<(Subgroup, usize)> = Vec::new();
    let mut pieces: Vec<GLattice> = Vec::new();
    let mut map_columns: Vec<Vec<BigInt>> = Vec::new();
    for h in group.subgroup_class_representatives() {
        let fixed = m.fixed_sublattice(&h);
        if fixed.cols() == 0 {
            continue;
        }
        let cosets = group.left_cosets(&h);
        for v in fixed.columns() {
            pieces.push(GLattice::permutation(group.clone(), &h));
            for c in &cosets {
                map_columns.push(m.action(c[0]).mul_vec(&v));
            }
        }
        summands.push((h, fixed.cols()));
    }
    let p = if pieces.is_empty() {
        GLattice::trivial(group.clone(), 0)
    } else {
        GLattice::direct_sum(&pieces.iter().collect::<Vec<_>>())?
    };
    let to_m = IntegerMatrix::from_columns(r, &map_columns);
    let to_m = if map_columns.is_empty() { IntegerMatrix::zeros(r, 0) } else { to_m };

    let kernel_basis = smith_normal_form(&to_m).kernel_basis();
    let n = p.sublattice(&kernel_basis)?;

    let sequence = LatticeSequence {
        sub: t_hat.clone(),
        mid: p.dual(),
        quot: n.dual(),
        inject: to_m.transpose(),
        surject: kernel_basis.transpose(),
    };
    let checks = sequence.verify();
    if !checks.all() {
        return Err(Error::Verification(format!("flasque resolution is not exact: {checks:?}")));
    }
    let flasque = flasque_report(&sequence.quot)?;
    if !flasque.holds {
        let bad = flasque
            .classes
            .iter()
            .find(|c| !c.h1.is_trivial())
            .expect("some class fails");
        return Err(Error::Verification(format!(
            "resolution quotient is not flasque: H^1 = {} on subgroup {:?}",
            bad.h1,
            bad.representative.elements()
        )));
    }
    Ok(FlasqueResolution {
        sequence,
        permutation_summands: summands,
        checks,
        flasque,
    })
}

/// Builds the middle term directly from summand data; used to cross-check
/// that the middle term of a resolution is a permutation lattice.
pub fn permutation_lattice_from_summands(group: &Arc<FiniteGroup>, summands: &[(Subgroup, usize)]) -> Result<GLattice> {
    let pieces: Vec<GLattice> = summands
        .iter()
        .flat_map(|(h, k)| (0..*k).map(move |_| GLattice::permutation(group.clone(), h)))
        .collect();
    if pieces.is_empty() {
        return Ok(GLattice::trivial(group.clone(), 0));
    }
    GLattice::direct_sum(&pieces.iter().collect::<Vec<_>>())
}
