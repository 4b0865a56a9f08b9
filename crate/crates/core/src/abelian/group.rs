//! Finitely generated abelian groups given by presentations, and homomorphisms
//! between them.
//!
//! Elements of a group with `n` generators are integer column vectors of length
//! `n`; a homomorphism is a matrix with one column per domain generator.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::IntegerMatrix;
use super::snf::{smith_normal_form, Smith};
use crate::error::{invalid, mismatch, Result};

/// Canonical invariant-factor decomposition `Z^r x Z/d1 x ... x Z/ds` with
/// `d1 | d2 | ... | ds` and every `di >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct InvariantFactors {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl InvariantFactors {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        InvariantFactors {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn from_torsion<T: Into<BigInt>>(free_rank: usize, torsion: impl IntoIterator<Item = T>) -> Self {
        PresentedGroup::from_factors(free_rank, torsion.into_iter().map(Into::into).collect()).canonical_form()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// The group `A^m`.
    pub fn power(&self, m: usize) -> Self {
        let torsion = (0..m).flat_map(|_| self.torsion.iter().cloned()).collect();
        PresentedGroup::from_factors(self.free_rank * m, torsion).canonical_form()
    }

    pub fn to_group(&self) -> PresentedGroup {
        PresentedGroup::from_factors(self.free_rank, self.torsion.clone())
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" x "))
    }
}

impl FromStr for InvariantFactors {
    type Err = crate::error::Error;

    /// Accepts the canonical string format, and also non-canonical products such
    /// as `Z/2 x Z/3` or `Z x Z`, which are normalized.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Self::trivial());
        }
        let mut free = 0usize;
        let mut torsion = Vec::new();
        for part in s.split('x').map(str::trim) {
            if part == "Z" {
                free += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                free += r.parse::<usize>().map_err(|_| invalid!("bad free rank in {part:?}"))?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d: BigInt = d.parse().map_err(|_| invalid!("bad cyclic order in {part:?}"))?;
                if !d.is_positive() {
                    return Err(invalid!("cyclic order must be positive in {part:?}"));
                }
                torsion.push(d);
            } else if part != "0" {
                return Err(invalid!("unrecognized group factor {part:?}"));
            }
        }
        Ok(PresentedGroup::from_factors(free, torsion).canonical_form())
    }
}

impl Serialize for InvariantFactors {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for InvariantFactors {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The quotient of `Z^generators` by the row span of `relations`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresentedGroup {
    generators: usize,
    relations: IntegerMatrix,
}

impl PresentedGroup {
    pub fn new(generators: usize, relations: IntegerMatrix) -> Result<Self> {
        if relations.cols() != generators {
            return Err(invalid!(
                "relation matrix has {} columns but the group has {} generators",
                relations.cols(),
                generators
            ));
        }
        Ok(PresentedGroup { generators, relations })
    }

    pub fn free(rank: usize) -> Self {
        PresentedGroup {
            generators: rank,
            relations: IntegerMatrix::zeros(0, rank),
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/d`; `d = 0` gives `Z`.
    pub fn cyclic(d: i64) -> Self {
        Self::from_factors(0, vec![BigInt::from(d)])
    }

    /// `Z^free x Z/d1 x ...`, one generator per factor, unit factors kept.
    pub fn from_factors(free: usize, torsion: Vec<BigInt>) -> Self {
        let n = free + torsion.len();
        let mut rel = IntegerMatrix::zeros(torsion.len(), n);
        for (i, d) in torsion.iter().enumerate() {
            rel[(i, free + i)] = d.clone();
        }
        PresentedGroup {
            generators: n,
            relations: rel,
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntegerMatrix {
        &self.relations
    }

    /// Relations as columns, the shape used when solving membership problems.
    pub fn relation_columns(&self) -> IntegerMatrix {
        self.relations.transpose()
    }

    pub fn canonical_form(&self) -> InvariantFactors {
        let s = smith_normal_form(&self.relations);
        let torsion: Vec<BigInt> = s.diagonal().into_iter().filter(|d| !d.is_one()).collect();
        InvariantFactors {
            free_rank: self.generators - s.rank,
            torsion,
        }
    }

    pub fn is_zero_group(&self) -> bool {
        self.canonical_form().is_trivial()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.canonical_form().order()
    }

    /// Whether the vector `v` represents the zero element.
    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.generators);
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        smith_normal_form(&self.relation_columns()).solve(v).is_some()
    }

    /// Whether two presentations on the same generators have the same relation lattice.
    pub fn same_presentation(&self, other: &Self) -> bool {
        if self.generators != other.generators {
            return false;
        }
        if self.relations == other.relations {
            return true;
        }
        let mine = smith_normal_form(&self.relation_columns());
        let theirs = smith_normal_form(&other.relation_columns());
        other.relations.to_rows().iter().all(|r| mine.solve(r).is_some())
            && self.relations.to_rows().iter().all(|r| theirs.solve(r).is_some())
    }

    /// Same generators, extra relations appended.
    pub fn with_extra_relations(&self, extra: &IntegerMatrix) -> Result<Self> {
        Self::new(self.generators, self.relations.vstack(extra))
    }

    pub fn direct_sum(groups: &[&PresentedGroup]) -> Self {
        let rels: Vec<&IntegerMatrix> = groups.iter().map(|g| &g.relations).collect();
        let relations = IntegerMatrix::block_diagonal(&rels);
        PresentedGroup {
            generators: relations.cols(),
            relations,
        }
    }

    /// The group `A^m`, as a presentation.
    pub fn power(&self, m: usize) -> Self {
        let copies: Vec<&PresentedGroup> = (0..m).map(|_| self).collect();
        Self::direct_sum(&copies)
    }

    /// An isomorphic presentation in Smith form (one generator per nontrivial
    /// invariant factor), with mutually inverse isomorphisms `self -> simple`
    /// and `simple -> self`.
    pub fn simplify(&self) -> (PresentedGroup, GroupHom, GroupHom) {
        let s = smith_normal_form(&self.relations);
        // relations R V = U^{-1} D, so x -> V^T x carries R onto diag(D)
        let n = self.generators;
        let diag = s.diagonal();
        let keep: Vec<usize> = (0..n).filter(|&i| i >= s.rank || !diag[i].is_one()).collect();
        let mut torsion = Vec::new();
        let mut free = 0;
        for &i in &keep {
            if i < s.rank {
                torsion.push(diag[i].clone());
            } else {
                free += 1;
            }
        }
        // reorder: free generators first, matching from_factors
        let order: Vec<usize> = keep
            .iter()
            .copied()
            .filter(|&i| i >= s.rank)
            .chain(keep.iter().copied().filter(|&i| i < s.rank))
            .collect();
        let simple = PresentedGroup::from_factors(free, torsion);
        let mut to_simple = IntegerMatrix::zeros(order.len(), n);
        let mut from_simple = IntegerMatrix::zeros(n, order.len());
        for (k, &i) in order.iter().enumerate() {
            for j in 0..n {
                to_simple[(k, j)] = s.v[(j, i)].clone();
                from_simple[(j, k)] = s.v_inv[(i, j)].clone();
            }
        }
        let fwd = GroupHom::new(self.clone(), simple.clone(), to_simple).expect("smith change of basis");
        let back = GroupHom::new(simple.clone(), self.clone(), from_simple).expect("smith change of basis");
        (simple, fwd, back)
    }
}

/// A homomorphism of presented groups, given by a matrix with
/// `codomain.generators()` rows and `domain.generators()` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    domain: PresentedGroup,
    codomain: PresentedGroup,
    matrix: IntegerMatrix,
}

impl GroupHom {
    /// Checks the matrix shape and that every domain relation maps into the
    /// codomain's relation lattice.
    pub fn new(domain: PresentedGroup, codomain: PresentedGroup, matrix: IntegerMatrix) -> Result<Self> {
        if matrix.rows() != codomain.generators || matrix.cols() != domain.generators {
            return Err(mismatch!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.generators,
                domain.generators
            ));
        }
        if domain.relations.rows() > 0 {
            let images = &matrix * &domain.relation_columns();
            if !images.is_zero() {
                let s = smith_normal_form(&codomain.relation_columns());
                for (j, col) in images.columns().iter().enumerate() {
                    if s.solve(col).is_none() {
                        return Err(invalid!("hom is not well defined: relation {j} of the domain maps to a nonzero element"));
                    }
                }
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(g: &PresentedGroup) -> Self {
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: IntegerMatrix::identity(g.generators),
        }
    }

    pub fn zero(domain: &PresentedGroup, codomain: &PresentedGroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntegerMatrix::zeros(codomain.generators, domain.generators),
        }
    }

    /// Multiplication by an integer on `g`.
    pub fn scalar(g: &PresentedGroup, c: i64) -> Self {
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: IntegerMatrix::scalar(g.generators, c),
        }
    }

    pub fn domain(&self) -> &PresentedGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &PresentedGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(x)
    }

    pub fn neg(&self) -> Self {
        GroupHom {
            matrix: self.matrix.neg(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !self.domain.same_presentation(&other.domain) || !self.codomain.same_presentation(&other.codomain) {
            return Err(mismatch!("cannot add homs with different domain or codomain"));
        }
        Ok(GroupHom {
            matrix: self.matrix.add(&other.matrix),
            ..self.clone()
        })
    }

    /// Equality as homomorphisms: the matrices may differ by anything landing in
    /// the codomain's relations.
    pub fn equals(&self, other: &Self) -> bool {
        if !self.domain.same_presentation(&other.domain) || !self.codomain.same_presentation(&other.codomain) {
            return false;
        }
        let diff = self.matrix.sub(&other.matrix);
        if diff.is_zero() {
            return true;
        }
        let s = smith_normal_form(&self.codomain.relation_columns());
        diff.columns().iter().all(|c| s.solve(c).is_some())
    }

    pub fn is_zero(&self) -> bool {
        self.equals(&Self::zero(&self.domain, &self.codomain))
    }

    /// Finds `x` in the domain with `self(x) = y` modulo codomain relations.
    pub fn lift(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        self.lift_with(&smith_normal_form(&self.lift_system()), y)
    }

    fn lift_system(&self) -> IntegerMatrix {
        self.matrix.hstack(&self.codomain.relation_columns())
    }

    fn lift_with(&self, s: &Smith, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let x = s.solve(y)?;
        Some(x[..self.domain.generators].to_vec())
    }

    /// Lifts every column of `ys`; `None` if any column is outside the image.
    pub fn lift_columns(&self, ys: &IntegerMatrix) -> Option<IntegerMatrix> {
        let s = smith_normal_form(&self.lift_system());
        let cols: Option<Vec<Vec<BigInt>>> = ys.columns().iter().map(|y| self.lift_with(&s, y)).collect();
        Some(IntegerMatrix::from_columns(self.domain.generators, &cols?))
    }

    /// Generators (as columns) of the lattice of `x` in `Z^n` with `self(x) = 0`.
    /// This lattice contains the domain relations.
    fn preimage_of_zero(&self) -> IntegerMatrix {
        let n = self.domain.generators;
        let s = smith_normal_form(&self.lift_system());
        let k = s.kernel_basis();
        let proj = k.block(0, 0, n, k.cols());
        // keep the relations explicitly so the span is exactly the preimage
        let with_rel = proj.hstack(&self.domain.relation_columns());
        smith_normal_form(&with_rel).column_span_basis()
    }

    /// The kernel, with its inclusion into the domain.
    pub fn kernel(&self) -> (PresentedGroup, GroupHom) {
        let basis = self.preimage_of_zero();
        let s = smith_normal_form(&basis);
        let coords: Vec<Vec<BigInt>> = self
            .domain
            .relations
            .to_rows()
            .iter()
            .map(|r| s.solve(r).expect("relations lie in the kernel lattice"))
            .collect();
        let k = basis.cols();
        let relations = IntegerMatrix::from_rows(k, &coords);
        let group = PresentedGroup::new(k, relations).expect("shape");
        let inclusion = GroupHom {
            domain: group.clone(),
            codomain: self.domain.clone(),
            matrix: basis,
        };
        (group, inclusion)
    }

    /// The image as a quotient of the domain: returns the image group, the
    /// surjection from the domain onto it, and the inclusion into the codomain.
    pub fn image(&self) -> (PresentedGroup, GroupHom, GroupHom) {
        let basis = self.preimage_of_zero();
        let n = self.domain.generators;
        let group = PresentedGroup::new(n, basis.transpose()).expect("shape");
        let onto = GroupHom {
            domain: self.domain.clone(),
            codomain: group.clone(),
            matrix: IntegerMatrix::identity(n),
        };
        let into = GroupHom {
            domain: group.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.clone(),
        };
        (group, onto, into)
    }

    /// The cokernel, with the projection from the codomain.
    pub fn cokernel(&self) -> (PresentedGroup, GroupHom) {
        let group = self
            .codomain
            .with_extra_relations(&self.matrix.transpose())
            .expect("shape");
        let proj = GroupHom {
            domain: self.codomain.clone(),
            codomain: group.clone(),
            matrix: IntegerMatrix::identity(self.codomain.generators),
        };
        (group, proj)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_zero_group()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_zero_group()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_injective() {
            return Err(invalid!("hom is not injective, no inverse"));
        }
        let n = self.codomain.generators;
        let inv = self
            .lift_columns(&IntegerMatrix::identity(n))
            .ok_or_else(|| invalid!("hom is not surjective, no inverse"))?;
        GroupHom::new(self.codomain.clone(), self.domain.clone(), inv)
    }

    /// Block-diagonal sum of homomorphisms.
    pub fn direct_sum(homs: &[&GroupHom]) -> Self {
        let doms: Vec<&PresentedGroup> = homs.iter().map(|h| &h.domain).collect();
        let cods: Vec<&PresentedGroup> = homs.iter().map(|h| &h.codomain).collect();
        let mats: Vec<&IntegerMatrix> = homs.iter().map(|h| &h.matrix).collect();
        GroupHom {
            domain: PresentedGroup::direct_sum(&doms),
            codomain: PresentedGroup::direct_sum(&cods),
            matrix: IntegerMatrix::block_diagonal(&mats),
        }
    }

    /// The same matrix viewed between other presentations on the same
    /// generators (for instance quotients), re-checking well-definedness.
    pub fn reinterpret(&self, domain: PresentedGroup, codomain: PresentedGroup) -> Result<Self> {
        GroupHom::new(domain, codomain, self.matrix.clone())
    }
}

/// `outer ∘ inner`.
pub fn compose(outer: &GroupHom, inner: &GroupHom) -> Result<GroupHom> {
    if !inner.codomain.same_presentation(&outer.domain) {
        return Err(mismatch!(
            "cannot compose: inner codomain has {} generators, outer domain has {}",
            inner.codomain.generators,
            outer.domain.generators
        ));
    }
    Ok(GroupHom {
        domain: inner.domain.clone(),
        codomain: outer.codomain.clone(),
        matrix: &outer.matrix * &inner.matrix,
    })
}

/// Exactness of `X -f-> Y -g-> Z` at `Y`: `g ∘ f = 0` and every element of
/// `ker g` lies in the image of `f`.
pub fn exact_at(f: &GroupHom, g: &GroupHom) -> Result<bool> {
    if !compose(g, f)?.is_zero() {
        return Ok(false);
    }
    let (_, inclusion) = g.kernel();
    Ok(f.lift_columns(inclusion.matrix()).is_some())
}

/// `|group|` from a canonical form, as a `u128` when it fits; used by tests and
/// reports.
pub fn finite_order(g: &InvariantFactors) -> Option<u128> {
    use num_traits::ToPrimitive;
    g.order().and_then(|o| o.to_u128())
}
