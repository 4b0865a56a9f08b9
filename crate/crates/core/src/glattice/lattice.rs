//! Integer lattices with an action of a finite permutation group.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::group::{FiniteGroup, Subgroup};
use crate::abelian::{hermite_rows, smith_normal_form, IntegerMatrix};
use crate::error::{invalid, mismatch, Result};

/// A `G`-lattice: `Z^rank` with an invertible integer matrix for every group
/// element, satisfying `action(g h) = action(g) action(h)`.
#[derive(Clone, Debug)]
pub struct GLattice {
    group: Arc<FiniteGroup>,
    rank: usize,
    action: Vec<IntegerMatrix>,
}

impl PartialEq for GLattice {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.rank == other.rank && self.action == other.action
    }
}

impl GLattice {
    /// Builds a lattice from the action of each group generator. The action of
    /// every other element is evaluated along generator words and the result is
    /// checked against the full multiplication table.
    pub fn from_generator_action(group: Arc<FiniteGroup>, rank: usize, generator_action: Vec<IntegerMatrix>) -> Result<Self> {
        if generator_action.len() != group.generators().len() {
            return Err(invalid!(
                "expected {} generator matrices, got {}",
                group.generators().len(),
                generator_action.len()
            ));
        }
        for (k, m) in generator_action.iter().enumerate() {
            if m.rows() != rank || m.cols() != rank {
                return Err(invalid!("generator matrix {k} is {}x{}, expected {rank}x{rank}", m.rows(), m.cols()));
            }
        }
        let mut action = vec![IntegerMatrix::identity(rank)];
        for y in 1..group.order() {
            let (s, x) = group.word_step(y).expect("non-identity element has a word");
            action.push(&generator_action[s] * &action[x]);
        }
        let lattice = GLattice { group, rank, action };
        lattice.validate()?;
        Ok(lattice)
    }

    /// Internal constructor for actions that are correct by construction.
    pub(crate) fn from_full_action(group: Arc<FiniteGroup>, rank: usize, action: Vec<IntegerMatrix>) -> Self {
        let lattice = GLattice { group, rank, action };
        debug_assert!(lattice.validate().is_ok());
        lattice
    }

    /// Checks the action law over the whole multiplication table.
    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        if !self.action[0].is_identity() {
            return Err(invalid!("identity does not act trivially"));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if self.action[g.mul(a, b)] != &self.action[a] * &self.action[b] {
                    return Err(invalid!(
                        "action is not a homomorphism: action(g{a} g{b}) != action(g{a}) action(g{b})"
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: Arc<FiniteGroup>, rank: usize) -> Self {
        let action = vec![IntegerMatrix::identity(rank); group.order()];
        GLattice { group, rank, action }
    }

    /// `Z` with every group element acting by the given sign character.
    pub fn from_character(group: Arc<FiniteGroup>, sign: impl Fn(usize) -> i64) -> Result<Self> {
        let action = (0..group.order()).map(|g| IntegerMatrix::scalar(1, sign(g))).collect();
        let lattice = GLattice { group, rank: 1, action };
        lattice.validate()?;
        Ok(lattice)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntegerMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntegerMatrix] {
        &self.action
    }

    /// `Hom(M, Z)`: `g` acts by the transpose of `action(g^{-1})`.
    pub fn dual(&self) -> GLattice {
        let action = (0..self.group.order())
            .map(|g| self.action[self.group.inv(g)].transpose())
            .collect();
        GLattice {
            group: self.group.clone(),
            rank: self.rank,
            action,
        }
    }

    pub fn direct_sum(parts: &[&GLattice]) -> Result<GLattice> {
        let Some(first) = parts.first() else {
            return Err(invalid!("direct sum of no lattices needs a group"));
        };
        if parts.iter().any(|p| p.group != first.group) {
            return Err(mismatch!("direct sum of lattices over different groups"));
        }
        let action = (0..first.group.order())
            .map(|g| {
                let blocks: Vec<&IntegerMatrix> = parts.iter().map(|p| &p.action[g]).collect();
                IntegerMatrix::block_diagonal(&blocks)
            })
            .collect();
        Ok(GLattice {
            group: first.group.clone(),
            rank: parts.iter().map(|p| p.rank).sum(),
            action,
        })
    }

    /// `Z[G/H]`, with basis the left cosets of `h` in the order of
    /// [`FiniteGroup::left_cosets`].
    pub fn permutation(group: Arc<FiniteGroup>, h: &Subgroup) -> GLattice {
        let cosets = group.left_cosets(h);
        let idx = group.coset_index(&cosets);
        let n = cosets.len();
        let action = (0..group.order())
            .map(|g| {
                let mut m = IntegerMatrix::zeros(n, n);
                for (j, c) in cosets.iter().enumerate() {
                    m[(idx[group.mul(g, c[0])], j)] = BigInt::one();
                }
                m
            })
            .collect();
        GLattice { group, rank: n, action }
    }

    /// The regular lattice `Z[G]`.
    pub fn regular(group: Arc<FiniteGroup>) -> GLattice {
        let h = group.trivial_subgroup();
        Self::permutation(group, &h)
    }

    /// `Z[G] / Z N` with `N` the sum of all group elements: the character lattice
    /// of the norm-one torus. Basis: the images of the non-identity elements, with
    /// the identity element equal to minus their sum.
    pub fn norm_one(group: Arc<FiniteGroup>) -> GLattice {
        let n = group.order();
        let r = n - 1;
        // image of basis element e_x of Z[G] in the quotient basis
        let image = |x: usize| -> Vec<BigInt> {
            if x == 0 {
                vec![-BigInt::one(); r]
            } else {
                let mut v = vec![BigInt::zero(); r];
                v[x - 1] = BigInt::one();
                v
            }
        };
        let action = (0..n)
            .map(|g| {
                let cols: Vec<Vec<BigInt>> = (1..n).map(|x| image(group.mul(g, x))).collect();
                IntegerMatrix::from_columns(r, &cols)
            })
            .collect();
        GLattice { group, rank: r, action }
    }

    /// Sum of `action(h)` over `h` in the subgroup.
    pub fn norm_matrix(&self, h: &Subgroup) -> IntegerMatrix {
        h.elements()
            .iter()
            .fold(IntegerMatrix::zeros(self.rank, self.rank), |acc, &g| acc.add(&self.action[g]))
    }

    /// Basis (as columns, in Hermite form) of the sublattice fixed by `h`.
    pub fn fixed_sublattice(&self, h: &Subgroup) -> IntegerMatrix {
        let r = self.rank;
        let id = IntegerMatrix::identity(r);
        let mut stacked = IntegerMatrix::zeros(0, r);
        for &g in h.elements() {
            if g != 0 {
                stacked = stacked.vstack(&self.action[g].sub(&id));
            }
        }
        let kernel = smith_normal_form(&stacked).kernel_basis();
        hermite_rows(&kernel.transpose()).transpose()
    }

    /// The sublattice spanned by the columns of `basis`, which must be
    /// `G`-stable and linearly independent.
    pub fn sublattice(&self, basis: &IntegerMatrix) -> Result<GLattice> {
        if basis.rows() != self.rank {
            return Err(mismatch!("sublattice basis has {} rows, lattice rank is {}", basis.rows(), self.rank));
        }
        let s = smith_normal_form(basis);
        if s.rank != basis.cols() {
            return Err(invalid!("sublattice generators are linearly dependent"));
        }
        let mut action = Vec::with_capacity(self.group.order());
        for g in 0..self.group.order() {
            let moved = &self.action[g] * basis;
            let cols: Option<Vec<Vec<BigInt>>> = moved.columns().iter().map(|c| s.solve(c)).collect();
            let cols = cols.ok_or_else(|| invalid!("sublattice is not stable under group element {g}"))?;
            action.push(IntegerMatrix::from_columns(basis.cols(), &cols));
        }
        Ok(GLattice::from_full_action(self.group.clone(), basis.cols(), action))
    }

    /// Whether `m` (rows: target rank, cols: source rank) intertwines the actions.
    pub fn is_equivariant_map(source: &GLattice, target: &GLattice, m: &IntegerMatrix) -> bool {
        source.group == target.group
            && m.rows() == target.rank
            && m.cols() == source.rank
            && (0..source.group.order()).all(|g| &target.action[g] * m == m * &source.action[g])
    }
}
