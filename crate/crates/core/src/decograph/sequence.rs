//! Short exact sequences of coefficient systems and the six-term sequence in
//! cohomology.

use num_bigint::BigInt;

use crate::abelian::{exact_at, GroupHom, IntegerMatrix, InvariantFactors, PresentedGroup};
use crate::error::{invalid, Error, Result};

use super::system::{DecoratedGraph, SystemMorphism};

/// `0 -> A -i-> B -p-> C -> 0`, exact at every vertex and edge.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub a: DecoratedGraph,
    pub b: DecoratedGraph,
    pub c: DecoratedGraph,
    pub i: SystemMorphism,
    pub p: SystemMorphism,
}

impl ShortExactSequence {
    pub fn new(a: DecoratedGraph, b: DecoratedGraph, c: DecoratedGraph, i: SystemMorphism, p: SystemMorphism) -> Result<Self> {
        let i = SystemMorphism::new(&a, &b, i.vertex, i.edge)?;
        let p = SystemMorphism::new(&b, &c, p.vertex, p.edge)?;
        let g = a.graph();
        let pairs = i
            .vertex
            .iter()
            .zip(&p.vertex)
            .enumerate()
            .map(|(v, pair)| (format!("vertex {:?}", g.vertex_id(v)), pair))
            .chain(
                i.edge
                    .iter()
                    .zip(&p.edge)
                    .enumerate()
                    .map(|(e, pair)| (format!("edge {:?}", g.edge_id(e)), pair)),
            );
        for (place, (ix, px)) in pairs {
            if !ix.is_injective() {
                return Err(invalid!("sequence is not exact at {place}: first map is not injective"));
            }
            if !px.is_surjective() {
                return Err(invalid!("sequence is not exact at {place}: second map is not surjective"));
            }
            if !exact_at(ix, px)? {
                return Err(invalid!("sequence is not exact in the middle at {place}"));
            }
        }
        Ok(ShortExactSequence { a, b, c, i, p })
    }
}

/// `H^0(A) -> H^0(B) -> H^0(C) -> H^1(A) -> H^1(B) -> H^1(C)`.
#[derive(Clone, Debug)]
pub struct SixTerm {
    pub groups: [PresentedGroup; 6],
    pub maps: [GroupHom; 5],
    /// Exactness at each of the six groups, with the outer zeros included.
    pub exact: [bool; 6],
}

impl SixTerm {
    pub fn invariants(&self) -> Vec<InvariantFactors> {
        self.groups.iter().map(PresentedGroup::canonical_form).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.iter().all(|&e| e)
    }

    pub fn connecting(&self) -> &GroupHom {
        &self.maps[2]
    }
}

fn lift_error(what: &str) -> Error {
    Error::Verification(format!("connecting map: {what} has no preimage"))
}

/// Computes the six-term sequence with the snake-lemma connecting map and
/// checks exactness at every spot.
pub fn six_term(ses: &ShortExactSequence) -> Result<SixTerm> {
    let da = ses.a.cochain_complex().d;
    let db = ses.b.cochain_complex().d;
    let dc = ses.c.cochain_complex().d;
    let (i0, i1) = ses.i.cochain_maps();
    let (p0, p1) = ses.p.cochain_maps();

    let (ka, inc_a) = da.kernel();
    let (kb, inc_b) = db.kernel();
    let (kc, inc_c) = dc.kernel();
    let (qa, _) = da.cokernel();
    let (qb, _) = db.cokernel();
    let (qc, _) = dc.cokernel();

    let lift_h0 = |f0: &GroupHom, src: &GroupHom, dst: &GroupHom, dom: &PresentedGroup, cod: &PresentedGroup| {
        let m = dst
            .lift_columns(&(f0.matrix() * src.matrix()))
            .ok_or_else(|| Error::Verification("induced map on H^0 leaves the kernel".into()))?;
        GroupHom::new(dom.clone(), cod.clone(), m)
    };
    let h0i = lift_h0(&i0, &inc_a, &inc_b, &ka, &kb)?;
    let h0p = lift_h0(&p0, &inc_b, &inc_c, &kb, &kc)?;
    let h1i = GroupHom::new(qa.clone(), qb.clone(), i1.matrix().clone())?;
    let h1p = GroupHom::new(qb.clone(), qc.clone(), p1.matrix().clone())?;

    let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(kc.generators());
    for c in inc_c.matrix().columns() {
        let b = p0.lift(&c).ok_or_else(|| lift_error("an H^0(C) class in C^0(B)"))?;
        let a = i1.lift(&db.apply(&b)).ok_or_else(|| lift_error("d of the lift in C^1(A)"))?;
        cols.push(a);
    }
    let delta_matrix = if cols.is_empty() {
        IntegerMatrix::zeros(qa.generators(), 0)
    } else {
        IntegerMatrix::from_columns(qa.generators(), &cols)
    };
    let delta = GroupHom::new(kc.clone(), qa.clone(), delta_matrix)?;

    let maps = [h0i, h0p, delta, h1i, h1p];
    let exact = [
        maps[0].is_injective(),
        exact_at(&maps[0], &maps[1])?,
        exact_at(&maps[1], &maps[2])?,
        exact_at(&maps[2], &maps[3])?,
        exact_at(&maps[3], &maps[4])?,
        maps[4].is_surjective(),
    ];
    Ok(SixTerm {
        groups: [ka, kb, kc, qa, qb, qc],
        maps,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::PresentedGroup;
    use crate::decograph::{CoefficientSystem, Graph};

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn zero_system(g: &Graph) -> DecoratedGraph {
        DecoratedGraph::constant(g.clone(), &PresentedGroup::trivial())
    }

    fn zero_morphism(a: &DecoratedGraph, b: &DecoratedGraph) -> SystemMorphism {
        let g = a.graph();
        SystemMorphism {
            vertex: (0..g.vertex_count())
                .map(|v| GroupHom::zero(a.vertex_group(v), b.vertex_group(v)))
                .collect(),
            edge: (0..g.edge_count())
                .map(|e| GroupHom::zero(a.edge_group(e), b.edge_group(e)))
                .collect(),
        }
    }

    #[test]
    fn identity_with_zero_quotient() {
        let g = cycle(3);
        let a = DecoratedGraph::constant(g.clone(), &PresentedGroup::cyclic(4));
        let c = zero_system(&g);
        let i = SystemMorphism::identity(&a);
        let p = zero_morphism(&a, &c);
        let ses = ShortExactSequence::new(a.clone(), a, c, i, p).unwrap();
        let six = six_term(&ses).unwrap();
        assert!(six.is_exact());
        assert!(six.maps[0].is_isomorphism());
        assert!(six.maps[3].is_isomorphism());
    }

    #[test]
    fn multiplication_by_two_on_triangle() {
        // 0 -> Z -2-> Z -> Z/2 -> 0 with simplicial maps
        let g = cycle(3);
        let z = PresentedGroup::free(1);
        let z2 = PresentedGroup::cyclic(2);
        let heads = [0, 0, 0];
        let a = DecoratedGraph::new(g.clone(), CoefficientSystem::simplicial(&g, &z, &heads).unwrap()).unwrap();
        let c = DecoratedGraph::new(g.clone(), CoefficientSystem::simplicial(&g, &z2, &heads).unwrap()).unwrap();
        let two = GroupHom::scalar(&z, 2);
        let red = GroupHom::new(z.clone(), z2.clone(), IntegerMatrix::identity(1)).unwrap();
        let i = SystemMorphism {
            vertex: vec![two.clone(); 3],
            edge: vec![two; 3],
        };
        let p = SystemMorphism {
            vertex: vec![red.clone(); 3],
            edge: vec![red; 3],
        };
        let six = six_term(&ShortExactSequence::new(a.clone(), a, c, i, p).unwrap()).unwrap();
        assert!(six.is_exact());
        let inv: Vec<String> = six.invariants().iter().map(|g| g.to_string()).collect();
        assert_eq!(inv, ["Z^1", "Z^1", "Z/2", "Z^1", "Z^1", "Z/2"]);
        // H^0 surjects onto H^0(Z/2), so the connecting map vanishes
        assert!(six.connecting().is_zero());
    }

    #[test]
    fn non_exact_input_rejected() {
        let g = cycle(3);
        let a = DecoratedGraph::constant(g.clone(), &PresentedGroup::cyclic(2));
        let i = SystemMorphism::identity(&a);
        let p = SystemMorphism::identity(&a);
        assert!(ShortExactSequence::new(a.clone(), a.clone(), a, i, p).is_err());
    }
}
