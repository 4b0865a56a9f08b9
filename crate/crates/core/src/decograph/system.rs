//! Coefficient systems on graphs, morphisms between them, and the two-term
//! cochain complex computing their cohomology.

use crate::abelian::{compose, GroupHom, IntegerMatrix, InvariantFactors, PresentedGroup};
use crate::error::{invalid, mismatch, Result};

use super::graph::{Graph, HalfEdge};

/// Groups on vertices and edges, and for each half-edge a hom from the group
/// of its vertex to the group of its edge.
#[derive(Clone, Debug)]
pub struct CoefficientSystem {
    pub vertex_groups: Vec<PresentedGroup>,
    pub edge_groups: Vec<PresentedGroup>,
    /// Indexed by edge, then by side.
    pub maps: Vec<[GroupHom; 2]>,
}

impl CoefficientSystem {
    pub fn map(&self, h: HalfEdge) -> &GroupHom {
        &self.maps[h.edge][h.side]
    }

    /// Every vertex and edge carries `a0`, every half-edge map is the identity.
    pub fn constant(graph: &Graph, a0: &PresentedGroup) -> Self {
        let id = GroupHom::identity(a0);
        CoefficientSystem {
            vertex_groups: vec![a0.clone(); graph.vertex_count()],
            edge_groups: vec![a0.clone(); graph.edge_count()],
            maps: vec![[id.clone(), id]; graph.edge_count()],
        }
    }

    /// The simplicial system: on each edge the half-edge on side `heads[e]`
    /// maps by `+1` and the other by `-1`.
    pub fn simplicial(graph: &Graph, a0: &PresentedGroup, heads: &[usize]) -> Result<Self> {
        if heads.len() != graph.edge_count() || heads.iter().any(|&s| s > 1) {
            return Err(invalid!("orientation needs one head side (0 or 1) per edge"));
        }
        let plus = GroupHom::identity(a0);
        let minus = plus.neg();
        let maps = heads
            .iter()
            .map(|&s| {
                if s == 0 {
                    [plus.clone(), minus.clone()]
                } else {
                    [minus.clone(), plus.clone()]
                }
            })
            .collect();
        Ok(CoefficientSystem {
            vertex_groups: vec![a0.clone(); graph.vertex_count()],
            edge_groups: vec![a0.clone(); graph.edge_count()],
            maps,
        })
    }
}

/// The complex `C^0 -> C^1` of a decorated graph.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub c0: PresentedGroup,
    pub c1: PresentedGroup,
    pub d: GroupHom,
    /// First generator of each vertex block in `c0`.
    pub vertex_offsets: Vec<usize>,
    /// First generator of each edge block in `c1`.
    pub edge_offsets: Vec<usize>,
}

fn offsets(groups: &[PresentedGroup]) -> Vec<usize> {
    groups
        .iter()
        .scan(0, |acc, g| {
            let start = *acc;
            *acc += g.generators();
            Some(start)
        })
        .collect()
}

/// A graph together with a coefficient system matching its incidence.
#[derive(Clone, Debug)]
pub struct DecoratedGraph {
    graph: Graph,
    system: CoefficientSystem,
}

impl DecoratedGraph {
    pub fn new(graph: Graph, system: CoefficientSystem) -> Result<Self> {
        if system.vertex_groups.len() != graph.vertex_count() {
            return Err(mismatch!(
                "system has {} vertex groups, graph has {} vertices",
                system.vertex_groups.len(),
                graph.vertex_count()
            ));
        }
        if system.edge_groups.len() != graph.edge_count() || system.maps.len() != graph.edge_count() {
            return Err(mismatch!("system edge data does not match the {} graph edges", graph.edge_count()));
        }
        for h in graph.half_edges() {
            let map = system.map(h);
            let v = graph.attachment(h);
            if !map.domain().same_presentation(&system.vertex_groups[v]) {
                return Err(mismatch!(
                    "half-edge {} of edge {:?}: map domain differs from the group at vertex {:?}",
                    h.side,
                    graph.edge_id(h.edge),
                    graph.vertex_id(v)
                ));
            }
            if !map.codomain().same_presentation(&system.edge_groups[h.edge]) {
                return Err(mismatch!(
                    "half-edge {} of edge {:?}: map codomain differs from the edge group",
                    h.side,
                    graph.edge_id(h.edge)
                ));
            }
        }
        Ok(DecoratedGraph { graph, system })
    }

    pub fn constant(graph: Graph, a0: &PresentedGroup) -> Self {
        let system = CoefficientSystem::constant(&graph, a0);
        DecoratedGraph { graph, system }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn system(&self) -> &CoefficientSystem {
        &self.system
    }

    pub fn vertex_group(&self, v: usize) -> &PresentedGroup {
        &self.system.vertex_groups[v]
    }

    pub fn edge_group(&self, e: usize) -> &PresentedGroup {
        &self.system.edge_groups[e]
    }

    pub fn map(&self, h: HalfEdge) -> &GroupHom {
        self.system.map(h)
    }

    /// `d` restricted to a vertex group is the sum of the maps of the
    /// half-edges attached there; no orientation signs are added.
    pub fn cochain_complex(&self) -> CochainComplex {
        let vg: Vec<&PresentedGroup> = self.system.vertex_groups.iter().collect();
        let eg: Vec<&PresentedGroup> = self.system.edge_groups.iter().collect();
        let c0 = PresentedGroup::direct_sum(&vg);
        let c1 = PresentedGroup::direct_sum(&eg);
        let vertex_offsets = offsets(&self.system.vertex_groups);
        let edge_offsets = offsets(&self.system.edge_groups);
        let mut m = IntegerMatrix::zeros(c1.generators(), c0.generators());
        for h in self.graph.half_edges() {
            let v = self.graph.attachment(h);
            m.add_block(edge_offsets[h.edge], vertex_offsets[v], self.map(h).matrix());
        }
        let d = GroupHom::new(c0.clone(), c1.clone(), m).expect("sum of well-defined maps");
        CochainComplex {
            c0,
            c1,
            d,
            vertex_offsets,
            edge_offsets,
        }
    }

    pub fn h0(&self) -> InvariantFactors {
        self.cochain_complex().d.kernel().0.canonical_form()
    }

    pub fn h1(&self) -> InvariantFactors {
        self.cochain_complex().d.cokernel().0.canonical_form()
    }

    /// `(h0, h1)` from a single complex.
    pub fn cohomology(&self) -> (InvariantFactors, InvariantFactors) {
        let d = self.cochain_complex().d;
        let (h0, h1) = rayon::join(|| d.kernel().0.canonical_form(), || d.cokernel().0.canonical_form());
        (h0, h1)
    }
}

/// `A0^m` with `m` the cycle rank of the graph.
pub fn topological_h1(graph: &Graph, a0: &PresentedGroup) -> InvariantFactors {
    a0.canonical_form().power(graph.cycle_rank())
}

/// Homs on every vertex and edge group commuting with all half-edge maps.
#[derive(Clone, Debug)]
pub struct SystemMorphism {
    pub vertex: Vec<GroupHom>,
    pub edge: Vec<GroupHom>,
}

impl SystemMorphism {
    /// Checks shapes and every square `target_α ∘ f_x = f_e ∘ source_α`.
    pub fn new(
        source: &DecoratedGraph,
        target: &DecoratedGraph,
        vertex: Vec<GroupHom>,
        edge: Vec<GroupHom>,
    ) -> Result<Self> {
        if source.graph != target.graph {
            return Err(mismatch!("morphism between systems on different graphs"));
        }
        let g = &source.graph;
        if vertex.len() != g.vertex_count() || edge.len() != g.edge_count() {
            return Err(mismatch!("morphism needs one hom per vertex and per edge"));
        }
        for (v, f) in vertex.iter().enumerate() {
            if !f.domain().same_presentation(source.vertex_group(v))
                || !f.codomain().same_presentation(target.vertex_group(v))
            {
                return Err(mismatch!("vertex hom at {:?} has the wrong domain or codomain", g.vertex_id(v)));
            }
        }
        for (e, f) in edge.iter().enumerate() {
            if !f.domain().same_presentation(source.edge_group(e)) || !f.codomain().same_presentation(target.edge_group(e))
            {
                return Err(mismatch!("edge hom at {:?} has the wrong domain or codomain", g.edge_id(e)));
            }
        }
        for h in g.half_edges() {
            let v = g.attachment(h);
            let left = compose(target.map(h), &vertex[v])?;
            let right = compose(&edge[h.edge], source.map(h))?;
            if !left.equals(&right) {
                return Err(invalid!(
                    "morphism does not commute with half-edge {} of edge {:?}",
                    h.side,
                    g.edge_id(h.edge)
                ));
            }
        }
        Ok(SystemMorphism { vertex, edge })
    }

    pub fn identity(a: &DecoratedGraph) -> Self {
        SystemMorphism {
            vertex: a.system.vertex_groups.iter().map(GroupHom::identity).collect(),
            edge: a.system.edge_groups.iter().map(GroupHom::identity).collect(),
        }
    }

    /// The induced maps `C^0(A) -> C^0(B)` and `C^1(A) -> C^1(B)`.
    pub fn cochain_maps(&self) -> (GroupHom, GroupHom) {
        let v: Vec<&GroupHom> = self.vertex.iter().collect();
        let e: Vec<&GroupHom> = self.edge.iter().collect();
        (GroupHom::direct_sum(&v), GroupHom::direct_sum(&e))
    }
}

/// The componentwise image of a morphism, as a system, with its inclusion
/// into the target.
pub fn image_system(
    source: &DecoratedGraph,
    target: &DecoratedGraph,
    f: &SystemMorphism,
) -> Result<(DecoratedGraph, SystemMorphism)> {
    let vimg: Vec<_> = f.vertex.iter().map(GroupHom::image).collect();
    let eimg: Vec<_> = f.edge.iter().map(GroupHom::image).collect();
    let g = &source.graph;
    let mut maps = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() {
        let side = |s: usize| -> Result<GroupHom> {
            let h = HalfEdge::new(e, s);
            let v = g.attachment(h);
            source.map(h).reinterpret(vimg[v].0.clone(), eimg[e].0.clone())
        };
        maps.push([side(0)?, side(1)?]);
    }
    let system = CoefficientSystem {
        vertex_groups: vimg.iter().map(|i| i.0.clone()).collect(),
        edge_groups: eimg.iter().map(|i| i.0.clone()).collect(),
        maps,
    };
    let image = DecoratedGraph::new(g.clone(), system)?;
    let inclusion = SystemMorphism::new(
        &image,
        target,
        vimg.into_iter().map(|i| i.2).collect(),
        eimg.into_iter().map(|i| i.2).collect(),
    )?;
    Ok((image, inclusion))
}

/// The componentwise cokernel of a morphism, with the projection from the target.
pub fn cokernel_system(target: &DecoratedGraph, f: &SystemMorphism) -> Result<(DecoratedGraph, SystemMorphism)> {
    let vc: Vec<_> = f.vertex.iter().map(GroupHom::cokernel).collect();
    let ec: Vec<_> = f.edge.iter().map(GroupHom::cokernel).collect();
    let g = &target.graph;
    let mut maps = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() {
        let side = |s: usize| -> Result<GroupHom> {
            let h = HalfEdge::new(e, s);
            let v = g.attachment(h);
            target.map(h).reinterpret(vc[v].0.clone(), ec[e].0.clone())
        };
        maps.push([side(0)?, side(1)?]);
    }
    let system = CoefficientSystem {
        vertex_groups: vc.iter().map(|c| c.0.clone()).collect(),
        edge_groups: ec.iter().map(|c| c.0.clone()).collect(),
        maps,
    };
    let quotient = DecoratedGraph::new(g.clone(), system)?;
    let projection = SystemMorphism::new(
        target,
        &quotient,
        vc.into_iter().map(|c| c.1).collect(),
        ec.into_iter().map(|c| c.1).collect(),
    )?;
    Ok((quotient, projection))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> PresentedGroup {
        PresentedGroup::free(1)
    }

    #[test]
    fn single_vertex() {
        let g = Graph::from_edges(1, &[]).unwrap();
        let dg = DecoratedGraph::constant(g, &z());
        let c = dg.cochain_complex();
        assert_eq!(c.c0.generators(), 1);
        assert_eq!(c.c1.generators(), 0);
        assert_eq!(dg.h0().to_string(), "Z^1");
        assert!(dg.h1().is_trivial());
    }

    #[test]
    fn one_edge_is_unsigned_sum() {
        let dg = DecoratedGraph::constant(Graph::from_edges(2, &[(0, 1)]).unwrap(), &z());
        assert_eq!(dg.cochain_complex().d.matrix(), &IntegerMatrix::from_i64(&[&[1, 1]]));
    }

    #[test]
    fn triangle_matrix_and_finite_h1() {
        let dg = DecoratedGraph::constant(Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap(), &z());
        let d = dg.cochain_complex().d;
        assert_eq!(d.matrix(), &IntegerMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]));
        let h1 = dg.h1();
        assert_eq!(h1.free_rank, 0);
        assert_eq!(h1.to_string(), "Z/2");
    }

    #[test]
    fn hexagon_mod_two() {
        let edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let g = Graph::from_edges(6, &edges).unwrap();
        let dg = DecoratedGraph::constant(g.clone(), &PresentedGroup::cyclic(2));
        assert_eq!(dg.h1().to_string(), "Z/2");
        assert_eq!(topological_h1(&g, &PresentedGroup::cyclic(2)).to_string(), "Z/2");
    }

    #[test]
    fn simplicial_examples() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        for heads in [[0, 0, 0], [1, 0, 0], [1, 1, 0], [1, 1, 1]] {
            let s = CoefficientSystem::simplicial(&tri, &z(), &heads).unwrap();
            let dg = DecoratedGraph::new(tri.clone(), s).unwrap();
            assert_eq!(dg.h1().to_string(), "Z^1");
            assert_eq!(dg.h0().to_string(), "Z^1");
        }
        let tree = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let s = CoefficientSystem::simplicial(&tree, &PresentedGroup::cyclic(6), &[0, 1, 0]).unwrap();
        assert!(DecoratedGraph::new(tree, s).unwrap().h1().is_trivial());
    }

    #[test]
    fn topological_values() {
        let z3 = PresentedGroup::cyclic(3);
        let para = Graph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(topological_h1(&para, &z3).to_string(), "Z/3 x Z/3");
        let tree = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(topological_h1(&tree, &z3).is_trivial());
    }

    #[test]
    fn mismatched_system_rejected() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let mut s = CoefficientSystem::constant(&g, &z());
        s.vertex_groups[1] = PresentedGroup::cyclic(2);
        assert!(DecoratedGraph::new(g, s).is_err());
    }

    #[test]
    fn non_commuting_morphism_rejected() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let a = DecoratedGraph::constant(g, &z());
        let mut f = SystemMorphism::identity(&a);
        f.vertex[0] = GroupHom::scalar(&z(), 2);
        assert!(SystemMorphism::new(&a, &a, f.vertex, f.edge).is_err());
    }
}
