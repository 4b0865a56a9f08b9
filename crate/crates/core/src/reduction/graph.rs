//! Reduction graphs: bipartite graphs of points and components labelled by
//! subgroups of a finite Galois group.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::decograph::Graph;
use crate::error::{invalid, Result};
use crate::glattice::{FiniteGroup, Subgroup};

/// The Galois group of a finite splitting extension, through which every
/// residue field is encoded as the subgroup fixing it.
pub type GaloisContext = Arc<FiniteGroup>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    /// A copy of the projective line over its constant field.
    Rational,
    /// A component whose cohomology group is supplied explicitly.
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointVertex {
    pub id: String,
    pub label: Subgroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentVertex {
    pub id: String,
    pub label: Subgroup,
    pub kind: ComponentKind,
}

/// A branch joins `points[point]` to `components[component]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Branch {
    pub point: usize,
    pub component: usize,
}

/// In the associated [`Graph`], points come first, then components; edge `k`
/// is branch `k` with side 0 at the point and side 1 at the component.
#[derive(Clone, Debug)]
pub struct ReductionGraph {
    context: GaloisContext,
    points: Vec<PointVertex>,
    components: Vec<ComponentVertex>,
    branches: Vec<Branch>,
}

impl ReductionGraph {
    /// Validates ids, branch endpoints, label containment `H_P ⊆ H_U` on every
    /// branch, absence of repeated branches, and connectedness.
    pub fn new(
        context: GaloisContext,
        points: Vec<PointVertex>,
        components: Vec<ComponentVertex>,
        branches: Vec<Branch>,
    ) -> Result<Self> {
        let rg = Self::unchecked_connectivity(context, points, components, branches)?;
        if !rg.graph().is_connected() {
            return Err(invalid!("reduction graph is not connected"));
        }
        Ok(rg)
    }

    /// As [`ReductionGraph::new`] without the connectedness requirement.
    pub fn unchecked_connectivity(
        context: GaloisContext,
        points: Vec<PointVertex>,
        components: Vec<ComponentVertex>,
        branches: Vec<Branch>,
    ) -> Result<Self> {
        if points.is_empty() && components.is_empty() {
            return Err(invalid!("reduction graph has no vertices"));
        }
        let mut ids = HashSet::new();
        for id in points.iter().map(|p| &p.id).chain(components.iter().map(|c| &c.id)) {
            if !ids.insert(id) {
                return Err(invalid!("duplicate vertex id {id:?}"));
            }
        }
        let in_group = |h: &Subgroup| h.elements().iter().all(|&g| g < context.order());
        for p in &points {
            if !in_group(&p.label) {
                return Err(invalid!("label of point {:?} is not a subgroup of the context group", p.id));
            }
        }
        for c in &components {
            if !in_group(&c.label) {
                return Err(invalid!("label of component {:?} is not a subgroup of the context group", c.id));
            }
        }
        let mut seen = HashSet::new();
        for b in &branches {
            let (Some(p), Some(u)) = (points.get(b.point), components.get(b.component)) else {
                return Err(invalid!("branch refers to a missing point or component"));
            };
            if !seen.insert(*b) {
                return Err(invalid!("repeated branch ({:?}, {:?})", u.id, p.id));
            }
            if !p.label.is_subgroup_of(&u.label) {
                return Err(invalid!(
                    "branch ({:?}, {:?}): the point label is not contained in the component label",
                    u.id,
                    p.id
                ));
            }
        }
        Ok(ReductionGraph {
            context,
            points,
            components,
            branches,
        })
    }

    pub fn context(&self) -> &GaloisContext {
        &self.context
    }

    pub fn points(&self) -> &[PointVertex] {
        &self.points
    }

    pub fn components(&self) -> &[ComponentVertex] {
        &self.components
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    /// Index of a point in the associated graph.
    pub fn point_vertex(&self, p: usize) -> usize {
        p
    }

    /// Index of a component in the associated graph.
    pub fn component_vertex(&self, u: usize) -> usize {
        self.points.len() + u
    }

    pub fn vertex_label(&self, v: usize) -> &Subgroup {
        if v < self.points.len() {
            &self.points[v].label
        } else {
            &self.components[v - self.points.len()].label
        }
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        if v < self.points.len() {
            &self.points[v].id
        } else {
            &self.components[v - self.points.len()].id
        }
    }

    pub fn is_point(&self, v: usize) -> bool {
        v < self.points.len()
    }

    pub fn graph(&self) -> Graph {
        let mut g = Graph::new();
        for p in &self.points {
            g.add_vertex(p.id.clone()).expect("ids checked");
        }
        for c in &self.components {
            g.add_vertex(c.id.clone()).expect("ids checked");
        }
        for b in &self.branches {
            let id = format!("{}~{}", self.components[b.component].id, self.points[b.point].id);
            g.add_edge(id, self.point_vertex(b.point), self.component_vertex(b.component))
                .expect("endpoints checked");
        }
        g
    }

    pub fn cycle_rank(&self) -> usize {
        self.graph().cycle_rank()
    }

    pub fn is_tree(&self) -> bool {
        self.graph().is_tree()
    }

    pub fn point_degree(&self, p: usize) -> usize {
        self.branches.iter().filter(|b| b.point == p).count()
    }
}

/// A small builder used by fixtures and tests.
#[derive(Clone, Debug)]
pub struct ReductionGraphBuilder {
    context: GaloisContext,
    points: Vec<PointVertex>,
    components: Vec<ComponentVertex>,
    branches: Vec<Branch>,
}

impl ReductionGraphBuilder {
    pub fn new(context: GaloisContext) -> Self {
        ReductionGraphBuilder {
            context,
            points: Vec::new(),
            components: Vec::new(),
            branches: Vec::new(),
        }
    }

    pub fn point(&mut self, id: impl Into<String>, label: Subgroup) -> usize {
        self.points.push(PointVertex { id: id.into(), label });
        self.points.len() - 1
    }

    pub fn component(&mut self, id: impl Into<String>, label: Subgroup, kind: ComponentKind) -> usize {
        self.components.push(ComponentVertex {
            id: id.into(),
            label,
            kind,
        });
        self.components.len() - 1
    }

    pub fn branch(&mut self, point: usize, component: usize) -> &mut Self {
        self.branches.push(Branch { point, component });
        self
    }

    pub fn build(self) -> Result<ReductionGraph> {
        ReductionGraph::new(self.context, self.points, self.components, self.branches)
    }
}
