//! JSON input formats and their conversion into library objects.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::abelian::{GroupHom, IntegerMatrix, InvariantFactors, PresentedGroup};
use crate::decograph::{CoefficientSystem, DecoratedGraph, Graph, HalfEdge, SystemMorphism};
use crate::error::{invalid, Result};
use crate::glattice::{FiniteGroup, GLattice, Perm, Subgroup};
use crate::reduction::{
    Branch, CohomologyTable, ComponentKind, ComponentVertex, CustomComponentData, PointVertex, ReductionGraph,
};

/// An integer matrix as a list of rows.
pub type MatrixSpec = Vec<Vec<i64>>;

pub fn matrix_from_spec(spec: &MatrixSpec, rows: usize, cols: usize, what: &str) -> Result<IntegerMatrix> {
    // an empty row list stands for any matrix with no entries
    if spec.is_empty() && (rows == 0 || cols == 0) {
        return Ok(IntegerMatrix::zeros(rows, cols));
    }
    if spec.len() != rows || spec.iter().any(|r| r.len() != cols) {
        return Err(invalid!("{what}: expected a {rows}x{cols} matrix"));
    }
    Ok(IntegerMatrix::from_rows(cols, spec))
}

pub fn matrix_from_rows(spec: &MatrixSpec, what: &str) -> Result<IntegerMatrix> {
    let cols = spec.first().map_or(0, Vec::len);
    matrix_from_spec(spec, spec.len(), cols, what)
}

pub fn bigint_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn matrix_json(m: &IntegerMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(bigint_json).collect()))
            .collect(),
    )
}

/// A finitely generated abelian group: an invariant-factor string such as
/// `"Z^2 x Z/6"`, or an explicit presentation.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Factors(String),
    Presentation { generators: usize, relations: MatrixSpec },
}

impl GroupSpec {
    pub fn to_group(&self) -> Result<PresentedGroup> {
        match self {
            GroupSpec::Factors(s) => Ok(s.parse::<InvariantFactors>()?.to_group()),
            GroupSpec::Presentation { generators, relations } => {
                let rel = matrix_from_spec(relations, relations.len(), *generators, "group relations")?;
                PresentedGroup::new(*generators, rel)
            }
        }
    }
}

/// A permutation group: by name (`C<n>`, `V4`, `S<n>`, `D<n>`, `trivial`) or
/// by generating permutations of `0..degree`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermGroupSpec {
    Named { name: String },
    Generators { degree: Option<usize>, generators: Vec<Perm> },
}

impl PermGroupSpec {
    pub fn to_group(&self) -> Result<FiniteGroup> {
        match self {
            PermGroupSpec::Named { name } => named_group(name),
            PermGroupSpec::Generators { degree, generators } => {
                let degree = degree.or_else(|| generators.first().map(Vec::len)).unwrap_or(1);
                FiniteGroup::new(degree, generators.clone())
            }
        }
    }
}

fn named_group(name: &str) -> Result<FiniteGroup> {
    let num = |s: &str| s.parse::<usize>().map_err(|_| invalid!("unknown group name {name:?}"));
    match name {
        "trivial" | "1" => Ok(FiniteGroup::trivial()),
        "V4" => Ok(FiniteGroup::klein_four()),
        _ if name.starts_with('C') => FiniteGroup::cyclic(num(&name[1..])?),
        _ if name.starts_with('S') => FiniteGroup::symmetric(num(&name[1..])?),
        _ if name.starts_with('D') => FiniteGroup::dihedral(num(&name[1..])?),
        _ => Err(invalid!("unknown group name {name:?}")),
    }
}

/// A subgroup given by generating permutations; the empty list is the trivial subgroup.
pub type LabelSpec = Vec<Perm>;

pub fn subgroup_from_spec(group: &FiniteGroup, spec: &LabelSpec) -> Result<Subgroup> {
    for p in spec {
        if p.len() != group.degree() {
            return Err(invalid!("permutation {p:?} has the wrong degree (expected {})", group.degree()));
        }
    }
    group.subgroup_from_perms(spec)
}

pub fn subgroup_to_spec(group: &FiniteGroup, h: &Subgroup) -> LabelSpec {
    h.generating_set(group).iter().map(|&g| group.element(g).clone()).collect()
}

/// A lattice: an explicit action of each group generator, or a standard construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeSpec {
    Action {
        rank: usize,
        action: Vec<MatrixSpec>,
    },
    Construction {
        construction: String,
        #[serde(default)]
        subgroup: Option<LabelSpec>,
        #[serde(default)]
        rank: Option<usize>,
    },
}

impl LatticeSpec {
    pub fn to_lattice(&self, group: &Arc<FiniteGroup>) -> Result<GLattice> {
        match self {
            LatticeSpec::Action { rank, action } => {
                let mats: Result<Vec<IntegerMatrix>> = action
                    .iter()
                    .enumerate()
                    .map(|(k, m)| matrix_from_spec(m, *rank, *rank, &format!("action of generator {k}")))
                    .collect();
                GLattice::from_generator_action(group.clone(), *rank, mats?)
            }
            LatticeSpec::Construction {
                construction,
                subgroup,
                rank,
            } => match construction.as_str() {
                "norm-one" => Ok(GLattice::norm_one(group.clone())),
                "regular" => Ok(GLattice::regular(group.clone())),
                "trivial" => Ok(GLattice::trivial(group.clone(), rank.unwrap_or(1))),
                "permutation" => {
                    let h = subgroup_from_spec(group, subgroup.as_ref().ok_or_else(|| invalid!("permutation lattice needs a subgroup"))?)?;
                    Ok(GLattice::permutation(group.clone(), &h))
                }
                "sign" => {
                    let h = subgroup_from_spec(group, subgroup.as_ref().ok_or_else(|| invalid!("sign lattice needs its kernel as subgroup"))?)?;
                    if 2 * h.order() != group.order() {
                        return Err(invalid!("kernel of a sign character must have index 2"));
                    }
                    GLattice::from_character(group.clone(), |g| if h.contains(g) { 1 } else { -1 })
                }
                other => Err(invalid!("unknown lattice construction {other:?}")),
            },
        }
    }
}

/// Input of the lattice commands.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeInput {
    pub group: PermGroupSpec,
    pub lattice: LatticeSpec,
    #[serde(default)]
    pub subgroup: Option<LabelSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SnfInput {
    pub matrix: MatrixSpec,
    /// Number of columns, needed only when `matrix` has no rows.
    #[serde(default)]
    pub cols: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndSpec {
    pub vertex: String,
    #[serde(default)]
    pub map: Option<MatrixSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub id: String,
    #[serde(default)]
    pub group: Option<GroupSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: String,
    pub ends: [EndSpec; 2],
    #[serde(default)]
    pub group: Option<GroupSpec>,
    /// For simplicial coefficients: the side (0 or 1) mapping by `+1`.
    #[serde(default)]
    pub head: Option<usize>,
}

/// Shorthand coefficient systems: the same group everywhere, with identity maps
/// (`constant`) or signed identities (`simplicial`).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Coefficients {
    Constant(GroupSpec),
    Simplicial(GroupSpec),
}

/// A decorated graph. Groups and maps may be omitted when `coefficients` is given.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default)]
    pub coefficients: Option<Coefficients>,
}

impl GraphSpec {
    pub fn to_graph(&self) -> Result<Graph> {
        let mut g = Graph::new();
        for v in &self.vertices {
            g.add_vertex(v.id.clone())?;
        }
        for e in &self.edges {
            let end = |k: usize| {
                g.vertex_index(&e.ends[k].vertex)
                    .ok_or_else(|| invalid!("edge {:?} is attached to unknown vertex {:?}", e.id, e.ends[k].vertex))
            };
            let (a, b) = (end(0)?, end(1)?);
            g.add_edge(e.id.clone(), a, b)?;
        }
        Ok(g)
    }

    pub fn to_decorated(&self) -> Result<DecoratedGraph> {
        let graph = self.to_graph()?;
        match &self.coefficients {
            Some(Coefficients::Constant(a)) => {
                self.reject_explicit_data()?;
                Ok(DecoratedGraph::constant(graph, &a.to_group()?))
            }
            Some(Coefficients::Simplicial(a)) => {
                self.reject_explicit_data()?;
                let heads: Vec<usize> = self.edges.iter().map(|e| e.head.unwrap_or(1)).collect();
                let system = CoefficientSystem::simplicial(&graph, &a.to_group()?, &heads)?;
                DecoratedGraph::new(graph, system)
            }
            None => {
                let vertex_groups: Result<Vec<PresentedGroup>> = self
                    .vertices
                    .iter()
                    .map(|v| {
                        v.group
                            .as_ref()
                            .ok_or_else(|| invalid!("vertex {:?} has no group", v.id))?
                            .to_group()
                    })
                    .collect();
                let vertex_groups = vertex_groups?;
                let mut edge_groups = Vec::new();
                let mut maps = Vec::new();
                for (k, e) in self.edges.iter().enumerate() {
                    let eg = e
                        .group
                        .as_ref()
                        .ok_or_else(|| invalid!("edge {:?} has no group", e.id))?
                        .to_group()?;
                    let side = |s: usize| -> Result<GroupHom> {
                        let v = graph.attachment(HalfEdge::new(k, s));
                        let spec = e.ends[s]
                            .map
                            .as_ref()
                            .ok_or_else(|| invalid!("end {s} of edge {:?} has no map", e.id))?;
                        let vg = &vertex_groups[v];
                        let m = matrix_from_spec(spec, eg.generators(), vg.generators(), &format!("map on end {s} of edge {:?}", e.id))?;
                        GroupHom::new(vg.clone(), eg.clone(), m)
                    };
                    maps.push([side(0)?, side(1)?]);
                    edge_groups.push(eg);
                }
                DecoratedGraph::new(
                    graph,
                    CoefficientSystem {
                        vertex_groups,
                        edge_groups,
                        maps,
                    },
                )
            }
        }
    }

    fn reject_explicit_data(&self) -> Result<()> {
        let explicit = self.vertices.iter().any(|v| v.group.is_some())
            || self
                .edges
                .iter()
                .any(|e| e.group.is_some() || e.ends.iter().any(|end| end.map.is_some()));
        if explicit {
            return Err(invalid!("explicit groups or maps cannot be combined with shorthand coefficients"));
        }
        Ok(())
    }
}

/// Input of `graph-h`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphInput {
    #[serde(flatten)]
    pub graph: GraphSpec,
    /// When given, also report `A0^m` for the cycle rank `m`.
    #[serde(default)]
    pub topological: Option<GroupSpec>,
}

/// Input of `contract`: contract one half-edge, or a whole rooted tree.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContractInput {
    #[serde(flatten)]
    pub graph: GraphSpec,
    #[serde(default)]
    pub root: Option<String>,
    #[serde(default)]
    pub half_edge: Option<HalfEdgeSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfEdgeSpec {
    pub edge: String,
    pub side: usize,
}

/// Per-vertex and per-edge matrices, keyed by id.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub vertices: BTreeMap<String, MatrixSpec>,
    pub edges: BTreeMap<String, MatrixSpec>,
}

impl MorphismSpec {
    pub fn to_morphism(&self, source: &DecoratedGraph, target: &DecoratedGraph) -> Result<SystemMorphism> {
        let g = source.graph();
        let mut vertex = Vec::new();
        for v in 0..g.vertex_count() {
            let id = g.vertex_id(v);
            let spec = self.vertices.get(id).ok_or_else(|| invalid!("morphism has no map at vertex {id:?}"))?;
            let (a, b) = (source.vertex_group(v), target.vertex_group(v));
            let m = matrix_from_spec(spec, b.generators(), a.generators(), &format!("morphism at vertex {id:?}"))?;
            vertex.push(GroupHom::new(a.clone(), b.clone(), m)?);
        }
        let mut edge = Vec::new();
        for e in 0..g.edge_count() {
            let id = g.edge_id(e);
            let spec = self.edges.get(id).ok_or_else(|| invalid!("morphism has no map at edge {id:?}"))?;
            let (a, b) = (source.edge_group(e), target.edge_group(e));
            let m = matrix_from_spec(spec, b.generators(), a.generators(), &format!("morphism at edge {id:?}"))?;
            edge.push(GroupHom::new(a.clone(), b.clone(), m)?);
        }
        if self.vertices.len() != g.vertex_count() || self.edges.len() != g.edge_count() {
            return Err(invalid!("morphism mentions ids that are not in the graph"));
        }
        SystemMorphism::new(source, target, vertex, edge)
    }
}

/// Input of `six-term`: three systems on the same graph and the two morphisms.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SixTermInput {
    pub a: GraphSpec,
    pub b: GraphSpec,
    pub c: GraphSpec,
    pub i: MorphismSpec,
    pub p: MorphismSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub id: String,
    pub label: LabelSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub id: String,
    pub label: LabelSpec,
    pub kind: ComponentKind,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchSpec {
    pub point: String,
    pub component: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableGroupSpec {
    pub label: LabelSpec,
    pub group: GroupSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionSpec {
    pub from: LabelSpec,
    pub to: LabelSpec,
    pub map: MatrixSpec,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    pub groups: Vec<TableGroupSpec>,
    #[serde(default)]
    pub restrictions: Vec<RestrictionSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecializationSpec {
    pub point: String,
    pub map: MatrixSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomSpec {
    pub component: String,
    pub group: GroupSpec,
    pub specializations: Vec<SpecializationSpec>,
    #[serde(default)]
    pub generic_restriction: Option<MatrixSpec>,
}

/// A reduction graph with optional cohomology data.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionSpec {
    pub context: PermGroupSpec,
    pub points: Vec<PointSpec>,
    pub components: Vec<ComponentSpec>,
    pub branches: Vec<BranchSpec>,
    #[serde(default)]
    pub table: Option<TableSpec>,
    #[serde(default)]
    pub custom: Vec<CustomSpec>,
    /// For `basechange`: generators of the normal subgroup.
    #[serde(default)]
    pub normal_subgroup: Option<LabelSpec>,
    /// For `sha`: also report `A0^m` for the cycle rank `m`.
    #[serde(default)]
    pub topological: Option<GroupSpec>,
}

/// Everything a reduction command needs, converted.
pub struct ReductionData {
    pub graph: ReductionGraph,
    pub table: Option<CohomologyTable>,
    pub custom: Vec<CustomComponentData>,
}

impl ReductionSpec {
    pub fn to_graph(&self) -> Result<ReductionGraph> {
        let group = Arc::new(self.context.to_group()?);
        let points: Result<Vec<PointVertex>> = self
            .points
            .iter()
            .map(|p| {
                Ok(PointVertex {
                    id: p.id.clone(),
                    label: subgroup_from_spec(&group, &p.label)?,
                })
            })
            .collect();
        let components: Result<Vec<ComponentVertex>> = self
            .components
            .iter()
            .map(|c| {
                Ok(ComponentVertex {
                    id: c.id.clone(),
                    label: subgroup_from_spec(&group, &c.label)?,
                    kind: c.kind,
                })
            })
            .collect();
        let point_index = |id: &str| {
            self.points
                .iter()
                .position(|p| p.id == id)
                .ok_or_else(|| invalid!("branch refers to unknown point {id:?}"))
        };
        let component_index = |id: &str| {
            self.components
                .iter()
                .position(|c| c.id == id)
                .ok_or_else(|| invalid!("branch refers to unknown component {id:?}"))
        };
        let branches: Result<Vec<Branch>> = self
            .branches
            .iter()
            .map(|b| {
                Ok(Branch {
                    point: point_index(&b.point)?,
                    component: component_index(&b.component)?,
                })
            })
            .collect();
        ReductionGraph::new(group, points?, components?, branches?)
    }

    pub fn to_data(&self) -> Result<ReductionData> {
        let graph = self.to_graph()?;
        let group = graph.context().clone();
        let table = match &self.table {
            None => None,
            Some(spec) => {
                let mut t = CohomologyTable::new();
                for g in &spec.groups {
                    t.insert_group(subgroup_from_spec(&group, &g.label)?, g.group.to_group()?)?;
                }
                for r in &spec.restrictions {
                    let from = subgroup_from_spec(&group, &r.from)?;
                    let to = subgroup_from_spec(&group, &r.to)?;
                    let (a, b) = (t.group(&from)?.clone(), t.group(&to)?.clone());
                    let m = matrix_from_spec(&r.map, b.generators(), a.generators(), "restriction map")?;
                    t.insert_restriction(from, to, GroupHom::new(a, b, m)?)?;
                }
                Some(t)
            }
        };
        let mut custom = Vec::new();
        for c in &self.custom {
            let u = graph
                .components()
                .iter()
                .position(|x| x.id == c.component)
                .ok_or_else(|| invalid!("custom data for unknown component {:?}", c.component))?;
            let t = table.as_ref().ok_or_else(|| invalid!("custom data needs a table"))?;
            let av = c.group.to_group()?;
            let mut specializations = Vec::new();
            for s in &c.specializations {
                let p = graph
                    .points()
                    .iter()
                    .position(|x| x.id == s.point)
                    .ok_or_else(|| invalid!("specialization at unknown point {:?}", s.point))?;
                let target = t.group(&graph.points()[p].label)?.clone();
                let m = matrix_from_spec(&s.map, target.generators(), av.generators(), "specialization map")?;
                specializations.push((p, GroupHom::new(av.clone(), target, m)?));
            }
            let generic_restriction = match &c.generic_restriction {
                None => None,
                Some(spec) => {
                    let source = t.group(&graph.components()[u].label)?.clone();
                    let m = matrix_from_spec(spec, av.generators(), source.generators(), "generic restriction")?;
                    Some(GroupHom::new(source, av.clone(), m)?)
                }
            };
            custom.push(CustomComponentData {
                component: u,
                group: av,
                specializations,
                generic_restriction,
            });
        }
        Ok(ReductionData { graph, table, custom })
    }

    /// The inverse of [`ReductionSpec::to_graph`] for the graph part.
    pub fn from_graph(rg: &ReductionGraph) -> Self {
        let group = rg.context();
        ReductionSpec {
            context: PermGroupSpec::Generators {
                degree: Some(group.degree()),
                generators: group.generators().to_vec(),
            },
            points: rg
                .points()
                .iter()
                .map(|p| PointSpec {
                    id: p.id.clone(),
                    label: subgroup_to_spec(group, &p.label),
                })
                .collect(),
            components: rg
                .components()
                .iter()
                .map(|c| ComponentSpec {
                    id: c.id.clone(),
                    label: subgroup_to_spec(group, &c.label),
                    kind: c.kind,
                })
                .collect(),
            branches: rg
                .branches()
                .iter()
                .map(|b| BranchSpec {
                    point: rg.points()[b.point].id.clone(),
                    component: rg.components()[b.component].id.clone(),
                })
                .collect(),
            table: None,
            custom: Vec::new(),
            normal_subgroup: None,
            topological: None,
        }
    }
}
