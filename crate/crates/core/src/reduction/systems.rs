//! The coefficient systems of a reduction graph and the obstruction group
//! computed from them.

use serde::Serialize;

use crate::abelian::{exact_at, GroupHom, InvariantFactors, PresentedGroup};
use crate::decograph::{cokernel_system, topological_h1, CoefficientSystem, DecoratedGraph, SystemMorphism};
use crate::error::{Error, Result};

use super::graph::{ComponentKind, ReductionGraph};
use super::table::{custom_index, CohomologyTable, CustomComponentData};

/// Builds the system in which points and branches carry `A_{H_P}` with identity
/// point-side maps; a rational component carries `A_{H_U}` with table
/// restrictions, a custom component its own group with its specializations.
pub fn build_hk_system(
    rg: &ReductionGraph,
    table: &CohomologyTable,
    custom: &[CustomComponentData],
) -> Result<DecoratedGraph> {
    table.validate_for(rg)?;
    let index = custom_index(rg, table, custom)?;
    let mut vertex_groups: Vec<PresentedGroup> = Vec::new();
    for p in rg.points() {
        vertex_groups.push(table.group(&p.label)?.clone());
    }
    for (u, c) in rg.components().iter().enumerate() {
        vertex_groups.push(match index[u] {
            Some(k) => custom[k].group.clone(),
            None => table.group(&c.label)?.clone(),
        });
    }
    let mut edge_groups = Vec::new();
    let mut maps = Vec::new();
    for b in rg.branches() {
        let hp = &rg.points()[b.point].label;
        let a_p = table.group(hp)?;
        edge_groups.push(a_p.clone());
        let u = &rg.components()[b.component];
        let component_side = match index[b.component] {
            Some(k) => custom[k].specialization(b.point).expect("validated").clone(),
            None => table.restriction(&u.label, hp)?,
        };
        maps.push([GroupHom::identity(a_p), component_side]);
    }
    DecoratedGraph::new(
        rg.graph(),
        CoefficientSystem {
            vertex_groups,
            edge_groups,
            maps,
        },
    )
}

/// Builds the system with every vertex decorated from the table.
pub fn build_hkappa_system(rg: &ReductionGraph, table: &CohomologyTable) -> Result<DecoratedGraph> {
    table.validate_for(rg)?;
    let mut vertex_groups: Vec<PresentedGroup> = Vec::new();
    for p in rg.points() {
        vertex_groups.push(table.group(&p.label)?.clone());
    }
    for c in rg.components() {
        vertex_groups.push(table.group(&c.label)?.clone());
    }
    let mut edge_groups = Vec::new();
    let mut maps = Vec::new();
    for b in rg.branches() {
        let hp = &rg.points()[b.point].label;
        let a_p = table.group(hp)?;
        edge_groups.push(a_p.clone());
        let hu = &rg.components()[b.component].label;
        maps.push([GroupHom::identity(a_p), table.restriction(hu, hp)?]);
    }
    DecoratedGraph::new(
        rg.graph(),
        CoefficientSystem {
            vertex_groups,
            edge_groups,
            maps,
        },
    )
}

/// `H^1` of the system from [`build_hk_system`].
pub fn sha(rg: &ReductionGraph, table: &CohomologyTable, custom: &[CustomComponentData]) -> Result<InvariantFactors> {
    Ok(build_hk_system(rg, table, custom)?.h1())
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiReport {
    /// False when some custom component lacks a generic restriction.
    pub available: bool,
    pub reason: Option<String>,
    pub h1_kappa: InvariantFactors,
    pub h1_k: InvariantFactors,
    /// The map on first cohomology is well defined and onto.
    pub surjective: bool,
    pub all_rational: bool,
    /// Whether the map is an isomorphism (checked when available).
    pub isomorphism: Option<bool>,
}

/// The comparison map from the table-decorated system onto the obstruction
/// system: identity on points, branches and rational components, generic
/// restriction on custom components.
pub fn phi_surjection(rg: &ReductionGraph, table: &CohomologyTable, custom: &[CustomComponentData]) -> Result<PhiReport> {
    let hk = build_hk_system(rg, table, custom)?;
    let hkappa = build_hkappa_system(rg, table)?;
    let h1_k = hk.h1();
    let h1_kappa = hkappa.h1();
    let all_rational = rg.components().iter().all(|c| c.kind == ComponentKind::Rational);
    let unavailable = |reason: String| PhiReport {
        available: false,
        reason: Some(reason),
        h1_kappa: h1_kappa.clone(),
        h1_k: h1_k.clone(),
        surjective: false,
        all_rational,
        isomorphism: None,
    };

    let np = rg.points().len();
    let mut vertex: Vec<GroupHom> = (0..np).map(|v| GroupHom::identity(hk.vertex_group(v))).collect();
    for (u, c) in rg.components().iter().enumerate() {
        let v = rg.component_vertex(u);
        match c.kind {
            ComponentKind::Rational => vertex.push(GroupHom::identity(hk.vertex_group(v))),
            ComponentKind::Custom => {
                let data = custom.iter().find(|d| d.component == u).expect("validated");
                match &data.generic_restriction {
                    Some(gen) => vertex.push(gen.clone()),
                    None => return Ok(unavailable(format!("component {:?} has no generic restriction", c.id))),
                }
            }
        }
    }
    let edge = (0..rg.branches().len())
        .map(|e| GroupHom::identity(hk.edge_group(e)))
        .collect();
    let phi = SystemMorphism::new(&hkappa, &hk, vertex, edge)?;
    let (_, phi1) = phi.cochain_maps();
    let dk = hkappa.cochain_complex().d;
    let dkk = hk.cochain_complex().d;
    let (q_kappa, _) = dk.cokernel();
    let (q_k, _) = dkk.cokernel();
    let induced = match GroupHom::new(q_kappa, q_k, phi1.matrix().clone()) {
        Ok(m) => m,
        Err(_) => return Ok(unavailable("image of the differential is not preserved".into())),
    };
    let surjective = induced.is_surjective();
    Ok(PhiReport {
        available: true,
        reason: None,
        h1_kappa,
        h1_k,
        surjective,
        all_rational,
        isomorphism: Some(surjective && induced.is_injective()),
    })
}

/// The right-exact sequence
/// `Hom(H_1(Γ), A_G) -> H^1(Γ, H_k) -> H^1(Γ, C) -> 0` for graphs of rational
/// components labelled by the whole group, with `C` the quotient of `H_k` by the
/// image of the constant system `A_G`.
#[derive(Clone, Debug, Serialize)]
pub struct ShaP1Report {
    pub left: InvariantFactors,
    pub middle: InvariantFactors,
    pub right: InvariantFactors,
    pub cycle_rank: usize,
    /// `left` equals `A_G^m` for the cycle rank `m`.
    pub left_is_topological: bool,
    /// `∏_P A_{H_P} / im(A_G)`.
    pub point_product: InvariantFactors,
    pub right_matches_point_product: bool,
    pub exact_at_middle: bool,
    pub right_surjective: bool,
}

impl ShaP1Report {
    pub fn verified(&self) -> bool {
        self.left_is_topological && self.exact_at_middle && self.right_surjective
    }
}

pub fn sha_all_p1_report(rg: &ReductionGraph, table: &CohomologyTable) -> Result<ShaP1Report> {
    let whole = rg.context().whole();
    if let Some(c) = rg
        .components()
        .iter()
        .find(|c| c.kind != ComponentKind::Rational || c.label != whole)
    {
        return Err(Error::Precondition(format!(
            "component {:?} is not a rational component over the base field",
            c.id
        )));
    }
    let hk = build_hk_system(rg, table, &[])?;
    let a_g = table.group(&whole)?;
    let graph = rg.graph();
    let constant = DecoratedGraph::constant(graph.clone(), a_g);

    let np = rg.points().len();
    let mut vertex = Vec::new();
    for p in rg.points() {
        vertex.push(table.restriction(&whole, &p.label)?);
    }
    for _ in rg.components() {
        vertex.push(GroupHom::identity(a_g));
    }
    let mut edge = Vec::new();
    for b in rg.branches() {
        edge.push(table.restriction(&whole, &rg.points()[b.point].label)?);
    }
    debug_assert_eq!(vertex.len(), np + rg.components().len());
    let f = SystemMorphism::new(&constant, &hk, vertex, edge)?;
    let (quotient, proj) = cokernel_system(&hk, &f)?;

    let da = constant.cochain_complex().d;
    let dk = hk.cochain_complex().d;
    let dc = quotient.cochain_complex().d;
    let (qa, _) = da.cokernel();
    let (qk, _) = dk.cokernel();
    let (qc, _) = dc.cokernel();
    let (_, f1) = f.cochain_maps();
    let (_, p1) = proj.cochain_maps();
    let left_map = GroupHom::new(qa.clone(), qk.clone(), f1.matrix().clone())?;
    let right_map = GroupHom::new(qk.clone(), qc.clone(), p1.matrix().clone())?;

    let mut quotients = Vec::new();
    for p in rg.points() {
        quotients.push(table.restriction(&whole, &p.label)?.cokernel().0);
    }
    let point_product = PresentedGroup::direct_sum(&quotients.iter().collect::<Vec<_>>()).canonical_form();
    let left = qa.canonical_form();
    let right = qc.canonical_form();
    let m = graph.cycle_rank();
    Ok(ShaP1Report {
        left_is_topological: left == topological_h1(&graph, a_g),
        right_matches_point_product: right == point_product,
        middle: qk.canonical_form(),
        exact_at_middle: exact_at(&left_map, &right_map)?,
        right_surjective: right_map.is_surjective(),
        left,
        right,
        cycle_rank: m,
        point_product,
    })
}
