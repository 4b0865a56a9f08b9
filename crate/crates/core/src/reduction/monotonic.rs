//! Monotonic trees: roots, the point-to-component matching criterion, and the
//! vanishing of the obstruction group on them.

use serde::Serialize;

use crate::decograph::{contract_to_point, ContractionStep};
use crate::error::{Error, Result};
use crate::abelian::InvariantFactors;

use super::graph::ReductionGraph;
use super::systems::{build_hkappa_system, sha};
use super::table::{CohomologyTable, CustomComponentData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicReport {
    pub monotonic: bool,
    /// A root that works, when monotonic.
    pub root: Option<String>,
    pub is_tree: bool,
    /// For a tree that is not monotonic: the candidate root with the fewest
    /// violations and its first violating `(parent, child)` edge.
    pub best_root: Option<String>,
    pub violation: Option<(String, String)>,
}

/// Parent-child pairs violating `H_child ⊆ H_parent` when rooted at `root`.
fn violations(rg: &ReductionGraph, root: usize) -> Vec<(usize, usize)> {
    let g = rg.graph();
    let (parent, _) = g.bfs_tree(root);
    (0..g.vertex_count())
        .filter_map(|w| parent[w].map(|(v, _)| (v, w)))
        .filter(|&(v, w)| !rg.vertex_label(w).is_subgroup_of(rg.vertex_label(v)))
        .collect()
}

/// Tries every vertex as root, in vertex order.
pub fn is_monotonic(rg: &ReductionGraph) -> MonotonicReport {
    if !rg.is_tree() {
        return MonotonicReport {
            monotonic: false,
            root: None,
            is_tree: false,
            best_root: None,
            violation: None,
        };
    }
    let n = rg.points().len() + rg.components().len();
    let mut best: Option<(usize, Vec<(usize, usize)>)> = None;
    for root in 0..n {
        let bad = violations(rg, root);
        if bad.is_empty() {
            return MonotonicReport {
                monotonic: true,
                root: Some(rg.vertex_id(root).to_string()),
                is_tree: true,
                best_root: None,
                violation: None,
            };
        }
        if best.as_ref().is_none_or(|(_, b)| bad.len() < b.len()) {
            best = Some((root, bad));
        }
    }
    let (root, bad) = best.expect("at least one vertex");
    let mut bad = bad;
    bad.sort_unstable();
    let (v, w) = bad[0];
    MonotonicReport {
        monotonic: false,
        root: None,
        is_tree: true,
        best_root: Some(rg.vertex_id(root).to_string()),
        violation: Some((rg.vertex_id(v).to_string(), rg.vertex_id(w).to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    pub exists: bool,
    /// `(point, component)` pairs of the injection when it exists.
    pub assignment: Vec<(String, String)>,
    /// A point left unmatched by a maximum matching, when none exists.
    pub unmatched: Option<String>,
}

/// Looks for an injection from the points lying on two or more components to
/// incident components carrying the same label (maximum bipartite matching).
pub fn psi_injection(rg: &ReductionGraph) -> Result<PsiReport> {
    if !rg.is_tree() {
        return Err(Error::Precondition("reduction graph is not a tree".into()));
    }
    let nodal: Vec<usize> = (0..rg.points().len()).filter(|&p| rg.point_degree(p) >= 2).collect();
    let admissible: Vec<Vec<usize>> = nodal
        .iter()
        .map(|&p| {
            rg.branches()
                .iter()
                .filter(|b| b.point == p && rg.components()[b.component].label == rg.points()[p].label)
                .map(|b| b.component)
                .collect()
        })
        .collect();

    let mut owner: Vec<Option<usize>> = vec![None; rg.components().len()];
    fn augment(k: usize, adm: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &u in &adm[k] {
            if seen[u] {
                continue;
            }
            seen[u] = true;
            if owner[u].is_none_or(|other| augment(other, adm, owner, seen)) {
                owner[u] = Some(k);
                return true;
            }
        }
        false
    }
    let mut unmatched = None;
    for k in 0..nodal.len() {
        let mut seen = vec![false; rg.components().len()];
        if !augment(k, &admissible, &mut owner, &mut seen) && unmatched.is_none() {
            unmatched = Some(rg.points()[nodal[k]].id.clone());
        }
    }
    if unmatched.is_some() {
        return Ok(PsiReport {
            exists: false,
            assignment: Vec::new(),
            unmatched,
        });
    }
    let mut assignment: Vec<(usize, usize)> = owner
        .iter()
        .enumerate()
        .filter_map(|(u, k)| k.map(|k| (nodal[k], u)))
        .collect();
    assignment.sort_unstable();
    Ok(PsiReport {
        exists: true,
        assignment: assignment
            .into_iter()
            .map(|(p, u)| (rg.points()[p].id.clone(), rg.components()[u].id.clone()))
            .collect(),
        unmatched: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingCheck {
    pub root: String,
    pub contractible: bool,
    pub trace: Vec<ContractionStep>,
    pub failure: Option<String>,
    pub h1_kappa: InvariantFactors,
    pub sha: InvariantFactors,
}

impl VanishingCheck {
    pub fn verified(&self) -> bool {
        self.contractible && self.h1_kappa.is_trivial() && self.sha.is_trivial()
    }
}

/// On a monotonic tree: contracts the table-decorated system onto the root and
/// checks that both first cohomology groups vanish.
pub fn monotonic_implies_trivial(
    rg: &ReductionGraph,
    table: &CohomologyTable,
    custom: &[CustomComponentData],
) -> Result<VanishingCheck> {
    let report = is_monotonic(rg);
    let Some(root_id) = report.root else {
        return Err(Error::Precondition("reduction graph is not a monotonic tree".into()));
    };
    let hkappa = build_hkappa_system(rg, table)?;
    let root = hkappa.graph().vertex_index(&root_id).expect("root is a vertex");
    let outcome = contract_to_point(&hkappa, root)?;
    Ok(VanishingCheck {
        root: root_id,
        contractible: outcome.contractible,
        trace: outcome.trace,
        failure: outcome.failure,
        h1_kappa: hkappa.h1(),
        sha: sha(rg, table, custom)?,
    })
}
