//! Base change of a reduction graph to the fixed field of a normal subgroup.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::glattice::{FiniteGroup, Subgroup};

use super::graph::{Branch, ComponentVertex, PointVertex, ReductionGraph};

/// Double cosets `N g H`, ordered by least element, each with that least
/// element as representative. Returns `(representatives, class of each g)`.
fn double_cosets(group: &FiniteGroup, n: &Subgroup, h: &Subgroup) -> (Vec<usize>, Vec<usize>) {
    let mut class = vec![usize::MAX; group.order()];
    let mut reps = Vec::new();
    for g in 0..group.order() {
        if class[g] != usize::MAX {
            continue;
        }
        for &a in n.elements() {
            for &b in h.elements() {
                class[group.mul(group.mul(a, g), b)] = reps.len();
            }
        }
        reps.push(g);
    }
    (reps, class)
}

fn vertex_name(id: &str, k: usize, count: usize) -> String {
    if count == 1 {
        id.to_string()
    } else {
        format!("{id}#{k}")
    }
}

/// The reduction graph over the fixed field of a normal subgroup `n`.
///
/// A vertex with label `H` splits into one vertex per double coset `N g H`,
/// labelled by `N ∩ g H g^{-1}` (with `g` the least representative) viewed as a
/// subgroup of `N`. Branches over `(U, P)` correspond to the double cosets
/// `N g H_P`, attached through `N g H_P ⊆ N g H_U`. A vertex that does not
/// split keeps its id; otherwise the copies are named `id#k`.
///
/// The result can be disconnected and is not checked for connectedness.
pub fn base_change(rg: &ReductionGraph, n: &Subgroup) -> Result<ReductionGraph> {
    let group = rg.context();
    if n.elements().iter().any(|&g| g >= group.order()) {
        return Err(Error::Precondition("subgroup does not lie in the context group".into()));
    }
    if !n.is_normal_in(group) {
        return Err(Error::Precondition(
            "base change is only defined for normal subgroups".into(),
        ));
    }
    let (sub, parent) = n.as_group(group);
    let mut to_sub = vec![usize::MAX; group.order()];
    for (i, &g) in parent.iter().enumerate() {
        to_sub[g] = i;
    }
    let new_label = |h: &Subgroup, g: usize| -> Result<Subgroup> {
        let inter = n.intersect(&h.conjugate_by(group, g));
        let elems: Vec<usize> = inter.elements().iter().map(|&x| to_sub[x]).collect();
        sub.subgroup_from_elements(&elems)
    };

    let mut points = Vec::new();
    let mut point_classes = Vec::new();
    for p in rg.points() {
        let (reps, class) = double_cosets(group, n, &p.label);
        let first = points.len();
        for (k, &g) in reps.iter().enumerate() {
            points.push(PointVertex {
                id: vertex_name(&p.id, k, reps.len()),
                label: new_label(&p.label, g)?,
            });
        }
        point_classes.push((first, class));
    }
    let mut components = Vec::new();
    let mut component_classes = Vec::new();
    for c in rg.components() {
        let (reps, class) = double_cosets(group, n, &c.label);
        let first = components.len();
        for (k, &g) in reps.iter().enumerate() {
            components.push(ComponentVertex {
                id: vertex_name(&c.id, k, reps.len()),
                label: new_label(&c.label, g)?,
                kind: c.kind,
            });
        }
        component_classes.push((first, class));
    }
    let mut branches = Vec::new();
    for b in rg.branches() {
        let (pfirst, pclass) = &point_classes[b.point];
        let (ufirst, uclass) = &component_classes[b.component];
        let count = pclass.iter().max().map_or(0, |m| m + 1);
        for k in 0..count {
            let g = pclass.iter().position(|&c| c == k).expect("nonempty class");
            branches.push(Branch {
                point: pfirst + k,
                component: ufirst + uclass[g],
            });
        }
    }
    ReductionGraph::unchecked_connectivity(Arc::new(sub), points, components, branches)
}
