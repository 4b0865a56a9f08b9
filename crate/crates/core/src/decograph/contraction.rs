//! Contraction of decorated graphs along redundant half-edges.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::abelian::compose;
use crate::error::{invalid, Result};

use super::graph::{Graph, HalfEdge};
use super::system::{CoefficientSystem, DecoratedGraph};

/// A half-edge is redundant when its edge is not a loop and its map is an
/// isomorphism.
pub fn is_redundant(dg: &DecoratedGraph, h: HalfEdge) -> bool {
    !dg.graph().is_loop(h.edge) && dg.map(h).is_isomorphism()
}

/// One contraction: `edge` was removed and vertex `removed` merged into `kept`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionStep {
    pub edge: String,
    pub removed: String,
    pub kept: String,
}

/// Contracts the edge of `alpha`, where `alpha` sits at `x` and the other
/// half-edge `beta` at `y`. The merged vertex keeps the id and group of `y`.
/// Every other half-edge `gamma` formerly at `x` gets the map
/// `A_gamma ∘ (-A_alpha^{-1}) ∘ A_beta`.
pub fn contract(dg: &DecoratedGraph, alpha: HalfEdge) -> Result<(DecoratedGraph, ContractionStep)> {
    let g = dg.graph();
    if alpha.edge >= g.edge_count() {
        return Err(invalid!("no edge with index {}", alpha.edge));
    }
    if !is_redundant(dg, alpha) {
        return Err(invalid!(
            "half-edge {} of edge {:?} is not redundant",
            alpha.side,
            g.edge_id(alpha.edge)
        ));
    }
    let beta = alpha.opposite();
    let x = g.attachment(alpha);
    let y = g.attachment(beta);
    let twist = compose(&dg.map(alpha).inverse()?.neg(), dg.map(beta))?;

    let renumber = |v: usize| -> usize {
        let v = if v == x { y } else { v };
        if v > x {
            v - 1
        } else {
            v
        }
    };
    let mut graph = Graph::new();
    let mut vertex_groups = Vec::new();
    for v in (0..g.vertex_count()).filter(|&v| v != x) {
        graph.add_vertex(g.vertex_id(v))?;
        vertex_groups.push(dg.vertex_group(v).clone());
    }
    let mut edge_groups = Vec::new();
    let mut maps = Vec::new();
    for e in (0..g.edge_count()).filter(|&e| e != alpha.edge) {
        let [a, b] = g.ends(e);
        graph.add_edge(g.edge_id(e), renumber(a), renumber(b))?;
        edge_groups.push(dg.edge_group(e).clone());
        let side = |s: usize| -> Result<_> {
            let h = HalfEdge::new(e, s);
            if g.attachment(h) == x {
                compose(dg.map(h), &twist)
            } else {
                Ok(dg.map(h).clone())
            }
        };
        maps.push([side(0)?, side(1)?]);
    }
    let system = CoefficientSystem {
        vertex_groups,
        edge_groups,
        maps,
    };
    let step = ContractionStep {
        edge: g.edge_id(alpha.edge).to_string(),
        removed: g.vertex_id(x).to_string(),
        kept: g.vertex_id(y).to_string(),
    };
    Ok((DecoratedGraph::new(graph, system)?, step))
}

/// Result of [`contract_to_point`].
#[derive(Clone, Debug)]
pub struct ContractionOutcome {
    pub contractible: bool,
    pub trace: Vec<ContractionStep>,
    pub failure: Option<String>,
    /// The graph after the last successful step.
    pub last: DecoratedGraph,
}

/// Contracts a rooted tree onto its root, always removing the deepest leaf
/// (ties broken by original vertex order) through the half-edge at the leaf.
/// Fails if the graph is not a tree or some leaf half-edge is not redundant.
pub fn contract_to_point(dg: &DecoratedGraph, root: usize) -> Result<ContractionOutcome> {
    let g = dg.graph();
    if root >= g.vertex_count() {
        return Err(invalid!("root index {root} out of range"));
    }
    if !g.is_tree() {
        return Ok(ContractionOutcome {
            contractible: false,
            trace: Vec::new(),
            failure: Some("graph is not a tree".into()),
            last: dg.clone(),
        });
    }
    let (_, depth) = g.bfs_tree(root);
    let rank: HashMap<String, (usize, usize)> = (0..g.vertex_count())
        .map(|v| (g.vertex_id(v).to_string(), (depth[v].expect("connected"), v)))
        .collect();
    let root_id = g.vertex_id(root).to_string();

    let mut current = dg.clone();
    let mut trace = Vec::new();
    while current.graph().vertex_count() > 1 {
        let cg = current.graph();
        let leaf = (0..cg.vertex_count())
            .filter(|&v| cg.vertex_id(v) != root_id && cg.degree(v) == 1)
            .max_by_key(|&v| {
                let (d, original) = rank[cg.vertex_id(v)];
                (d, std::cmp::Reverse(original))
            })
            .expect("a tree with two or more vertices has a non-root leaf");
        let h = cg.half_edges_at(leaf)[0];
        if !is_redundant(&current, h) {
            let failure = format!(
                "half-edge at {:?} on edge {:?} is not redundant",
                cg.vertex_id(leaf),
                cg.edge_id(h.edge)
            );
            return Ok(ContractionOutcome {
                contractible: false,
                trace,
                failure: Some(failure),
                last: current,
            });
        }
        let (next, step) = contract(&current, h)?;
        trace.push(step);
        current = next;
    }
    Ok(ContractionOutcome {
        contractible: true,
        trace,
        failure: None,
        last: current,
    })
}
