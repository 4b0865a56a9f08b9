//! One handler per command: parse the descriptor, compute, collect checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use super::descriptor::*;
use super::Command;
use crate::abelian::{smith_normal_form, IntegerMatrix, InvariantFactors, PresentedGroup};
use crate::decograph::{contract, contract_to_point, six_term, HalfEdge, ShortExactSequence};
use crate::error::{invalid, Error, Result};
use crate::glattice::{
    coflasque_report, flasque_report, flasque_resolution, h1, permutation_lattice_from_summands, tate_h0,
    tate_h_minus1, FiniteGroup, GLattice, VanishingReport,
};
use crate::reduction::{
    base_change, is_monotonic, monotonic_implies_trivial, phi_surjection, psi_injection, sha, sha_all_p1_report,
    ComponentKind, ReductionGraph,
};

/// A command's result section and named verification flags.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub result: Value,
    pub verification: BTreeMap<String, bool>,
}

impl Outcome {
    fn new(result: Value) -> Self {
        Outcome {
            result,
            verification: BTreeMap::new(),
        }
    }

    fn check(mut self, name: &str, ok: bool) -> Self {
        self.verification.insert(name.to_string(), ok);
        self
    }
}

fn parse<T: DeserializeOwned>(input: &[u8]) -> Result<T> {
    serde_json::from_slice(input).map_err(|e| Error::Invalid(format!("input does not match the schema: {e}")))
}

pub(super) fn dispatch(command: Command, input: &[u8]) -> Result<Outcome> {
    match command {
        Command::Snf => snf(parse(input)?),
        Command::Tate => tate(parse(input)?),
        Command::FlasqueCheck => flasque_check(parse(input)?),
        Command::Resolve => resolve(parse(input)?),
        Command::GraphH => graph_h(parse(input)?),
        Command::Contract => contract_cmd(parse(input)?),
        Command::SixTerm => six_term_cmd(parse(input)?),
        Command::Monotonic => monotonic(parse(input)?),
        Command::Psi => psi(parse(input)?),
        Command::Basechange => basechange(parse(input)?),
        Command::Sha => sha_cmd(parse(input)?),
        Command::ShaP1Report => sha_p1(parse(input)?),
    }
}

fn ifs(g: &InvariantFactors) -> Value {
    Value::from(g.to_string())
}

fn snf(input: SnfInput) -> Result<Outcome> {
    let m = if input.matrix.is_empty() {
        IntegerMatrix::zeros(0, input.cols.unwrap_or(0))
    } else {
        matrix_from_rows(&input.matrix, "matrix")?
    };
    let s = smith_normal_form(&m);
    let diag = s.diagonal();
    let divides = diag
        .windows(2)
        .all(|w| !w[0].eq(&0.into()) && (&w[1] % &w[0]) == 0.into());
    let cokernel = PresentedGroup::new(m.rows(), m.transpose())?.canonical_form();
    Ok(Outcome::new(json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "rank": s.rank,
        "diagonal": diag.iter().map(bigint_json).collect::<Vec<_>>(),
        "d": matrix_json(&s.d),
        "u": matrix_json(&s.u),
        "v": matrix_json(&s.v),
        "cokernel": ifs(&cokernel),
    }))
    .check("u_m_v_equals_d", &(&s.u * &m) * &s.v == s.d)
    .check("u_invertible", (&s.u * &s.u_inv).is_identity())
    .check("v_invertible", (&s.v * &s.v_inv).is_identity())
    .check("diagonal_divisibility", divides))
}

struct LatticeData {
    group: Arc<FiniteGroup>,
    lattice: GLattice,
}

fn lattice_data(input: &LatticeInput) -> Result<LatticeData> {
    let group = Arc::new(input.group.to_group()?);
    let lattice = input.lattice.to_lattice(&group)?;
    Ok(LatticeData { group, lattice })
}

fn tate(input: LatticeInput) -> Result<Outcome> {
    let LatticeData { group, lattice } = lattice_data(&input)?;
    let h = match &input.subgroup {
        Some(spec) => subgroup_from_spec(&group, spec)?,
        None => group.whole(),
    };
    let reps = group.subgroup_class_representatives();
    let classes: Result<Vec<Value>> = reps
        .par_iter()
        .map(|k| {
            Ok(json!({
                "subgroup": subgroup_to_spec(&group, k),
                "order": k.order(),
                "tate_h_minus1": ifs(&tate_h_minus1(k, &lattice)),
                "tate_h0": ifs(&tate_h0(k, &lattice)),
                "h1": ifs(&h1(k, &lattice)?),
            }))
        })
        .collect();
    Ok(Outcome::new(json!({
        "group_order": group.order(),
        "rank": lattice.rank(),
        "subgroup": subgroup_to_spec(&group, &h),
        "tate_h_minus1": ifs(&tate_h_minus1(&h, &lattice)),
        "tate_h0": ifs(&tate_h0(&h, &lattice)),
        "h1": ifs(&h1(&h, &lattice)?),
        "classes": classes?,
    })))
}

fn vanishing_json(group: &FiniteGroup, r: &VanishingReport) -> Value {
    Value::Array(
        r.classes
            .iter()
            .map(|c| json!({"subgroup": subgroup_to_spec(group, &c.representative), "h1": ifs(&c.h1)}))
            .collect(),
    )
}

fn flasque_check(input: LatticeInput) -> Result<Outcome> {
    let LatticeData { group, lattice } = lattice_data(&input)?;
    let (fl, co) = rayon::join(|| flasque_report(&lattice), || coflasque_report(&lattice));
    let (fl, co) = (fl?, co?);
    Ok(Outcome::new(json!({
        "rank": lattice.rank(),
        "is_flasque": fl.holds,
        "is_coflasque": co.holds,
        "dual_h1_by_class": vanishing_json(&group, &fl),
        "h1_by_class": vanishing_json(&group, &co),
    })))
}

fn generator_actions(lattice: &GLattice) -> Vec<Value> {
    let g = lattice.group();
    g.generators()
        .iter()
        .map(|p| matrix_json(lattice.action(g.index_of(p).expect("generator is an element"))))
        .collect()
}

fn resolve(input: LatticeInput) -> Result<Outcome> {
    let LatticeData { group, lattice } = lattice_data(&input)?;
    let res = flasque_resolution(&lattice)?;
    let seq = &res.sequence;
    let s_trivial = seq.quot.actions().iter().all(IntegerMatrix::is_identity);
    let rebuilt = permutation_lattice_from_summands(&group, &res.permutation_summands)?;
    let summands: Vec<Value> = res
        .permutation_summands
        .iter()
        .map(|(h, k)| json!({"subgroup": subgroup_to_spec(&group, h), "index": group.order() / h.order(), "multiplicity": k}))
        .collect();
    let (t, q, s) = (seq.sub.rank(), seq.mid.rank(), seq.quot.rank());
    Ok(Outcome::new(json!({
        "rank_t": t,
        "rank_q": q,
        "rank_s": s,
        "q_summands": summands,
        "inject": matrix_json(&seq.inject),
        "surject": matrix_json(&seq.surject),
        "s_action": generator_actions(&seq.quot),
        "s_trivial_action": s_trivial,
        "is_flasque": res.flasque.holds,
        "s_dual_h1_by_class": vanishing_json(&group, &res.flasque),
    }))
    .check("exact", res.checks.all())
    .check("equivariant", res.checks.equivariant)
    .check("rank_identity", t + s == q)
    .check("middle_is_permutation", rebuilt == seq.mid)
    .check("quotient_is_flasque", res.flasque.holds))
}

fn graph_h(input: GraphInput) -> Result<Outcome> {
    let dg = input.graph.to_decorated()?;
    let (h0, h1) = dg.cohomology();
    let g = dg.graph();
    let mut result = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "cycle_rank": g.cycle_rank(),
        "connected": g.is_connected(),
        "h0": ifs(&h0),
        "h1": ifs(&h1),
        "h1_free_rank": h1.free_rank,
    });
    if let Some(a0) = &input.topological {
        let top = crate::decograph::topological_h1(g, &a0.to_group()?);
        result["topological_h1"] = ifs(&top);
    }
    Ok(Outcome::new(result))
}

fn contract_cmd(input: ContractInput) -> Result<Outcome> {
    let dg = input.graph.to_decorated()?;
    let before = dg.cohomology();
    let before_json = json!({"h0": ifs(&before.0), "h1": ifs(&before.1)});
    match (&input.root, &input.half_edge) {
        (Some(root), None) => {
            let r = dg
                .graph()
                .vertex_index(root)
                .ok_or_else(|| invalid!("unknown root vertex {root:?}"))?;
            let out = contract_to_point(&dg, r)?;
            let after = out.last.cohomology();
            Ok(Outcome::new(json!({
                "contractible": out.contractible,
                "trace": out.trace,
                "failure": out.failure,
                "remaining_vertices": out.last.graph().vertex_count(),
                "before": before_json,
                "after": {"h0": ifs(&after.0), "h1": ifs(&after.1)},
            }))
            .check("cohomology_preserved", after == before))
        }
        (None, Some(he)) => {
            let e = dg
                .graph()
                .edge_index(&he.edge)
                .ok_or_else(|| invalid!("unknown edge {:?}", he.edge))?;
            if he.side > 1 {
                return Err(invalid!("half-edge side must be 0 or 1"));
            }
            let (c, step) = contract(&dg, HalfEdge::new(e, he.side))?;
            let after = c.cohomology();
            Ok(Outcome::new(json!({
                "step": step,
                "remaining_vertices": c.graph().vertex_count(),
                "remaining_edges": c.graph().edge_count(),
                "before": before_json,
                "after": {"h0": ifs(&after.0), "h1": ifs(&after.1)},
            }))
            .check("cohomology_preserved", after == before))
        }
        _ => Err(invalid!("contract needs exactly one of \"root\" or \"half_edge\"")),
    }
}

const SIX_TERM_SPOTS: [&str; 6] = ["H0(A)", "H0(B)", "H0(C)", "H1(A)", "H1(B)", "H1(C)"];

fn six_term_cmd(input: SixTermInput) -> Result<Outcome> {
    let a = input.a.to_decorated()?;
    let b = input.b.to_decorated()?;
    let c = input.c.to_decorated()?;
    let i = input.i.to_morphism(&a, &b)?;
    let p = input.p.to_morphism(&b, &c)?;
    let ses = ShortExactSequence::new(a, b, c, i, p)?;
    let six = six_term(&ses)?;
    let groups: BTreeMap<&str, Value> = SIX_TERM_SPOTS
        .iter()
        .zip(six.invariants())
        .map(|(k, g)| (*k, ifs(&g)))
        .collect();
    let mut out = Outcome::new(json!({
        "groups": groups,
        "sequence": six.invariants().iter().map(ifs).collect::<Vec<_>>(),
        "connecting_map": matrix_json(six.connecting().matrix()),
        "connecting_is_zero": six.connecting().is_zero(),
    }));
    for (spot, ok) in SIX_TERM_SPOTS.iter().zip(six.exact) {
        out = out.check(&format!("exact_at_{spot}"), ok);
    }
    Ok(out)
}

fn monotonic(input: ReductionSpec) -> Result<Outcome> {
    let rg = input.to_graph()?;
    let report = is_monotonic(&rg);
    let mut out = Outcome::new(json!({
        "monotonic": report.monotonic,
        "root": report.root,
        "is_tree": report.is_tree,
        "best_root": report.best_root,
        "violation": report.violation,
    }));
    if report.is_tree {
        let psi = psi_injection(&rg)?;
        out.result["psi_exists"] = Value::from(psi.exists);
        // the two criteria coincide when every point lies on at most two components
        if at_most_two_components_per_point(&rg) {
            out = out.check("agrees_with_psi", psi.exists == report.monotonic);
        }
    }
    Ok(out)
}

fn psi(input: ReductionSpec) -> Result<Outcome> {
    let rg = input.to_graph()?;
    let report = psi_injection(&rg)?;
    let mono = is_monotonic(&rg);
    let mut out = Outcome::new(json!({
        "exists": report.exists,
        "assignment": report.assignment,
        "unmatched": report.unmatched,
        "monotonic": mono.monotonic,
    }));
    if at_most_two_components_per_point(&rg) {
        out = out.check("agrees_with_monotonic", report.exists == mono.monotonic);
    }
    Ok(out)
}

fn at_most_two_components_per_point(rg: &ReductionGraph) -> bool {
    (0..rg.points().len()).all(|p| rg.point_degree(p) <= 2)
}

fn graph_summary(rg: &ReductionGraph) -> Value {
    let graph = rg.graph();
    json!({
        "points": rg.points().len(),
        "components": rg.components().len(),
        "branches": rg.branches().len(),
        "cycle_rank": graph.cycle_rank(),
        "connected": graph.is_connected(),
        "is_tree": graph.is_tree(),
    })
}

fn basechange(input: ReductionSpec) -> Result<Outcome> {
    let rg = input.to_graph()?;
    let spec = input
        .normal_subgroup
        .as_ref()
        .ok_or_else(|| invalid!("basechange needs \"normal_subgroup\""))?;
    let n = subgroup_from_spec(rg.context(), spec)?;
    let bc = base_change(&rg, &n)?;
    let was_monotonic = is_monotonic(&rg).monotonic;
    let mut out = Outcome::new(json!({
        "input": graph_summary(&rg),
        "input_monotonic": was_monotonic,
        "output": graph_summary(&bc),
        "graph": ReductionSpec::from_graph(&bc),
    }));
    if was_monotonic {
        out = out.check("monotonic_input_gives_tree", bc.is_tree());
    }
    Ok(out)
}

fn sha_cmd(input: ReductionSpec) -> Result<Outcome> {
    let data = input.to_data()?;
    let rg = &data.graph;
    let table = data.table.as_ref().ok_or_else(|| invalid!("sha needs a \"table\""))?;
    let value = sha(rg, table, &data.custom)?;
    let phi = phi_surjection(rg, table, &data.custom)?;
    let mono = is_monotonic(rg);
    let whole = rg.context().whole();
    let all_p1_over_base = rg
        .components()
        .iter()
        .all(|c| c.kind == ComponentKind::Rational && c.label == whole)
        && rg.points().iter().all(|p| p.label == whole);
    let mut result = json!({
        "sha": ifs(&value),
        "graph": graph_summary(rg),
        "monotonic": mono.monotonic,
        "phi": phi,
    });
    if let Some(a0) = &input.topological {
        result["topological_h1"] = ifs(&crate::decograph::topological_h1(&rg.graph(), &a0.to_group()?));
    }
    let mut out = Outcome::new(result);
    if phi.available {
        out = out.check("phi_surjective", phi.surjective);
        if phi.all_rational {
            out = out.check("phi_isomorphism_when_rational", phi.isomorphism == Some(true));
        }
    }
    if mono.monotonic {
        let v = monotonic_implies_trivial(rg, table, &data.custom)?;
        out.result["contraction_trace"] = serde_json::to_value(&v.trace).expect("serializable");
        out = out.check("monotonic_vanishing", v.verified());
    }
    if all_p1_over_base {
        let expected = table.group(&whole)?.canonical_form().power(rg.cycle_rank());
        out = out.check("matches_cycle_rank_formula", value == expected);
    }
    Ok(out)
}

fn sha_p1(input: ReductionSpec) -> Result<Outcome> {
    let data = input.to_data()?;
    let table = data.table.as_ref().ok_or_else(|| invalid!("shaP1-report needs a \"table\""))?;
    let r = sha_all_p1_report(&data.graph, table)?;
    Ok(Outcome::new(json!({
        "left": ifs(&r.left),
        "middle": ifs(&r.middle),
        "right": ifs(&r.right),
        "cycle_rank": r.cycle_rank,
        "point_product": ifs(&r.point_product),
        "right_matches_point_product": r.right_matches_point_product,
    }))
    .check("left_is_topological", r.left_is_topological)
    .check("exact_at_middle", r.exact_at_middle)
    .check("right_surjective", r.right_surjective))
}
