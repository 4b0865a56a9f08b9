//! Bundled example inputs, each with the command it is meant for and the
//! values its report must contain.

use serde::Serialize;
use serde_json::{json, Value};

use super::{digest, Command};

#[derive(Clone, Debug, Serialize)]
pub struct Fixture {
    pub name: &'static str,
    pub command: &'static str,
    pub description: &'static str,
    pub input: Value,
    /// Key/value pairs that must appear in the report's result section.
    pub expected: Value,
}

impl Fixture {
    pub fn command(&self) -> Command {
        self.command.parse().expect("fixture commands are valid")
    }

    pub fn input_bytes(&self) -> Vec<u8> {
        serde_json::to_vec_pretty(&self.input).expect("fixture serializes")
    }

    pub fn digest(&self) -> String {
        digest(&self.input_bytes())
    }

    /// Keys of `expected` whose values differ in `result` (nested objects are
    /// compared recursively, other values by equality).
    pub fn mismatches(&self, result: &Value) -> Vec<String> {
        let mut out = Vec::new();
        compare("", &self.expected, result, &mut out);
        out
    }
}

fn compare(path: &str, expected: &Value, actual: &Value, out: &mut Vec<String>) {
    match expected {
        Value::Object(map) => {
            for (k, v) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                compare(&p, v, actual.get(k).unwrap_or(&Value::Null), out);
            }
        }
        _ if expected != actual => out.push(format!("{path}: expected {expected}, got {actual}")),
        _ => {}
    }
}

const C2: &str = "[[1,0]]";

fn c2() -> Value {
    json!({"generators": [[1, 0]]})
}

fn trivial_context() -> Value {
    json!({"name": "trivial"})
}

fn triangle_of_lines() -> Value {
    json!({
        "context": trivial_context(),
        "points": [
            {"id": "P12", "label": []},
            {"id": "P23", "label": []},
            {"id": "P13", "label": []}
        ],
        "components": [
            {"id": "U1", "label": [], "kind": "rational"},
            {"id": "U2", "label": [], "kind": "rational"},
            {"id": "U3", "label": [], "kind": "rational"}
        ],
        "branches": [
            {"point": "P12", "component": "U1"}, {"point": "P12", "component": "U2"},
            {"point": "P23", "component": "U2"}, {"point": "P23", "component": "U3"},
            {"point": "P13", "component": "U1"}, {"point": "P13", "component": "U3"}
        ],
        "table": {"groups": [{"label": [], "group": "Z/2"}]},
        "topological": "Z/2"
    })
}

fn two_lines_through_quadratic_point() -> Value {
    let g: Value = serde_json::from_str(C2).expect("literal");
    json!({
        "context": c2(),
        "points": [{"id": "P", "label": []}],
        "components": [
            {"id": "C1", "label": g, "kind": "rational"},
            {"id": "C2", "label": g, "kind": "rational"}
        ],
        "branches": [{"point": "P", "component": "C1"}, {"point": "P", "component": "C2"}],
        "table": {
            "groups": [{"label": g, "group": "0"}, {"label": [], "group": "Z/2"}],
            "restrictions": [{"from": g, "to": [], "map": [[]]}]
        }
    })
}

fn loop_with_custom_component() -> Value {
    json!({
        "context": trivial_context(),
        "points": [{"id": "Q1", "label": []}, {"id": "Q2", "label": []}],
        "components": [
            {"id": "U", "label": [], "kind": "rational"},
            {"id": "V", "label": [], "kind": "custom"}
        ],
        "branches": [
            {"point": "Q1", "component": "U"}, {"point": "Q1", "component": "V"},
            {"point": "Q2", "component": "U"}, {"point": "Q2", "component": "V"}
        ],
        "table": {"groups": [{"label": [], "group": "Z/2"}]},
        "custom": [{
            "component": "V",
            "group": "Z/2 x Z/2",
            "specializations": [
                {"point": "Q1", "map": [[1, 0]]},
                {"point": "Q2", "map": [[1, 1]]}
            ],
            "generic_restriction": [[1], [0]]
        }],
        "topological": "Z/2"
    })
}

fn chain_of_lines() -> Value {
    json!({
        "context": trivial_context(),
        "points": [{"id": "P1", "label": []}, {"id": "P2", "label": []}],
        "components": [
            {"id": "U1", "label": [], "kind": "rational"},
            {"id": "U2", "label": [], "kind": "rational"},
            {"id": "U3", "label": [], "kind": "rational"}
        ],
        "branches": [
            {"point": "P1", "component": "U1"}, {"point": "P1", "component": "U2"},
            {"point": "P2", "component": "U2"}, {"point": "P2", "component": "U3"}
        ]
    })
}

fn star_of_lines() -> Value {
    json!({
        "context": trivial_context(),
        "points": [{"id": "P1", "label": []}, {"id": "P2", "label": []}, {"id": "P3", "label": []}],
        "components": [
            {"id": "U0", "label": [], "kind": "rational"},
            {"id": "U1", "label": [], "kind": "rational"},
            {"id": "U2", "label": [], "kind": "rational"},
            {"id": "U3", "label": [], "kind": "rational"}
        ],
        "branches": [
            {"point": "P1", "component": "U0"}, {"point": "P1", "component": "U1"},
            {"point": "P2", "component": "U0"}, {"point": "P2", "component": "U2"},
            {"point": "P3", "component": "U0"}, {"point": "P3", "component": "U3"}
        ],
        "table": {"groups": [{"label": [], "group": "Z/3"}]}
    })
}

fn cycle_graph(n: usize) -> (Vec<Value>, Vec<Value>) {
    let vertices = (0..n).map(|i| json!({"id": format!("v{i}")})).collect();
    let edges = (0..n)
        .map(|i| {
            json!({
                "id": format!("e{i}"),
                "ends": [{"vertex": format!("v{i}")}, {"vertex": format!("v{}", (i + 1) % n)}]
            })
        })
        .collect();
    (vertices, edges)
}

/// All bundled fixtures.
pub fn fixtures() -> Vec<Fixture> {
    let (tri_v, tri_e) = cycle_graph(3);
    let (hex_v, hex_e) = cycle_graph(6);
    let v4 = json!({"generators": [[1, 0, 3, 2], [2, 3, 0, 1]]});
    vec![
        Fixture {
            name: "triangle",
            command: "sha",
            description: "three projective lines meeting pairwise in rational points, table value Z/2",
            input: triangle_of_lines(),
            expected: json!({"sha": "Z/2", "topological_h1": "Z/2", "graph": {"cycle_rank": 1}}),
        },
        Fixture {
            name: "non-monotonic-tree",
            command: "sha",
            description: "two lines over k through one point with quadratic residue field; table (0, Z/2)",
            input: two_lines_through_quadratic_point(),
            expected: json!({"sha": "Z/2", "monotonic": false, "graph": {"is_tree": true}}),
        },
        Fixture {
            name: "non-monotonic-tree-exact-sequence",
            command: "shaP1-report",
            description: "the right-exact sequence for the non-monotonic tree",
            input: two_lines_through_quadratic_point(),
            expected: json!({"left": "0", "middle": "Z/2", "right": "Z/2"}),
        },
        Fixture {
            name: "loop-trivial",
            command: "sha",
            description: "a rational and a non-rational component meeting twice; the loop carries no obstruction",
            input: loop_with_custom_component(),
            expected: json!({"sha": "0", "topological_h1": "Z/2", "graph": {"cycle_rank": 1}}),
        },
        Fixture {
            name: "geom-not-monotonic-base-change",
            command: "basechange",
            description: "the non-monotonic tree after the quadratic base change: the point splits",
            input: {
                let mut v = two_lines_through_quadratic_point();
                v.as_object_mut().expect("object").remove("table");
                v["normal_subgroup"] = json!([]);
                v
            },
            expected: json!({"output": {"points": 2, "components": 2, "branches": 4, "cycle_rank": 1}}),
        },
        Fixture {
            name: "quadratic-norm-one",
            command: "resolve",
            description: "flasque resolution of the norm-one torus of a quadratic extension",
            input: json!({"group": c2(), "lattice": {"construction": "norm-one"}}),
            expected: json!({"rank_t": 1, "rank_q": 2, "rank_s": 1, "s_trivial_action": true, "is_flasque": true}),
        },
        Fixture {
            name: "biquadratic-norm-one",
            command: "resolve",
            description: "flasque resolution of the norm-one torus of a biquadratic extension",
            input: json!({"group": v4, "lattice": {"construction": "norm-one"}}),
            expected: json!({"rank_t": 3, "is_flasque": true}),
        },
        Fixture {
            name: "biquadratic-norm-one-tate",
            command: "tate",
            description: "Tate cohomology of the biquadratic norm-one lattice",
            input: json!({"group": v4, "lattice": {"construction": "norm-one"}}),
            expected: json!({"tate_h_minus1": "Z/4", "tate_h0": "0", "h1": "Z/2 x Z/2"}),
        },
        Fixture {
            name: "graph-simplicial-triangle",
            command: "graph-h",
            description: "simplicial coefficients Z on a triangle",
            input: json!({"vertices": tri_v, "edges": tri_e, "coefficients": {"simplicial": "Z"}, "topological": "Z"}),
            expected: json!({"h0": "Z^1", "h1": "Z^1", "topological_h1": "Z^1"}),
        },
        Fixture {
            name: "graph-constant-hexagon",
            command: "graph-h",
            description: "constant Z/2 with identity maps on a hexagon",
            input: json!({"vertices": hex_v, "edges": hex_e, "coefficients": {"constant": "Z/2"}, "topological": "Z/2"}),
            expected: json!({"h1": "Z/2", "topological_h1": "Z/2"}),
        },
        Fixture {
            name: "graph-constant-triangle",
            command: "graph-h",
            description: "constant Z with identity maps on a triangle: first cohomology is finite",
            input: json!({"vertices": tri_v, "edges": tri_e, "coefficients": {"constant": "Z"}}),
            expected: json!({"h1": "Z/2", "h1_free_rank": 0}),
        },
        Fixture {
            name: "chain",
            command: "monotonic",
            description: "a chain of three lines over k",
            input: chain_of_lines(),
            expected: json!({"monotonic": true, "root": "P1"}),
        },
        Fixture {
            name: "star",
            command: "sha",
            description: "a star of lines over k with table value Z/3",
            input: star_of_lines(),
            expected: json!({"sha": "0", "monotonic": true}),
        },
    ]
}

pub fn fixture(name: &str) -> Option<Fixture> {
    fixtures().into_iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::{execute, Status};

    #[test]
    fn every_fixture_runs_green() {
        let all = fixtures();
        assert!(all.len() >= 8);
        for f in all {
            let report = execute(f.command(), &f.input_bytes(), None);
            assert_eq!(report.status, Status::Ok, "{}: {:?} {:?}", f.name, report.failure, report.verification);
            let bad = f.mismatches(&report.result);
            assert!(bad.is_empty(), "{}: {bad:?}\n{}", f.name, report.result);
        }
    }
}
