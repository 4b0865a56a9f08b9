//! Random instance generators and a small enumeration oracle shared by the
//! integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shagraph::abelian::{GroupHom, IntegerMatrix, InvariantFactors, PresentedGroup};
use shagraph::decograph::{CoefficientSystem, DecoratedGraph, Graph, HalfEdge, ShortExactSequence, SystemMorphism};
use shagraph::glattice::{FiniteGroup, GLattice, Subgroup};
use shagraph::reduction::{CohomologyTable, ComponentKind, ReductionGraph, ReductionGraphBuilder};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// finite groups

fn quaternion_mul(a: usize, b: usize) -> usize {
    // elements: sign * 4 + unit, units 1, i, j, k
    let (sa, ua) = (a / 4, a % 4);
    let (sb, ub) = (b / 4, b % 4);
    let (s, u) = match (ua, ub) {
        (0, x) | (x, 0) => (0, x),
        (x, y) if x == y => (1, 0),
        (1, 2) => (0, 3),
        (2, 3) => (0, 1),
        (3, 1) => (0, 2),
        (2, 1) => (1, 3),
        (3, 2) => (1, 1),
        (1, 3) => (1, 2),
        _ => unreachable!(),
    };
    ((sa + sb + s) % 2) * 4 + u
}

pub fn quaternion() -> FiniteGroup {
    let left = |a: usize| (0..8).map(|x| quaternion_mul(a, x)).collect::<Vec<_>>();
    FiniteGroup::new(8, vec![left(1), left(2)]).unwrap()
}

/// Every group of order at most 8 up to isomorphism, with a name.
pub fn small_groups() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    let g = |x: FiniteGroup| Arc::new(x);
    vec![
        ("1", g(FiniteGroup::trivial())),
        ("C2", g(FiniteGroup::cyclic(2).unwrap())),
        ("C3", g(FiniteGroup::cyclic(3).unwrap())),
        ("C4", g(FiniteGroup::cyclic(4).unwrap())),
        ("V4", g(FiniteGroup::klein_four())),
        ("C5", g(FiniteGroup::cyclic(5).unwrap())),
        ("C6", g(FiniteGroup::cyclic(6).unwrap())),
        ("S3", g(FiniteGroup::symmetric(3).unwrap())),
        ("C7", g(FiniteGroup::cyclic(7).unwrap())),
        ("C8", g(FiniteGroup::cyclic(8).unwrap())),
        ("C2xC4", g(FiniteGroup::new(6, vec![vec![1, 0, 2, 3, 4, 5], vec![0, 1, 3, 4, 5, 2]]).unwrap())),
        (
            "C2^3",
            g(FiniteGroup::new(6, vec![vec![1, 0, 2, 3, 4, 5], vec![0, 1, 3, 2, 4, 5], vec![0, 1, 2, 3, 5, 4]]).unwrap()),
        ),
        ("D4", g(FiniteGroup::dihedral(4).unwrap())),
        ("Q8", g(quaternion())),
    ]
}

// ---------------------------------------------------------------------------
// abelian groups given by moduli, one generator per modulus (0 = free)

/// Moduli lists of groups of order at most 36 or free rank at most 3.
pub const GROUP_CATALOG: &[&[u64]] = &[
    &[],
    &[0],
    &[0, 0],
    &[0, 0, 0],
    &[2],
    &[3],
    &[4],
    &[6],
    &[12],
    &[2, 2],
    &[2, 3],
    &[2, 4],
    &[2, 6],
    &[3, 3],
    &[6, 6],
    &[0, 2],
    &[0, 3],
];

pub fn group_from_moduli(moduli: &[u64]) -> PresentedGroup {
    let n = moduli.len();
    let rows: Vec<Vec<BigInt>> = moduli
        .iter()
        .enumerate()
        .filter(|(_, &m)| m != 0)
        .map(|(i, &m)| {
            let mut row = vec![BigInt::from(0); n];
            row[i] = BigInt::from(m);
            row
        })
        .collect();
    PresentedGroup::new(n, IntegerMatrix::from_rows(n, &rows)).unwrap()
}

fn random_moduli(rng: &mut TestRng) -> Vec<u64> {
    GROUP_CATALOG.choose(rng).unwrap().to_vec()
}

/// A step such that multiples of it are exactly the well-defined images of a
/// generator of order `source` (0 = infinite) in a summand of modulus `target`.
/// `None` means only zero is allowed.
fn entry_step(source: u64, target: u64) -> Option<u64> {
    match (source, target) {
        (0, _) => Some(1),
        (_, 0) => None,
        (s, t) => Some(t / s.gcd(&t)),
    }
}

fn random_entry(rng: &mut TestRng, source: u64, target: u64) -> i64 {
    match entry_step(source, target) {
        None => 0,
        Some(step) if target == 0 => step as i64 * rng.gen_range(-2..=2),
        Some(step) => (step * rng.gen_range(0..target / step)) as i64,
    }
}

/// A random well-defined hom between diagonal presentations.
pub fn random_hom(rng: &mut TestRng, domain: &[u64], codomain: &[u64]) -> GroupHom {
    let rows: Vec<Vec<i64>> = codomain
        .iter()
        .map(|&t| domain.iter().map(|&s| random_entry(rng, s, t)).collect())
        .collect();
    GroupHom::new(
        group_from_moduli(domain),
        group_from_moduli(codomain),
        IntegerMatrix::from_rows(domain.len(), &rows),
    )
    .unwrap()
}

/// A random automorphism: a product of unit scalings and elementary shears
/// that are well defined in both directions.
pub fn random_automorphism(rng: &mut TestRng, moduli: &[u64]) -> GroupHom {
    let n = moduli.len();
    let g = group_from_moduli(moduli);
    let mut m = IntegerMatrix::identity(n);
    for _ in 0..rng.gen_range(0..=4) {
        if n == 0 {
            break;
        }
        let mut e = IntegerMatrix::identity(n);
        if rng.gen_bool(0.5) {
            let i = rng.gen_range(0..n);
            let q = moduli[i];
            let units: Vec<i64> = if q == 0 {
                vec![1, -1]
            } else {
                (1..q.max(2) as i64).filter(|u| (*u as u64).gcd(&q) == 1).collect()
            };
            e[(i, i)] = BigInt::from(*units.choose(rng).unwrap_or(&1));
        } else if n >= 2 {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            // generator i gains c times generator j
            if let Some(step) = entry_step(moduli[i], moduli[j]) {
                e[(j, i)] = BigInt::from(step as i64 * rng.gen_range(1..=2));
            }
        }
        m = &e * &m;
    }
    let h = GroupHom::new(g.clone(), g, m).unwrap();
    assert!(h.is_isomorphism());
    h
}

// ---------------------------------------------------------------------------
// decorated graphs

/// A random multigraph on `n` vertices: a random spanning tree plus extra
/// edges, loops included. Edge 0 is never a loop.
pub fn random_graph(rng: &mut TestRng, n: usize, extra: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..extra {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    if n >= 2 {
        edges.shuffle(rng);
        if let Some(k) = edges.iter().position(|(a, b)| a != b) {
            edges.swap(0, k);
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Decorated graph together with the moduli of every decoration.
pub struct RandomSystem {
    pub dg: DecoratedGraph,
    pub vertex_moduli: Vec<Vec<u64>>,
    pub edge_moduli: Vec<Vec<u64>>,
}

pub fn random_system_on(rng: &mut TestRng, graph: Graph) -> RandomSystem {
    let vertex_moduli: Vec<Vec<u64>> = (0..graph.vertex_count()).map(|_| random_moduli(rng)).collect();
    let edge_moduli: Vec<Vec<u64>> = (0..graph.edge_count()).map(|_| random_moduli(rng)).collect();
    let maps = (0..graph.edge_count())
        .map(|e| {
            let [a, b] = graph.ends(e);
            [
                random_hom(rng, &vertex_moduli[a], &edge_moduli[e]),
                random_hom(rng, &vertex_moduli[b], &edge_moduli[e]),
            ]
        })
        .collect();
    let system = CoefficientSystem {
        vertex_groups: vertex_moduli.iter().map(|m| group_from_moduli(m)).collect(),
        edge_groups: edge_moduli.iter().map(|m| group_from_moduli(m)).collect(),
        maps,
    };
    RandomSystem {
        dg: DecoratedGraph::new(graph, system).unwrap(),
        vertex_moduli,
        edge_moduli,
    }
}

/// A random decorated graph (at most `max_vertices` vertices, at least 2) in
/// which the returned half-edge is redundant.
pub fn random_graph_with_redundant_half_edge(rng: &mut TestRng, max_vertices: usize) -> (DecoratedGraph, HalfEdge) {
    let n = rng.gen_range(2..=max_vertices);
    let extra = rng.gen_range(0..=3);
    let graph = random_graph(rng, n, extra);
    let mut rs = random_system_on(rng, graph);
    let graph = rs.dg.graph().clone();
    let alpha = HalfEdge::new(0, rng.gen_range(0..2));
    let x = graph.attachment(alpha);
    let y = graph.attachment(alpha.opposite());
    rs.edge_moduli[0] = rs.vertex_moduli[x].clone();
    let mut system = rs.dg.system().clone();
    system.edge_groups[0] = group_from_moduli(&rs.vertex_moduli[x]);
    system.maps[0][alpha.side] = random_automorphism(rng, &rs.vertex_moduli[x]);
    system.maps[0][1 - alpha.side] = random_hom(rng, &rs.vertex_moduli[y], &rs.vertex_moduli[x]);
    (DecoratedGraph::new(graph, system).unwrap(), alpha)
}

// ---------------------------------------------------------------------------
// short exact sequences of systems

/// Inclusion of the first summand of `Z^a ⊕ Z^c` and projection onto the second.
fn split_maps(a: usize, c: usize) -> (IntegerMatrix, IntegerMatrix) {
    let mut inc = IntegerMatrix::zeros(a + c, a);
    let mut proj = IntegerMatrix::zeros(c, a + c);
    for k in 0..a {
        inc[(k, k)] = BigInt::from(1);
    }
    for k in 0..c {
        proj[(k, a + k)] = BigInt::from(1);
    }
    (inc, proj)
}

/// `0 -> A -> B -> C -> 0` with `B = A ⊕ C` at every vertex and edge, and
/// half-edge maps on `B` twisted by a random off-diagonal block `C_x -> A_e`.
/// The sequence splits componentwise but usually not as systems.
pub fn random_twisted_split_sequence(rng: &mut TestRng, graph: Graph) -> ShortExactSequence {
    let a = random_system_on(rng, graph.clone());
    let c = random_system_on(rng, graph.clone());
    let cat = |x: &[u64], y: &[u64]| [x, y].concat();
    let mut maps = Vec::new();
    for e in 0..graph.edge_count() {
        let ends = graph.ends(e);
        let mut pair = Vec::new();
        for side in 0..2 {
            let h = HalfEdge::new(e, side);
            let v = ends[side];
            let twist = random_hom(rng, &c.vertex_moduli[v], &a.edge_moduli[e]);
            let top = a.dg.map(h).matrix().hstack(twist.matrix());
            let bottom = IntegerMatrix::zeros(c.edge_moduli[e].len(), a.vertex_moduli[v].len()).hstack(c.dg.map(h).matrix());
            pair.push(
                GroupHom::new(
                    group_from_moduli(&cat(&a.vertex_moduli[v], &c.vertex_moduli[v])),
                    group_from_moduli(&cat(&a.edge_moduli[e], &c.edge_moduli[e])),
                    top.vstack(&bottom),
                )
                .unwrap(),
            );
        }
        maps.push([pair[0].clone(), pair[1].clone()]);
    }
    let b_system = CoefficientSystem {
        vertex_groups: (0..graph.vertex_count())
            .map(|v| group_from_moduli(&cat(&a.vertex_moduli[v], &c.vertex_moduli[v])))
            .collect(),
        edge_groups: (0..graph.edge_count())
            .map(|e| group_from_moduli(&cat(&a.edge_moduli[e], &c.edge_moduli[e])))
            .collect(),
        maps,
    };
    let b = DecoratedGraph::new(graph.clone(), b_system).unwrap();
    let morphisms = |am: &[Vec<u64>], cm: &[Vec<u64>]| {
        let mut inc = Vec::new();
        let mut proj = Vec::new();
        for (x, y) in am.iter().zip(cm) {
            let bx = group_from_moduli(&cat(x, y));
            let (i, p) = split_maps(x.len(), y.len());
            inc.push(GroupHom::new(group_from_moduli(x), bx.clone(), i).unwrap());
            proj.push(GroupHom::new(bx, group_from_moduli(y), p).unwrap());
        }
        (inc, proj)
    };
    let (iv, pv) = morphisms(&a.vertex_moduli, &c.vertex_moduli);
    let (ie, pe) = morphisms(&a.edge_moduli, &c.edge_moduli);
    let i = SystemMorphism::new(&a.dg, &b, iv, ie).unwrap();
    let p = SystemMorphism::new(&b, &c.dg, pv, pe).unwrap();
    ShortExactSequence::new(a.dg, b, c.dg, i, p).unwrap()
}

/// `0 -> (Z/a)^r -b-> (Z/ab)^r -> (Z/b)^r -> 0` at every vertex and edge, with
/// the same random integer matrices as half-edge maps on all three systems.
/// `a = 0` gives `0 -> Z^r -b-> Z^r -> (Z/b)^r -> 0`. Not split when `a` and
/// `b` share a factor or `a = 0`.
pub fn random_tower_sequence(rng: &mut TestRng, graph: Graph, a: u64, b: u64) -> ShortExactSequence {
    let vr: Vec<usize> = (0..graph.vertex_count()).map(|_| rng.gen_range(0..=2)).collect();
    let er: Vec<usize> = (0..graph.edge_count()).map(|_| rng.gen_range(0..=2)).collect();
    let mats: Vec<[IntegerMatrix; 2]> = (0..graph.edge_count())
        .map(|e| {
            let ends = graph.ends(e);
            let mut m = |v: usize| {
                let rows: Vec<Vec<i64>> = (0..er[e]).map(|_| (0..vr[v]).map(|_| rng.gen_range(-3..=3)).collect()).collect();
                IntegerMatrix::from_rows(vr[v], &rows)
            };
            [m(ends[0]), m(ends[1])]
        })
        .collect();
    let level = |modulus: u64| {
        let grp = |r: usize| group_from_moduli(&vec![modulus; r]);
        let maps = (0..graph.edge_count())
            .map(|e| {
                let ends = graph.ends(e);
                [0, 1].map(|s| GroupHom::new(grp(vr[ends[s]]), grp(er[e]), mats[e][s].clone()).unwrap())
            })
            .collect();
        let system = CoefficientSystem {
            vertex_groups: vr.iter().map(|&r| grp(r)).collect(),
            edge_groups: er.iter().map(|&r| grp(r)).collect(),
            maps,
        };
        DecoratedGraph::new(graph.clone(), system).unwrap()
    };
    let (sa, sb, sc) = (level(a), level(a * b), level(b));
    let grp = |m: u64, r: usize| group_from_moduli(&vec![m; r]);
    let hom = |r: usize, from: u64, to: u64, scale: i64| GroupHom::new(grp(from, r), grp(to, r), IntegerMatrix::scalar(r, scale)).unwrap();
    let i = SystemMorphism::new(
        &sa,
        &sb,
        vr.iter().map(|&r| hom(r, a, a * b, b as i64)).collect(),
        er.iter().map(|&r| hom(r, a, a * b, b as i64)).collect(),
    )
    .unwrap();
    let p = SystemMorphism::new(
        &sb,
        &sc,
        vr.iter().map(|&r| hom(r, a * b, b, 1)).collect(),
        er.iter().map(|&r| hom(r, a * b, b, 1)).collect(),
    )
    .unwrap();
    ShortExactSequence::new(sa, sb, sc, i, p).unwrap()
}

/// Either kind of sequence on a random graph with at most `max_vertices` vertices.
pub fn random_sequence(rng: &mut TestRng, max_vertices: usize) -> (ShortExactSequence, &'static str) {
    let n = rng.gen_range(1..=max_vertices);
    let extra = rng.gen_range(0..=2);
    let graph = random_graph(rng, n, extra);
    if rng.gen_bool(0.5) {
        (random_twisted_split_sequence(rng, graph), "twisted-split")
    } else {
        let a = *[0u64, 2, 3, 4].choose(rng).unwrap();
        let b = *[2u64, 3, 4].choose(rng).unwrap();
        (random_tower_sequence(rng, graph, a, b), "tower")
    }
}

// ---------------------------------------------------------------------------
// cohomology tables

/// A compatible table on every subgroup of `group`.
///
/// Part one: `X = ⊕ Z/n_i` with a random group element `t_i` per summand and
/// `A_H = X / <e_i : t_i ∉ H>`; restrictions are the induced projections.
/// Part two (optional): `Z/m` on every label with restriction from `H` to `H'`
/// given by multiplication by the index `[H : H']`.
pub fn random_table(rng: &mut TestRng, group: &FiniteGroup) -> CohomologyTable {
    let k = rng.gen_range(0..=3);
    let moduli: Vec<u64> = (0..k).map(|_| *[0u64, 2, 2, 3, 4].choose(rng).unwrap()).collect();
    let tags: Vec<usize> = (0..k).map(|_| rng.gen_range(0..group.order())).collect();
    let scaled: Option<u64> = if rng.gen_bool(0.5) { Some(*[0u64, 2, 3, 4].choose(rng).unwrap()) } else { None };
    let width = k + usize::from(scaled.is_some());
    let label_group = |h: &Subgroup| {
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for i in 0..k {
            let mut row = vec![0i64; width];
            row[i] = if h.contains(tags[i]) { moduli[i] as i64 } else { 1 };
            if row[i] != 0 {
                rows.push(row);
            }
        }
        if let Some(m) = scaled.filter(|&m| m != 0) {
            let mut row = vec![0i64; width];
            row[k] = m as i64;
            rows.push(row);
        }
        PresentedGroup::new(width, IntegerMatrix::from_rows(width, &rows)).unwrap()
    };
    let subgroups = group.subgroups();
    let mut table = CohomologyTable::new();
    for h in &subgroups {
        table.insert_group(h.clone(), label_group(h)).unwrap();
    }
    for h in &subgroups {
        for h2 in &subgroups {
            if h2 != h && h2.is_subgroup_of(h) {
                let mut m = IntegerMatrix::identity(width);
                if scaled.is_some() {
                    m[(k, k)] = BigInt::from((h.order() / h2.order()) as i64);
                }
                let map = GroupHom::new(label_group(h), label_group(h2), m).unwrap();
                table.insert_restriction(h.clone(), h2.clone(), map).unwrap();
            }
        }
    }
    table.check_compatibility().unwrap();
    table
}

/// Constant table `A` on the whole group only.
pub fn whole_group_table(group: &FiniteGroup, a: &PresentedGroup) -> CohomologyTable {
    CohomologyTable::constant(&[group.whole()], a)
}

// ---------------------------------------------------------------------------
// reduction graphs

fn subgroups_within<'a>(all: &'a [Subgroup], h: &Subgroup) -> Vec<&'a Subgroup> {
    all.iter().filter(|k| k.is_subgroup_of(h)).collect()
}

/// A monotonic tree with at most `max_components` components and points on
/// at most two components. A child component through a point carries the
/// point's label; leaf points hang off components with smaller labels.
///
/// With `geometrically_connected` the root component is labeled by the whole
/// group, as for the closed fiber of an actual model; otherwise the root
/// label is random.
pub fn random_monotonic_tree(
    rng: &mut TestRng,
    group: &Arc<FiniteGroup>,
    max_components: usize,
    geometrically_connected: bool,
) -> ReductionGraph {
    let all = group.subgroups();
    let target = rng.gen_range(1..=max_components);
    let mut b = ReductionGraphBuilder::new(group.clone());
    let root = if geometrically_connected { group.whole() } else { all.choose(rng).unwrap().clone() };
    let mut labels: Vec<Subgroup> = vec![root];
    let mut comps = vec![b.component("U0", labels[0].clone(), ComponentKind::Rational)];
    let mut points = 0;
    while comps.len() < target {
        let parent = rng.gen_range(0..comps.len());
        let hp = (*subgroups_within(&all, &labels[parent]).choose(rng).unwrap()).clone();
        let p = b.point(format!("P{points}"), hp.clone());
        points += 1;
        let u = b.component(format!("U{}", comps.len()), hp.clone(), ComponentKind::Rational);
        b.branch(p, comps[parent]).branch(p, u);
        comps.push(u);
        labels.push(hp);
    }
    for (k, &u) in comps.clone().iter().enumerate() {
        for _ in 0..rng.gen_range(0..=1) {
            let hp = (*subgroups_within(&all, &labels[k]).choose(rng).unwrap()).clone();
            let p = b.point(format!("P{points}"), hp);
            points += 1;
            b.branch(p, u);
        }
    }
    b.build().unwrap()
}

/// A random tree of components joined through points of degree two, plus
/// leaf points. Labels are biased towards equality so that both monotonic
/// and non-monotonic trees occur often.
pub fn random_labeled_tree(rng: &mut TestRng, group: &Arc<FiniteGroup>, max_components: usize) -> ReductionGraph {
    let all = group.subgroups();
    let c = rng.gen_range(1..=max_components);
    let mut labels: Vec<Subgroup> = Vec::new();
    for i in 0..c {
        let label = if i > 0 && rng.gen_bool(0.4) {
            labels[rng.gen_range(0..i)].clone()
        } else {
            all.choose(rng).unwrap().clone()
        };
        labels.push(label);
    }
    let mut b = ReductionGraphBuilder::new(group.clone());
    let comps: Vec<usize> = labels
        .iter()
        .enumerate()
        .map(|(i, h)| b.component(format!("U{i}"), h.clone(), ComponentKind::Rational))
        .collect();
    let mut points = 0;
    let pick_label = |rng: &mut TestRng, within: Subgroup| {
        if rng.gen_bool(0.5) {
            within
        } else {
            (*subgroups_within(&all, &within).choose(rng).unwrap()).clone()
        }
    };
    for i in 1..c {
        let j = rng.gen_range(0..i);
        let hp = pick_label(rng, labels[i].intersect(&labels[j]));
        let p = b.point(format!("P{points}"), hp);
        points += 1;
        b.branch(p, comps[i]).branch(p, comps[j]);
    }
    for i in 0..c {
        if rng.gen_bool(0.3) {
            let hp = pick_label(rng, labels[i].clone());
            let p = b.point(format!("P{points}"), hp);
            points += 1;
            b.branch(p, comps[i]);
        }
    }
    b.build().unwrap()
}

/// A connected graph of rational components, every label the whole group:
/// a spanning tree of nodes, extra nodes closing cycles, and leaf points.
pub fn random_all_whole_graph(rng: &mut TestRng, group: &Arc<FiniteGroup>, max_components: usize) -> ReductionGraph {
    let c = rng.gen_range(1..=max_components);
    let g = group.whole();
    let mut b = ReductionGraphBuilder::new(group.clone());
    let comps: Vec<usize> = (0..c)
        .map(|i| b.component(format!("U{i}"), g.clone(), ComponentKind::Rational))
        .collect();
    let mut pairs: Vec<(usize, usize)> = (1..c).map(|i| (rng.gen_range(0..i), i)).collect();
    if c >= 2 {
        for _ in 0..rng.gen_range(0..=3) {
            let x = rng.gen_range(0..c);
            let y = (x + rng.gen_range(1..c)) % c;
            pairs.push((x, y));
        }
    }
    let mut points = 0;
    for (x, y) in pairs {
        let p = b.point(format!("P{points}"), g.clone());
        points += 1;
        b.branch(p, comps[x]).branch(p, comps[y]);
    }
    for _ in 0..rng.gen_range(0..=2) {
        let p = b.point(format!("P{points}"), g.clone());
        points += 1;
        b.branch(p, comps[rng.gen_range(0..c)]);
    }
    b.build().unwrap()
}

/// Abelian groups used for constant tables.
pub fn random_small_group(rng: &mut TestRng) -> PresentedGroup {
    group_from_moduli(&random_moduli(rng))
}

// ---------------------------------------------------------------------------
// lattices

fn sign_lattice(group: &Arc<FiniteGroup>, kernel: &Subgroup) -> GLattice {
    GLattice::from_character(group.clone(), |g| if kernel.contains(g) { 1 } else { -1 }).unwrap()
}

fn augmentation(p: &GLattice) -> Option<GLattice> {
    let r = p.rank();
    if r < 2 {
        return None;
    }
    let cols: Vec<Vec<BigInt>> = (0..r - 1)
        .map(|i| {
            let mut v = vec![BigInt::from(0); r];
            v[i] = BigInt::from(1);
            v[i + 1] = BigInt::from(-1);
            v
        })
        .collect();
    p.sublattice(&IntegerMatrix::from_columns(r, &cols)).ok()
}

fn rotation_lattices(name: &str, group: &Arc<FiniteGroup>) -> Vec<GLattice> {
    let m = |rows: &[&[i64]]| IntegerMatrix::from_i64(rows);
    let tries: Vec<Vec<IntegerMatrix>> = match name {
        "C3" => vec![vec![m(&[&[0, -1], &[1, -1]])]],
        "C4" => vec![vec![m(&[&[0, -1], &[1, 0]])]],
        "C6" => vec![vec![m(&[&[1, -1], &[1, 0]])]],
        "D4" => vec![vec![m(&[&[0, -1], &[1, 0]]), m(&[&[1, 0], &[0, -1]])], vec![m(&[&[0, -1], &[1, 0]]), m(&[&[0, 1], &[1, 0]])]],
        "C2xC4" => vec![vec![m(&[&[-1, 0], &[0, -1]]), m(&[&[0, -1], &[1, 0]])]],
        _ => vec![],
    };
    tries
        .into_iter()
        .filter_map(|gens| GLattice::from_generator_action(group.clone(), 2, gens).ok())
        .collect()
}

/// A catalog of lattices of rank 1 to 4 over `group`: trivial, sign
/// characters, permutation lattices and their augmentation sublattices,
/// norm-one lattices, duals, faithful rank-two lattices, and small sums.
pub fn lattice_catalog(name: &str, group: &Arc<FiniteGroup>) -> Vec<(String, GLattice)> {
    let mut out: Vec<(String, GLattice)> = Vec::new();
    let mut push = |label: String, l: GLattice| {
        if (1..=4).contains(&l.rank()) {
            out.push((label, l));
        }
    };
    push("trivial".into(), GLattice::trivial(group.clone(), 1));
    push("trivial^2".into(), GLattice::trivial(group.clone(), 2));
    let n = group.order();
    let index_two: Vec<Subgroup> = group.subgroups().into_iter().filter(|k| 2 * k.order() == n).collect();
    for (i, k) in index_two.iter().enumerate() {
        let s = sign_lattice(group, k);
        push(format!("sign{i}"), s.clone());
        push(format!("sign{i}+trivial"), GLattice::direct_sum(&[&s, &GLattice::trivial(group.clone(), 1)]).unwrap());
        if let Some(k2) = index_two.get(i + 1) {
            let s2 = sign_lattice(group, k2);
            push(format!("sign{i}+sign{}", i + 1), GLattice::direct_sum(&[&s, &s2]).unwrap());
        }
    }
    for (i, h) in group.subgroup_class_representatives().iter().enumerate() {
        let p = GLattice::permutation(group.clone(), h);
        if p.rank() > 4 {
            continue;
        }
        push(format!("perm{i}"), p.clone());
        if let Some(a) = augmentation(&p) {
            push(format!("aug{i}"), a.clone());
            push(format!("aug{i}*"), a.dual());
        }
        if let Some(k) = index_two.first() {
            push(format!("perm{i}+sign"), GLattice::direct_sum(&[&p, &sign_lattice(group, k)]).unwrap());
        }
    }
    if n >= 2 && n <= 5 {
        let t = GLattice::norm_one(group.clone());
        push("norm-one".into(), t.clone());
        push("norm-one*".into(), t.dual());
    }
    for (i, l) in rotation_lattices(name, group).into_iter().enumerate() {
        push(format!("rot{i}"), l.clone());
        push(format!("rot{i}+trivial"), GLattice::direct_sum(&[&l, &GLattice::trivial(group.clone(), 1)]).unwrap());
        push(format!("rot{i}+rot{i}"), GLattice::direct_sum(&[&l, &l]).unwrap());
    }
    out
}

// ---------------------------------------------------------------------------
// enumeration oracle for Tate cohomology and H^1
//
// With n = |H| all three groups are killed by n, and for a lattice M:
//   H^1(H, M)   = (M/nM)^H / image of M^H
//   Ĥ^0(H, M)   = image of M^H in M/nM / image of N M
//   Ĥ^-1(H, M)  = image of ker N in M/nM / image of I_H M
// Generators of M^H and ker N are found by enumerating a coordinate box;
// everything else is finite enumeration in (Z/n)^r.

const ORACLE_BOX: i64 = 2;

struct ModSpace {
    n: i64,
    r: usize,
}

impl ModSpace {
    fn size(&self) -> usize {
        (self.n as usize).pow(self.r as u32)
    }

    fn encode(&self, v: &[i64]) -> usize {
        v.iter().fold(0usize, |acc, &x| acc * self.n as usize + x.rem_euclid(self.n) as usize)
    }

    fn decode(&self, mut k: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.r];
        for i in (0..self.r).rev() {
            v[i] = (k % self.n as usize) as i64;
            k /= self.n as usize;
        }
        v
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        self.encode(&x.iter().zip(&y).map(|(p, q)| p + q).collect::<Vec<_>>())
    }

    fn scale(&self, a: usize, c: i64) -> usize {
        self.encode(&self.decode(a).iter().map(|x| x * c).collect::<Vec<_>>())
    }

    /// The subgroup generated by `gens`, as a membership table. Each new
    /// generator adds the cosets `S + k g` up to its order modulo `S`.
    fn span(&self, gens: &[Vec<i64>]) -> Vec<bool> {
        let mut member = vec![false; self.size()];
        member[0] = true;
        let mut elems = vec![0usize];
        for g in gens {
            let g = self.encode(g);
            if member[g] {
                continue;
            }
            let base = elems.clone();
            let mut shift = g;
            while !member[shift] {
                for &s in &base {
                    let y = self.add(s, shift);
                    member[y] = true;
                    elems.push(y);
                }
                shift = self.add(shift, g);
            }
        }
        member
    }
}

fn small_matrix(m: &IntegerMatrix) -> Vec<Vec<i64>> {
    m.to_rows().iter().map(|row| row.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect()
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn box_vectors(r: usize) -> Vec<Vec<i64>> {
    let side = (2 * ORACLE_BOX + 1) as usize;
    (0..side.pow(r as u32))
        .map(|mut k| {
            (0..r)
                .map(|_| {
                    let x = (k % side) as i64 - ORACLE_BOX;
                    k /= side;
                    x
                })
                .collect()
        })
        .collect()
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of `S / T` (membership tables, `T ⊆ S`) read off from
/// the sizes of its `p^j`-torsion subgroups.
fn quotient_invariants(space: &ModSpace, s: &[bool], t: &[bool]) -> Vec<u64> {
    let t_size = t.iter().filter(|&&b| b).count();
    let s_elems: Vec<usize> = (0..s.len()).filter(|&k| s[k]).collect();
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in prime_factors(space.n as u64) {
        let mut exps_at_least: Vec<u32> = Vec::new(); // count of cyclic factors of order >= p^j
        let mut prev = 1usize;
        let mut pj = 1i64;
        loop {
            pj *= p as i64;
            let killed = s_elems.iter().filter(|&&x| t[space.scale(x, pj)]).count() / t_size;
            if killed == prev {
                break;
            }
            let mut ratio = killed / prev;
            let mut count = 0;
            while ratio > 1 {
                ratio /= p as usize;
                count += 1;
            }
            exps_at_least.push(count);
            prev = killed;
        }
        // exponent list: factor k has exponent #{j : exps_at_least[j] > k}
        let cyclic = exps_at_least.first().copied().unwrap_or(0);
        let exps: Vec<u32> = (0..cyclic).map(|k| exps_at_least.iter().filter(|&&c| c > k).count() as u32).collect();
        per_prime.push((p, exps));
    }
    let len = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..len)
        .map(|k| per_prime.iter().map(|(p, e)| p.pow(e.get(k).copied().unwrap_or(0))).product())
        .collect();
    factors.reverse();
    factors
}

/// Invariant factors from the oracle for `(Ĥ^-1, Ĥ^0, H^1)`.
pub fn oracle_tate(h: &Subgroup, m: &GLattice) -> [Vec<u64>; 3] {
    let n = h.order() as i64;
    let r = m.rank();
    if n == 1 || r == 0 {
        return [vec![], vec![], vec![]];
    }
    let space = ModSpace { n, r };
    let acts: Vec<Vec<Vec<i64>>> = h.elements().iter().map(|&g| small_matrix(m.action(g))).collect();
    let norm: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| acts.iter().map(|a| a[i][j]).sum()).collect()).collect();
    let unit = |i: usize| (0..r).map(|k| i64::from(k == i)).collect::<Vec<_>>();

    let box_ = box_vectors(r);
    let fixed: Vec<Vec<i64>> = box_.iter().filter(|v| acts.iter().all(|a| apply(a, v) == **v)).cloned().collect();
    let norm_kernel: Vec<Vec<i64>> = box_.iter().filter(|v| apply(&norm, v).iter().all(|&x| x == 0)).cloned().collect();
    let norm_image: Vec<Vec<i64>> = (0..r).map(|i| apply(&norm, &unit(i))).collect();
    let augmentation: Vec<Vec<i64>> = acts
        .iter()
        .flat_map(|a| (0..r).map(move |i| apply(a, &unit(i)).iter().zip(unit(i)).map(|(x, y)| x - y).collect()))
        .collect();

    let fixed_mod: Vec<bool> = (0..space.size())
        .map(|k| {
            let v = space.decode(k);
            acts.iter().all(|a| space.encode(&apply(a, &v)) == k)
        })
        .collect();
    let fixed_span = space.span(&fixed);

    [
        quotient_invariants(&space, &space.span(&norm_kernel), &space.span(&augmentation)),
        quotient_invariants(&space, &fixed_span, &space.span(&norm_image)),
        quotient_invariants(&space, &fixed_mod, &fixed_span),
    ]
}

/// Torsion factors of `g` as machine integers, when `g` is finite.
pub fn torsion_u64(g: &InvariantFactors) -> Option<Vec<u64>> {
    if g.free_rank != 0 {
        return None;
    }
    g.torsion.iter().map(|d| u64::try_from(d).ok()).collect()
}
