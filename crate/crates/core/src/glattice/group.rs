//! Finite permutation groups and their subgroups.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{invalid, Error, Result};

/// Default bound on the order of any group this crate will enumerate.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 64;

/// Environment variable overriding [`DEFAULT_MAX_GROUP_ORDER`].
pub const MAX_GROUP_ORDER_ENV: &str = "SHAGRAPH_MAX_GROUP_ORDER";

/// The active group-order bound, honoring the environment override.
pub fn max_group_order() -> usize {
    std::env::var(MAX_GROUP_ORDER_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_GROUP_ORDER)
}

/// A permutation of `{0, .., degree - 1}`, stored as its image list.
pub type Perm = Vec<usize>;

/// `(a * b)(i) = a(b(i))`: apply `b` first.
fn compose_perm(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

/// A finite group of permutations with its full multiplication table.
///
/// Element `0` is always the identity. Elements are enumerated breadth-first from
/// the identity by left multiplication with the generators, so the numbering is a
/// deterministic function of the generator list.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    /// For each non-identity element `y`: `(s, x)` with `y = generators[s] * x`.
    words: Vec<Option<(usize, usize)>>,
    index: HashMap<Perm, usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Generates the group, enforcing [`max_group_order`].
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::with_limit(degree, generators, max_group_order())
    }

    pub fn with_limit(degree: usize, generators: Vec<Perm>, limit: usize) -> Result<Self> {
        if degree == 0 {
            return Err(invalid!("permutation degree must be positive"));
        }
        for (k, g) in generators.iter().enumerate() {
            let distinct: BTreeSet<usize> = g.iter().copied().collect();
            if g.len() != degree || distinct.len() != degree || g.iter().any(|&x| x >= degree) {
                return Err(invalid!("generator {k} is not a permutation of 0..{degree}"));
            }
        }
        let id: Perm = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut words = vec![None];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (s, g) in generators.iter().enumerate() {
                let y = compose_perm(g, &elements[x]);
                if !index.contains_key(&y) {
                    if elements.len() >= limit {
                        return Err(Error::LimitExceeded(format!(
                            "group order exceeds the bound {limit} (set {MAX_GROUP_ORDER_ENV} to raise it)"
                        )));
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                    words.push(Some((s, x)));
                }
            }
        }
        let n = elements.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| index[&compose_perm(&elements[i], &elements[j])]).collect())
            .collect();
        let inverse = (0..n)
            .map(|i| (0..n).find(|&j| table[i][j] == 0).expect("finite group"))
            .collect();
        Ok(FiniteGroup {
            degree,
            generators,
            elements,
            table,
            inverse,
            words,
            index,
        })
    }

    pub fn trivial() -> Self {
        Self::with_limit(1, vec![], 1).expect("trivial group")
    }

    /// `Z/n` acting regularly on `n` points.
    pub fn cyclic(n: usize) -> Result<Self> {
        let gen: Perm = (0..n).map(|i| (i + 1) % n).collect();
        Self::new(n, vec![gen])
    }

    /// `Z/2 x Z/2` acting regularly on 4 points.
    pub fn klein_four() -> Self {
        Self::new(4, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).expect("order 4")
    }

    /// The symmetric group on `n` letters.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n <= 1 {
            return Ok(Self::trivial());
        }
        let swap: Perm = (0..n).map(|i| if i < 2 { 1 - i } else { i }).collect();
        let cycle: Perm = (0..n).map(|i| (i + 1) % n).collect();
        Self::new(n, vec![swap, cycle])
    }

    /// The dihedral group of order `2n` acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Result<Self> {
        let rot: Perm = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Perm = (0..n).map(|i| (n - i) % n).collect();
        Self::new(n, vec![rot, refl])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &[usize]) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `a * b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g h g^{-1}`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// The generator-word decomposition used to evaluate actions: for element
    /// `y != e`, `Some((s, x))` with `y = generators[s] * x` and `x` earlier in
    /// the enumeration.
    pub fn word_step(&self, y: usize) -> Option<(usize, usize)> {
        self.words[y]
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order()).collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    /// The subgroup generated by the given element indices.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier: Vec<usize> = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(g, x);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup {
            elements: set.into_iter().collect(),
        }
    }

    /// The subgroup generated by permutations given explicitly; each must be an
    /// element of this group.
    pub fn subgroup_from_perms(&self, perms: &[Perm]) -> Result<Subgroup> {
        let idx: Result<Vec<usize>> = perms
            .iter()
            .map(|p| self.index_of(p).ok_or_else(|| invalid!("permutation {p:?} is not in the group")))
            .collect();
        Ok(self.generate(&idx?))
    }

    /// Checks that an arbitrary element set is a subgroup.
    pub fn subgroup_from_elements(&self, elements: &[usize]) -> Result<Subgroup> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if set.iter().any(|&x| x >= self.order()) || !set.contains(&0) {
            return Err(invalid!("element set must contain the identity and lie in the group"));
        }
        for &a in &set {
            if !set.contains(&self.inv(a)) || set.iter().any(|&b| !set.contains(&self.mul(a, b))) {
                return Err(invalid!("element set is not closed under the group operations"));
            }
        }
        Ok(Subgroup {
            elements: set.into_iter().collect(),
        })
    }

    /// All subgroups, each once, sorted by order and then by element list.
    ///
    /// Every subgroup arises by adjoining one element at a time to the trivial
    /// subgroup, so closing the known list under "adjoin one element" finds them all.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([vec![0]]);
        let mut frontier = vec![vec![0usize]];
        while let Some(s) = frontier.pop() {
            let members: BTreeSet<usize> = s.iter().copied().collect();
            for g in 0..self.order() {
                if members.contains(&g) {
                    continue;
                }
                let mut gens = s.clone();
                gens.push(g);
                let t = self.generate(&gens).elements;
                if seen.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        let mut all: Vec<Subgroup> = seen.into_iter().map(|elements| Subgroup { elements }).collect();
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        all
    }

    /// Partition of [`FiniteGroup::subgroups`] into conjugacy classes, as lists of
    /// indices into that list. Classes are ordered by their first member.
    pub fn conjugacy_classes(&self, subgroups: &[Subgroup]) -> Vec<Vec<usize>> {
        let pos: HashMap<&[usize], usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.elements.as_slice(), i))
            .collect();
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, s) in subgroups.iter().enumerate() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut members = BTreeSet::new();
            for g in 0..self.order() {
                let c = s.conjugate_by(self, g);
                members.insert(pos[c.elements.as_slice()]);
            }
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members.into_iter().collect());
        }
        classes
    }

    /// One representative (the first in sorted order) of each conjugacy class of subgroups.
    pub fn subgroup_class_representatives(&self) -> Vec<Subgroup> {
        let subs = self.subgroups();
        self.conjugacy_classes(&subs)
            .into_iter()
            .map(|c| subs[c[0]].clone())
            .collect()
    }

    /// Left cosets `gH`, each as a sorted element list, ordered by smallest element.
    pub fn left_cosets(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut cosets = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let mut c: Vec<usize> = h.elements.iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            for &x in &c {
                seen[x] = true;
            }
            cosets.push(c);
        }
        cosets
    }

    /// Coset index of each element for the cosets of [`FiniteGroup::left_cosets`].
    pub fn coset_index(&self, cosets: &[Vec<usize>]) -> Vec<usize> {
        let mut idx = vec![0; self.order()];
        for (k, c) in cosets.iter().enumerate() {
            for &x in c {
                idx[x] = k;
            }
        }
        idx
    }
}

/// A subgroup of a [`FiniteGroup`], as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            elements: self.elements.iter().copied().filter(|&g| other.contains(g)).collect(),
        }
    }

    /// `g H g^{-1}`
    pub fn conjugate_by(&self, group: &FiniteGroup, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&h| group.conjugate(g, h)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn is_normal_in(&self, group: &FiniteGroup) -> bool {
        (0..group.order()).all(|g| self.conjugate_by(group, g) == *self)
    }

    /// A small generating set: greedily adjoin the least element not yet generated.
    pub fn generating_set(&self, group: &FiniteGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = group.trivial_subgroup();
        for &g in &self.elements {
            if !current.contains(g) {
                gens.push(g);
                current = group.generate(&gens);
            }
        }
        gens
    }

    /// This subgroup as a permutation group in its own right, together with the
    /// parent index of each element of the new group.
    pub fn as_group(&self, group: &FiniteGroup) -> (FiniteGroup, Vec<usize>) {
        let gens: Vec<Perm> = self
            .generating_set(group)
            .iter()
            .map(|&g| group.element(g).clone())
            .collect();
        let sub = FiniteGroup::with_limit(group.degree(), gens, group.order()).expect("subgroup of a valid group");
        let parent = (0..sub.order())
            .map(|i| group.index_of(sub.element(i)).expect("element of parent"))
            .collect();
        (sub, parent)
    }
}
