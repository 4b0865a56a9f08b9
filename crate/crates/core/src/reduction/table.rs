//! Input cohomology data: a group for every subgroup label with restriction
//! maps, and explicit data for non-rational components.

use std::collections::{BTreeMap, HashSet};

use crate::abelian::{compose, GroupHom, PresentedGroup};
use crate::error::{invalid, mismatch, Result};
use crate::glattice::Subgroup;

use super::graph::{ComponentKind, ReductionGraph};

/// For each label `H`, a group `A_H` standing for the first cohomology of the
/// fixed field of `H`; for label inclusions `H' ⊆ H`, restriction maps
/// `A_H -> A_H'`. Lookups are by exact subgroup, not up to conjugacy.
#[derive(Clone, Debug, Default)]
pub struct CohomologyTable {
    groups: BTreeMap<Subgroup, PresentedGroup>,
    restrictions: BTreeMap<(Subgroup, Subgroup), GroupHom>,
}

impl CohomologyTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// A table with the same group on every given label and identity restrictions
    /// between all nested pairs.
    pub fn constant(labels: &[Subgroup], a: &PresentedGroup) -> Self {
        let mut t = CohomologyTable::new();
        for h in labels {
            t.groups.insert(h.clone(), a.clone());
        }
        for h in labels {
            for k in labels {
                if k != h && k.is_subgroup_of(h) {
                    t.restrictions.insert((h.clone(), k.clone()), GroupHom::identity(a));
                }
            }
        }
        t
    }

    pub fn insert_group(&mut self, h: Subgroup, a: PresentedGroup) -> Result<()> {
        if self.groups.contains_key(&h) {
            return Err(invalid!("label {:?} appears twice in the table", h.elements()));
        }
        self.groups.insert(h, a);
        Ok(())
    }

    /// Adds the restriction `A_from -> A_to`; both groups must already be present.
    pub fn insert_restriction(&mut self, from: Subgroup, to: Subgroup, map: GroupHom) -> Result<()> {
        if !to.is_subgroup_of(&from) {
            return Err(invalid!(
                "restriction from {:?} to {:?}: target label is not contained in source label",
                from.elements(),
                to.elements()
            ));
        }
        let (a, b) = (self.group(&from)?, self.group(&to)?);
        if !map.domain().same_presentation(a) || !map.codomain().same_presentation(b) {
            return Err(mismatch!(
                "restriction from {:?} to {:?} does not match the table groups",
                from.elements(),
                to.elements()
            ));
        }
        if from == to && !map.equals(&GroupHom::identity(a)) {
            return Err(invalid!("restriction from a label to itself must be the identity"));
        }
        if self.restrictions.contains_key(&(from.clone(), to.clone())) {
            return Err(invalid!("restriction from {:?} to {:?} given twice", from.elements(), to.elements()));
        }
        self.restrictions.insert((from, to), map);
        Ok(())
    }

    pub fn group(&self, h: &Subgroup) -> Result<&PresentedGroup> {
        self.groups
            .get(h)
            .ok_or_else(|| invalid!("table has no group for label {:?}", h.elements()))
    }

    /// The identity for equal labels, otherwise the stored map.
    pub fn restriction(&self, from: &Subgroup, to: &Subgroup) -> Result<GroupHom> {
        if from == to {
            return Ok(GroupHom::identity(self.group(from)?));
        }
        self.restrictions
            .get(&(from.clone(), to.clone()))
            .cloned()
            .ok_or_else(|| invalid!("table has no restriction from {:?} to {:?}", from.elements(), to.elements()))
    }

    pub fn groups(&self) -> impl Iterator<Item = (&Subgroup, &PresentedGroup)> {
        self.groups.iter()
    }

    pub fn restrictions(&self) -> impl Iterator<Item = (&Subgroup, &Subgroup, &GroupHom)> {
        self.restrictions.iter().map(|((a, b), m)| (a, b, m))
    }

    /// Every label of `rg` has a group, every branch inclusion a restriction,
    /// and restrictions compose along every chain `H'' ⊆ H' ⊆ H` of stored maps.
    pub fn validate_for(&self, rg: &ReductionGraph) -> Result<()> {
        for p in rg.points() {
            self.group(&p.label)?;
        }
        for c in rg.components() {
            self.group(&c.label)?;
        }
        for b in rg.branches() {
            self.restriction(&rg.components()[b.component].label, &rg.points()[b.point].label)?;
        }
        self.check_compatibility()
    }

    pub fn check_compatibility(&self) -> Result<()> {
        for ((a, b), ab) in &self.restrictions {
            for ((b2, c), bc) in &self.restrictions {
                if b2 != b {
                    continue;
                }
                if let Ok(ac) = self.restriction(a, c) {
                    if !compose(bc, ab)?.equals(&ac) {
                        return Err(invalid!(
                            "restrictions {:?} -> {:?} -> {:?} do not compose to the stored map",
                            a.elements(),
                            b.elements(),
                            c.elements()
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Data for a component whose cohomology is not read from the table.
#[derive(Clone, Debug)]
pub struct CustomComponentData {
    /// Index into the components of the reduction graph.
    pub component: usize,
    /// The group `A_V` decorating the component.
    pub group: PresentedGroup,
    /// For each incident point (index), the specialization `A_V -> A_{H_P}`.
    pub specializations: Vec<(usize, GroupHom)>,
    /// Optional map `A_{H_U} -> A_V` commuting with the specializations.
    pub generic_restriction: Option<GroupHom>,
}

impl CustomComponentData {
    pub fn specialization(&self, point: usize) -> Option<&GroupHom> {
        self.specializations.iter().find(|(p, _)| *p == point).map(|(_, m)| m)
    }
}

/// Checks custom data against the graph and table, and that every custom
/// component has exactly one entry. Returns the entry index per component.
pub(crate) fn custom_index(
    rg: &ReductionGraph,
    table: &CohomologyTable,
    custom: &[CustomComponentData],
) -> Result<Vec<Option<usize>>> {
    let mut index = vec![None; rg.components().len()];
    for (k, c) in custom.iter().enumerate() {
        let Some(u) = rg.components().get(c.component) else {
            return Err(invalid!("custom data for missing component {}", c.component));
        };
        if u.kind != ComponentKind::Custom {
            return Err(invalid!("custom data given for rational component {:?}", u.id));
        }
        if index[c.component].replace(k).is_some() {
            return Err(invalid!("custom data for component {:?} given twice", u.id));
        }
        let incident: HashSet<usize> = rg
            .branches()
            .iter()
            .filter(|b| b.component == c.component)
            .map(|b| b.point)
            .collect();
        let given: HashSet<usize> = c.specializations.iter().map(|(p, _)| *p).collect();
        if given != incident || given.len() != c.specializations.len() {
            return Err(invalid!(
                "component {:?}: specializations must be given once for each incident point",
                u.id
            ));
        }
        for (p, m) in &c.specializations {
            let target = table.group(&rg.points()[*p].label)?;
            if !m.domain().same_presentation(&c.group) || !m.codomain().same_presentation(target) {
                return Err(mismatch!(
                    "component {:?}: specialization at {:?} has the wrong domain or codomain",
                    u.id,
                    rg.points()[*p].id
                ));
            }
        }
        if let Some(gen) = &c.generic_restriction {
            let source = table.group(&u.label)?;
            if !gen.domain().same_presentation(source) || !gen.codomain().same_presentation(&c.group) {
                return Err(mismatch!("component {:?}: generic restriction has the wrong domain or codomain", u.id));
            }
            for (p, m) in &c.specializations {
                let res = table.restriction(&u.label, &rg.points()[*p].label)?;
                if !compose(m, gen)?.equals(&res) {
                    return Err(invalid!(
                        "component {:?}: specialization at {:?} after generic restriction differs from the table restriction",
                        u.id,
                        rg.points()[*p].id
                    ));
                }
            }
        }
    }
    for (u, c) in rg.components().iter().enumerate() {
        if c.kind == ComponentKind::Custom && index[u].is_none() {
            return Err(invalid!("custom component {:?} has no data", c.id));
        }
    }
    Ok(index)
}
