//! The engine of a finite poset.
//!
//! On a finite space closure and interior are identities, every point is
//! localic and every upset is a clopen Scott upset. Consequently `core U = U`,
//! `d U = U**`, `Y_d = max X` and every nuclear set is inductive. None of these
//! collapses is assumed: the engine computes `d` from its defining union and
//! the generic code compares both sides.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde_json::json;

use super::engine::{PriestleyEngine, TopologyClass};
use crate::birkhoff::pseudocomplement;
use crate::error::{Error, Result};
use crate::faults::Faults;
use crate::poset::{FinitePoset, PointSet};

#[derive(Clone, Debug)]
pub struct FiniteEngine {
    space: Arc<FinitePoset>,
    upsets: Vec<PointSet>,
    scott: Vec<PointSet>,
    d_table: BTreeMap<PointSet, PointSet>,
    conditions: OnceLock<[PointSet; 4]>,
}

impl FiniteEngine {
    pub fn new(space: Arc<FinitePoset>) -> Self {
        Self::with_faults(space, Faults::NONE)
    }

    pub fn with_faults(space: Arc<FinitePoset>, faults: Faults) -> Self {
        let upsets = space.enumerate_upsets();
        let mut e = FiniteEngine {
            space,
            upsets,
            scott: Vec::new(),
            d_table: BTreeMap::new(),
            conditions: OnceLock::new(),
        };
        let y = e.localic_part();
        e.scott = e
            .upsets
            .iter()
            .copied()
            .filter(|&v| e.space.minimal(v).is_subset(y))
            .collect();
        e.d_table = e.compute_d_table();
        if faults.corrupt_d_table {
            let full = e.space.full();
            if let Some((_, v)) = e.d_table.iter_mut().find(|(_, v)| **v != full) {
                *v = full;
            }
        }
        e
    }

    pub fn space(&self) -> &Arc<FinitePoset> {
        &self.space
    }

    pub fn upsets(&self) -> &[PointSet] {
        &self.upsets
    }

    /// Clopen Scott upsets, in upset enumeration order.
    pub fn scott_upsets(&self) -> &[PointSet] {
        &self.scott
    }

    pub fn d_table(&self) -> &BTreeMap<PointSet, PointSet> {
        &self.d_table
    }

    /// `d U = cl ⋃ {V** | V clopen Scott upset, V ⊆ U}`.
    fn compute_d_table(&self) -> BTreeMap<PointSet, PointSet> {
        let x = &self.space;
        self.upsets
            .iter()
            .map(|&u| {
                let d = self
                    .scott
                    .iter()
                    .filter(|v| v.is_subset(u))
                    .fold(PointSet::EMPTY, |acc, &v| {
                        acc.union(pseudocomplement(x, pseudocomplement(x, v)))
                    });
                (u, d)
            })
            .collect()
    }

    /// Points `x` with `x ∈ dU ⇒ x ∈ U` for every upset `U`.
    pub fn nd_from_table(&self) -> PointSet {
        (0..self.space.len())
            .filter(|&x| self.d_table.iter().all(|(u, du)| !du.contains(x) || u.contains(x)))
            .fold(PointSet::EMPTY, PointSet::with)
    }

    /// `core_d U = ⋃ {d V | V clopen Scott upset, V ⊆ U}`.
    pub fn core_d_by_union(&self, u: PointSet) -> PointSet {
        self.scott
            .iter()
            .filter(|v| v.is_subset(u))
            .fold(PointSet::EMPTY, |acc, v| acc.union(self.d_table[v]))
    }

    /// The four characterisations of `Y_d` among localic points:
    /// membership in `N_d`; not added by `core_d`; every clopen Scott upset
    /// containing `max ↑y` contains `y`; `{y} = max(↓x ∩ Y)` for some
    /// maximal `x`.
    pub fn yd_conditions(&self) -> [PointSet; 4] {
        *self.conditions.get_or_init(|| self.compute_yd_conditions())
    }

    fn compute_yd_conditions(&self) -> [PointSet; 4] {
        let x = &self.space;
        let y = self.localic_part();
        let by_nd = self.nd_from_table().intersection(y);
        let by_core_d = y
            .iter()
            .filter(|&p| {
                self.upsets
                    .iter()
                    .all(|&u| !self.core_d_by_union(u).contains(p) || u.contains(p))
            })
            .fold(PointSet::EMPTY, PointSet::with);
        let by_scott = y
            .iter()
            .filter(|&p| {
                let top = x.maximal(x.up_of(p));
                self.scott.iter().all(|&v| !top.is_subset(v) || v.contains(p))
            })
            .fold(PointSet::EMPTY, PointSet::with);
        let maxes = x.maximal(x.full());
        let by_max = y
            .iter()
            .filter(|&p| {
                maxes
                    .iter()
                    .any(|m| x.maximal(x.down_of(m).intersection(y)) == PointSet::singleton(p))
            })
            .fold(PointSet::EMPTY, PointSet::with);
        [by_nd, by_core_d, by_scott, by_max]
    }
}

/// Whether the finite space `nd` (an induced subposet) is L-regular:
/// `cl reg U = U` for every upset `U`, where `reg U` is the union of the
/// upsets `V` with `↓V ⊆ U`.
pub fn l_regular(space: &FinitePoset, nd: PointSet) -> bool {
    let (sub, _) = space.restrict(nd);
    let upsets = sub.enumerate_upsets();
    upsets.iter().all(|&u| {
        let reg = upsets
            .iter()
            .filter(|&&v| sub.down(v).is_subset(u))
            .fold(PointSet::EMPTY, |a, &v| a.union(v));
        reg == u
    })
}

impl PriestleyEngine for FiniteEngine {
    type Set = PointSet;
    type Point = usize;

    fn space_id(&self) -> String {
        format!("{:?}", self.space)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn empty(&self) -> PointSet {
        PointSet::EMPTY
    }

    fn full(&self) -> PointSet {
        self.space.full()
    }

    fn singleton(&self, p: &usize) -> PointSet {
        PointSet::singleton(*p)
    }

    fn contains(&self, s: &PointSet, p: &usize) -> bool {
        s.contains(*p)
    }

    fn meet(&self, a: &PointSet, b: &PointSet) -> PointSet {
        a.intersection(*b)
    }

    fn join(&self, a: &PointSet, b: &PointSet) -> PointSet {
        a.union(*b)
    }

    fn complement(&self, a: &PointSet) -> PointSet {
        a.complement(self.space.len())
    }

    fn up(&self, a: &PointSet) -> PointSet {
        self.space.up(*a)
    }

    fn down(&self, a: &PointSet) -> PointSet {
        self.space.down(*a)
    }

    fn strict_up(&self, a: &PointSet) -> PointSet {
        self.space.strict_up(*a)
    }

    fn strict_down(&self, a: &PointSet) -> PointSet {
        self.space.strict_down(*a)
    }

    fn closure(&self, a: &PointSet) -> Result<PointSet> {
        Ok(*a)
    }

    fn localic_part(&self) -> PointSet {
        (0..self.space.len())
            .filter(|&y| self.is_clopen(&self.space.down_of(y)))
            .fold(PointSet::EMPTY, PointSet::with)
    }

    fn core(&self, u: &PointSet) -> Result<PointSet> {
        if !self.space.is_upset(*u) || !u.is_subset(self.space.full()) {
            return Err(Error::NotClopenUpset(self.space.format_set(*u)));
        }
        Ok(self
            .scott
            .iter()
            .filter(|v| v.is_subset(*u))
            .fold(PointSet::EMPTY, |a, &v| a.union(v)))
    }

    fn yd(&self) -> Result<PointSet> {
        Ok(self.nd_from_table().intersection(self.localic_part()))
    }

    fn is_single_point(&self, _: &usize) -> bool {
        true
    }

    fn catalog(&self) -> Vec<usize> {
        (0..self.space.len()).collect()
    }

    fn all_clopen_upsets(&self) -> Option<Vec<PointSet>> {
        Some(self.upsets.clone())
    }

    fn sample_clopen_upsets(&self) -> Vec<PointSet> {
        self.upsets.clone()
    }

    fn trace_topology(&self, s: &PointSet) -> TopologyClass {
        if s.is_empty() {
            return TopologyClass::Empty;
        }
        let traces: Vec<PointSet> = self.upsets.iter().map(|u| u.intersection(*s)).collect();
        if s.iter().all(|p| traces.contains(&PointSet::singleton(p))) {
            TopologyClass::FiniteDiscrete
        } else {
            TopologyClass::Other
        }
    }

    fn describe(&self, s: &PointSet) -> String {
        self.space.format_set(*s)
    }

    fn set_json(&self, s: &PointSet) -> serde_json::Value {
        json!(self.space.labels_of(*s))
    }

    fn point_label(&self, p: &usize) -> String {
        self.space.label(*p).to_string()
    }

    fn d_by_definition(&self, u: &PointSet) -> Option<PointSet> {
        self.d_table.get(u).copied()
    }

    fn yd_all_conditions(&self) -> Option<Vec<PointSet>> {
        Some(self.yd_conditions().to_vec())
    }

    fn l_regular_nd(&self, nd: &PointSet) -> Option<bool> {
        Some(l_regular(&self.space, *nd))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_d_table_is_double_negation() {
        let e = FiniteEngine::new(Arc::new(FinitePoset::chain(2)));
        let x2 = PointSet::singleton(1);
        assert_eq!(e.d_table()[&x2], e.full());
        assert_eq!(e.d_table()[&PointSet::EMPTY], PointSet::EMPTY);
        assert_eq!(e.yd().unwrap(), x2);
    }

    #[test]
    fn conditions_agree_on_a_v() {
        let v = crate::poset::build_poset(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
        let e = FiniteEngine::new(Arc::new(v));
        let c = e.yd_conditions();
        assert!(c.iter().all(|s| *s == PointSet::singleton(2)));
    }

    #[test]
    fn corrupted_table_differs() {
        let s = Arc::new(FinitePoset::chain(2));
        let good = FiniteEngine::new(s.clone());
        let bad = FiniteEngine::with_faults(s, Faults { corrupt_d_table: true, ..Faults::NONE });
        assert_ne!(good.d_table(), bad.d_table());
    }

    #[test]
    fn antichains_are_l_regular() {
        let a = FinitePoset::antichain(3);
        assert!(l_regular(&a, a.full()));
        let c = FinitePoset::chain(2);
        assert!(!l_regular(&c, c.full()));
    }
}
