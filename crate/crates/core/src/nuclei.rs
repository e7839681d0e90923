//! Nuclei on the finite frame `ClopUp(X)` and their nuclear subsets.
//!
//! On a finite space every subset is nuclear and `N ↦ j_N` is a bijection
//! onto all nuclei, reversing inclusion. A nucleus is kept as an explicit
//! table over every upset.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::birkhoff::{double_pseudocomplement, implies, same_space};
use crate::error::{Error, Result};
use crate::poset::{FinitePoset, PointSet};

/// A validated nucleus, stored as its full table.
#[derive(Clone, Debug)]
pub struct Nucleus {
    space: Arc<FinitePoset>,
    table: BTreeMap<PointSet, PointSet>,
}

impl PartialEq for Nucleus {
    fn eq(&self, o: &Self) -> bool {
        same_space(&self.space, &o.space) && self.table == o.table
    }
}

impl Nucleus {
    pub fn space(&self) -> &Arc<FinitePoset> {
        &self.space
    }

    pub fn table(&self) -> &BTreeMap<PointSet, PointSet> {
        &self.table
    }

    pub fn apply(&self, u: PointSet) -> Result<PointSet> {
        self.table
            .get(&u)
            .copied()
            .ok_or_else(|| Error::NotAnUpset(self.space.format_set(u)))
    }

    fn at(&self, u: PointSet) -> PointSet {
        self.table[&u]
    }

    /// The fixpoint set `j[L]`, in upset enumeration order.
    pub fn fixpoints(&self) -> Vec<PointSet> {
        self.space
            .enumerate_upsets()
            .into_iter()
            .filter(|&u| self.at(u) == u)
            .collect()
    }

    /// Pointwise order `j ≤ k`.
    pub fn pointwise_leq(&self, other: &Nucleus) -> bool {
        self.table.iter().all(|(u, &ju)| ju.is_subset(other.at(*u)))
    }
}

/// Validates a raw table. Axioms are checked in upset enumeration order so
/// the reported witness is deterministic.
pub fn validate_nucleus(space: Arc<FinitePoset>, raw: BTreeMap<PointSet, PointSet>) -> Result<Nucleus> {
    let upsets = space.enumerate_upsets();
    let f = |s| space.format_set(s);
    if raw.len() != upsets.len() {
        if let Some(k) = raw.keys().find(|k| !space.is_upset(**k) || !k.is_subset(space.full())) {
            return Err(Error::InvalidTable(format!("key {} is not an upset", f(*k))));
        }
    }
    for &u in &upsets {
        match raw.get(&u) {
            None => return Err(Error::InvalidTable(format!("no entry for {}", f(u)))),
            Some(&v) if !v.is_subset(space.full()) || !space.is_upset(v) => {
                return Err(Error::InvalidTable(format!("image of {} is {}, not an upset", f(u), f(v))))
            }
            _ => {}
        }
    }
    for &u in &upsets {
        if !u.is_subset(raw[&u]) {
            return Err(Error::NotInflationary(f(u)));
        }
    }
    for &u in &upsets {
        let ju = raw[&u];
        if raw[&ju] != ju {
            return Err(Error::NotIdempotent(f(u)));
        }
    }
    for &u in &upsets {
        for &v in &upsets {
            if raw[&u.intersection(v)] != raw[&u].intersection(raw[&v]) {
                return Err(Error::NotMeetPreserving(f(u), f(v)));
            }
        }
    }
    Ok(Nucleus { space, table: raw })
}

/// A subset of the points of a finite space.
#[derive(Clone, Debug)]
pub struct NuclearSet {
    pub space: Arc<FinitePoset>,
    pub members: PointSet,
}

impl PartialEq for NuclearSet {
    fn eq(&self, o: &Self) -> bool {
        same_space(&self.space, &o.space) && self.members == o.members
    }
}

/// Points `x` whose prime filter is fixed by `j⁻¹`: `x ∈ jU ⇒ x ∈ U`.
pub fn nuclear_of_nucleus(j: &Nucleus) -> NuclearSet {
    let space = &j.space;
    let members = (0..space.len())
        .filter(|&x| j.table.iter().all(|(u, ju)| !ju.contains(x) || u.contains(x)))
        .fold(PointSet::EMPTY, PointSet::with);
    NuclearSet {
        space: space.clone(),
        members,
    }
}

/// `j_N U = X ∖ ↓(N ∖ U)`.
pub fn nucleus_of_nuclear(n: &NuclearSet) -> Nucleus {
    let x = &n.space;
    let table = x
        .enumerate_upsets()
        .into_iter()
        .map(|u| (u, x.full().difference(x.down(n.members.difference(u)))))
        .collect();
    Nucleus {
        space: x.clone(),
        table,
    }
}

/// `H_j = ⋂ {U | jU = X}`, asserted equal to `↑N_j`.
pub fn admissible_upset(j: &Nucleus) -> Result<PointSet> {
    let x = &j.space;
    let h = j
        .table
        .iter()
        .filter(|(_, &ju)| ju == x.full())
        .fold(x.full(), |acc, (&u, _)| acc.intersection(u));
    let expected = x.up(nuclear_of_nucleus(j).members);
    if h != expected {
        return Err(Error::invariant(
            "admissible upset is the up-closure of the nuclear set",
            format!("H = {}, ↑N = {}", x.format_set(h), x.format_set(expected)),
        ));
    }
    Ok(h)
}

/// `U ↦ U**`, asserted to have nuclear set `max X`.
pub fn double_negation(space: &Arc<FinitePoset>) -> Result<Nucleus> {
    let table = space
        .enumerate_upsets()
        .into_iter()
        .map(|u| (u, double_pseudocomplement(space, u)))
        .collect();
    let j = validate_nucleus(space.clone(), table)?;
    let n = nuclear_of_nucleus(&j).members;
    let max = space.maximal(space.full());
    if n != max {
        return Err(Error::invariant(
            "double negation has nuclear set max X",
            format!("N = {}, max X = {}", space.format_set(n), space.format_set(max)),
        ));
    }
    Ok(j)
}

/// `true` when `s` is a sublocale of `ClopUp(X)`: closed under meets
/// (including the empty meet `X`) and under `a → s` for every upset `a`.
pub fn is_sublocale(space: &FinitePoset, s: &[PointSet]) -> bool {
    let contains = |u: PointSet| s.contains(&u);
    contains(space.full())
        && s.iter().all(|&a| s.iter().all(|&b| contains(a.intersection(b))))
        && space
            .enumerate_upsets()
            .into_iter()
            .all(|a| s.iter().all(|&t| contains(implies(space, a, t))))
}

/// The ** fixpoints, asserted to form a sublocale.
pub fn booleanization(space: &Arc<FinitePoset>) -> Result<Vec<PointSet>> {
    let fix = double_negation(space)?.fixpoints();
    if !is_sublocale(space, &fix) {
        return Err(Error::invariant(
            "Booleanization is a sublocale",
            format!("{:?}", fix.iter().map(|&u| space.format_set(u)).collect::<Vec<_>>()),
        ));
    }
    Ok(fix)
}

/// `j_S(U) = ⋀ {s ∈ S | U ⊆ s}`; the meet of upsets is their intersection.
pub fn nucleus_of_sublocale(space: &Arc<FinitePoset>, s: &[PointSet]) -> Result<Nucleus> {
    let table = space
        .enumerate_upsets()
        .into_iter()
        .map(|u| {
            let v = s
                .iter()
                .filter(|t| u.is_subset(**t))
                .fold(space.full(), |acc, &t| acc.intersection(t));
            (u, v)
        })
        .collect();
    validate_nucleus(space.clone(), table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Density {
    pub dense: bool,
    pub cofinal: bool,
}

/// `dense = (j∅ = ∅)`, `cofinal = (max X ⊆ N_j)`, asserted equal.
pub fn density_check(j: &Nucleus) -> Result<Density> {
    let x = &j.space;
    let dense = j.at(PointSet::EMPTY).is_empty();
    let cofinal = x.maximal(x.full()).is_subset(nuclear_of_nucleus(j).members);
    if dense != cofinal {
        return Err(Error::invariant(
            "dense iff cofinal",
            format!("dense = {dense}, cofinal = {cofinal}"),
        ));
    }
    Ok(Density { dense, cofinal })
}

/// `⋁ N_i = cl ⋃ N_i`, which is the union on a finite space.
pub fn nuclear_join(sets: &[NuclearSet]) -> Result<NuclearSet> {
    let first = sets.first().ok_or(Error::EmptyJoin)?;
    let mut members = PointSet::EMPTY;
    for s in sets {
        if !same_space(&first.space, &s.space) {
            return Err(Error::SpaceMismatch);
        }
        members = members.union(s.members);
    }
    Ok(NuclearSet {
        space: first.space.clone(),
        members,
    })
}

/// All nuclei of a finite frame, one per subset of points, in the order of
/// the subsets' bit patterns.
pub fn all_nuclei(space: &Arc<FinitePoset>) -> Vec<(PointSet, Nucleus)> {
    space
        .full()
        .subsets()
        .map(|n| {
            let ns = NuclearSet {
                space: space.clone(),
                members: n,
            };
            (n, nucleus_of_nuclear(&ns))
        })
        .collect()
}

/// JSON nucleus format: pairs `[U, jU]` of upsets given as label lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NucleusJson(pub Vec<(Vec<String>, Vec<String>)>);

impl NucleusJson {
    pub fn build(&self, space: &Arc<FinitePoset>) -> Result<Nucleus> {
        let mut raw = BTreeMap::new();
        for (u, v) in &self.0 {
            let u = space.set_of_labels(u)?;
            let v = space.set_of_labels(v)?;
            if raw.insert(u, v).is_some() {
                return Err(Error::InvalidTable(format!("duplicate entry for {}", space.format_set(u))));
            }
        }
        validate_nucleus(space.clone(), raw)
    }

    pub fn from_nucleus(j: &Nucleus) -> Self {
        let x = &j.space;
        NucleusJson(
            x.enumerate_upsets()
                .into_iter()
                .map(|u| (x.labels_of(u), x.labels_of(j.at(u))))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> Arc<FinitePoset> {
        Arc::new(FinitePoset::chain(2))
    }

    fn table(space: &FinitePoset, f: impl Fn(PointSet) -> PointSet) -> BTreeMap<PointSet, PointSet> {
        space.enumerate_upsets().into_iter().map(|u| (u, f(u))).collect()
    }

    fn nuclear(space: &Arc<FinitePoset>, m: PointSet) -> NuclearSet {
        NuclearSet { space: space.clone(), members: m }
    }

    #[test]
    fn validate_examples() {
        let c = chain2();
        assert!(validate_nucleus(c.clone(), table(&c, |u| u)).is_ok());
        let top = c.full();
        assert!(validate_nucleus(c.clone(), table(&c, |_| top)).is_ok());
        let swap = table(&c, |u| {
            if u.is_empty() {
                top
            } else if u == top {
                PointSet::EMPTY
            } else {
                u
            }
        });
        assert!(matches!(validate_nucleus(c.clone(), swap), Err(Error::NotInflationary(w)) if w == "{x1,x2}"));
        let mut missing = table(&c, |u| u);
        missing.remove(&PointSet::EMPTY);
        assert!(matches!(validate_nucleus(c, missing), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn not_idempotent_and_not_meet_preserving() {
        let c = Arc::new(FinitePoset::chain(3));
        // ∅ ↦ {x3}, {x3} ↦ {x2,x3}: inflationary but not idempotent.
        let x3 = PointSet::singleton(2);
        let x23 = PointSet::from_indices([1, 2]);
        let t = table(&c, |u| if u.is_empty() { x3 } else if u == x3 { x23 } else { u });
        assert!(matches!(validate_nucleus(c, t), Err(Error::NotIdempotent(_))));
        let a = Arc::new(FinitePoset::antichain(2));
        // {a} ↦ X, {b} ↦ X, ∅ ↦ ∅ breaks {a} ∩ {b}.
        let full = a.full();
        let t = table(&a, |u| if u.is_empty() { u } else { full });
        assert!(matches!(validate_nucleus(a, t), Err(Error::NotMeetPreserving(..))));
    }

    #[test]
    fn nuclear_set_examples() {
        let c = chain2();
        let dn = double_negation(&c).unwrap();
        assert_eq!(nuclear_of_nucleus(&dn).members, PointSet::singleton(1));
        let id = validate_nucleus(c.clone(), table(&c, |u| u)).unwrap();
        assert_eq!(nuclear_of_nucleus(&id).members, c.full());
        let top = validate_nucleus(c.clone(), table(&c, |_| c.full())).unwrap();
        assert_eq!(nuclear_of_nucleus(&top).members, PointSet::EMPTY);
    }

    #[test]
    fn nucleus_of_nuclear_examples() {
        let c = chain2();
        let j = nucleus_of_nuclear(&nuclear(&c, PointSet::singleton(0)));
        assert_eq!(j.apply(PointSet::EMPTY).unwrap(), PointSet::singleton(1));
        let id = nucleus_of_nuclear(&nuclear(&c, c.full()));
        assert!(id.table().iter().all(|(u, v)| u == v));
        let top = nucleus_of_nuclear(&nuclear(&c, PointSet::EMPTY));
        assert!(top.table().values().all(|v| *v == c.full()));
        for (_, j) in all_nuclei(&c) {
            validate_nucleus(c.clone(), j.table().clone()).unwrap();
        }
    }

    #[test]
    fn admissible_examples() {
        let c = chain2();
        assert_eq!(admissible_upset(&double_negation(&c).unwrap()).unwrap(), PointSet::singleton(1));
        let id = nucleus_of_nuclear(&nuclear(&c, c.full()));
        assert_eq!(admissible_upset(&id).unwrap(), c.full());
        let top = nucleus_of_nuclear(&nuclear(&c, PointSet::EMPTY));
        assert_eq!(admissible_upset(&top).unwrap(), PointSet::EMPTY);
    }

    #[test]
    fn double_negation_examples() {
        let c = chain2();
        let dn = double_negation(&c).unwrap();
        assert_eq!(dn.apply(PointSet::singleton(1)).unwrap(), c.full());
        assert_eq!(dn.apply(PointSet::EMPTY).unwrap(), PointSet::EMPTY);
        let a = Arc::new(FinitePoset::antichain(2));
        let dn = double_negation(&a).unwrap();
        assert_eq!(dn.apply(PointSet::singleton(0)).unwrap(), PointSet::singleton(0));
    }

    #[test]
    fn booleanization_examples() {
        let c = chain2();
        assert_eq!(booleanization(&c).unwrap(), vec![PointSet::EMPTY, c.full()]);
        let a = Arc::new(FinitePoset::antichain(2));
        assert_eq!(booleanization(&a).unwrap().len(), 4);
        let c3 = Arc::new(FinitePoset::chain(3));
        assert_eq!(booleanization(&c3).unwrap(), vec![PointSet::EMPTY, c3.full()]);
    }

    #[test]
    fn density_examples() {
        let c = chain2();
        let both = Density { dense: true, cofinal: true };
        assert_eq!(density_check(&double_negation(&c).unwrap()).unwrap(), both);
        let j = nucleus_of_nuclear(&nuclear(&c, PointSet::singleton(0)));
        assert_eq!(density_check(&j).unwrap(), Density { dense: false, cofinal: false });
        let id = nucleus_of_nuclear(&nuclear(&c, c.full()));
        assert_eq!(density_check(&id).unwrap(), both);
    }

    #[test]
    fn join_examples() {
        let c = chain2();
        let a = nuclear(&c, PointSet::singleton(0));
        let b = nuclear(&c, PointSet::singleton(1));
        assert_eq!(nuclear_join(&[a.clone(), b]).unwrap().members, c.full());
        assert_eq!(nuclear_join(&[a.clone(), nuclear(&c, PointSet::EMPTY)]).unwrap(), a);
        let other = nuclear(&Arc::new(FinitePoset::antichain(2)), PointSet::EMPTY);
        assert!(matches!(nuclear_join(&[a, other]), Err(Error::SpaceMismatch)));
        assert!(matches!(nuclear_join(&[]), Err(Error::EmptyJoin)));
    }

    #[test]
    fn sublocale_round_trip() {
        let v = Arc::new(crate::poset::build_poset(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap());
        for (_, j) in all_nuclei(&v) {
            let s = j.fixpoints();
            assert!(is_sublocale(&v, &s));
            assert_eq!(nucleus_of_sublocale(&v, &s).unwrap(), j);
        }
    }

    #[test]
    fn json_round_trip() {
        let c = chain2();
        let dn = double_negation(&c).unwrap();
        let text = serde_json::to_string(&NucleusJson::from_nucleus(&dn)).unwrap();
        assert_eq!(text, r#"[[[],[]],[["x2"],["x1","x2"]],[["x1","x2"],["x1","x2"]]]"#);
        let back: NucleusJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.build(&c).unwrap(), dn);
    }
}
