//! Finite Priestley duality.
//!
//! A finite bounded distributive lattice is recovered from its poset of prime
//! filters as the lattice of upsets. Each prime filter of a finite lattice is
//! the principal filter of a join-irreducible element, and the dual order is
//! filter inclusion, so `↑j ⊆ ↑k` iff `k <= j`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{build_poset, FinitePoset, PointSet};

/// A finite bounded distributive lattice with explicit operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistLattice {
    labels: Vec<String>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl DistLattice {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `j` is join-irreducible iff it is not the bottom and the join of the
    /// elements strictly below it stays strictly below it.
    pub fn is_join_irreducible(&self, j: usize) -> bool {
        if j == self.bottom {
            return false;
        }
        let below = (0..self.len())
            .filter(|&c| c != j && self.leq(c, j))
            .fold(self.bottom, |acc, c| self.join(acc, c));
        below != j
    }

    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.is_join_irreducible(j)).collect()
    }

    /// The order of the lattice as a poset, when it has at most 64 elements.
    pub fn to_poset(&self) -> Result<FinitePoset> {
        FinitePoset::from_relation(self.labels.clone(), |a, b| self.leq(a, b))
    }

    pub fn to_json(&self) -> Result<LatticeJson> {
        let p = self.to_poset()?.to_json();
        Ok(LatticeJson {
            points: p.points,
            covers: p.covers,
            bottom: Some(self.labels[self.bottom].clone()),
            top: Some(self.labels[self.top].clone()),
        })
    }
}

/// Checks that `p` is a bounded distributive lattice and fills its tables.
pub fn validate_lattice(p: &FinitePoset) -> Result<DistLattice> {
    let n = p.len();
    let full = p.full();
    let bottom = (0..n).find(|&x| p.up_of(x) == full).ok_or(Error::Unbounded)?;
    let top = (0..n).find(|&x| p.down_of(x) == full).ok_or(Error::Unbounded)?;
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let lower = p.down_of(a).intersection(p.down_of(b));
            let upper = p.up_of(a).intersection(p.up_of(b));
            let m = lower.iter().find(|&m| lower.is_subset(p.down_of(m)));
            let j = upper.iter().find(|&j| upper.is_subset(p.up_of(j)));
            match (m, j) {
                (Some(m), Some(j)) => {
                    meet[a * n + b] = m;
                    join[a * n + b] = j;
                }
                _ => {
                    return Err(Error::NotALattice(
                        p.label(a).to_string(),
                        p.label(b).to_string(),
                    ))
                }
            }
        }
    }
    let d = DistLattice {
        labels: p.labels().to_vec(),
        meet,
        join,
        bottom,
        top,
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = d.meet(a, d.join(b, c));
                let rhs = d.join(d.meet(a, b), d.meet(a, c));
                if lhs != rhs {
                    return Err(Error::NotDistributive(
                        d.labels[a].clone(),
                        d.labels[b].clone(),
                        d.labels[c].clone(),
                    ));
                }
            }
        }
    }
    Ok(d)
}

/// An upset of a finite space, tied to that space.
#[derive(Clone, Debug)]
pub struct ClopenUpset {
    pub space: Arc<FinitePoset>,
    pub members: PointSet,
}

impl PartialEq for ClopenUpset {
    fn eq(&self, o: &Self) -> bool {
        same_space(&self.space, &o.space) && self.members == o.members
    }
}

impl ClopenUpset {
    pub fn new(space: Arc<FinitePoset>, members: PointSet) -> Result<Self> {
        if !members.is_subset(space.full()) || !space.is_upset(members) {
            return Err(Error::NotAnUpset(space.format_set(members)));
        }
        Ok(ClopenUpset { space, members })
    }
}

pub(crate) fn same_space(a: &Arc<FinitePoset>, b: &Arc<FinitePoset>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// The dual space of a lattice together with the lattice element whose
/// principal filter each point is.
#[derive(Clone, Debug)]
pub struct PriestleyDual {
    pub space: Arc<FinitePoset>,
    pub generators: Vec<usize>,
}

/// The poset of prime filters ordered by inclusion. Points carry the label of
/// the join-irreducible generating them.
pub fn priestley_dual(d: &DistLattice) -> Result<PriestleyDual> {
    let gens = d.join_irreducibles();
    let labels = gens.iter().map(|&j| d.label(j).to_string()).collect();
    let space = FinitePoset::from_relation(labels, |p, q| d.leq(gens[q], gens[p]))?;
    Ok(PriestleyDual {
        space: Arc::new(space),
        generators: gens,
    })
}

impl PriestleyDual {
    /// The prime filters containing `a`.
    pub fn stone_map(&self, d: &DistLattice, a: usize) -> Result<ClopenUpset> {
        if a >= d.len() {
            return Err(Error::UnknownElement(format!("#{a}")));
        }
        let members = PointSet::from_indices(
            self.generators
                .iter()
                .enumerate()
                .filter(|(_, &j)| d.leq(j, a))
                .map(|(p, _)| p),
        );
        ClopenUpset::new(self.space.clone(), members)
    }
}

/// Convenience form that recomputes the dual.
pub fn stone_map(d: &DistLattice, a: &str) -> Result<ClopenUpset> {
    let i = d.index_of(a)?;
    priestley_dual(d)?.stone_map(d, i)
}

/// The frame of upsets of a finite space, with the upsets themselves.
#[derive(Clone, Debug)]
pub struct UpsetLattice {
    pub lattice: DistLattice,
    pub upsets: Vec<PointSet>,
    index: HashMap<PointSet, usize>,
}

impl UpsetLattice {
    pub fn index_of(&self, u: PointSet) -> Option<usize> {
        self.index.get(&u).copied()
    }
}

/// `ClopUp(X)` ordered by inclusion; every upset of a finite space is clopen.
pub fn clopen_upset_lattice(x: &FinitePoset) -> UpsetLattice {
    let upsets = x.enumerate_upsets();
    let index: HashMap<PointSet, usize> = upsets.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let n = upsets.len();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for (a, &u) in upsets.iter().enumerate() {
        for (b, &v) in upsets.iter().enumerate() {
            meet[a * n + b] = index[&u.intersection(v)];
            join[a * n + b] = index[&u.union(v)];
        }
    }
    let labels = upsets.iter().map(|&u| x.format_set(u)).collect();
    UpsetLattice {
        lattice: DistLattice {
            labels,
            meet,
            join,
            bottom: index[&PointSet::EMPTY],
            top: index[&x.full()],
        },
        upsets,
        index,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeytingOp {
    Implies,
    Pseudocomplement,
}

/// `U* = X ∖ ↓U`; `U → V = X ∖ ↓(U ∖ V)`. `V` is ignored for the
/// pseudocomplement.
pub fn heyting(x: &Arc<FinitePoset>, u: &ClopenUpset, v: &ClopenUpset, op: HeytingOp) -> Result<ClopenUpset> {
    if !same_space(x, &u.space) || !same_space(x, &v.space) {
        return Err(Error::SpaceMismatch);
    }
    let members = match op {
        HeytingOp::Implies => implies(x, u.members, v.members),
        HeytingOp::Pseudocomplement => pseudocomplement(x, u.members),
    };
    ClopenUpset::new(x.clone(), members)
}

pub fn pseudocomplement(x: &FinitePoset, u: PointSet) -> PointSet {
    x.full().difference(x.down(u))
}

pub fn implies(x: &FinitePoset, u: PointSet, v: PointSet) -> PointSet {
    x.full().difference(x.down(u.difference(v)))
}

pub fn double_pseudocomplement(x: &FinitePoset, u: PointSet) -> PointSet {
    pseudocomplement(x, pseudocomplement(x, u))
}

/// Frame join of a family of upsets: the closure of the union, which is the
/// union itself on a finite space.
pub fn frame_join(x: &FinitePoset, family: &[PointSet]) -> PointSet {
    family
        .iter()
        .fold(PointSet::EMPTY, |a, &u| a.union(u))
        .intersection(x.full())
}

/// Frame meet: `X ∖ ↓(X ∖ int ⋂ U_i)`, with the empty meet equal to `X`.
pub fn frame_meet(x: &FinitePoset, family: &[PointSet]) -> PointSet {
    let inter = family.iter().fold(x.full(), |a, &u| a.intersection(u));
    x.full().difference(x.down(x.full().difference(inter)))
}

/// JSON lattice format: the poset format plus optional declared bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub points: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<String>,
}

impl LatticeJson {
    pub fn build(&self) -> Result<DistLattice> {
        let p = build_poset(&self.points, &self.covers)?;
        let d = validate_lattice(&p)?;
        for (which, declared, actual) in [
            ("bottom", &self.bottom, d.bottom),
            ("top", &self.top, d.top),
        ] {
            if let Some(l) = declared {
                if d.index_of(l)? != actual {
                    return Err(Error::BoundMismatch {
                        which,
                        declared: l.clone(),
                    });
                }
            }
        }
        Ok(d)
    }
}

/// Result of comparing `ClopUp(dual D)` with `D` through the Stone map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoundTrip {
    Isomorphic,
    Fails(String),
}

/// Checks that `a ↦ φ(a)` is a lattice isomorphism `D → ClopUp(X_D)`.
pub fn check_round_trip(d: &DistLattice) -> Result<RoundTrip> {
    let dual = priestley_dual(d)?;
    let frame = clopen_upset_lattice(&dual.space);
    let mut phi = Vec::with_capacity(d.len());
    for a in 0..d.len() {
        let u = dual.stone_map(d, a)?.members;
        match frame.index_of(u) {
            Some(i) => phi.push(i),
            None => return Ok(RoundTrip::Fails(format!("φ({}) is not an upset", d.label(a)))),
        }
    }
    let mut hit = vec![false; frame.upsets.len()];
    for &i in &phi {
        if std::mem::replace(&mut hit[i], true) {
            return Ok(RoundTrip::Fails(format!("φ is not injective at {}", frame.lattice.label(i))));
        }
    }
    if let Some(i) = hit.iter().position(|h| !h) {
        return Ok(RoundTrip::Fails(format!("{} is not in the image of φ", frame.lattice.label(i))));
    }
    let f = &frame.lattice;
    for a in 0..d.len() {
        for b in 0..d.len() {
            if phi[d.meet(a, b)] != f.meet(phi[a], phi[b])
                || phi[d.join(a, b)] != f.join(phi[a], phi[b])
                || d.leq(a, b) != f.leq(phi[a], phi[b])
            {
                return Ok(RoundTrip::Fails(format!(
                    "φ does not commute with the tables at ({}, {})",
                    d.label(a),
                    d.label(b)
                )));
            }
        }
    }
    if phi[d.bottom] != f.bottom || phi[d.top] != f.top {
        return Ok(RoundTrip::Fails("φ does not preserve bounds".into()));
    }
    Ok(RoundTrip::Isomorphic)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> DistLattice {
        let p = build_poset(&["0", "a", "1"], &[("0", "a"), ("a", "1")]).unwrap();
        validate_lattice(&p).unwrap()
    }

    fn boolean4() -> DistLattice {
        let p = build_poset(
            &["0", "p", "q", "1"],
            &[("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")],
        )
        .unwrap();
        validate_lattice(&p).unwrap()
    }

    /// Prime filters found by brute force over all subsets of the lattice.
    fn prime_filters(d: &DistLattice) -> Vec<Vec<usize>> {
        let n = d.len();
        let mut out = Vec::new();
        for mask in 0u64..(1 << n) {
            let inf = |a: usize| mask >> a & 1 == 1;
            let proper = inf(d.top()) && !inf(d.bottom());
            let upward = (0..n).all(|a| !inf(a) || (0..n).all(|b| !d.leq(a, b) || inf(b)));
            let meets = (0..n).all(|a| (0..n).all(|b| !(inf(a) && inf(b)) || inf(d.meet(a, b))));
            let prime = (0..n).all(|a| (0..n).all(|b| !inf(d.join(a, b)) || inf(a) || inf(b)));
            if proper && upward && meets && prime {
                out.push((0..n).filter(|&a| inf(a)).collect());
            }
        }
        out
    }

    #[test]
    fn validate_examples() {
        assert_eq!(chain3().len(), 3);
        assert_eq!(boolean4().len(), 4);
        let m3 = build_poset(
            &["0", "x", "y", "z", "1"],
            &[("0", "x"), ("0", "y"), ("0", "z"), ("x", "1"), ("y", "1"), ("z", "1")],
        )
        .unwrap();
        assert!(matches!(validate_lattice(&m3), Err(Error::NotDistributive(..))));
        let n5 = build_poset(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .unwrap();
        assert!(matches!(validate_lattice(&n5), Err(Error::NotDistributive(..))));
        let anti = FinitePoset::antichain(2);
        assert!(matches!(validate_lattice(&anti), Err(Error::Unbounded)));
        let bowtie = build_poset(
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"),
                ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1"),
            ],
        )
        .unwrap();
        assert!(matches!(validate_lattice(&bowtie), Err(Error::NotALattice(..))));
    }

    #[test]
    fn dual_examples() {
        let d = chain3();
        let x = priestley_dual(&d).unwrap();
        assert_eq!(x.space.len(), 2);
        // The filter ↑1 = {1} sits below ↑a = {a,1}.
        let pa = x.space.index_of("a").unwrap();
        let p1 = x.space.index_of("1").unwrap();
        assert!(x.space.leq(p1, pa) && !x.space.leq(pa, p1));
        assert_eq!(stone_map(&d, "a").unwrap().members, PointSet::singleton(pa));
        assert_eq!(stone_map(&d, "1").unwrap().members, x.space.full());
        assert_eq!(stone_map(&d, "0").unwrap().members, PointSet::EMPTY);
        assert!(matches!(stone_map(&d, "nope"), Err(Error::UnknownElement(_))));

        let b = priestley_dual(&boolean4()).unwrap();
        assert_eq!(b.space.len(), 2);
        assert!(b.space.covers().is_empty());

        let two = validate_lattice(&FinitePoset::chain(2)).unwrap();
        assert_eq!(priestley_dual(&two).unwrap().space.len(), 1);
    }

    #[test]
    fn dual_points_are_the_prime_filters() {
        for d in [chain3(), boolean4()] {
            let x = priestley_dual(&d).unwrap();
            let mut from_dual: Vec<Vec<usize>> = x
                .generators
                .iter()
                .map(|&j| (0..d.len()).filter(|&a| d.leq(j, a)).collect())
                .collect();
            let mut brute = prime_filters(&d);
            from_dual.sort();
            brute.sort();
            assert_eq!(from_dual, brute);
        }
    }

    #[test]
    fn upset_lattice_examples() {
        let l = clopen_upset_lattice(&FinitePoset::chain(2));
        assert_eq!(l.upsets.len(), 3);
        let as_chain = l.lattice.to_poset().unwrap();
        assert_eq!(as_chain.covers().len(), 2);
        let b = clopen_upset_lattice(&FinitePoset::antichain(2));
        assert_eq!(b.lattice.join_irreducibles().len(), 2);
        assert_eq!(clopen_upset_lattice(&FinitePoset::antichain(1)).upsets.len(), 2);
    }

    #[test]
    fn heyting_examples() {
        let c = Arc::new(FinitePoset::chain(2));
        let up = |s| ClopenUpset::new(c.clone(), s).unwrap();
        let x2 = up(PointSet::singleton(1));
        let empty = up(PointSet::EMPTY);
        let star = heyting(&c, &x2, &empty, HeytingOp::Pseudocomplement).unwrap();
        assert_eq!(star.members, PointSet::EMPTY);
        let star = heyting(&c, &empty, &empty, HeytingOp::Pseudocomplement).unwrap();
        assert_eq!(star.members, c.full());

        let a2 = Arc::new(FinitePoset::antichain(2));
        let a = ClopenUpset::new(a2.clone(), PointSet::singleton(0)).unwrap();
        let b = ClopenUpset::new(a2.clone(), PointSet::singleton(1)).unwrap();
        assert_eq!(heyting(&a2, &a, &b, HeytingOp::Implies).unwrap().members, PointSet::singleton(1));
        assert!(matches!(
            heyting(&c, &a, &b, HeytingOp::Implies),
            Err(Error::SpaceMismatch)
        ));
    }

    #[test]
    fn lattice_json_bounds() {
        let j: LatticeJson = serde_json::from_str(
            r#"{"points":["0","a","1"],"covers":[["0","a"],["a","1"]],"bottom":"0","top":"1"}"#,
        )
        .unwrap();
        assert_eq!(j.build().unwrap().len(), 3);
        let bad = LatticeJson { bottom: Some("a".into()), ..j };
        assert!(matches!(bad.build(), Err(Error::BoundMismatch { .. })));
    }

    #[test]
    fn round_trip_small() {
        assert_eq!(check_round_trip(&chain3()).unwrap(), RoundTrip::Isomorphic);
        assert_eq!(check_round_trip(&boolean4()).unwrap(), RoundTrip::Isomorphic);
    }
}
