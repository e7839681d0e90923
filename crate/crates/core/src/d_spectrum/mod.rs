//! The d-nucleus and the spectrum of maximal d-elements, over any
//! [`PriestleyEngine`].
//!
//! For a clopen upset `U`:
//! - `core U` is the union of the clopen Scott upsets inside `U`;
//! - `core_d U = {x | ↑x ⊆ ↓ core U}`, which is `(core U)**` with `V* = X ∖ ↓V`;
//! - `d U = cl core_d U`;
//! - `Y_d` is the localic part of the nuclear set of `d`, and the maximal
//!   d-upsets are exactly `X ∖ ↓y` for `y ∈ min Y_d`.
//!
//! Operations that carry a consistency assertion return
//! [`Error::Invariant`] when it fails; that always indicates a bug.

pub mod engine;
pub mod finite;
pub mod report;

pub use engine::{PriestleyEngine, TopologyClass};
pub use finite::FiniteEngine;
pub use report::{spectrum_report, AnalysisReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn require_clopen_upset<E: PriestleyEngine>(e: &E, u: &E::Set) -> Result<()> {
    if e.is_upset(u) && e.is_clopen(u) {
        Ok(())
    } else {
        Err(Error::NotClopenUpset(e.describe(u)))
    }
}

pub fn localic_points<E: PriestleyEngine>(e: &E) -> E::Set {
    e.localic_part()
}

/// A closed upset is Scott when its minimal points are localic.
pub fn is_scott_upset<E: PriestleyEngine>(e: &E, f: &E::Set) -> Result<bool> {
    if !e.is_upset(f) {
        return Err(Error::NotAnUpset(e.describe(f)));
    }
    if !e.is_closed(f) {
        return Err(Error::NotClosed(e.describe(f)));
    }
    Ok(e.is_subset(&e.minimal(f), &e.localic_part()))
}

/// Scott-ness of an arbitrary set; false unless it is a closed upset.
pub fn scott_or_false<E: PriestleyEngine>(e: &E, f: &E::Set) -> bool {
    is_scott_upset(e, f).unwrap_or(false)
}

pub fn is_clop_scott<E: PriestleyEngine>(e: &E, f: &E::Set) -> bool {
    e.is_open(f) && scott_or_false(e, f)
}

pub fn core<E: PriestleyEngine>(e: &E, u: &E::Set) -> Result<E::Set> {
    require_clopen_upset(e, u)?;
    e.core(u)
}

/// `V* = X ∖ ↓V`.
pub fn pseudocomplement<E: PriestleyEngine>(e: &E, v: &E::Set) -> E::Set {
    e.complement(&e.down(v))
}

pub fn double_pseudocomplement<E: PriestleyEngine>(e: &E, v: &E::Set) -> E::Set {
    pseudocomplement(e, &pseudocomplement(e, v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameClass {
    pub algebraic: bool,
    pub arithmetic: bool,
}

/// Algebraic: `cl core U = U`. Arithmetic: `core(U ∩ V) = core U ∩ core V`.
/// Exhaustive on finite engines, checked on the sample otherwise.
pub fn classify_frame<E: PriestleyEngine>(e: &E) -> Result<FrameClass> {
    let sample = e.all_clopen_upsets().unwrap_or_else(|| e.sample_clopen_upsets());
    let cores: Vec<E::Set> = sample.iter().map(|u| e.core(u)).collect::<Result<_>>()?;
    let mut algebraic = true;
    for (u, c) in sample.iter().zip(&cores) {
        algebraic &= e.closure(c)? == *u;
    }
    let mut arithmetic = true;
    let pairs: Box<dyn Iterator<Item = (usize, usize)>> = if e.is_finite() {
        let n = sample.len();
        Box::new((0..n).flat_map(move |i| (0..n).map(move |j| (i, j))))
    } else {
        let n = sample.len();
        Box::new((0..n).map(move |i| (i, (i * 7 + 3) % n.max(1))))
    };
    for (i, j) in pairs {
        let meet = e.meet(&sample[i], &sample[j]);
        arithmetic &= e.core(&meet)? == e.meet(&cores[i], &cores[j]);
    }
    Ok(FrameClass {
        algebraic,
        arithmetic,
    })
}

/// `core_d U = {x | ↑x ⊆ ↓ core U} = X ∖ ↓(X ∖ ↓ core U)`.
pub fn core_d<E: PriestleyEngine>(e: &E, u: &E::Set) -> Result<E::Set> {
    let c = core(e, u)?;
    Ok(double_pseudocomplement(e, &c))
}

/// `d U = cl core_d U`. On engines that can evaluate the defining union the
/// two are compared, and on finite engines `d U = U**` is asserted too.
pub fn d_apply<E: PriestleyEngine>(e: &E, u: &E::Set) -> Result<E::Set> {
    let d = e.closure(&core_d(e, u)?)?;
    if let Some(lit) = e.d_by_definition(u) {
        if lit != d {
            return Err(Error::invariant(
                "d is inductive",
                format!("U = {}: cl core_d U = {}, defining union = {}", e.describe(u), e.describe(&d), e.describe(&lit)),
            ));
        }
    }
    if e.is_finite() {
        let dn = double_pseudocomplement(e, u);
        if dn != d {
            return Err(Error::invariant(
                "finite d is double negation",
                format!("U = {}: d U = {}, U** = {}", e.describe(u), e.describe(&d), e.describe(&dn)),
            ));
        }
    }
    Ok(d)
}

/// Condition: `{y} = max(↓x ∩ Y)` for some maximal class `x` in the catalog.
pub fn condition_four<E: PriestleyEngine>(e: &E, y: &E::Point) -> bool {
    let loc = e.localic_part();
    let maxes = e.max_part();
    let target = e.singleton(y);
    e.catalog()
        .iter()
        .filter(|x| e.contains(&maxes, x))
        .any(|x| e.maximal(&e.meet(&e.down(&e.singleton(x)), &loc)) == target)
}

/// `Y_d`, cross-checked against every independent characterisation the
/// engine offers and, on the catalog, against the max-witness condition.
pub fn yd_set<E: PriestleyEngine>(e: &E) -> Result<E::Set> {
    let yd = e.yd()?;
    if let Some(conds) = e.yd_all_conditions() {
        for (i, c) in conds.iter().enumerate() {
            if *c != yd {
                return Err(Error::invariant(
                    "characterisations of Y_d agree",
                    format!("condition {} gives {}, Y_d = {}", i + 1, e.describe(c), e.describe(&yd)),
                ));
            }
        }
    }
    let loc = e.localic_part();
    for p in e.catalog() {
        if e.contains(&loc, &p) && e.is_single_point(&p) && condition_four(e, &p) != e.contains(&yd, &p) {
            return Err(Error::invariant(
                "Y_d agrees with the max-witness condition",
                format!("at {}", e.point_label(&p)),
            ));
        }
    }
    Ok(yd)
}

pub fn yd_membership<E: PriestleyEngine>(e: &E, y: &E::Point) -> Result<bool> {
    if !e.contains(&e.localic_part(), y) || !e.is_single_point(y) {
        return Err(Error::NotLocalic(e.point_label(y)));
    }
    let member = e.contains(&yd_set(e)?, y);
    if member != condition_four(e, y) {
        return Err(Error::invariant(
            "Y_d agrees with the max-witness condition",
            format!("at {}", e.point_label(y)),
        ));
    }
    Ok(member)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinYd<S> {
    pub set: S,
    pub topology: TopologyClass,
}

pub fn min_yd<E: PriestleyEngine>(e: &E) -> Result<MinYd<E::Set>> {
    let yd = yd_set(e)?;
    let set = e.minimal(&yd);
    let topology = e.trace_topology(&set);
    Ok(MinYd { set, topology })
}

/// `N_d = cl Y_d`.
pub fn n_d<E: PriestleyEngine>(e: &E) -> Result<E::Set> {
    e.closure(&yd_set(e)?)
}

/// A d-upset is a clopen upset `U` with `cl core_d U = U`.
pub fn is_d_upset<E: PriestleyEngine>(e: &E, u: &E::Set) -> Result<bool> {
    Ok(d_apply(e, u)? == *u)
}

/// `X ∖ ↓y` for each catalog point `y ∈ min Y_d`. On finite engines the
/// family is compared with the maximal proper d-upsets found by search.
pub fn maximal_d_upsets<E: PriestleyEngine>(e: &E) -> Result<Vec<(E::Point, E::Set)>> {
    let min = min_yd(e)?.set;
    let family: Vec<(E::Point, E::Set)> = e
        .catalog()
        .into_iter()
        .filter(|p| e.contains(&min, p))
        .map(|p| {
            let m = e.complement(&e.down(&e.singleton(&p)));
            (p, m)
        })
        .collect();
    for (p, m) in &family {
        if !is_d_upset(e, m)? || *m == e.full() {
            return Err(Error::invariant(
                "X ∖ ↓y is a proper d-upset",
                format!("y = {}", e.point_label(p)),
            ));
        }
    }
    if let Some(all) = e.all_clopen_upsets() {
        let found = maximal_d_upsets_by_search(e, &all)?;
        let ours: Vec<&E::Set> = family.iter().map(|(_, m)| m).collect();
        let same = found.len() == ours.len() && found.iter().all(|m| ours.contains(&m));
        if !same {
            return Err(Error::invariant(
                "maximal d-upsets are the sets X ∖ ↓y",
                format!(
                    "search found [{}]",
                    found.iter().map(|m| e.describe(m)).collect::<Vec<_>>().join(", ")
                ),
            ));
        }
    }
    Ok(family)
}

/// Maximal elements among proper d-upsets, by exhaustive search.
pub fn maximal_d_upsets_by_search<E: PriestleyEngine>(e: &E, all: &[E::Set]) -> Result<Vec<E::Set>> {
    let full = e.full();
    let mut proper = Vec::new();
    for u in all {
        if *u != full && is_d_upset(e, u)? {
            proper.push(u.clone());
        }
    }
    Ok(proper
        .iter()
        .filter(|u| !proper.iter().any(|v| v != *u && e.is_subset(u, v)))
        .cloned()
        .collect())
}

/// `N_ρ = cl min Y_d`.
pub fn rho_nuclear<E: PriestleyEngine>(e: &E) -> Result<E::Set> {
    e.closure(&min_yd(e)?.set)
}

/// `ρ U = X ∖ ↓(N_ρ ∖ U)`. Where the clopen upsets can be listed, this is
/// compared with the defining union `cl ⋃ {V | V ∩ min Y_d ⊆ U}` and with
/// the meet of the maximal d-upsets above `U` (the empty meet being `X`).
pub fn rho_apply<E: PriestleyEngine>(e: &E, u: &E::Set) -> Result<E::Set> {
    require_clopen_upset(e, u)?;
    let n = rho_nuclear(e)?;
    let rho = e.complement(&e.down(&e.diff(&n, u)));
    if let Some(all) = e.all_clopen_upsets() {
        let min = min_yd(e)?.set;
        let mut union = e.empty();
        for v in &all {
            if e.is_subset(&e.meet(v, &min), u) {
                union = e.join(&union, v);
            }
        }
        let by_union = e.closure(&union)?;
        let mut by_meet = e.full();
        for m in maximal_d_upsets_by_search(e, &all)? {
            if e.is_subset(u, &m) {
                by_meet = e.meet(&by_meet, &m);
            }
        }
        if by_union != rho || by_meet != rho {
            return Err(Error::invariant(
                "the three descriptions of rho agree",
                format!(
                    "U = {}: nucleus form {}, union form {}, meet form {}",
                    e.describe(u),
                    e.describe(&rho),
                    e.describe(&by_union),
                    e.describe(&by_meet)
                ),
            ));
        }
    }
    Ok(rho)
}

/// `Z ∩ Y ⊆ ↑(Z ∩ min Y_d)`.
pub fn d_initial_check<E: PriestleyEngine>(e: &E, z: &E::Set) -> Result<bool> {
    let min = min_yd(e)?.set;
    let lhs = e.meet(z, &e.localic_part());
    let rhs = e.up(&e.meet(z, &min));
    Ok(e.is_subset(&lhs, &rhs))
}

/// Max-bounded iff `N_d = cl Y_d` is d-initial.
pub fn max_bounded<E: PriestleyEngine>(e: &E) -> Result<bool> {
    d_initial_check(e, &n_d(e)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitVerdict {
    /// A cofinal clopen Scott upset.
    Witness { set: String },
    /// A reason no cofinal clopen Scott upset exists.
    Refutation { point_class: String, condition: String },
}

impl UnitVerdict {
    pub fn exists(&self) -> bool {
        matches!(self, UnitVerdict::Witness { .. })
    }
}

fn cofinal<E: PriestleyEngine>(e: &E, u: &E::Set) -> bool {
    e.is_subset(&e.max_part(), u)
}

/// Searches for a cofinal clopen Scott upset. Finite engines scan every
/// upset. Otherwise a maximal class with no localic point below refutes
/// existence, since the minimal points below it in a cofinal upset would have
/// to be localic; failing that, `X` and `↑Y_d` are tried as witnesses.
pub fn unit_search<E: PriestleyEngine>(e: &E) -> Result<UnitVerdict> {
    if let Some(all) = e.all_clopen_upsets() {
        for u in &all {
            if cofinal(e, u) && is_clop_scott(e, u) {
                return Ok(UnitVerdict::Witness { set: e.describe(u) });
            }
        }
        return Ok(UnitVerdict::Refutation {
            point_class: String::new(),
            condition: "no upset in the exhaustive scan is a cofinal clopen Scott upset".into(),
        });
    }
    let maxes = e.max_part();
    let loc = e.localic_part();
    for p in e.catalog() {
        if e.contains(&maxes, &p) && e.is_empty(&e.meet(&e.down(&e.singleton(&p)), &loc)) {
            return Ok(UnitVerdict::Refutation {
                point_class: e.point_label(&p),
                condition: format!(
                    "↓{} ∩ Y = ∅ with {} ⊆ max X, so no cofinal upset has its minimal points in Y",
                    e.point_label(&p),
                    e.point_label(&p)
                ),
            });
        }
    }
    for cand in [e.full(), e.up(&yd_set(e)?)] {
        if cofinal(e, &cand) && is_clop_scott(e, &cand) {
            return Ok(UnitVerdict::Witness {
                set: e.describe(&cand),
            });
        }
    }
    Err(Error::invariant("unit search decides", e.space_id()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regularity {
    pub antichain: bool,
    pub max_y_equals_yd: bool,
    pub locally_stone_class: bool,
}

impl Regularity {
    pub fn all(&self) -> bool {
        self.antichain && self.max_y_equals_yd && self.locally_stone_class
    }

    pub fn none(&self) -> bool {
        !self.antichain && !self.max_y_equals_yd && !self.locally_stone_class
    }
}

/// `Y_d` is an antichain; `max Y = Y_d`; `Y_d` is locally Stone. The first
/// two are asserted equivalent, and on finite engines so is direct
/// L-regularity of `N_d`.
pub fn regularity_suite<E: PriestleyEngine>(e: &E) -> Result<Regularity> {
    let yd = yd_set(e)?;
    let antichain = e.is_empty(&e.meet(&yd, &e.strict_up(&yd)));
    let loc = e.localic_part();
    let max_y = e.diff(&loc, &e.strict_down(&loc));
    let max_y_equals_yd = max_y == yd;
    let locally_stone_class = e.trace_topology(&yd).is_hausdorff();
    if antichain != max_y_equals_yd {
        return Err(Error::invariant(
            "Y_d antichain iff max Y = Y_d",
            format!("antichain = {antichain}, max Y = {}", e.describe(&max_y)),
        ));
    }
    if let Some(direct) = e.l_regular_nd(&e.closure(&yd)?) {
        if direct != antichain {
            return Err(Error::invariant(
                "L-regularity of N_d iff Y_d antichain",
                format!("direct = {direct}, antichain = {antichain}"),
            ));
        }
    }
    Ok(Regularity {
        antichain,
        max_y_equals_yd,
        locally_stone_class,
    })
}

/// `max Y ⊆ Y_d`.
pub fn max_y_within_yd<E: PriestleyEngine>(e: &E) -> Result<bool> {
    let loc = e.localic_part();
    let max_y = e.diff(&loc, &e.strict_down(&loc));
    Ok(e.is_subset(&max_y, &yd_set(e)?))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::poset::{FinitePoset, PointSet};

    fn chain2() -> FiniteEngine {
        FiniteEngine::new(Arc::new(FinitePoset::chain(2)))
    }

    #[test]
    fn finite_examples() {
        let e = chain2();
        let x2 = PointSet::singleton(1);
        assert_eq!(localic_points(&e), e.full());
        assert!(is_scott_upset(&e, &x2).unwrap());
        assert_eq!(core(&e, &x2).unwrap(), x2);
        assert_eq!(d_apply(&e, &x2).unwrap(), e.full());
        assert_eq!(d_apply(&e, &PointSet::EMPTY).unwrap(), PointSet::EMPTY);
        assert_eq!(core_d(&e, &x2).unwrap(), e.full());
        assert_eq!(yd_set(&e).unwrap(), x2);
        assert!(yd_membership(&e, &1).unwrap());
        assert!(!yd_membership(&e, &0).unwrap());
        let m = min_yd(&e).unwrap();
        assert_eq!(m.set, x2);
        assert_eq!(m.topology, TopologyClass::FiniteDiscrete);
        let fam = maximal_d_upsets(&e).unwrap();
        assert_eq!(fam, vec![(1, PointSet::EMPTY)]);
        assert_eq!(rho_apply(&e, &PointSet::EMPTY).unwrap(), PointSet::EMPTY);
        assert_eq!(rho_apply(&e, &x2).unwrap(), e.full());
        assert_eq!(rho_nuclear(&e).unwrap(), x2);
        assert!(max_bounded(&e).unwrap());
        assert!(unit_search(&e).unwrap().exists());
        assert!(regularity_suite(&e).unwrap().all());
        assert_eq!(classify_frame(&e).unwrap(), FrameClass { algebraic: true, arithmetic: true });
    }

    #[test]
    fn antichain_d_upsets() {
        let e = FiniteEngine::new(Arc::new(FinitePoset::antichain(2)));
        let fam: Vec<PointSet> = maximal_d_upsets(&e).unwrap().into_iter().map(|(_, m)| m).collect();
        assert_eq!(fam, vec![PointSet::singleton(1), PointSet::singleton(0)]);
    }

    #[test]
    fn scott_errors() {
        let e = chain2();
        assert!(matches!(is_scott_upset(&e, &PointSet::singleton(0)), Err(Error::NotAnUpset(_))));
        assert!(matches!(core(&e, &PointSet::singleton(0)), Err(Error::NotClopenUpset(_))));
    }
}
