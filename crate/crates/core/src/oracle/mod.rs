//! Exhaustive verification on small instances.
//!
//! Every registered theorem is checked on every poset up to the bound (up to
//! isomorphism, smallest first, so the first failure is on a smallest space)
//! or on each fan family. Sweeps over all nuclei of a space are capped at
//! [`NUCLEAR_BOUND`] points, since they quantify over `2^|X|` nuclei.

mod fan_checks;
mod finite_checks;

use std::collections::{BTreeMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::d_spectrum::FiniteEngine;
use crate::error::{Error, Result};
use crate::fan_spaces::{Family, DEFAULT_SEED};
use crate::faults::Faults;
use crate::poset::{FinitePoset, PointSet};

pub const DEFAULT_BOUND: usize = 6;
pub const MAX_BOUND: usize = 7;
pub const NUCLEAR_BOUND: usize = 4;

/// Where a theorem is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Every poset with at most `min(bound, cap)` points.
    Posets { cap: Option<usize> },
    /// Each fan family.
    Families,
}

#[derive(Clone, Copy)]
enum CheckFn {
    Finite(fn(&FiniteCtx) -> std::result::Result<(), Failure>),
    Fan(fn(&fan_checks::FanCtx) -> std::result::Result<(), Failure>),
}

#[derive(Clone, Copy)]
pub struct Theorem {
    pub id: &'static str,
    pub statement: &'static str,
    pub scope: Scope,
    check: CheckFn,
}

/// What a failed check reports about where it failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub space: String,
    pub object: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CaseStatus {
    Verified,
    Failed { witness: Witness },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCase {
    pub theorem: String,
    pub instance: String,
    #[serde(flatten)]
    pub status: CaseStatus,
}

impl TheoremCase {
    pub fn verified(&self) -> bool {
        self.status == CaseStatus::Verified
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub verified: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub bound: usize,
    pub seed: u64,
    pub faults: Faults,
    pub total: Tally,
    pub by_theorem: BTreeMap<String, Tally>,
    pub cases: Vec<TheoremCase>,
}

impl SuiteReport {
    pub fn all_verified(&self) -> bool {
        self.total.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &TheoremCase> {
        self.cases.iter().filter(|c| !c.verified())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub bound: usize,
    pub seed: u64,
    pub faults: Faults,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            bound: DEFAULT_BOUND,
            seed: DEFAULT_SEED,
            faults: Faults::NONE,
        }
    }
}

/// A check's complaint, before the runner attaches the space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub object: String,
    pub point: Option<String>,
    pub detail: String,
}

impl Failure {
    pub fn new(object: impl Into<String>, detail: impl Into<String>) -> Self {
        Failure {
            object: object.into(),
            point: None,
            detail: detail.into(),
        }
    }

    pub fn at(mut self, point: impl Into<String>) -> Self {
        self.point = Some(point.into());
        self
    }
}

/// An engine error inside a check; the error text names the object.
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new("engine error", e.to_string())
    }
}

/// Fails with `object`/`detail` unless `ok`.
pub(crate) fn ensure(ok: bool, object: impl FnOnce() -> String, detail: &str) -> std::result::Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::new(object(), detail))
    }
}

/// The finite space under test, with its engine built once.
pub struct FiniteCtx {
    pub space: Arc<FinitePoset>,
    pub engine: FiniteEngine,
    pub faults: Faults,
}

impl FiniteCtx {
    pub fn new(space: FinitePoset, faults: Faults) -> Self {
        let space = Arc::new(space);
        FiniteCtx {
            engine: FiniteEngine::with_faults(space.clone(), faults),
            space,
            faults,
        }
    }

    pub fn fmt(&self, s: PointSet) -> String {
        self.space.format_set(s)
    }
}

pub fn registry() -> Vec<Theorem> {
    use finite_checks as f;
    let posets = Scope::Posets { cap: None };
    let nuclear = Scope::Posets {
        cap: Some(NUCLEAR_BOUND),
    };
    let t = |id, statement, scope, check| Theorem {
        id,
        statement,
        scope,
        check,
    };
    let fin = CheckFn::Finite;
    let fan = CheckFn::Fan;
    vec![
        t("duality-round-trip", "ClopUp of the dual of D is isomorphic to D via the Stone map", posets, fin(f::duality_round_trip)),
        t("stone-map-embedding", "the Stone map is a bounded lattice embedding", posets, fin(f::stone_map_embedding)),
        t("heyting-adjunction", "W ∩ U ⊆ V iff W ⊆ (U → V), with U* = U → ∅", posets, fin(f::heyting_adjunction)),
        t("nuclear-galois", "N ↦ j_N ↦ N_j and j ↦ N_j ↦ j_N are identities", nuclear, fin(f::nuclear_galois)),
        t("nuclei-order-reversal", "N ⊆ M iff j_M ≤ j_N pointwise", nuclear, fin(f::nuclei_order_reversal)),
        t("upset-Nj-eq-Fj", "H_j = ⋂{U | jU = X} equals ↑N_j", nuclear, fin(f::upset_nj_eq_fj)),
        t("dense-eq-cofinal", "j∅ = ∅ iff max X ⊆ N_j", nuclear, fin(f::dense_eq_cofinal)),
        t("isbell-density", "max X is the least cofinal nuclear set and ** fixes a subset of every dense sublocale", nuclear, fin(f::isbell_density)),
        t("lem-Nj-1", "U ∩ N_j = jU ∩ N_j", nuclear, fin(f::lem_nj_1)),
        t("sublocale-meet-formula", "sublocales S and nuclei j correspond through j[L] and meets of S", nuclear, fin(f::sublocale_meet_formula)),
        t("d-nucleus", "d is a dense nucleus with nuclear set max X", posets, fin(f::d_nucleus)),
        t("inductive-core", "d U = cl core_d U, the pointwise and union forms of core_d agree, and every nuclear set is inductive", posets, fin(f::inductive_core)),
        t("d-scott-double-negation", "d U = U** on clopen Scott upsets", posets, fin(f::d_scott_double_negation)),
        t("eqv-conditions-rmax", "the four characterisations of Y_d agree", posets, fin(f::eqv_conditions_rmax)),
        t("max-Y-subset-Yd", "max Y ⊆ Y_d", posets, fin(f::max_y_subset_yd)),
        t("l-regularity", "L_d is regular iff Y_d is an antichain iff max Y = Y_d", posets, fin(f::l_regularity)),
        t("minYd-maxLd-bijection", "y ↦ X ∖ ↓y is a bijection from min Y_d onto the maximal d-upsets", posets, fin(f::minyd_maxld_bijection)),
        t("minYd-maxLd-homeomorphism", "the bijection is a homeomorphism onto max L_d with hull-kernel opens", posets, fin(f::minyd_maxld_homeomorphism)),
        t("compacts-d-initial", "K ↦ ↑K is a poset isomorphism from compact subsets of min Y_d onto d-initial Scott upsets", posets, fin(f::compacts_d_initial)),
        t("max-bounded-d-initial", "L_d is max-bounded iff N_d is d-initial", posets, fin(f::max_bounded_d_initial)),
        t("unit-compactness", "a unit exists iff a cofinal clopen Scott upset exists, and then min Y_d is compact", posets, fin(f::unit_compactness)),
        t("rho-nuclear", "ρ has nuclear set cl min Y_d and agrees with its union and meet forms", posets, fin(f::rho_nuclear)),
        t("t1-hausdorff", "min Y_d is T1, and Hausdorff on finite spaces", posets, fin(f::t1_hausdorff)),
        t("fan-d-laws", "d is a dense inductive nucleus on tame clopen upsets, equal to ** on Scott ones", Scope::Families, fan(fan_checks::fan_d_laws)),
        t("fan-contract", "the tame engine satisfies the Priestley engine contract", Scope::Families, fan(fan_checks::fan_contract)),
        t("fan-canonical", "canonical tame forms are unique", Scope::Families, fan(fan_checks::fan_canonical)),
        t("fan-reproductions", "the fan families have their documented spectra", Scope::Families, fan(fan_checks::fan_reproductions)),
    ]
}

pub fn theorem_ids() -> Vec<&'static str> {
    registry().iter().map(|t| t.id).collect()
}

fn level_cache() -> &'static Mutex<Vec<Arc<Vec<FinitePoset>>>> {
    static CACHE: OnceLock<Mutex<Vec<Arc<Vec<FinitePoset>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// All posets with exactly `points` points, one per isomorphism class, in a
/// deterministic order. Each is built from a smaller one by adding a new
/// maximal element above one of its down-sets.
pub fn enumerate_posets(points: usize) -> Result<Arc<Vec<FinitePoset>>> {
    if points > MAX_BOUND {
        return Err(Error::BoundExceeded {
            bound: points,
            cap: MAX_BOUND,
        });
    }
    let mut cache = level_cache().lock().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        cache.push(Arc::new(vec![FinitePoset::antichain(0)]));
    }
    while cache.len() <= points {
        let prev = cache.last().cloned().unwrap_or_default();
        let n = cache.len() - 1;
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for p in prev.iter() {
            for d in p.enumerate_downsets() {
                let q = extend_with_maximal(p, d, n);
                let code = q.canonical_form();
                if seen.insert(code.clone()) {
                    next.push(code);
                }
            }
        }
        next.sort();
        cache.push(Arc::new(next.iter().map(|c| c.to_poset()).collect()));
    }
    Ok(cache[points].clone())
}

fn extend_with_maximal(p: &FinitePoset, below: PointSet, n: usize) -> FinitePoset {
    let labels = (0..=n).map(|i| format!("x{i}")).collect();
    FinitePoset::from_relation(labels, |a, b| {
        if b == n {
            a == n || below.contains(a)
        } else {
            a != n && p.leq(a, b)
        }
    })
    .expect("adding a maximal element keeps the order antisymmetric")
}

/// All posets with `1..=bound` points.
pub fn posets_up_to(bound: usize) -> Result<Vec<FinitePoset>> {
    let mut out = Vec::new();
    for k in 1..=bound {
        out.extend(enumerate_posets(k)?.iter().cloned());
    }
    Ok(out)
}

/// Runs the selected theorems (all when `ids` is empty) and returns every
/// case, ordered by registry position and then by instance.
pub fn run_suite(ids: &[&str], options: SuiteOptions) -> Result<SuiteReport> {
    if options.bound > MAX_BOUND {
        return Err(Error::BoundExceeded {
            bound: options.bound,
            cap: MAX_BOUND,
        });
    }
    let reg = registry();
    for id in ids {
        if !reg.iter().any(|t| t.id == *id) {
            return Err(Error::UnknownTheoremId(id.to_string()));
        }
    }
    let selected: Vec<&Theorem> = reg.iter().filter(|t| ids.is_empty() || ids.contains(&t.id)).collect();
    let mut per_theorem: Vec<Vec<TheoremCase>> = vec![Vec::new(); selected.len()];

    let needs_posets = selected.iter().any(|t| matches!(t.scope, Scope::Posets { .. }));
    if needs_posets {
        for (pi, p) in posets_up_to(options.bound)?.into_iter().enumerate() {
            let n = p.len();
            let ctx = FiniteCtx::new(p, options.faults);
            let instance = format!("poset #{pi} ({n} points) {:?}", ctx.space);
            for (ti, t) in selected.iter().enumerate() {
                let (Scope::Posets { cap }, CheckFn::Finite(check)) = (t.scope, t.check) else {
                    continue;
                };
                if cap.is_some_and(|c| n > c) {
                    continue;
                }
                let status = to_status(check(&ctx), || format!("{:?}", ctx.space));
                per_theorem[ti].push(TheoremCase {
                    theorem: t.id.to_string(),
                    instance: instance.clone(),
                    status,
                });
            }
        }
    }
    for family in Family::ALL {
        let mut ctx = None;
        for (ti, t) in selected.iter().enumerate() {
            let CheckFn::Fan(check) = t.check else {
                continue;
            };
            let ctx = ctx.get_or_insert_with(|| fan_checks::FanCtx::new(family, options.faults, options.seed));
            let status = to_status(check(ctx), || family.name().to_string());
            per_theorem[ti].push(TheoremCase {
                theorem: t.id.to_string(),
                instance: family.name().to_string(),
                status,
            });
        }
    }

    let cases: Vec<TheoremCase> = per_theorem.into_iter().flatten().collect();
    let mut total = Tally::default();
    let mut by_theorem: BTreeMap<String, Tally> = BTreeMap::new();
    for c in &cases {
        let tally = by_theorem.entry(c.theorem.clone()).or_default();
        if c.verified() {
            total.verified += 1;
            tally.verified += 1;
        } else {
            total.failed += 1;
            tally.failed += 1;
        }
    }
    Ok(SuiteReport {
        bound: options.bound,
        seed: options.seed,
        faults: options.faults,
        total,
        by_theorem,
        cases,
    })
}

fn to_status(r: std::result::Result<(), Failure>, space: impl FnOnce() -> String) -> CaseStatus {
    match r {
        Ok(()) => CaseStatus::Verified,
        Err(f) => CaseStatus::Failed {
            witness: Witness {
                space: space(),
                object: f.object,
                point: f.point,
                detail: f.detail,
            },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=5).map(|k| enumerate_posets(k).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
        assert!(matches!(enumerate_posets(8), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn unknown_ids_are_rejected() {
        assert!(matches!(
            run_suite(&["no-such-theorem"], SuiteOptions::default()),
            Err(Error::UnknownTheoremId(_))
        ));
    }

    #[test]
    fn registry_ids_are_unique() {
        let ids = theorem_ids();
        let set: HashSet<_> = ids.iter().collect();
        assert_eq!(set.len(), ids.len());
    }
}
