//! Symbolic engines for four countable fan spaces.
//!
//! Each space is assembled from fans `cl X_i = X_i ∪ X_i*`, where `X_i` is a
//! copy of `N` made of isolated points and `X_i*` is its Čech-Stone
//! remainder, treated as one class. Only the finite/cofinite clopen
//! subalgebra of each fan is represented (see [`tame`]).
//!
//! The families and their orders (`<` lists every strict relation):
//! - `bare_fan`: one fan and no order. The dual of `℘(N)`.
//! - `fan_plus_bottom`: one fan and a point `y` below all of it.
//! - `omega_fans`: fans `i ∈ N`, a spine `y_i` with `y_i < cl X_i`, a point
//!   `ω` with `y_i < ω`, and the remainder `X_ω*` of the union of the fans
//!   with `ω < X_ω*`. The spine `{y_i} ∪ {ω}` is a convergent sequence.
//! - `chain_fans`: the same points, ordered by `y_j < y_i` for `j > i`,
//!   `y_j < cl X_i` for `j >= i`, and `ω` below every other point.
//!
//! Topology: within a fan a clopen part is a finite set of points, or a
//! cofinite set together with `X_i*`. Cofinitely many fans accumulate at
//! `X_ω*`. On the spine a clopen part is finite without `ω`, or cofinite
//! with it.

pub mod engine;
pub mod samples;
pub mod tame;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::faults::Faults;
pub use tame::{NatSet, Region, SpinePart, SymbolicPoint, TameJson, TameSet};

/// Default seed of the deterministic tame-set sample.
pub const DEFAULT_SEED: u64 = 0x5eed;
/// Number of sampled clopen upsets per family.
pub const SAMPLE_SIZE: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    BareFan,
    FanPlusBottom,
    OmegaFans,
    ChainFans,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::BareFan,
        Family::FanPlusBottom,
        Family::OmegaFans,
        Family::ChainFans,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::BareFan => "bare_fan",
            Family::FanPlusBottom => "fan_plus_bottom",
            Family::OmegaFans => "omega_fans",
            Family::ChainFans => "chain_fans",
        }
    }

    pub fn parse(name: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }

    /// Whether the family has infinitely many fans, a full spine, `ω` and `X_ω*`.
    pub fn is_multi_fan(self) -> bool {
        matches!(self, Family::OmegaFans | Family::ChainFans)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// JSON descriptor `{"family": "omega_fans"}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpaceDescriptor {
    pub family: Family,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TameOp {
    Meet,
    Join,
    Complement,
    Diff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    Closure,
    Interior,
}

#[derive(Debug)]
pub struct FanSpace {
    family: Family,
    faults: Faults,
    seed: u64,
    sample_size: usize,
    samples: OnceLock<Vec<TameSet>>,
}

impl Clone for FanSpace {
    fn clone(&self) -> Self {
        FanSpace::with_options(self.family, self.faults, self.seed, self.sample_size)
    }
}

pub fn engine_for(desc: FanSpaceDescriptor) -> FanSpace {
    FanSpace::new(desc.family)
}

impl FanSpace {
    pub fn new(family: Family) -> Self {
        Self::with_options(family, Faults::NONE, DEFAULT_SEED, SAMPLE_SIZE)
    }

    pub fn with_options(family: Family, faults: Faults, seed: u64, sample_size: usize) -> Self {
        FanSpace {
            family,
            faults,
            seed,
            sample_size,
            samples: OnceLock::new(),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn faults(&self) -> Faults {
        self.faults
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn sample_size(&self) -> usize {
        self.sample_size
    }

    // ---- canonical forms -------------------------------------------------

    /// Restricts a raw value to the points the family has, then drops fan
    /// entries equal to the default. The default's index set is always `∅`
    /// or everything, so the result is unique.
    pub fn canon(&self, mut s: TameSet) -> TameSet {
        match self.family {
            Family::BareFan | Family::FanPlusBottom => {
                if s.default != Region::empty() {
                    let d = std::mem::take(&mut s.default);
                    s.fans.entry(0).or_insert(d);
                }
                s.fans.retain(|&i, _| i == 0);
                s.spine.omega = false;
                s.omega_star = false;
                s.spine.points = if self.family == Family::FanPlusBottom && s.spine.points.contains(0) {
                    NatSet::finite([0])
                } else {
                    NatSet::empty()
                };
            }
            Family::OmegaFans | Family::ChainFans => {}
        }
        if !self.faults.break_canonical_form {
            let d = s.default.clone();
            s.fans.retain(|_, r| *r != d);
        }
        s
    }

    /// Rejects values mentioning points the family lacks.
    pub fn check_member(&self, s: &TameSet) -> Result<()> {
        if self.family.is_multi_fan() {
            return Ok(());
        }
        let bad = s.default != Region::empty()
            || s.fans.keys().any(|&i| i != 0)
            || s.spine.omega
            || s.omega_star
            || match self.family {
                Family::BareFan => !s.spine.points.is_empty(),
                _ => !s.spine.points.is_subset(&NatSet::finite([0])),
            };
        if bad {
            Err(Error::FamilyMismatch)
        } else {
            Ok(())
        }
    }

    pub fn empty_set(&self) -> TameSet {
        self.canon(TameSet::default())
    }

    pub fn full_set(&self) -> TameSet {
        let mut s = TameSet::default();
        match self.family {
            Family::BareFan => {
                s.fans.insert(0, Region::full());
            }
            Family::FanPlusBottom => {
                s.fans.insert(0, Region::full());
                s.spine.points = NatSet::finite([0]);
            }
            Family::OmegaFans | Family::ChainFans => {
                s.default = Region::full();
                s.spine = SpinePart {
                    points: NatSet::all(),
                    omega: true,
                };
                s.omega_star = true;
            }
        }
        self.canon(s)
    }

    pub fn point_set(&self, p: &SymbolicPoint) -> TameSet {
        let mut s = TameSet::default();
        match *p {
            SymbolicPoint::FanPoint(i, k) => {
                s.fans.insert(
                    i,
                    Region {
                        points: NatSet::finite([k]),
                        star: false,
                    },
                );
            }
            SymbolicPoint::FanStar(i) => {
                s.fans.insert(i, Region::star_only());
            }
            SymbolicPoint::Spine(i) => s.spine.points = NatSet::finite([i]),
            SymbolicPoint::Omega => s.spine.omega = true,
            SymbolicPoint::OmegaStar => s.omega_star = true,
        }
        self.canon(s)
    }

    /// Whether the family has the given point class.
    pub fn has_point(&self, p: &SymbolicPoint) -> bool {
        self.full_set().contains(p)
    }

    // ---- Boolean algebra -------------------------------------------------

    fn zip(&self, a: &TameSet, b: &TameSet, f: impl Fn(&Region, &Region) -> Region, g: impl Fn(&SpinePart, &SpinePart) -> SpinePart, h: impl Fn(bool, bool) -> bool) -> TameSet {
        let mut fans = BTreeMap::new();
        for &i in a.fans.keys().chain(b.fans.keys()) {
            fans.insert(i, f(a.region(i), b.region(i)));
        }
        self.canon(TameSet {
            default: f(&a.default, &b.default),
            fans,
            spine: g(&a.spine, &b.spine),
            omega_star: h(a.omega_star, b.omega_star),
        })
    }

    pub fn meet(&self, a: &TameSet, b: &TameSet) -> TameSet {
        self.zip(a, b, Region::intersection, SpinePart::intersection, |x, y| x && y)
    }

    pub fn join(&self, a: &TameSet, b: &TameSet) -> TameSet {
        self.zip(a, b, Region::union, SpinePart::union, |x, y| x || y)
    }

    /// Complement relative to the space.
    pub fn complement(&self, a: &TameSet) -> TameSet {
        let raw = TameSet {
            default: a.default.complement(),
            fans: a.fans.iter().map(|(&i, r)| (i, r.complement())).collect(),
            spine: a.spine.complement(),
            omega_star: !a.omega_star,
        };
        self.meet(&self.canon(raw), &self.full_set())
    }

    /// Checked Boolean operation; `b` is ignored by `Complement`.
    pub fn tame_op(&self, a: &TameSet, b: &TameSet, op: TameOp) -> Result<TameSet> {
        self.check_member(a)?;
        self.check_member(b)?;
        let (a, b) = (self.canon(a.clone()), self.canon(b.clone()));
        Ok(match op {
            TameOp::Meet => self.meet(&a, &b),
            TameOp::Join => self.join(&a, &b),
            TameOp::Complement => self.complement(&a),
            TameOp::Diff => self.meet(&a, &self.complement(&b)),
        })
    }

    // ---- topology --------------------------------------------------------

    /// A cofinite fan part picks up its remainder, a cofinite spine part
    /// picks up `ω`, and cofinitely many nonempty fans pick up `X_ω*`.
    /// Infinitely many remainders without any points accumulate at part of
    /// `X_ω*` only, which the fragment cannot express.
    pub fn closure(&self, a: &TameSet) -> Result<TameSet> {
        let mut out = a.clone();
        out.default = out.default.closure();
        for r in out.fans.values_mut() {
            *r = r.closure();
        }
        if self.family.is_multi_fan() {
            if out.spine.points.cofinite {
                out.spine.omega = true;
            }
            if a.default.points.cofinite {
                out.omega_star = true;
            } else if a.default.star && !a.omega_star {
                return Err(Error::NotRepresentable(format!(
                    "closure of {}",
                    self.describe(a)
                )));
            }
        }
        Ok(self.canon(out))
    }

    pub fn interior(&self, a: &TameSet) -> Result<TameSet> {
        Ok(self.complement(&self.closure(&self.complement(a))?))
    }

    pub fn closure_interior(&self, a: &TameSet, which: Closure) -> Result<TameSet> {
        match which {
            Closure::Closure => self.closure(a),
            Closure::Interior => self.interior(a),
        }
    }

    pub fn is_closed(&self, a: &TameSet) -> bool {
        self.closure(a).map(|c| c == *a).unwrap_or(false)
    }

    pub fn is_open(&self, a: &TameSet) -> bool {
        self.is_closed(&self.complement(a))
    }

    // ---- order -----------------------------------------------------------

    fn fans_full(&self, which: &NatSet) -> TameSet {
        self.canon(TameSet::default().map_fans(which, |_| Region::full()))
    }

    fn spine_set(&self, points: NatSet, omega: bool) -> TameSet {
        self.canon(TameSet {
            spine: SpinePart { points, omega },
            ..TameSet::default()
        })
    }

    fn omega_star_set(&self) -> TameSet {
        self.canon(TameSet {
            omega_star: true,
            ..TameSet::default()
        })
    }

    fn nonempty_fans(a: &TameSet) -> NatSet {
        a.fan_support(|r| !r.is_empty())
    }

    /// Whether the spine-to-ω relations are present.
    fn spine_below_omega(&self) -> bool {
        !(self.family == Family::OmegaFans && self.faults.drop_spine_order)
    }

    pub fn up(&self, a: &TameSet) -> TameSet {
        self.join(a, &self.strict_up(a))
    }

    pub fn down(&self, a: &TameSet) -> TameSet {
        self.join(a, &self.strict_down(a))
    }

    pub fn updown(&self, a: &TameSet, dir: crate::poset::Direction) -> TameSet {
        match dir {
            crate::poset::Direction::Up => self.up(a),
            crate::poset::Direction::Down => self.down(a),
        }
    }

    /// Points strictly above some point of `a`.
    pub fn strict_up(&self, a: &TameSet) -> TameSet {
        let empty = self.empty_set();
        match self.family {
            Family::BareFan => empty,
            Family::FanPlusBottom => {
                if a.spine.points.contains(0) {
                    self.fans_full(&NatSet::finite([0]))
                } else {
                    empty
                }
            }
            Family::OmegaFans => {
                let mut out = self.fans_full(&a.spine.points);
                let above_spine = !a.spine.points.is_empty() && self.spine_below_omega();
                if above_spine {
                    out = self.join(&out, &self.spine_set(NatSet::empty(), true));
                }
                if above_spine || a.spine.omega {
                    out = self.join(&out, &self.omega_star_set());
                }
                out
            }
            Family::ChainFans => {
                if a.spine.omega {
                    let omega = self.spine_set(NatSet::empty(), true);
                    return self.meet(&self.full_set(), &self.complement(&omega));
                }
                match a.spine.points.greatest() {
                    _ if a.spine.points.is_empty() => empty,
                    Some(m) => {
                        let spine = if m == 0 { NatSet::empty() } else { NatSet::up_to(m - 1) };
                        self.join(&self.spine_set(spine, false), &self.fans_full(&NatSet::up_to(m)))
                    }
                    None => self.join(&self.spine_set(NatSet::all(), false), &self.fans_full(&NatSet::all())),
                }
            }
        }
    }

    /// Points strictly below some point of `a`.
    pub fn strict_down(&self, a: &TameSet) -> TameSet {
        let empty = self.empty_set();
        let fans = Self::nonempty_fans(a);
        match self.family {
            Family::BareFan => empty,
            Family::FanPlusBottom => {
                if fans.is_empty() {
                    empty
                } else {
                    self.spine_set(NatSet::finite([0]), false)
                }
            }
            Family::OmegaFans => {
                let mut out = self.spine_set(fans, false);
                if self.spine_below_omega() {
                    if a.spine.omega || a.omega_star {
                        out = self.join(&out, &self.spine_set(NatSet::all(), false));
                    }
                    if a.omega_star {
                        out = self.join(&out, &self.spine_set(NatSet::empty(), true));
                    }
                } else if a.omega_star {
                    out = self.join(&out, &self.spine_set(NatSet::empty(), true));
                }
                out
            }
            Family::ChainFans => {
                let mut out = empty;
                if let Some(mf) = fans.least() {
                    out = self.join(&out, &self.spine_set(NatSet::at_least(mf), true));
                }
                if let Some(ms) = a.spine.points.least() {
                    out = self.join(&out, &self.spine_set(NatSet::at_least(ms + 1), true));
                }
                if a.omega_star {
                    out = self.join(&out, &self.spine_set(NatSet::empty(), true));
                }
                out
            }
        }
    }

    /// The order on point classes, as a brute-force reference for the
    /// closed-form closures. Classes have no internal order.
    pub fn leq(&self, p: &SymbolicPoint, q: &SymbolicPoint) -> bool {
        use SymbolicPoint::*;
        if p == q {
            return true;
        }
        let fan_of = |x: &SymbolicPoint| match *x {
            FanPoint(i, _) | FanStar(i) => Some(i),
            _ => None,
        };
        match self.family {
            Family::BareFan => false,
            Family::FanPlusBottom => matches!(p, Spine(0)) && fan_of(q) == Some(0),
            Family::OmegaFans => match (*p, *q) {
                (Spine(i), _) if fan_of(q) == Some(i) => true,
                (Spine(_), Omega | OmegaStar) => self.spine_below_omega(),
                (Omega, OmegaStar) => true,
                _ => false,
            },
            Family::ChainFans => match (*p, *q) {
                (Omega, _) => true,
                (Spine(j), Spine(i)) => j > i,
                (Spine(j), _) => fan_of(q).is_some_and(|i| j >= i),
                _ => false,
            },
        }
    }

    // ---- closed forms ----------------------------------------------------

    /// Points whose principal down-set is clopen.
    pub fn localic_closed_form(&self) -> TameSet {
        let fan_points = |s: &mut TameSet| {
            if self.family.is_multi_fan() {
                s.default = Region::points_only();
            } else {
                s.fans.insert(0, Region::points_only());
            }
        };
        let mut s = TameSet::default();
        fan_points(&mut s);
        match self.family {
            Family::BareFan => {}
            Family::FanPlusBottom => s.spine.points = NatSet::finite([0]),
            Family::OmegaFans => {
                s.spine = SpinePart {
                    points: NatSet::all(),
                    omega: true,
                }
            }
            Family::ChainFans => s.spine.points = NatSet::all(),
        }
        self.canon(s)
    }

    /// Union of the clopen Scott upsets inside the clopen upset `u`.
    ///
    /// A clopen Scott upset containing a remainder point contains a localic
    /// point below it, and the only candidates are spine points. So stars
    /// survive exactly on fans that sit above a spine point of `u`.
    /// `omega_fans`: `ω ∈ u` forces a cofinite spine, and the spine points
    /// with their fans, `ω` and `X_ω*` form a clopen Scott upset inside `u`.
    /// `chain_fans`: `↑y_i = {y_0..y_i} ∪ cl X_0 ∪ .. ∪ cl X_i` is a clopen
    /// Scott upset, and no clopen Scott upset reaches `ω` or `X_ω*`, since
    /// the only localic points below them would have to lie under `ω`.
    pub fn core_closed_form(&self, u: &TameSet) -> TameSet {
        let all = NatSet::all();
        let stripped = self.canon(u.map_fans(&all, Region::without_star));
        match self.family {
            Family::BareFan => stripped,
            Family::FanPlusBottom => {
                if u.spine.points.contains(0) {
                    u.clone()
                } else {
                    stripped
                }
            }
            Family::OmegaFans | Family::ChainFans => {
                let mut out = stripped.map_fans(&u.spine.points, |_| Region::full());
                if self.family == Family::OmegaFans {
                    out.omega_star = u.omega_star && u.spine.omega;
                } else {
                    out.spine.omega = false;
                    out.omega_star = false;
                }
                self.canon(out)
            }
        }
    }

    /// Clopen Scott upset test for a clopen upset, by the explicit dichotomy
    /// on `omega_fans`: either finitely many fan points, or a cofinite spine
    /// with finite fan traces (and no remainder) over the missing spine
    /// points. Other families use the same derivation: a remainder in a
    /// Scott upset needs a spine point below it inside the set.
    pub fn clop_sup_test(&self, u: &TameSet) -> Result<bool> {
        if !(self.is_closed(u) && self.is_open(u) && self.up(u) == *u) {
            return Err(Error::NotClopenUpset(self.describe(u)));
        }
        let finite_trace = |r: &Region| !r.points.cofinite && !r.star;
        Ok(match self.family {
            Family::BareFan => u.fans.values().all(finite_trace),
            Family::FanPlusBottom => u.spine.points.contains(0) || u.fans.values().all(finite_trace),
            Family::OmegaFans => {
                let only_points = u.spine == SpinePart::empty()
                    && !u.omega_star
                    && u.default.is_empty()
                    && u.fans.values().all(finite_trace);
                let cofinite_spine = u.spine.points.cofinite
                    && u.spine
                        .points
                        .exceptions
                        .iter()
                        .all(|&i| finite_trace(u.region(i)));
                only_points || cofinite_spine
            }
            Family::ChainFans => {
                !u.spine.omega
                    && !u.omega_star
                    && (u.default.is_empty() || u.spine.points.cofinite)
                    && u
                        .fans
                        .iter()
                        .all(|(&i, r)| u.spine.points.contains(i) || finite_trace(r))
            }
        })
    }

    // ---- presentation ----------------------------------------------------

    pub fn describe(&self, s: &TameSet) -> String {
        let mut parts = Vec::new();
        let single = !self.family.is_multi_fan();
        for (&i, r) in &s.fans {
            describe_region(&mut parts, &format!("{i}"), r, single);
        }
        if !s.default.is_empty() {
            let which = if s.fans.is_empty() {
                "all i".to_string()
            } else {
                let list: Vec<String> = s.fans.keys().map(u64::to_string).collect();
                format!("i ∉ {{{}}}", list.join(","))
            };
            describe_default(&mut parts, &which, &s.default);
        }
        let sp = &s.spine.points;
        if self.family == Family::FanPlusBottom {
            if sp.contains(0) {
                parts.push("{y}".into());
            }
        } else if sp.cofinite {
            if sp.exceptions.is_empty() {
                parts.push("{y_i | all i}".into());
            } else {
                parts.push(format!("{{y_i | i ∉ {}}}", brace_list(&sp.exceptions)));
            }
        } else if !sp.is_empty() {
            let list: Vec<String> = sp.exceptions.iter().map(|i| format!("y_{i}")).collect();
            parts.push(format!("{{{}}}", list.join(",")));
        }
        if s.spine.omega {
            parts.push("{ω}".into());
        }
        if s.omega_star {
            parts.push("X_ω*".into());
        }
        if parts.is_empty() {
            "∅".into()
        } else {
            parts.join(" ∪ ")
        }
    }

    pub fn to_json(&self, s: &TameSet) -> TameJson {
        use tame::{DefaultRegion, FansJson, Mode, RegionJson, SpineJson};
        let default = DefaultRegion::of(&s.default).unwrap_or(DefaultRegion::Empty);
        let fans = FansJson {
            default,
            exceptions: s.fans.iter().map(|(i, r)| (i.to_string(), RegionJson::from(r))).collect(),
        };
        let mode = |n: &NatSet| if n.cofinite { Mode::Cofin } else { Mode::Fin };
        let spine = match self.family {
            Family::BareFan => None,
            Family::FanPlusBottom => Some(SpineJson {
                mode: Mode::Fin,
                set: s.spine.points.exceptions.iter().copied().collect(),
                omega: None,
            }),
            Family::OmegaFans | Family::ChainFans => Some(SpineJson {
                mode: mode(&s.spine.points),
                set: s.spine.points.exceptions.iter().copied().collect(),
                omega: Some(s.spine.omega),
            }),
        };
        TameJson {
            fans: Some(fans),
            spine,
            omega_star: self.family.is_multi_fan().then_some(s.omega_star),
        }
    }

    pub fn from_json(&self, j: &TameJson) -> Result<TameSet> {
        let bad = |m: &str| Error::MalformedTameSet(format!("{m} for {}", self.family));
        let mut s = TameSet::default();
        if let Some(f) = &j.fans {
            s.default = f.default.region();
            for (k, r) in &f.exceptions {
                let i: u64 = k.parse().map_err(|_| bad(&format!("fan index `{k}` is not a natural number")))?;
                s.fans.insert(i, Region::from(r));
            }
        }
        if let Some(sp) = &j.spine {
            if self.family == Family::BareFan {
                return Err(bad("a spine is given"));
            }
            s.spine.points = NatSet {
                cofinite: sp.mode == tame::Mode::Cofin,
                exceptions: sp.set.iter().copied().collect(),
            };
            match (sp.omega, self.family.is_multi_fan()) {
                (Some(_), false) => return Err(bad("ω is given")),
                (o, true) => s.spine.omega = o.unwrap_or(false),
                (None, false) => {}
            }
        }
        if let Some(o) = j.omega_star {
            if !self.family.is_multi_fan() {
                return Err(bad("X_ω* is given"));
            }
            s.omega_star = o;
        }
        self.check_member(&s).map_err(|_| bad("the set mentions points outside the space"))?;
        Ok(self.canon(s))
    }
}

fn brace_list(s: &std::collections::BTreeSet<u64>) -> String {
    let list: Vec<String> = s.iter().map(u64::to_string).collect();
    format!("{{{}}}", list.join(","))
}

fn describe_region(parts: &mut Vec<String>, i: &str, r: &Region, single: bool) {
    let fan = if single { "N".to_string() } else { format!("X_{i}") };
    let p = &r.points;
    if p.cofinite {
        if p.exceptions.is_empty() {
            parts.push(fan.clone());
        } else {
            parts.push(format!("{fan} ∖ {}", brace_list(&p.exceptions)));
        }
    } else if !p.is_empty() {
        let list: Vec<String> = p.exceptions.iter().map(|k| format!("x_{{{i},{k}}}")).collect();
        parts.push(format!("{{{}}}", list.join(",")));
    }
    if r.star {
        parts.push(format!("{fan}*"));
    }
}

fn describe_default(parts: &mut Vec<String>, which: &str, r: &Region) {
    if r.points.cofinite {
        parts.push(format!("X_i ({which})"));
    }
    if r.star {
        parts.push(format!("X_i* ({which})"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SymbolicPoint::*;

    fn fin(i: u64, ks: &[u64], star: bool) -> TameSet {
        let mut s = TameSet::default();
        s.fans.insert(
            i,
            Region {
                points: NatSet::finite(ks.iter().copied()),
                star,
            },
        );
        s
    }

    #[test]
    fn region_arithmetic() {
        let e = FanSpace::new(Family::OmegaFans);
        let a = fin(0, &[1, 5], false);
        let mut cof = TameSet::default();
        cof.fans.insert(0, Region { points: NatSet::all(), star: false });
        assert_eq!(e.meet(&a, &cof), a);
        assert_eq!(e.complement(&e.full_set()), e.empty_set());
        let mut c1 = TameSet::default();
        c1.fans.insert(0, Region { points: NatSet::cofinite([1]), star: false });
        let j = e.join(&c1, &fin(0, &[1], false));
        assert!(j.contains(&FanPoint(0, 1)) && j.contains(&FanPoint(0, 2)) && !j.contains(&FanStar(0)));
    }

    #[test]
    fn tame_op_rejects_foreign_sets() {
        let e = FanSpace::new(Family::BareFan);
        let mut s = TameSet::default();
        s.spine.omega = true;
        assert!(matches!(e.tame_op(&s, &s, TameOp::Meet), Err(Error::FamilyMismatch)));
    }

    #[test]
    fn closure_examples() {
        let e = FanSpace::new(Family::OmegaFans);
        let mut cof = TameSet::default();
        cof.fans.insert(0, Region { points: NatSet::cofinite([3]), star: false });
        let c = e.closure(&cof).unwrap();
        assert!(c.contains(&FanStar(0)));
        let f = fin(0, &[1], false);
        assert_eq!(e.closure(&f).unwrap(), f);
        let stars = TameSet {
            default: Region::star_only(),
            ..TameSet::default()
        };
        assert!(matches!(e.closure(&stars), Err(Error::NotRepresentable(_))));
    }

    #[test]
    fn omega_order_examples() {
        let e = FanSpace::new(Family::OmegaFans);
        let star0 = e.point_set(&FanStar(0));
        let d = e.down(&star0);
        assert_eq!(d, e.join(&star0, &e.point_set(&Spine(0))));
        let u = e.up(&e.point_set(&Spine(0)));
        for p in [Spine(0), FanPoint(0, 7), FanStar(0), Omega, OmegaStar] {
            assert!(u.contains(&p));
        }
        assert!(!u.contains(&Spine(1)));
        assert!(e.is_closed(&u) && !e.is_open(&u));
        assert_eq!(e.down(&e.full_set()), e.full_set());
    }

    #[test]
    fn chain_order_examples() {
        let e = FanSpace::new(Family::ChainFans);
        let u = e.up(&e.point_set(&Spine(2)));
        assert!(u.contains(&Spine(0)) && u.contains(&FanStar(2)) && !u.contains(&FanStar(3)));
        assert!(!u.contains(&OmegaStar) && !u.contains(&Spine(3)));
        let d = e.down(&e.point_set(&OmegaStar));
        assert_eq!(d, e.join(&e.point_set(&OmegaStar), &e.point_set(&Omega)));
    }

    #[test]
    fn clop_sup_examples() {
        let e = FanSpace::new(Family::OmegaFans);
        assert!(e.clop_sup_test(&fin(0, &[1], false).clone()).unwrap());
        let mut u = TameSet::default();
        u.fans.insert(0, Region { points: NatSet::cofinite([2]), star: true });
        assert!(!e.clop_sup_test(&u).unwrap());
        let mut v = e.full_set();
        v.spine.points = NatSet::cofinite([4]);
        v.fans.insert(4, Region { points: NatSet::finite([1]), star: false });
        assert!(e.clop_sup_test(&v).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let e = FanSpace::new(Family::OmegaFans);
        let mut v = e.full_set();
        v.spine.points = NatSet::cofinite([4]);
        v.fans.insert(4, Region { points: NatSet::finite([1]), star: false });
        let back = e.from_json(&e.to_json(&v)).unwrap();
        assert_eq!(back, v);
        let b = FanSpace::new(Family::BareFan);
        let j: TameJson = serde_json::from_str(r#"{"spine":{"mode":"fin","set":[0]}}"#).unwrap();
        assert!(matches!(b.from_json(&j), Err(Error::MalformedTameSet(_))));
    }
}
