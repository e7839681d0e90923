//! Tame sets: subsets of a fan space described by finite/cofinite data.
//!
//! A fan is a copy `X_i` of `N` together with its remainder `X_i*`, treated as
//! a single indivisible class. A region value describes the part of a set
//! inside one fan: which points of `X_i` (a finite or cofinite index set) and
//! whether `X_i*` is included. All but finitely many fans share a default
//! region value, whose index set is `∅` or everything.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// A finite or cofinite subset of `N`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatSet {
    pub cofinite: bool,
    /// The members when finite, the non-members when cofinite.
    pub exceptions: BTreeSet<u64>,
}

impl NatSet {
    pub fn empty() -> Self {
        NatSet::default()
    }

    pub fn all() -> Self {
        NatSet {
            cofinite: true,
            exceptions: BTreeSet::new(),
        }
    }

    pub fn finite<I: IntoIterator<Item = u64>>(it: I) -> Self {
        NatSet {
            cofinite: false,
            exceptions: it.into_iter().collect(),
        }
    }

    pub fn cofinite<I: IntoIterator<Item = u64>>(it: I) -> Self {
        NatSet {
            cofinite: true,
            exceptions: it.into_iter().collect(),
        }
    }

    /// `{k | k >= m}`.
    pub fn at_least(m: u64) -> Self {
        NatSet::cofinite(0..m)
    }

    /// `{k | k <= m}`.
    pub fn up_to(m: u64) -> Self {
        NatSet::finite(0..=m)
    }

    pub fn contains(&self, k: u64) -> bool {
        self.cofinite != self.exceptions.contains(&k)
    }

    pub fn is_empty(&self) -> bool {
        !self.cofinite && self.exceptions.is_empty()
    }

    pub fn is_all(&self) -> bool {
        self.cofinite && self.exceptions.is_empty()
    }

    pub fn least(&self) -> Option<u64> {
        if self.cofinite {
            (0..).find(|k| !self.exceptions.contains(k))
        } else {
            self.exceptions.first().copied()
        }
    }

    /// Largest member of a finite set.
    pub fn greatest(&self) -> Option<u64> {
        if self.cofinite {
            None
        } else {
            self.exceptions.last().copied()
        }
    }

    pub fn complement(&self) -> Self {
        NatSet {
            cofinite: !self.cofinite,
            exceptions: self.exceptions.clone(),
        }
    }

    pub fn union(&self, o: &Self) -> Self {
        match (self.cofinite, o.cofinite) {
            (false, false) => NatSet::finite(self.exceptions.union(&o.exceptions).copied()),
            (false, true) => NatSet::cofinite(o.exceptions.difference(&self.exceptions).copied()),
            (true, false) => NatSet::cofinite(self.exceptions.difference(&o.exceptions).copied()),
            (true, true) => NatSet::cofinite(self.exceptions.intersection(&o.exceptions).copied()),
        }
    }

    pub fn intersection(&self, o: &Self) -> Self {
        self.complement().union(&o.complement()).complement()
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.intersection(&o.complement()).is_empty()
    }
}

impl fmt::Display for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.exceptions.iter().map(u64::to_string).collect();
        match (self.cofinite, list.is_empty()) {
            (false, true) => write!(f, "∅"),
            (false, false) => write!(f, "{{{}}}", list.join(",")),
            (true, true) => write!(f, "all"),
            (true, false) => write!(f, "all but {{{}}}", list.join(",")),
        }
    }
}

/// The part of a tame set inside one fan `cl X_i = X_i ∪ X_i*`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region {
    pub points: NatSet,
    pub star: bool,
}

impl Region {
    pub fn empty() -> Self {
        Region::default()
    }

    /// All of `cl X_i`.
    pub fn full() -> Self {
        Region {
            points: NatSet::all(),
            star: true,
        }
    }

    /// `X_i` without its remainder.
    pub fn points_only() -> Self {
        Region {
            points: NatSet::all(),
            star: false,
        }
    }

    /// `X_i*` alone.
    pub fn star_only() -> Self {
        Region {
            points: NatSet::empty(),
            star: true,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && !self.star
    }

    pub fn is_full(&self) -> bool {
        self.points.is_all() && self.star
    }

    /// Open unless the remainder is present while only finitely many points are.
    pub fn is_open(&self) -> bool {
        self.points.cofinite || !self.star
    }

    /// Closed unless cofinitely many points are present without the remainder.
    pub fn is_closed(&self) -> bool {
        !self.points.cofinite || self.star
    }

    pub fn closure(&self) -> Self {
        Region {
            points: self.points.clone(),
            star: self.star || self.points.cofinite,
        }
    }

    pub fn union(&self, o: &Self) -> Self {
        Region {
            points: self.points.union(&o.points),
            star: self.star || o.star,
        }
    }

    pub fn intersection(&self, o: &Self) -> Self {
        Region {
            points: self.points.intersection(&o.points),
            star: self.star && o.star,
        }
    }

    pub fn complement(&self) -> Self {
        Region {
            points: self.points.complement(),
            star: !self.star,
        }
    }

    /// Drops the remainder, keeping the points of `X_i`.
    pub fn without_star(&self) -> Self {
        Region {
            points: self.points.clone(),
            star: false,
        }
    }
}

/// The spine `Y_ω = {y_i} ∪ {ω}`, topologised as the one-point
/// compactification of the discrete `{y_i}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinePart {
    pub points: NatSet,
    pub omega: bool,
}

impl SpinePart {
    pub fn empty() -> Self {
        SpinePart::default()
    }

    pub fn complement(&self) -> Self {
        SpinePart {
            points: self.points.complement(),
            omega: !self.omega,
        }
    }

    pub fn union(&self, o: &Self) -> Self {
        SpinePart {
            points: self.points.union(&o.points),
            omega: self.omega || o.omega,
        }
    }

    pub fn intersection(&self, o: &Self) -> Self {
        SpinePart {
            points: self.points.intersection(&o.points),
            omega: self.omega && o.omega,
        }
    }
}

/// A point class of a fan space. `FanStar(i)` and `OmegaStar` stand for the
/// remainders `X_i*` and `X_ω*`; every other class is a single point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SymbolicPoint {
    FanPoint(u64, u64),
    FanStar(u64),
    Spine(u64),
    Omega,
    OmegaStar,
}

impl SymbolicPoint {
    pub fn is_single_point(&self) -> bool {
        !matches!(self, SymbolicPoint::FanStar(_) | SymbolicPoint::OmegaStar)
    }
}

impl fmt::Display for SymbolicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicPoint::FanPoint(i, k) => write!(f, "x_{{{i},{k}}}"),
            SymbolicPoint::FanStar(i) => write!(f, "X_{i}*"),
            SymbolicPoint::Spine(i) => write!(f, "y_{i}"),
            SymbolicPoint::Omega => write!(f, "ω"),
            SymbolicPoint::OmegaStar => write!(f, "X_ω*"),
        }
    }
}

/// A tame subset of a fan space. Canonical forms are produced by the owning
/// [`super::FanSpace`]; two canonical tame sets are equal iff they have the
/// same members.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TameSet {
    /// Region value of every fan without an explicit entry. Its index set is
    /// always `∅` or everything.
    pub default: Region,
    pub fans: BTreeMap<u64, Region>,
    pub spine: SpinePart,
    pub omega_star: bool,
}

impl TameSet {
    pub fn region(&self, i: u64) -> &Region {
        self.fans.get(&i).unwrap_or(&self.default)
    }

    pub fn contains(&self, p: &SymbolicPoint) -> bool {
        match *p {
            SymbolicPoint::FanPoint(i, k) => self.region(i).points.contains(k),
            SymbolicPoint::FanStar(i) => self.region(i).star,
            SymbolicPoint::Spine(i) => self.spine.points.contains(i),
            SymbolicPoint::Omega => self.spine.omega,
            SymbolicPoint::OmegaStar => self.omega_star,
        }
    }

    /// Fan indices whose region satisfies `pred`; `pred` must fail on the
    /// empty region for the result to be meaningful on single-fan spaces.
    pub fn fan_support(&self, pred: impl Fn(&Region) -> bool) -> NatSet {
        if pred(&self.default) {
            NatSet::cofinite(self.fans.iter().filter(|(_, r)| !pred(r)).map(|(&i, _)| i))
        } else {
            NatSet::finite(self.fans.iter().filter(|(_, r)| pred(r)).map(|(&i, _)| i))
        }
    }

    /// Replaces the region of every fan in `which` by `f` of it.
    pub fn map_fans(&self, which: &NatSet, f: impl Fn(&Region) -> Region) -> TameSet {
        let mut out = self.clone();
        if which.cofinite {
            for &i in &which.exceptions {
                out.fans.entry(i).or_insert_with(|| self.default.clone());
            }
            for (i, r) in out.fans.iter_mut() {
                if which.contains(*i) {
                    *r = f(r);
                }
            }
            out.default = f(&self.default);
        } else {
            for &i in &which.exceptions {
                let r = f(self.region(i));
                out.fans.insert(i, r);
            }
        }
        out
    }

    /// Every fan index mentioned explicitly, in fan entries or on the spine.
    pub fn mentioned_indices(&self) -> BTreeSet<u64> {
        let mut out: BTreeSet<u64> = self.fans.keys().copied().collect();
        out.extend(self.spine.points.exceptions.iter().copied());
        out
    }

    /// Every point index mentioned in some region's exceptions.
    pub fn mentioned_point_indices(&self) -> BTreeSet<u64> {
        let mut out: BTreeSet<u64> = self.default.points.exceptions.clone();
        for r in self.fans.values() {
            out.extend(r.points.exceptions.iter().copied());
        }
        out
    }
}

/// How a region's index set is given in JSON.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Fin,
    Cofin,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionJson {
    pub mode: Mode,
    #[serde(default)]
    pub set: Vec<u64>,
    #[serde(default)]
    pub star: bool,
}

impl From<&Region> for RegionJson {
    fn from(r: &Region) -> Self {
        RegionJson {
            mode: if r.points.cofinite { Mode::Cofin } else { Mode::Fin },
            set: r.points.exceptions.iter().copied().collect(),
            star: r.star,
        }
    }
}

impl From<&RegionJson> for Region {
    fn from(r: &RegionJson) -> Self {
        Region {
            points: NatSet {
                cofinite: r.mode == Mode::Cofin,
                exceptions: r.set.iter().copied().collect(),
            },
            star: r.star,
        }
    }
}

/// Named default region values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DefaultRegion {
    Empty,
    Full,
    Points,
    Stars,
}

impl DefaultRegion {
    pub fn region(self) -> Region {
        match self {
            DefaultRegion::Empty => Region::empty(),
            DefaultRegion::Full => Region::full(),
            DefaultRegion::Points => Region::points_only(),
            DefaultRegion::Stars => Region::star_only(),
        }
    }

    pub fn of(r: &Region) -> Option<Self> {
        [Self::Empty, Self::Full, Self::Points, Self::Stars]
            .into_iter()
            .find(|d| d.region() == *r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FansJson {
    #[serde(default = "default_empty")]
    pub default: DefaultRegion,
    #[serde(default)]
    pub exceptions: BTreeMap<String, RegionJson>,
}

fn default_empty() -> DefaultRegion {
    DefaultRegion::Empty
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineJson {
    pub mode: Mode,
    #[serde(default)]
    pub set: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<bool>,
}

/// JSON tame-set literal. Fields are absent for families lacking the regions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TameJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fans: Option<FansJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spine: Option<SpineJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_star: Option<bool>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn natset() -> impl Strategy<Value = NatSet> {
        (any::<bool>(), proptest::collection::btree_set(0u64..8, 0..4))
            .prop_map(|(cofinite, exceptions)| NatSet { cofinite, exceptions })
    }

    proptest! {
        #[test]
        fn natset_ops_are_pointwise(a in natset(), b in natset()) {
            for k in 0..10 {
                prop_assert_eq!(a.union(&b).contains(k), a.contains(k) || b.contains(k));
                prop_assert_eq!(a.intersection(&b).contains(k), a.contains(k) && b.contains(k));
                prop_assert_eq!(a.complement().contains(k), !a.contains(k));
            }
            prop_assert_eq!(a.is_subset(&b), (0..10).all(|k| !a.contains(k) || b.contains(k)));
        }

        #[test]
        fn natset_min_is_least_member(a in natset()) {
            match a.least() {
                Some(m) => {
                    prop_assert!(a.contains(m));
                    prop_assert!((0..m).all(|k| !a.contains(k)));
                }
                None => prop_assert!(a.is_empty()),
            }
        }
    }

    #[test]
    fn region_topology() {
        assert!(Region::empty().is_open() && Region::empty().is_closed());
        assert!(Region::full().is_open() && Region::full().is_closed());
        assert!(Region::points_only().is_open() && !Region::points_only().is_closed());
        assert!(!Region::star_only().is_open() && Region::star_only().is_closed());
        assert_eq!(Region::points_only().closure(), Region::full());
    }

    #[test]
    fn map_fans_materialises_exceptions() {
        let t = TameSet::default();
        let m = t.map_fans(&NatSet::cofinite([2]), |_| Region::full());
        assert!(m.contains(&SymbolicPoint::FanStar(0)));
        assert!(!m.contains(&SymbolicPoint::FanStar(2)));
        assert!(m.contains(&SymbolicPoint::FanPoint(9, 9)));
    }

    #[test]
    fn json_literal_parses() {
        let text = r#"{"fans":{"default":"empty","exceptions":{"0":{"mode":"fin","set":[1,5],"star":false}}},"spine":{"mode":"cofin","set":[],"omega":true},"omega_star":true}"#;
        let j: TameJson = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&j).unwrap(), text);
    }
}
