//! [`PriestleyEngine`] for the fan families.
//!
//! Hausdorffness of `min Y_d` is read off the trace topology, classified per
//! family:
//! - fan points are isolated and maximal, so `{x}` is a clopen upset and any
//!   antichain of fan points is discrete;
//! - on `omega_fans`, a clopen upset containing some `y_i` contains `ω`, so
//!   its spine part is cofinite: an infinite set of spine points carries the
//!   cofinite topology, which is not Hausdorff;
//! - on `chain_fans`, an antichain holds at most one spine point `y_i`, and
//!   `↑y_i` is clopen, so every antichain is discrete;
//! - on `fan_plus_bottom`, `{y}` is the only antichain meeting the spine.

use serde_json::json;

use super::tame::{Region, SymbolicPoint, TameSet};
use super::{Family, FanSpace};
use crate::d_spectrum::engine::{PriestleyEngine, TopologyClass};
use crate::d_spectrum::condition_four;
use crate::error::Result;

/// Fan and point indices of the catalog window.
const WINDOW: u64 = 4;

impl FanSpace {
    /// A set with finitely many members, each a single point.
    pub fn is_finite_set(&self, s: &TameSet) -> bool {
        s.default.is_empty()
            && s.fans.values().all(|r| !r.points.cofinite && !r.star)
            && !s.spine.points.cofinite
            && !s.omega_star
    }

    fn fan_points_part(&self, s: &TameSet) -> TameSet {
        let pts = self.canon(s.map_fans(&super::NatSet::all(), Region::without_star));
        TameSet {
            spine: Default::default(),
            omega_star: false,
            ..pts
        }
    }

    /// Whole region class of a representative point.
    fn class_of(&self, p: &SymbolicPoint) -> TameSet {
        let mut s = TameSet::default();
        match p {
            SymbolicPoint::FanPoint(..) => {
                if self.family().is_multi_fan() {
                    s.default = Region::points_only();
                } else {
                    s.fans.insert(0, Region::points_only());
                }
            }
            SymbolicPoint::Spine(_) => s.spine.points = super::NatSet::all(),
            _ => return self.point_set(p),
        }
        self.meet(&self.canon(s), &self.full_set())
    }
}

impl PriestleyEngine for FanSpace {
    type Set = TameSet;
    type Point = SymbolicPoint;

    fn space_id(&self) -> String {
        self.family().name().to_string()
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn empty(&self) -> TameSet {
        self.empty_set()
    }

    fn full(&self) -> TameSet {
        self.full_set()
    }

    fn singleton(&self, p: &SymbolicPoint) -> TameSet {
        self.point_set(p)
    }

    fn contains(&self, s: &TameSet, p: &SymbolicPoint) -> bool {
        s.contains(p)
    }

    fn meet(&self, a: &TameSet, b: &TameSet) -> TameSet {
        FanSpace::meet(self, a, b)
    }

    fn join(&self, a: &TameSet, b: &TameSet) -> TameSet {
        FanSpace::join(self, a, b)
    }

    fn complement(&self, a: &TameSet) -> TameSet {
        FanSpace::complement(self, a)
    }

    fn up(&self, a: &TameSet) -> TameSet {
        FanSpace::up(self, a)
    }

    fn down(&self, a: &TameSet) -> TameSet {
        FanSpace::down(self, a)
    }

    fn strict_up(&self, a: &TameSet) -> TameSet {
        FanSpace::strict_up(self, a)
    }

    fn strict_down(&self, a: &TameSet) -> TameSet {
        FanSpace::strict_down(self, a)
    }

    fn closure(&self, a: &TameSet) -> Result<TameSet> {
        FanSpace::closure(self, a)
    }

    fn is_closed(&self, a: &TameSet) -> bool {
        FanSpace::is_closed(self, a)
    }

    fn localic_part(&self) -> TameSet {
        self.localic_closed_form()
    }

    fn core(&self, u: &TameSet) -> Result<TameSet> {
        Ok(self.core_closed_form(u))
    }

    /// Membership by the max-witness condition, evaluated on one
    /// representative per region class; the classes are symmetric under
    /// shifting indices.
    fn yd(&self) -> Result<TameSet> {
        let reps: Vec<SymbolicPoint> = match self.family() {
            Family::BareFan => vec![SymbolicPoint::FanPoint(0, 1)],
            Family::FanPlusBottom => vec![SymbolicPoint::FanPoint(0, 1), SymbolicPoint::Spine(0)],
            Family::OmegaFans => vec![
                SymbolicPoint::FanPoint(1, 1),
                SymbolicPoint::Spine(1),
                SymbolicPoint::Omega,
            ],
            Family::ChainFans => vec![SymbolicPoint::FanPoint(1, 1), SymbolicPoint::Spine(1)],
        };
        let mut out = self.empty_set();
        for p in reps {
            if condition_four(self, &p) {
                out = FanSpace::join(self, &out, &self.class_of(&p));
            }
        }
        Ok(out)
    }

    fn is_single_point(&self, p: &SymbolicPoint) -> bool {
        p.is_single_point()
    }

    fn catalog(&self) -> Vec<SymbolicPoint> {
        let fans = if self.family().is_multi_fan() { WINDOW } else { 1 };
        let mut out = Vec::new();
        for i in 0..fans {
            out.extend((0..WINDOW).map(|k| SymbolicPoint::FanPoint(i, k)));
            out.push(SymbolicPoint::FanStar(i));
            out.push(SymbolicPoint::Spine(i));
        }
        out.push(SymbolicPoint::Omega);
        out.push(SymbolicPoint::OmegaStar);
        out.retain(|p| self.has_point(p));
        out
    }

    fn all_clopen_upsets(&self) -> Option<Vec<TameSet>> {
        None
    }

    fn sample_clopen_upsets(&self) -> Vec<TameSet> {
        self.samples().to_vec()
    }

    fn trace_topology(&self, s: &TameSet) -> TopologyClass {
        if *s == self.empty_set() {
            return TopologyClass::Empty;
        }
        let antichain = FanSpace::meet(self, s, &FanSpace::strict_up(self, s)) == self.empty_set();
        let localic = FanSpace::meet(self, s, &FanSpace::complement(self, &self.localic_closed_form()))
            == self.empty_set();
        if !antichain || !localic {
            return TopologyClass::Other;
        }
        if self.is_finite_set(s) {
            return TopologyClass::FiniteDiscrete;
        }
        match self.family() {
            Family::BareFan | Family::FanPlusBottom | Family::ChainFans => TopologyClass::Discrete,
            Family::OmegaFans => {
                let no_fans = self.fan_points_part(s) == self.empty_set();
                if s.spine.points.is_empty() && !s.spine.omega {
                    TopologyClass::Discrete
                } else if no_fans && s.spine.points.cofinite {
                    TopologyClass::Cofinite
                } else {
                    TopologyClass::Other
                }
            }
        }
    }

    fn describe(&self, s: &TameSet) -> String {
        FanSpace::describe(self, s)
    }

    fn set_json(&self, s: &TameSet) -> serde_json::Value {
        serde_json::to_value(self.to_json(s)).unwrap_or(json!(null))
    }

    fn point_label(&self, p: &SymbolicPoint) -> String {
        match (self.family(), p) {
            (Family::FanPlusBottom, SymbolicPoint::Spine(0)) => "y".into(),
            (Family::BareFan | Family::FanPlusBottom, SymbolicPoint::FanPoint(0, k)) => format!("x_{k}"),
            (Family::BareFan | Family::FanPlusBottom, SymbolicPoint::FanStar(0)) => "N*".into(),
            _ => p.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::d_spectrum::{core, d_apply, is_scott_upset, yd_set};
    use SymbolicPoint::*;

    #[test]
    fn localic_parts() {
        let e = FanSpace::new(Family::OmegaFans);
        let y = e.localic_part();
        for p in [FanPoint(3, 2), Spine(5), Omega] {
            assert!(y.contains(&p));
        }
        assert!(!y.contains(&FanStar(0)) && !y.contains(&OmegaStar));
        let c = FanSpace::new(Family::ChainFans);
        assert!(!c.localic_part().contains(&Omega));
    }

    #[test]
    fn omega_scott_examples() {
        let e = FanSpace::new(Family::OmegaFans);
        assert!(is_scott_upset(&e, &e.full_set()).unwrap());
        let mut u = TameSet::default();
        u.fans.insert(0, Region::full());
        assert!(!is_scott_upset(&e, &u).unwrap());
        let single = e.point_set(&FanPoint(0, 1));
        assert_eq!(core(&e, &single).unwrap(), single);
        assert_eq!(d_apply(&e, &single).unwrap(), single);
        assert_eq!(core(&e, &u).unwrap(), e.fan_points_part(&u));
    }

    #[test]
    fn yd_is_localic_part() {
        for f in Family::ALL {
            let e = FanSpace::new(f);
            assert_eq!(yd_set(&e).unwrap(), e.localic_part(), "{f}");
        }
    }
}
