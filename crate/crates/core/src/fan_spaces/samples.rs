//! Deterministic samples of clopen tame upsets, the finite sets of point
//! classes that decide equalities between tame sets, and the finite
//! approximants used to check `d` against its defining union.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::tame::{NatSet, Region, SpinePart, SymbolicPoint, TameSet};
use super::{Family, FanSpace};
use crate::d_spectrum::{d_apply, double_pseudocomplement, is_clop_scott, PriestleyEngine};
use crate::error::{Error, Result};

/// Indices drawn for explicit fans and exceptions. Single-fan families
/// draw point indices from a wider range, since they have far fewer
/// clopen upsets below a given index.
const INDEX_RANGE: u64 = 6;
const SINGLE_FAN_INDEX_RANGE: u64 = 12;

impl FanSpace {
    /// The sample: `∅`, `X`, then clopen upsets of four kinds: `X ∖ ↓C` for a
    /// random clopen `C`, finite sets of fan points, up-sets of spine sets
    /// that happen to be clopen, and meets and joins of earlier samples.
    pub fn samples(&self) -> &[TameSet] {
        self.samples.get_or_init(|| self.draw_samples())
    }

    fn draw_samples(&self) -> Vec<TameSet> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed() ^ self.family() as u64);
        let mut out = vec![self.empty_set(), self.full_set()];
        let mut seen: BTreeSet<TameSet> = out.iter().cloned().collect();
        let mut attempts = 0;
        while out.len() < self.sample_size() && attempts < 50 * self.sample_size() {
            attempts += 1;
            let cand = match rng.gen_range(0..4) {
                0 => {
                    let c = self.random_clopen(&mut rng);
                    self.complement(&self.down(&c))
                }
                1 => self.random_fan_points(&mut rng),
                2 => match self.random_spine_upset(&mut rng) {
                    Some(u) => u,
                    None => continue,
                },
                _ => {
                    let a = out.choose(&mut rng).cloned().unwrap_or_default();
                    let b = out.choose(&mut rng).cloned().unwrap_or_default();
                    if rng.gen_bool(0.5) {
                        self.meet(&a, &b)
                    } else {
                        self.join(&a, &b)
                    }
                }
            };
            if seen.insert(cand.clone()) {
                out.push(cand);
            }
        }
        out
    }

    fn index_range(&self) -> u64 {
        if self.family().is_multi_fan() {
            INDEX_RANGE
        } else {
            SINGLE_FAN_INDEX_RANGE
        }
    }

    fn random_natset(&self, rng: &mut ChaCha8Rng) -> BTreeSet<u64> {
        let n = rng.gen_range(0..4);
        (0..n).map(|_| rng.gen_range(0..self.index_range())).collect()
    }

    fn random_clopen_region(&self, rng: &mut ChaCha8Rng) -> Region {
        let set = self.random_natset(rng);
        if rng.gen_bool(0.5) {
            Region {
                points: NatSet::finite(set),
                star: false,
            }
        } else {
            Region {
                points: NatSet::cofinite(set),
                star: true,
            }
        }
    }

    /// A random clopen tame set.
    pub fn random_clopen(&self, rng: &mut ChaCha8Rng) -> TameSet {
        let mut s = TameSet::default();
        if self.family().is_multi_fan() {
            if rng.gen_bool(0.5) {
                s.default = Region::full();
                s.omega_star = true;
            }
            for _ in 0..rng.gen_range(0..4) {
                s.fans.insert(rng.gen_range(0..INDEX_RANGE), self.random_clopen_region(rng));
            }
            let set = self.random_natset(rng);
            s.spine = if rng.gen_bool(0.5) {
                SpinePart {
                    points: NatSet::finite(set),
                    omega: false,
                }
            } else {
                SpinePart {
                    points: NatSet::cofinite(set),
                    omega: true,
                }
            };
        } else {
            s.fans.insert(0, self.random_clopen_region(rng));
            if rng.gen_bool(0.5) {
                s.spine.points = NatSet::finite([0]);
            }
        }
        self.canon(s)
    }

    fn random_fan_points(&self, rng: &mut ChaCha8Rng) -> TameSet {
        let fans = if self.family().is_multi_fan() { INDEX_RANGE } else { 1 };
        let mut s = self.empty_set();
        for _ in 0..rng.gen_range(1..4) {
            let p = SymbolicPoint::FanPoint(rng.gen_range(0..fans), rng.gen_range(0..self.index_range()));
            s = self.join(&s, &self.point_set(&p));
        }
        self.up(&s)
    }

    /// `↑S` for a random spine set `S` (cofinite on `omega_fans`, finite on
    /// `chain_fans`), when that is clopen.
    fn random_spine_upset(&self, rng: &mut ChaCha8Rng) -> Option<TameSet> {
        let points = match self.family() {
            Family::BareFan => return None,
            Family::FanPlusBottom => NatSet::finite([0]),
            Family::OmegaFans => NatSet::cofinite(self.random_natset(rng)),
            Family::ChainFans => NatSet::finite(self.random_natset(rng)),
        };
        let s = self.canon(TameSet {
            spine: SpinePart { points, omega: false },
            ..TameSet::default()
        });
        let u = self.up(&s);
        (self.is_closed(&u) && self.is_open(&u)).then_some(u)
    }

    /// Point classes deciding every equality between the given sets: each
    /// mentioned fan and point index, one fresh index of each kind, `ω` and
    /// `X_ω*`, restricted to the family.
    pub fn relevant_points(&self, sets: &[&TameSet]) -> Vec<SymbolicPoint> {
        let mut fans: BTreeSet<u64> = [0].into();
        let mut ks: BTreeSet<u64> = [0].into();
        for s in sets {
            fans.extend(s.mentioned_indices());
            ks.extend(s.mentioned_point_indices());
        }
        let fresh_fan = fans.last().map_or(0, |m| m + 1);
        let fresh_k = ks.last().map_or(0, |m| m + 1);
        fans.insert(fresh_fan);
        ks.insert(fresh_k);
        let mut out = Vec::new();
        for &i in &fans {
            out.extend(ks.iter().map(|&k| SymbolicPoint::FanPoint(i, k)));
            out.push(SymbolicPoint::FanStar(i));
            out.push(SymbolicPoint::Spine(i));
        }
        out.push(SymbolicPoint::Omega);
        out.push(SymbolicPoint::OmegaStar);
        out.retain(|p| self.has_point(p));
        out
    }

    /// The clopen Scott upset obtained from `core u` by cutting every
    /// open, non-closed part down to indices below `n`.
    pub fn approximant(&self, core: &TameSet, n: u64) -> TameSet {
        let cut = |r: &Region| {
            if r.is_open() && !r.is_closed() {
                Region {
                    points: r.points.intersection(&NatSet::finite(0..n)),
                    star: false,
                }
            } else {
                r.clone()
            }
        };
        let mut out = core.clone();
        let default_open_only = core.default.points.cofinite && !(core.default.star && core.omega_star);
        if default_open_only {
            for i in 0..n {
                out.fans.entry(i).or_insert_with(|| core.default.clone());
            }
            out.default = Region::empty();
            out.omega_star = false;
        }
        for r in out.fans.values_mut() {
            *r = cut(r);
        }
        if out.spine.points.cofinite && !out.spine.omega {
            out.spine.points = out.spine.points.intersection(&NatSet::finite(0..n));
        }
        if out.default.is_empty() {
            out.omega_star = false;
        }
        self.canon(out)
    }

    /// Checks `d u` against its defining union `cl ⋃ {V** | V clopen Scott
    /// upset, V ⊆ u}` through one large approximant `V`: `V` must be a
    /// clopen Scott upset inside `u`, `V** ⊆ d u`, and the two sides must
    /// agree on every localic relevant point with indices below the cut.
    pub fn check_union_form(&self, u: &TameSet) -> Result<()> {
        let d = d_apply(self, u)?;
        let core = self.core_closed_form(u);
        let rel = self.relevant_points(&[u, &d, &core]);
        let n = rel
            .iter()
            .map(|p| match *p {
                SymbolicPoint::FanPoint(i, k) => i.max(k),
                SymbolicPoint::FanStar(i) | SymbolicPoint::Spine(i) => i,
                _ => 0,
            })
            .max()
            .unwrap_or(0)
            + 1;
        let v = self.approximant(&core, n);
        let fail = |what: &str| {
            Err(Error::invariant(
                "d agrees with its defining union",
                format!("U = {}, V = {}: {what}", self.describe(u), self.describe(&v)),
            ))
        };
        if !(self.is_closed(&v) && self.is_open(&v) && self.up(&v) == v && is_clop_scott(self, &v)) {
            return fail("V is not a clopen Scott upset");
        }
        if self.meet(&v, u) != v {
            return fail("V ⊄ U");
        }
        let vv = double_pseudocomplement(self, &v);
        if self.meet(&vv, &d) != vv {
            return fail("V** ⊄ dU");
        }
        let y = self.localic_part();
        let below = |p: &SymbolicPoint| match *p {
            SymbolicPoint::FanPoint(i, k) => i < n && k < n,
            SymbolicPoint::Spine(i) => i < n,
            _ => true,
        };
        for p in rel.iter().filter(|p| y.contains(p) && below(p)) {
            if vv.contains(p) != d.contains(p) {
                return fail(&format!("they differ at {}", self.point_label(p)));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_deterministic_and_sized() {
        for f in Family::ALL {
            let a = FanSpace::new(f);
            let b = FanSpace::new(f);
            assert_eq!(a.samples(), b.samples());
            assert_eq!(a.samples().len(), super::super::SAMPLE_SIZE, "{f}");
        }
    }

    #[test]
    fn relevant_points_include_fresh_indices() {
        let e = FanSpace::new(Family::OmegaFans);
        let s = e.point_set(&SymbolicPoint::FanPoint(2, 3));
        let rel = e.relevant_points(&[&s]);
        assert!(rel.contains(&SymbolicPoint::FanPoint(3, 4)));
        assert!(rel.contains(&SymbolicPoint::OmegaStar));
    }
}
