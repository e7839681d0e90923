//! Checks on the symbolic fan engines. Quantifiers over clopen upsets run
//! over the deterministic sample; equalities of tame sets are decided on the
//! relevant point classes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{ensure, Failure};
use crate::d_spectrum::{
    self as ds, core_d, d_apply, double_pseudocomplement, is_clop_scott, spectrum_report, PriestleyEngine,
    TopologyClass, UnitVerdict,
};
use crate::fan_spaces::{Family, FanSpace, SymbolicPoint, TameJson, TameSet, SAMPLE_SIZE};
use crate::faults::Faults;

type Check = std::result::Result<(), Failure>;

/// Clopen sets drawn for the down-closure check.
const CLOPEN_DRAWS: usize = 200;
/// Sample pairs used by the binary checks.
const PAIR_LIMIT: usize = 400;

pub struct FanCtx {
    pub space: FanSpace,
}

impl FanCtx {
    pub fn new(family: Family, faults: Faults, seed: u64) -> Self {
        FanCtx {
            space: FanSpace::with_options(family, faults, seed, SAMPLE_SIZE),
        }
    }

    fn show(&self, s: &TameSet) -> String {
        self.space.describe(s)
    }

    fn pair_show(&self, a: &TameSet, b: &TameSet) -> String {
        format!("A = {}, B = {}", self.show(a), self.show(b))
    }

    /// Index pairs `(i, i+1)`, `(i, i+7)` and `(i, 3i+1)` modulo the sample size.
    fn pairs(&self) -> impl Iterator<Item = (&TameSet, &TameSet)> {
        let s = self.space.samples();
        let n = s.len();
        (0..n)
            .flat_map(move |i| [(i, (i + 1) % n), (i, (i + 7) % n), (i, (3 * i + 1) % n)])
            .take(PAIR_LIMIT)
            .map(move |(i, j)| (&s[i], &s[j]))
    }

    fn is_clopen_upset(&self, u: &TameSet) -> bool {
        let e = &self.space;
        e.is_closed(u) && e.is_open(u) && e.up(u) == *u
    }

    fn literal(&self, v: serde_json::Value) -> Result<TameSet, Failure> {
        let j: TameJson = serde_json::from_value(v).map_err(|err| Failure::new("literal", err.to_string()))?;
        Ok(self.space.from_json(&j)?)
    }
}

pub fn fan_d_laws(ctx: &FanCtx) -> Check {
    let e = &ctx.space;
    ensure(d_apply(e, &e.empty_set())? == e.empty_set(), || "∅".into(), "d∅ ≠ ∅")?;
    ensure(d_apply(e, &e.full_set())? == e.full_set(), || "X".into(), "dX ≠ X")?;
    for u in e.samples() {
        let d = d_apply(e, u)?;
        let obj = || ctx.show(u);
        ensure(ctx.is_clopen_upset(&d), obj, "dU is not a clopen upset")?;
        ensure(e.meet(u, &d) == *u, obj, "U ⊄ dU")?;
        ensure(d_apply(e, &d)? == d, obj, "ddU ≠ dU")?;
        ensure(e.closure(&core_d(e, u)?)? == d, obj, "dU ≠ cl core_d U")?;
        e.check_union_form(u)?;
        if is_clop_scott(e, u) {
            ensure(d == double_pseudocomplement(e, u), obj, "dU ≠ U** on a Scott upset")?;
        }
    }
    for (a, b) in ctx.pairs() {
        let lhs = d_apply(e, &e.meet(a, b))?;
        let rhs = e.meet(&d_apply(e, a)?, &d_apply(e, b)?);
        ensure(lhs == rhs, || ctx.pair_show(a, b), "d(A ∩ B) ≠ dA ∩ dB")?;
    }
    Ok(())
}

pub fn fan_contract(ctx: &FanCtx) -> Check {
    let e = &ctx.space;
    let loc = e.localic_part();
    for p in e.catalog() {
        let down = e.down(&e.point_set(&p));
        ensure(
            loc.contains(&p) == (e.is_closed(&down) && e.is_open(&down)),
            || e.point_label(&p),
            "localic part differs from the points with clopen principal down-set",
        )?;
    }
    for u in e.samples() {
        let obj = || ctx.show(u);
        ensure(ctx.is_clopen_upset(u), obj, "sample is not a clopen upset")?;
        let core = e.core_closed_form(u);
        ensure(core == e.up(&e.meet(u, &loc)), obj, "core U ≠ ↑(U ∩ Y)")?;
        ensure(e.closure(&core)? == *u, obj, "cl core U ≠ U")?;
        ensure(e.clop_sup_test(u)? == is_clop_scott(e, u), obj, "closed-form Scott test disagrees")?;
        if e.family() == Family::OmegaFans && !u.spine.points.is_empty() {
            ensure(
                u.spine.omega && u.spine.points.cofinite,
                obj,
                "a clopen upset meets the spine without containing ω and a cofinite part of it",
            )?;
        }
    }
    for (a, b) in ctx.pairs() {
        let obj = || ctx.pair_show(a, b);
        if is_clop_scott(e, a) && is_clop_scott(e, b) {
            ensure(is_clop_scott(e, &e.meet(a, b)), obj, "clopen Scott upsets are not closed under ∩")?;
        }
        let m = e.meet(a, b);
        let j = e.join(a, b);
        let c = e.complement(a);
        let up = e.up(a);
        let down = e.down(a);
        let su = e.strict_up(a);
        let sd = e.strict_down(a);
        let rel = e.relevant_points(&[a, b, &up, &down]);
        for q in &rel {
            let at = |what: &str| Failure::new(obj(), what.to_string()).at(e.point_label(q));
            if m.contains(q) != (a.contains(q) && b.contains(q))
                || j.contains(q) != (a.contains(q) || b.contains(q))
                || c.contains(q) == a.contains(q)
            {
                return Err(at("a Boolean operation is wrong pointwise"));
            }
            let below = rel.iter().any(|p| a.contains(p) && e.leq(p, q));
            let above = rel.iter().any(|p| a.contains(p) && e.leq(q, p));
            let s_below = rel.iter().any(|p| p != q && a.contains(p) && e.leq(p, q));
            let s_above = rel.iter().any(|p| p != q && a.contains(p) && e.leq(q, p));
            if up.contains(q) != below || down.contains(q) != above {
                return Err(at("↑ or ↓ disagrees with the order"));
            }
            // A class may hold several points, so strictness is only checked
            // against the other classes.
            if (s_below && !su.contains(q)) || (s_above && !sd.contains(q)) {
                return Err(at("strict ↑ or ↓ misses a point"));
            }
        }
    }
    closure_laws(ctx)?;
    let mut rng = ChaCha8Rng::seed_from_u64(e.seed());
    for _ in 0..CLOPEN_DRAWS {
        let c = e.random_clopen(&mut rng);
        let down = e.down(&c);
        ensure(e.is_closed(&down) && e.is_open(&down), || ctx.show(&c), "↓C is not clopen")?;
    }
    Ok(())
}

fn closure_laws(ctx: &FanCtx) -> Check {
    let e = &ctx.space;
    let mut sets: Vec<TameSet> = e.catalog().iter().map(|p| e.point_set(p)).collect();
    for u in e.samples().iter().take(100) {
        sets.push(e.strict_up(u));
        sets.push(e.strict_down(u));
        sets.push(e.meet(u, &e.localic_part()));
    }
    let closed: Vec<(TameSet, TameSet)> = sets
        .into_iter()
        .filter_map(|s| e.closure(&s).ok().map(|c| (s, c)))
        .collect();
    for (s, c) in &closed {
        let obj = || ctx.show(s);
        ensure(e.meet(s, c) == *s, obj, "closure is not extensive")?;
        ensure(e.is_closed(c) && e.closure(c)? == *c, obj, "closure is not idempotent")?;
        if let Ok(i) = e.interior(s) {
            ensure(e.meet(&i, s) == i && e.is_open(&i), obj, "interior is not an open subset")?;
        }
    }
    for (a, ca) in &closed {
        for (b, cb) in closed.iter().take(40) {
            if e.meet(a, b) == *a {
                ensure(e.meet(ca, cb) == *ca, || ctx.pair_show(a, b), "closure is not monotone")?;
            }
        }
    }
    Ok(())
}

pub fn fan_canonical(ctx: &FanCtx) -> Check {
    let e = &ctx.space;
    for a in e.samples() {
        let obj = || ctx.show(a);
        let c = e.complement(a);
        ensure(e.meet(a, &c) == e.empty_set(), obj, "A ∩ ∁A is not the canonical ∅")?;
        ensure(e.join(a, &c) == e.full_set(), obj, "A ∪ ∁A is not the canonical X")?;
        ensure(e.complement(&c) == *a, obj, "∁∁A ≠ A")?;
        ensure(e.canon(a.clone()) == *a, obj, "canonical form is not idempotent")?;
        ensure(e.from_json(&e.to_json(a))? == *a, obj, "JSON round trip changes the set")?;
    }
    for (a, b) in ctx.pairs() {
        for (x, y) in [(e.meet(a, b), e.meet(b, a)), (e.join(a, b), e.join(b, a)), (a.clone(), b.clone())] {
            let rel = e.relevant_points(&[&x, &y]);
            let pointwise = rel.iter().all(|p| x.contains(p) == y.contains(p));
            ensure(
                pointwise == (x == y),
                || ctx.pair_show(&x, &y),
                "structural equality differs from equality of members",
            )?;
        }
    }
    Ok(())
}

struct Expected {
    localic: serde_json::Value,
    max_y: serde_json::Value,
    min_yd: serde_json::Value,
    topology: TopologyClass,
    compact: bool,
    hausdorff: bool,
    max_bounded: bool,
    refuted_at: Option<&'static str>,
    regular: bool,
}

fn expected(family: Family) -> Expected {
    let fan_points = json!({"fans": {"exceptions": {"0": {"mode": "cofin"}}}});
    let all_fan_points = json!({"fans": {"default": "points"}, "spine": {"mode": "fin"}, "omega_star": false});
    match family {
        Family::BareFan => Expected {
            localic: fan_points.clone(),
            max_y: fan_points.clone(),
            min_yd: fan_points,
            topology: TopologyClass::Discrete,
            compact: false,
            hausdorff: true,
            max_bounded: true,
            refuted_at: Some("N*"),
            regular: true,
        },
        Family::FanPlusBottom => Expected {
            localic: json!({"fans": {"exceptions": {"0": {"mode": "cofin"}}}, "spine": {"mode": "fin", "set": [0]}}),
            max_y: json!({"fans": {"exceptions": {"0": {"mode": "cofin"}}}, "spine": {"mode": "fin"}}),
            min_yd: json!({"spine": {"mode": "fin", "set": [0]}}),
            topology: TopologyClass::FiniteDiscrete,
            compact: true,
            hausdorff: true,
            max_bounded: true,
            refuted_at: None,
            regular: false,
        },
        Family::OmegaFans => Expected {
            localic: json!({"fans": {"default": "points"}, "spine": {"mode": "cofin", "omega": true}}),
            max_y: json!({"fans": {"default": "points"}, "spine": {"mode": "fin", "omega": true}}),
            min_yd: json!({"spine": {"mode": "cofin", "omega": false}}),
            topology: TopologyClass::Cofinite,
            compact: true,
            hausdorff: false,
            max_bounded: true,
            refuted_at: None,
            regular: false,
        },
        Family::ChainFans => Expected {
            localic: json!({"fans": {"default": "points"}, "spine": {"mode": "cofin", "omega": false}}),
            max_y: all_fan_points,
            min_yd: json!({}),
            topology: TopologyClass::Empty,
            compact: true,
            hausdorff: true,
            max_bounded: false,
            refuted_at: Some("X_ω*"),
            regular: false,
        },
    }
}

pub fn fan_reproductions(ctx: &FanCtx) -> Check {
    let e = &ctx.space;
    let want = expected(e.family());
    let r = spectrum_report(e)?;
    let loc = ctx.literal(want.localic)?;
    let max_y = ctx.literal(want.max_y)?;
    let min = ctx.literal(want.min_yd)?;
    let family = || e.family().name().to_string();

    ensure(e.localic_part() == loc, family, "localic part differs from the closed form")?;
    ensure(ds::yd_set(e)? == loc, family, "Y_d differs from the localic part")?;
    ensure(e.diff(&loc, &e.strict_down(&loc)) == max_y, family, "max Y differs from the closed form")?;
    let got = ds::min_yd(e)?;
    ensure(got.set == min, family, "min Y_d differs from the closed form")?;
    ensure(r.min_yd_topology == want.topology, family, "topology of min Y_d differs")?;
    ensure(r.flags.compact == want.compact, family, "compactness differs")?;
    ensure(r.flags.hausdorff == want.hausdorff, family, "Hausdorffness differs")?;
    ensure(r.flags.max_bounded == want.max_bounded, family, "max-boundedness differs")?;
    match (&r.unit, want.refuted_at) {
        (UnitVerdict::Witness { .. }, None) => {}
        (UnitVerdict::Refutation { point_class, .. }, Some(at)) if point_class == at => {}
        _ => return Err(Failure::new(family(), format!("unit verdict differs: {:?}", r.unit))),
    }
    let reg = r.regularity;
    let ok = if want.regular { reg.all() } else { reg.none() };
    ensure(ok, family, "regularity verdicts differ")?;
    ensure(r.frame.algebraic && r.frame.arithmetic, family, "frame is not algebraic and arithmetic")?;
    if e.family() == Family::BareFan {
        for u in e.samples() {
            ensure(d_apply(e, u)? == *u, || ctx.show(u), "d is not the identity")?;
        }
    }
    let omega_localic = loc.contains(&SymbolicPoint::Omega);
    ensure(
        omega_localic == (e.family() == Family::OmegaFans),
        family,
        "ω is localic on the wrong family",
    )
}
