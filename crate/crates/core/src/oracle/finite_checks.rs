//! Checks on finite posets. Each quantifies over every relevant object of
//! one space and recomputes the claimed identity from definitions.

use std::collections::BTreeMap;

use super::{ensure, Failure, FiniteCtx};
use crate::birkhoff::{
    check_round_trip, clopen_upset_lattice, double_pseudocomplement, frame_join, frame_meet, implies,
    priestley_dual, pseudocomplement, validate_lattice, RoundTrip,
};
use crate::d_spectrum::{
    self as ds, finite::l_regular, spectrum_report, PriestleyEngine, TopologyClass,
};
use crate::nuclei::{
    admissible_upset, booleanization, density_check, double_negation, is_sublocale, nuclear_of_nucleus,
    nucleus_of_nuclear, nucleus_of_sublocale, validate_nucleus, NuclearSet, Nucleus,
};
use crate::poset::PointSet;

type Check = std::result::Result<(), Failure>;

fn nucleus_for(ctx: &FiniteCtx, n: PointSet) -> Nucleus {
    nucleus_of_nuclear(&NuclearSet {
        space: ctx.space.clone(),
        members: n,
    })
}

fn apply(j: &Nucleus, u: PointSet) -> Result<PointSet, Failure> {
    Ok(j.apply(u)?)
}

/// Every sublocale of `ClopUp(X)`, found by testing every family of upsets.
fn sublocales(ctx: &FiniteCtx) -> Vec<Vec<PointSet>> {
    let ups = ctx.space.enumerate_upsets();
    let m = ups.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << m) {
        let s: Vec<PointSet> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| ups[i]).collect();
        if is_sublocale(&ctx.space, &s) {
            out.push(s);
        }
    }
    out
}

pub fn duality_round_trip(ctx: &FiniteCtx) -> Check {
    let frame = clopen_upset_lattice(&ctx.space);
    if let RoundTrip::Fails(why) = check_round_trip(&frame.lattice)? {
        return Err(Failure::new("ClopUp(X)", why));
    }
    let dual = priestley_dual(&frame.lattice)?;
    ensure(
        dual.space.canonical_form() == ctx.space.canonical_form(),
        || "dual of ClopUp(X)".into(),
        "is not isomorphic to X",
    )?;
    if let Ok(d) = validate_lattice(&ctx.space) {
        if let RoundTrip::Fails(why) = check_round_trip(&d)? {
            return Err(Failure::new("X read as a lattice", why));
        }
    }
    Ok(())
}

pub fn stone_map_embedding(ctx: &FiniteCtx) -> Check {
    let d = clopen_upset_lattice(&ctx.space).lattice;
    let dual = priestley_dual(&d)?;
    let phi: Vec<PointSet> = (0..d.len()).map(|a| dual.stone_map(&d, a).map(|u| u.members)).collect::<Result<_, _>>()?;
    let lbl = |a: usize| d.label(a).to_string();
    ensure(phi[d.bottom()].is_empty(), || lbl(d.bottom()), "φ(0) ≠ ∅")?;
    ensure(phi[d.top()] == dual.space.full(), || lbl(d.top()), "φ(1) ≠ X")?;
    for a in 0..d.len() {
        for b in 0..d.len() {
            let pair = || format!("({}, {})", lbl(a), lbl(b));
            ensure(d.leq(a, b) == phi[a].is_subset(phi[b]), pair, "a ≤ b differs from φ(a) ⊆ φ(b)")?;
            ensure(phi[d.meet(a, b)] == phi[a].intersection(phi[b]), pair, "φ(a ∧ b) ≠ φ(a) ∩ φ(b)")?;
            ensure(phi[d.join(a, b)] == phi[a].union(phi[b]), pair, "φ(a ∨ b) ≠ φ(a) ∪ φ(b)")?;
        }
    }
    Ok(())
}

pub fn heyting_adjunction(ctx: &FiniteCtx) -> Check {
    let x = &ctx.space;
    let ups = x.enumerate_upsets();
    for &u in &ups {
        ensure(pseudocomplement(x, u) == implies(x, u, PointSet::EMPTY), || ctx.fmt(u), "U* ≠ U → ∅")?;
        for &v in &ups {
            let imp = implies(x, u, v);
            let pair = || format!("U = {}, V = {}", ctx.fmt(u), ctx.fmt(v));
            ensure(x.is_upset(imp), pair, "U → V is not an upset")?;
            let largest = ups
                .iter()
                .filter(|w| w.intersection(u).is_subset(v))
                .fold(PointSet::EMPTY, |a, &w| a.union(w));
            ensure(imp == largest, pair, "U → V is not the largest W with W ∩ U ⊆ V")?;
            for &w in &ups {
                if w.intersection(u).is_subset(v) != w.is_subset(imp) {
                    return Err(Failure::new(format!("{}, W = {}", pair(), ctx.fmt(w)), "adjunction fails"));
                }
            }
            ensure(frame_join(x, &[u, v]) == u.union(v), pair, "U ∨ V ≠ cl(U ∪ V)")?;
            ensure(frame_meet(x, &[u, v]) == u.intersection(v), pair, "U ∧ V ≠ int(U ∩ V)")?;
        }
    }
    Ok(())
}

pub fn nuclear_galois(ctx: &FiniteCtx) -> Check {
    for n in ctx.space.full().subsets() {
        let j = nucleus_for(ctx, n);
        validate_nucleus(ctx.space.clone(), j.table().clone())?;
        let back = nuclear_of_nucleus(&j).members;
        ensure(back == n, || ctx.fmt(n), "N_{j_N} ≠ N")?;
    }
    let subs = sublocales(ctx);
    ensure(
        subs.len() == 1 << ctx.space.len(),
        || "all sublocales".into(),
        "the number of nuclei is not 2^|X|",
    )?;
    for s in subs {
        let j = nucleus_of_sublocale(&ctx.space, &s)?;
        let n = nuclear_of_nucleus(&j).members;
        ensure(nucleus_for(ctx, n).table() == j.table(), || ctx.fmt(n), "j_{N_j} ≠ j")?;
    }
    Ok(())
}

pub fn nuclei_order_reversal(ctx: &FiniteCtx) -> Check {
    let all: Vec<(PointSet, Nucleus)> = ctx.space.full().subsets().map(|n| (n, nucleus_for(ctx, n))).collect();
    for (n, jn) in &all {
        for (m, jm) in &all {
            ensure(
                n.is_subset(*m) == jm.pointwise_leq(jn),
                || format!("N = {}, M = {}", ctx.fmt(*n), ctx.fmt(*m)),
                "N ⊆ M differs from j_M ≤ j_N",
            )?;
        }
    }
    Ok(())
}

pub fn upset_nj_eq_fj(ctx: &FiniteCtx) -> Check {
    let x = &ctx.space;
    for n in x.full().subsets() {
        let j = nucleus_for(ctx, n);
        let h = admissible_upset(&j)?;
        let direct = x
            .enumerate_upsets()
            .into_iter()
            .filter(|&u| j.apply(u).ok() == Some(x.full()))
            .fold(x.full(), PointSet::intersection);
        ensure(h == direct && h == x.up(n), || ctx.fmt(n), "H_j ≠ ↑N_j")?;
    }
    Ok(())
}

pub fn dense_eq_cofinal(ctx: &FiniteCtx) -> Check {
    let max = ctx.space.maximal(ctx.space.full());
    for n in ctx.space.full().subsets() {
        let j = nucleus_for(ctx, n);
        let d = density_check(&j)?;
        let dense = apply(&j, PointSet::EMPTY)?.is_empty();
        ensure(d.dense == dense && d.cofinal == max.is_subset(n), || ctx.fmt(n), "density record is wrong")?;
        ensure(dense == max.is_subset(n), || ctx.fmt(n), "dense differs from cofinal")?;
    }
    Ok(())
}

pub fn isbell_density(ctx: &FiniteCtx) -> Check {
    let x = &ctx.space;
    let max = x.maximal(x.full());
    let dn = double_negation(x)?;
    ensure(nuclear_of_nucleus(&dn).members == max, || "**".into(), "N_** ≠ max X")?;
    let boolean = booleanization(x)?;
    for n in x.full().subsets() {
        let j = nucleus_for(ctx, n);
        if apply(&j, PointSet::EMPTY)?.is_empty() {
            ensure(max.is_subset(n), || ctx.fmt(n), "a dense nuclear set misses a maximal point")?;
            let fix = j.fixpoints();
            ensure(
                boolean.iter().all(|b| fix.contains(b)),
                || ctx.fmt(n),
                "the Booleanization is not inside a dense sublocale",
            )?;
        }
    }
    Ok(())
}

pub fn lem_nj_1(ctx: &FiniteCtx) -> Check {
    for n in ctx.space.full().subsets() {
        let j = nucleus_for(ctx, n);
        for u in ctx.space.enumerate_upsets() {
            ensure(
                u.intersection(n) == apply(&j, u)?.intersection(n),
                || format!("N = {}, U = {}", ctx.fmt(n), ctx.fmt(u)),
                "U ∩ N_j ≠ jU ∩ N_j",
            )?;
        }
    }
    Ok(())
}

pub fn sublocale_meet_formula(ctx: &FiniteCtx) -> Check {
    for n in ctx.space.full().subsets() {
        let j = nucleus_for(ctx, n);
        let fix = j.fixpoints();
        ensure(is_sublocale(&ctx.space, &fix), || ctx.fmt(n), "j[L] is not a sublocale")?;
        let back = nucleus_of_sublocale(&ctx.space, &fix)?;
        ensure(back.table() == j.table(), || ctx.fmt(n), "j_{S_j} ≠ j")?;
    }
    for s in sublocales(ctx) {
        let j = nucleus_of_sublocale(&ctx.space, &s)?;
        let mut fix = j.fixpoints();
        let mut s = s;
        fix.sort();
        s.sort();
        ensure(fix == s, || format!("{:?}", s.iter().map(|&u| ctx.fmt(u)).collect::<Vec<_>>()), "S_{j_S} ≠ S")?;
    }
    Ok(())
}

pub fn d_nucleus(ctx: &FiniteCtx) -> Check {
    let e = &ctx.engine;
    let mut table = BTreeMap::new();
    for u in ctx.space.enumerate_upsets() {
        table.insert(u, ds::d_apply(e, &u).map_err(|err| Failure::new(ctx.fmt(u), err.to_string()))?);
    }
    let d = validate_nucleus(ctx.space.clone(), table)?;
    ensure(apply(&d, PointSet::EMPTY)?.is_empty(), || "∅".into(), "d∅ ≠ ∅")?;
    let nd = nuclear_of_nucleus(&d).members;
    ensure(nd == ctx.space.maximal(ctx.space.full()), || ctx.fmt(nd), "N_d ≠ max X")?;
    ensure(d.table() == double_negation(&ctx.space)?.table(), || "d".into(), "d differs from **")?;
    Ok(())
}

pub fn inductive_core(ctx: &FiniteCtx) -> Check {
    let e = &ctx.engine;
    let x = &ctx.space;
    let ups = x.enumerate_upsets();
    for &u in &ups {
        let cd = ds::core_d(e, &u)?;
        ensure(cd == e.core_d_by_union(u), || ctx.fmt(u), "pointwise core_d differs from ⋃ dV")?;
        ensure(ds::d_apply(e, &u)? == e.closure(&cd)?, || ctx.fmt(u), "dU ≠ cl core_d U")?;
    }
    if x.len() <= super::NUCLEAR_BOUND {
        for n in x.full().subsets() {
            let j = nucleus_for(ctx, n);
            for &u in &ups {
                let core_j = e
                    .scott_upsets()
                    .iter()
                    .filter(|v| v.is_subset(u))
                    .map(|&v| j.apply(v))
                    .try_fold(PointSet::EMPTY, |a, v| v.map(|v| a.union(v)))?;
                ensure(
                    apply(&j, u)? == core_j,
                    || format!("N = {}, U = {}", ctx.fmt(n), ctx.fmt(u)),
                    "j_N U ≠ cl core_{j_N} U",
                )?;
            }
        }
    }
    Ok(())
}

pub fn d_scott_double_negation(ctx: &FiniteCtx) -> Check {
    let e = &ctx.engine;
    for &u in e.scott_upsets() {
        ensure(
            ds::d_apply(e, &u)? == double_pseudocomplement(&ctx.space, u),
            || ctx.fmt(u),
            "dU ≠ U** on a Scott upset",
        )?;
    }
    Ok(())
}

pub fn eqv_conditions_rmax(ctx: &FiniteCtx) -> Check {
    let e = &ctx.engine;
    let conds = e.yd_conditions();
    let y = e.localic_part();
    for p in y.iter() {
        let votes: Vec<bool> = conds.iter().map(|c| c.contains(p)).collect();
        if votes.iter().any(|&v| v != votes[0]) {
            return Err(Failure::new("Y_d", format!("conditions disagree: {votes:?}")).at(ctx.space.label(p)));
        }
    }
    let yd = ds::yd_set(e)?;
    ensure(yd == ctx.space.maximal(ctx.space.full()), || ctx.fmt(yd), "Y_d ≠ max X")?;
    for p in y.iter() {
        ensure(ds::yd_membership(e, &p)? == yd.contains(p), || ctx.fmt(yd), "membership test disagrees")?;
    }
    Ok(())
}

pub fn max_y_subset_yd(ctx: &FiniteCtx) -> Check {
    ensure(ds::max_y_within_yd(&ctx.engine)?, || "max Y".into(), "max Y ⊄ Y_d")
}

pub fn l_regularity(ctx: &FiniteCtx) -> Check {
    let e = &ctx.engine;
    let r = ds::regularity_suite(e)?;
    ensure(r.all(), || "Y_d".into(), "a finite L_d is not regular")?;
    let nd = ds::n_d(e)?;
    ensure(l_regular(&ctx.space, nd), || ctx.fmt(nd), "N_d is not L-regular")
}

pub fn minyd_maxld_bijection(ctx: &FiniteCtx) -> Check {
    let e = &ctx.engine;
    let fam = ds::maximal_d_upsets(e)?;
    let min = ds::min_yd(e)?.set;
    ensure(fam.len() == min.len(), || ctx.fmt(min), "family size differs from |min Y_d|")?;
    for (i, (_, a)) in fam.iter().enumerate() {
        for (_, b) in &fam[..i] {
            ensure(a != b, || ctx.fmt(*a), "two points give the same d-upset")?;
        }
    }
    Ok(())
}

pub fn minyd_maxld_homeomorphism(ctx: &FiniteCtx) -> Check {
    let e = &ctx.engine;
    let fam = ds::maximal_d_upsets(e)?;
    let min = ds::min_yd(e)?.set;
    let ups = ctx.space.enumerate_upsets();
    // Opens of min Y_d: traces of upsets. Opens of max L_d: {m | a ⊄ m}
    // for d-upsets a, pulled back along y ↦ X ∖ ↓y.
    let mut traces: Vec<PointSet> = ups.iter().map(|u| u.intersection(min)).collect();
    let mut hull: Vec<PointSet> = Vec::new();
    for &a in &ups {
        if !ds::is_d_upset(e, &a)? {
            continue;
        }
        let pulled = fam
            .iter()
            .filter(|(_, m)| !a.is_subset(*m))
            .fold(PointSet::EMPTY, |acc, (y, _)| acc.with(*y));
        ensure(pulled == a.intersection(min), || ctx.fmt(a), "hull-kernel open does not pull back to a trace")?;
        hull.push(pulled);
    }
    traces.sort();
    traces.dedup();
    hull.sort();
    hull.dedup();
    ensure(traces == hull, || ctx.fmt(min), "the two topologies differ")
}

pub fn compacts_d_initial(ctx: &FiniteCtx) -> Check {
    let e = &ctx.engine;
    let x = &ctx.space;
    let min = ds::min_yd(e)?.set;
    let mut initial = Vec::new();
    for &f in e.scott_upsets() {
        if ds::d_initial_check(e, &f)? {
            initial.push(f);
        }
    }
    let ks: Vec<PointSet> = min.subsets().collect();
    let mut image: Vec<PointSet> = ks.iter().map(|&k| x.up(k)).collect();
    for &k in &ks {
        ensure(initial.contains(&x.up(k)), || ctx.fmt(k), "↑K is not a d-initial Scott upset")?;
        for &l in &ks {
            ensure(k.is_subset(l) == x.up(k).is_subset(x.up(l)), || ctx.fmt(k), "K ↦ ↑K is not an order embedding")?;
        }
    }
    image.sort();
    image.dedup();
    initial.sort();
    ensure(image == initial, || ctx.fmt(min), "K ↦ ↑K is not onto the d-initial Scott upsets")
}

pub fn max_bounded_d_initial(ctx: &FiniteCtx) -> Check {
    let r = spectrum_report(&ctx.engine)?;
    ensure(
        r.flags.max_bounded && r.flags.n_d_d_initial,
        || "N_d".into(),
        "a finite L_d is not max-bounded",
    )
}

pub fn unit_compactness(ctx: &FiniteCtx) -> Check {
    let e = &ctx.engine;
    let r = spectrum_report(e)?;
    let scan = ctx
        .space
        .enumerate_upsets()
        .into_iter()
        .any(|u| ctx.space.maximal(ctx.space.full()).is_subset(u) && ds::is_clop_scott(e, &u));
    ensure(r.flags.has_unit == scan, || "units".into(), "unit search disagrees with a direct scan")?;
    ensure(r.flags.has_unit && r.flags.compact, || "units".into(), "a finite frame lacks a unit or compactness")
}

pub fn rho_nuclear(ctx: &FiniteCtx) -> Check {
    let e = &ctx.engine;
    let min = ds::min_yd(e)?.set;
    let n_rho = ds::rho_nuclear(e)?;
    ensure(n_rho == min, || ctx.fmt(n_rho), "N_ρ ≠ cl min Y_d")?;
    let j = nucleus_for(ctx, n_rho);
    for u in ctx.space.enumerate_upsets() {
        ensure(ds::rho_apply(e, &u)? == apply(&j, u)?, || ctx.fmt(u), "ρ ≠ j_{N_ρ}")?;
    }
    let y_rho = n_rho.intersection(e.localic_part());
    ensure(y_rho == min, || ctx.fmt(y_rho), "Y_ρ ≠ min Y_d")
}

pub fn t1_hausdorff(ctx: &FiniteCtx) -> Check {
    let r = spectrum_report(&ctx.engine)?;
    ensure(r.flags.t1 && r.flags.hausdorff, || "min Y_d".into(), "finite min Y_d is not T1 and Hausdorff")?;
    ensure(
        matches!(r.min_yd_topology, TopologyClass::FiniteDiscrete | TopologyClass::Empty),
        || "min Y_d".into(),
        "finite min Y_d is not discrete",
    )
}
