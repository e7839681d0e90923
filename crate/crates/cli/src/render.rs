//! Text and DOT renderings of reports and Hasse diagrams.

use std::fmt::Write;

use locale_workbench::d_spectrum::{AnalysisReport, PriestleyEngine, UnitVerdict};
use locale_workbench::fan_spaces::{FanSpace, SymbolicPoint, TameSet};
use locale_workbench::oracle::{CaseStatus, SuiteReport};
use locale_workbench::poset::{FinitePoset, PointSet};

pub fn report_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "space: {}", r.space);
    for (name, set) in [
        ("localic part Y", &r.localic_part),
        ("Y_d", &r.yd),
        ("max Y", &r.max_y),
        ("min Y_d", &r.min_yd),
    ] {
        let _ = writeln!(out, "{name:<15} {}", set.text);
    }
    let _ = writeln!(out, "{:<15} {}", "topology", r.min_yd_topology);
    let f = &r.flags;
    let _ = writeln!(
        out,
        "flags: t1={} compact={} hausdorff={} has_unit={} max_bounded={} l_d_regular={}",
        f.t1, f.compact, f.hausdorff, f.has_unit, f.max_bounded, f.l_d_regular
    );
    match &r.unit {
        UnitVerdict::Witness { set } => {
            let _ = writeln!(out, "unit: {set}");
        }
        UnitVerdict::Refutation { point_class, condition } => {
            let _ = writeln!(out, "no unit: {condition} (at {point_class})");
        }
    }
    let g = &r.regularity;
    let _ = writeln!(
        out,
        "regularity: antichain={} max_y_equals_yd={} locally_stone={}",
        g.antichain, g.max_y_equals_yd, g.locally_stone_class
    );
    let _ = writeln!(out, "frame: algebraic={} arithmetic={}", r.frame.algebraic, r.frame.arithmetic);
    let _ = writeln!(out, "maximal d-upsets: {}", r.maximal_d_upsets.description);
    for m in &r.maximal_d_upsets.members {
        let _ = writeln!(out, "  {} -> {}", m.point, m.upset.text);
    }
    out
}

pub fn suite_text(r: &SuiteReport) -> String {
    let mut out = String::new();
    for (id, t) in &r.by_theorem {
        let mark = if t.failed == 0 { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "{mark} {id:<28} {:>5} verified {:>5} failed", t.verified, t.failed);
    }
    for case in r.failures() {
        if let CaseStatus::Failed { witness } = &case.status {
            let at = witness.point.as_deref().map(|p| format!(" at {p}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "failed {} on {}: {}{at}: {}",
                case.theorem, case.instance, witness.object, witness.detail
            );
        }
    }
    let _ = writeln!(
        out,
        "bound {} seed {:#x}: {} verified, {} failed",
        r.bound, r.seed, r.total.verified, r.total.failed
    );
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram, lower points at the bottom. `style` gives extra node
/// attributes per point.
pub fn poset_dot(p: &FinitePoset, style: impl Fn(usize) -> &'static str) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
    for i in 0..p.len() {
        let _ = writeln!(out, "  n{i} [label={}{}];", quote(p.label(i)), style(i));
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "  n{a} -> n{b} [arrowhead=none];");
    }
    out.push_str("}\n");
    out
}

const MIN_YD_STYLE: &str = ", style=filled, fillcolor=gray70, peripheries=2";
const YD_STYLE: &str = ", peripheries=2";
const LOCALIC_STYLE: &str = ", style=bold";
const PLAIN_STYLE: &str = ", style=dashed";

fn style_of(localic: bool, yd: bool, min: bool) -> &'static str {
    if min {
        MIN_YD_STYLE
    } else if yd {
        YD_STYLE
    } else if localic {
        LOCALIC_STYLE
    } else {
        PLAIN_STYLE
    }
}

pub fn finite_dot(p: &FinitePoset, localic: PointSet, yd: PointSet, min: PointSet) -> String {
    poset_dot(p, |i| style_of(localic.contains(i), yd.contains(i), min.contains(i)))
}

/// One node per region class representative (fans 0 and 1, points 0 and
/// 1), with ellipsis nodes standing for the remaining indices.
pub fn fan_dot(e: &FanSpace, localic: &TameSet, yd: &TameSet, min: &TameSet) -> String {
    use SymbolicPoint::*;
    let fans: &[u64] = if e.family().is_multi_fan() { &[0, 1] } else { &[0] };
    let mut reps = Vec::new();
    for &i in fans {
        reps.extend([FanPoint(i, 0), FanPoint(i, 1), FanStar(i), Spine(i)]);
    }
    reps.extend([Omega, OmegaStar]);
    reps.retain(|p| e.has_point(p));

    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
    for (n, p) in reps.iter().enumerate() {
        let style = style_of(localic.contains(p), yd.contains(p), min.contains(p));
        let _ = writeln!(out, "  n{n} [label={}{style}];", quote(&e.point_label(p)));
    }
    for (a, p) in reps.iter().enumerate() {
        for (b, q) in reps.iter().enumerate() {
            let covers = a != b
                && e.leq(p, q)
                && !reps
                    .iter()
                    .any(|r| r != p && r != q && e.leq(p, r) && e.leq(r, q));
            if covers {
                let _ = writeln!(out, "  n{a} -> n{b} [arrowhead=none];");
            }
        }
    }
    for (n, p) in reps.iter().enumerate() {
        let more = match p {
            FanPoint(_, 1) => true,
            FanPoint(1, _) | FanStar(1) | Spine(1) => e.family().is_multi_fan(),
            _ => false,
        };
        if more {
            let _ = writeln!(out, "  m{n} [label=\"…\", shape=plaintext];\n  n{n} -> m{n} [style=dotted, arrowhead=none];");
        }
    }
    out.push_str("}\n");
    out
}
