//! The assembled verdict on the d-spectrum of one space.

use serde::{Deserialize, Serialize};

use super::*;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetReport {
    pub text: String,
    pub set: serde_json::Value,
}

impl SetReport {
    fn of<E: PriestleyEngine>(e: &E, s: &E::Set) -> Self {
        SetReport {
            text: e.describe(s),
            set: e.set_json(s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub t1: bool,
    pub compact: bool,
    pub hausdorff: bool,
    pub has_unit: bool,
    pub l_d_regular: bool,
    pub max_bounded: bool,
    pub n_d_d_initial: bool,
}

/// Closed-form flags for `min Y_d` by topology class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinYdProperties {
    pub locally_compact: bool,
    pub sober: bool,
    pub coherent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaximalDUpsets {
    pub description: String,
    /// One entry per listed point of `min Y_d` (all of them on finite spaces).
    pub members: Vec<MaximalDUpset>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaximalDUpset {
    pub point: String,
    pub upset: SetReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub space: String,
    pub localic_part: SetReport,
    pub yd: SetReport,
    pub max_y: SetReport,
    pub min_yd: SetReport,
    pub min_yd_topology: TopologyClass,
    pub flags: Flags,
    pub unit: UnitVerdict,
    pub frame: FrameClass,
    pub regularity: Regularity,
    pub min_yd_properties: MinYdProperties,
    pub maximal_d_upsets: MaximalDUpsets,
}

/// Every proper d-upset lies below a maximal one, by search.
fn max_bounded_by_search<E: PriestleyEngine>(e: &E, all: &[E::Set]) -> Result<bool> {
    let maxes = maximal_d_upsets_by_search(e, all)?;
    let full = e.full();
    for u in all {
        if *u != full && is_d_upset(e, u)? && !maxes.iter().any(|m| e.is_subset(u, m)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs the whole analysis with its consistency assertions:
/// `min Y_d` is an antichain (T1); a unit forces compactness; on a
/// max-bounded frame compactness and units coincide; `max Y ⊆ Y_d`; the
/// three stable-local-compactness flags force Hausdorffness.
pub fn spectrum_report<E: PriestleyEngine>(e: &E) -> Result<AnalysisReport> {
    let loc = e.localic_part();
    let yd = yd_set(e)?;
    let max_y = e.diff(&loc, &e.strict_down(&loc));
    let min = min_yd(e)?;
    let t1 = e.is_empty(&e.meet(&min.set, &e.strict_up(&min.set)));
    let compact = scott_or_false(e, &e.up(&min.set));
    let hausdorff = min.topology.is_hausdorff();
    let unit = unit_search(e)?;
    let regularity = regularity_suite(e)?;
    let n_d_d_initial = max_bounded(e)?;
    let max_bounded = match e.all_clopen_upsets() {
        Some(all) => {
            let direct = max_bounded_by_search(e, &all)?;
            if direct != n_d_d_initial {
                return Err(Error::invariant(
                    "max-bounded iff N_d is d-initial",
                    format!("search says {direct}, N_d d-initial is {n_d_d_initial}"),
                ));
            }
            direct
        }
        None => n_d_d_initial,
    };
    let (locally_compact, sober, coherent) = min.topology.stable_local_compactness();

    let check = |ok: bool, name: &'static str| {
        if ok {
            Ok(())
        } else {
            Err(Error::invariant(name, e.space_id()))
        }
    };
    check(t1, "min Y_d is T1")?;
    check(!unit.exists() || compact, "a unit makes min Y_d compact")?;
    check(!max_bounded || compact == unit.exists(), "max-bounded: compact iff unit")?;
    check(e.is_subset(&max_y, &yd), "max Y ⊆ Y_d")?;
    check(!(locally_compact && sober && coherent) || hausdorff, "stably locally compact min Y_d is Hausdorff")?;

    let members = maximal_d_upsets(e)?
        .into_iter()
        .map(|(p, m)| MaximalDUpset {
            point: e.point_label(&p),
            upset: SetReport::of(e, &m),
        })
        .collect();
    let description = if e.is_finite() {
        "X ∖ ↓y for each y ∈ min Y_d".to_string()
    } else {
        "X ∖ ↓y for each y ∈ min Y_d; listed for the catalog window".to_string()
    };

    Ok(AnalysisReport {
        space: e.space_id(),
        localic_part: SetReport::of(e, &loc),
        yd: SetReport::of(e, &yd),
        max_y: SetReport::of(e, &max_y),
        min_yd: SetReport::of(e, &min.set),
        min_yd_topology: min.topology,
        flags: Flags {
            t1,
            compact,
            hausdorff,
            has_unit: unit.exists(),
            l_d_regular: regularity.antichain,
            max_bounded,
            n_d_d_initial,
        },
        unit,
        frame: classify_frame(e)?,
        regularity,
        min_yd_properties: MinYdProperties {
            locally_compact,
            sober,
            coherent,
        },
        maximal_d_upsets: MaximalDUpsets { description, members },
    })
}
