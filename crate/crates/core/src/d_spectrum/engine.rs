use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Classification of a subspace of localic points under the topology
/// `{U ∩ Y | U clopen upset}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TopologyClass {
    Empty,
    FiniteDiscrete,
    Discrete,
    Cofinite,
    Other,
}

impl TopologyClass {
    pub fn is_hausdorff(self) -> bool {
        matches!(self, Self::Empty | Self::FiniteDiscrete | Self::Discrete)
    }

    /// `(locally compact, sober, coherent)`; unknown for `Other`, reported false.
    pub fn stable_local_compactness(self) -> (bool, bool, bool) {
        match self {
            Self::Empty | Self::FiniteDiscrete | Self::Discrete => (true, true, true),
            // Every subset of a cofinite space is compact; the whole infinite
            // space is irreducible without a generic point.
            Self::Cofinite => (true, false, true),
            Self::Other => (false, false, false),
        }
    }
}

impl fmt::Display for TopologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Empty => "empty",
            Self::FiniteDiscrete => "finite-discrete",
            Self::Discrete => "discrete",
            Self::Cofinite => "cofinite",
            Self::Other => "other",
        };
        f.write_str(s)
    }
}

/// What the d-machinery needs from a Priestley space.
///
/// Sets are exact representations of a fragment of the subsets of the space
/// that is closed under Boolean operations and order closures. Point classes
/// are either single points or classes of points with identical strict
/// up- and down-sets.
pub trait PriestleyEngine {
    type Set: Clone + PartialEq + fmt::Debug;
    type Point: Clone + PartialEq + fmt::Debug;

    fn space_id(&self) -> String;
    fn is_finite(&self) -> bool;

    fn empty(&self) -> Self::Set;
    fn full(&self) -> Self::Set;
    fn singleton(&self, p: &Self::Point) -> Self::Set;
    fn contains(&self, s: &Self::Set, p: &Self::Point) -> bool;
    fn meet(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn join(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn complement(&self, a: &Self::Set) -> Self::Set;

    fn diff(&self, a: &Self::Set, b: &Self::Set) -> Self::Set {
        self.meet(a, &self.complement(b))
    }

    fn is_subset(&self, a: &Self::Set, b: &Self::Set) -> bool {
        self.diff(a, b) == self.empty()
    }

    fn is_empty(&self, a: &Self::Set) -> bool {
        *a == self.empty()
    }

    fn up(&self, a: &Self::Set) -> Self::Set;
    fn down(&self, a: &Self::Set) -> Self::Set;
    fn strict_up(&self, a: &Self::Set) -> Self::Set;
    fn strict_down(&self, a: &Self::Set) -> Self::Set;

    /// Fails when the closure leaves the representable fragment.
    fn closure(&self, a: &Self::Set) -> Result<Self::Set>;

    fn interior(&self, a: &Self::Set) -> Result<Self::Set> {
        Ok(self.complement(&self.closure(&self.complement(a))?))
    }

    fn is_closed(&self, a: &Self::Set) -> bool {
        self.closure(a).map(|c| c == *a).unwrap_or(false)
    }

    fn is_open(&self, a: &Self::Set) -> bool {
        self.is_closed(&self.complement(a))
    }

    fn is_clopen(&self, a: &Self::Set) -> bool {
        self.is_closed(a) && self.is_open(a)
    }

    fn is_upset(&self, a: &Self::Set) -> bool {
        self.up(a) == *a
    }

    fn minimal(&self, a: &Self::Set) -> Self::Set {
        self.diff(a, &self.strict_up(a))
    }

    fn maximal(&self, a: &Self::Set) -> Self::Set {
        self.diff(a, &self.strict_down(a))
    }

    /// The localic part `Y`: points whose principal down-set is clopen.
    fn localic_part(&self) -> Self::Set;

    /// `max X`.
    fn max_part(&self) -> Self::Set {
        self.maximal(&self.full())
    }

    /// Union of the clopen Scott upsets inside a clopen upset `u`.
    fn core(&self, u: &Self::Set) -> Result<Self::Set>;

    /// `Y_d`, by the engine's own route (closed form or exhaustive).
    fn yd(&self) -> Result<Self::Set>;

    fn is_single_point(&self, p: &Self::Point) -> bool;

    /// Representative point classes. Exhaustive on finite engines; on
    /// symbolic engines a finite window that includes, for every listed
    /// point, the classes that witness facts about it.
    fn catalog(&self) -> Vec<Self::Point>;

    /// Every clopen upset, when there are finitely many.
    fn all_clopen_upsets(&self) -> Option<Vec<Self::Set>>;

    /// A deterministic sample of clopen upsets (all of them on finite engines).
    fn sample_clopen_upsets(&self) -> Vec<Self::Set>;

    /// Topology class of a set of localic points under the induced topology.
    fn trace_topology(&self, s: &Self::Set) -> TopologyClass;

    fn describe(&self, s: &Self::Set) -> String;
    fn set_json(&self, s: &Self::Set) -> serde_json::Value;
    fn point_label(&self, p: &Self::Point) -> String;

    /// `d U` evaluated from its defining union, where that is computable.
    fn d_by_definition(&self, _u: &Self::Set) -> Option<Self::Set> {
        None
    }

    /// Independent characterisations of `Y_d`, where they are computable.
    fn yd_all_conditions(&self) -> Option<Vec<Self::Set>> {
        None
    }

    /// Direct L-regularity test of the subspace `nd`, where computable.
    fn l_regular_nd(&self, _nd: &Self::Set) -> Option<bool> {
        None
    }
}
