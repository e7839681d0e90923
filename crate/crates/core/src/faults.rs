//! Deliberate fault injection, used to show that the verification suites can
//! fail. Every flag is off by default.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Faults {
    /// Overwrite one entry of every finite d table.
    pub corrupt_d_table: bool,
    /// Forget that the spine points of `omega_fans` lie below ω.
    pub drop_spine_order: bool,
    /// Skip the normalisation step of tame-set canonical forms.
    pub break_canonical_form: bool,
}

impl Faults {
    pub const NONE: Faults = Faults {
        corrupt_d_table: false,
        drop_spine_order: false,
        break_canonical_form: false,
    };

    pub fn any(&self) -> bool {
        self.corrupt_d_table || self.drop_spine_order || self.break_canonical_form
    }
}
