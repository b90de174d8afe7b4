//! Torus GIT machinery: semistability for the class-group torus, the toric
//! quotient pipeline for the components of the central fibre, hypersurface
//! checks, chart invariants with expressibility certificates, and
//! per-component weight tables.

mod charts;
mod component;
mod pipeline;
mod stability;
mod weights;

pub use charts::{
    chart_ambient_invariants, chart_coordinate_functions, express_in_chart, ChartError,
    ChartSeed, Expression, RationalMonomial,
};
pub use component::{build_toric_model, ComponentData, ComponentError, ComponentKind, ToricModel};
pub use pipeline::{
    component_intersection_orbit, intersection_vanishing, nonnormal_locus,
    toric_quotient_pipeline, zp_checks, NonNormalReport, PipelineError, QuotientData,
    SurvivingFace, ZpReport,
};
pub use stability::{is_semistable_support, SemistabilityVerdict};
pub use weights::{
    base_locus_on_component, component_weight_table, hypersurface_weight_table, WeightTable,
};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::poly::Weight;

/// Class-group and torus weights of the named ring generators, in a fixed
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTable {
    names: Vec<String>,
    pic: BTreeMap<String, Weight>,
    torus: BTreeMap<String, Weight>,
}

impl DegreeTable {
    pub fn new(rows: Vec<(String, Weight, Weight)>) -> Self {
        let names = rows.iter().map(|(n, _, _)| n.clone()).collect();
        let pic = rows.iter().map(|(n, p, _)| (n.clone(), *p)).collect();
        let torus = rows.iter().map(|(n, _, t)| (n.clone(), *t)).collect();
        DegreeTable { names, pic, torus }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn pic(&self, name: &str) -> Option<Weight> {
        self.pic.get(name).copied()
    }

    pub fn torus(&self, name: &str) -> Option<Weight> {
        self.torus.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.pic.contains_key(name)
    }

    /// Class-group weight of a monomial in the generator symbols.
    pub fn pic_of_monomial(&self, m: &crate::poly::Monomial) -> Option<Weight> {
        let mut w = (0, 0);
        for (v, e) in m.exps() {
            let (a, b) = self.pic(v)?;
            w.0 += a * e;
            w.1 += b * e;
        }
        Some(w)
    }

    /// Torus weight of a monomial in the generator symbols.
    pub fn torus_of_monomial(&self, m: &crate::poly::Monomial) -> Option<Weight> {
        let mut w = (0, 0);
        for (v, e) in m.exps() {
            let (a, b) = self.torus(v)?;
            w.0 += a * e;
            w.1 += b * e;
        }
        Some(w)
    }
}
