pub mod classify;
pub mod error;
pub mod flatcurves;
pub mod invariants;
pub mod oracle;
pub mod stbundle;
pub mod surfaces;
pub mod words;

pub use classify::{
    classify_pi1, classify_pin, regular_homotopy_equivalent, ClassificationReport,
    GroupDescription, GroupKind,
};
pub use error::{Error, Result};
pub use flatcurves::{parse_curve, turning_number, CurveModel, CurveOnSurface, Point, Polyline};
pub use oracle::{
    bounded_centralizer, bounded_is_trivial, verify_classification, OracleVerdict, SearchBound,
    Verification,
};
pub use stbundle::{LiftDecomposition, StWord};
pub use surfaces::{Orientation, Presentation, Regime, Surface, SurfaceSpec};
pub use words::{ConjugatorSearch, CyclicWord, Decision, KleinCoordinates, Letter, Word};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    pub mod surfaces {}
    #[doc = include_str!("../../../book/src/words.md")]
    pub mod words {}
    #[doc = include_str!("../../../book/src/bundle.md")]
    pub mod bundle {}
    #[doc = include_str!("../../../book/src/curves.md")]
    pub mod curves {}
    #[doc = include_str!("../../../book/src/classify.md")]
    pub mod classify {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    pub mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
