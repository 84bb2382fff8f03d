//! Analytic state families with closed-form spectra and measures, plus the
//! named example states.

mod acin;
mod gw;
mod named;
mod purification;

pub use acin::{acin_schmidt_spectra, acin_separable_cuts, acin_state, AcinParams, SeparableCuts};
pub use gw::{gw_coarse_grain, gw_negativity_closed, gw_state, GwSpec};
pub use named::{NamedState, EXAMPLE1_PRINTED_VALUES, EXAMPLE3_PARTITION};
pub use purification::{negativity_gap_closed, product_purification, ProductPurificationSpec};
