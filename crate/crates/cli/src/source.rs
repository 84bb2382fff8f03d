use std::fs;
use std::path::Path;

use epi_core::gallery::EXAMPLE3_PARTITION;
use epi_core::{tol, Dims, Ket64, NamedState, Partition, C64};
use serde::{Deserialize, Serialize};

use crate::output::num;
use crate::Failure;

pub const GALLERY_PREFIX: &str = "gallery:";
pub const PAPER_VALUES_FIXTURE: &str = "example1-paper-values";

/// On-disk pure state: dims plus flat row-major `[re, im]` amplitudes.
#[derive(Debug, Deserialize, Serialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_ket(psi: &Ket64) -> Self {
        Self {
            dims: psi.dims().as_slice().to_vec(),
            amplitudes: psi.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn into_ket(self) -> Result<Ket64, Failure> {
        let dims = Dims::new(self.dims).map_err(Failure::input)?;
        if self.amplitudes.len() != dims.total() {
            return Err(Failure::Input(format!(
                "state file has {} amplitudes, dims need {}",
                self.amplitudes.len(),
                dims.total()
            )));
        }
        let amps: Vec<C64> = self
            .amplitudes
            .iter()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let dev = (norm - 1.0).abs();
        if !(dev <= tol::FILE_NORM_LOOSE) {
            return Err(Failure::Input(format!("state norm {norm} is not 1")));
        }
        if dev > tol::FILE_NORM_EXACT {
            eprintln!("warning: state norm {norm} is off by {dev:e}; normalizing");
        }
        Ket64::normalized(dims, amps).map_err(Failure::input)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dims": self.dims,
            "amplitudes": self.amplitudes.iter().map(|&[re, im]| vec![num(re), num(im)]).collect::<Vec<_>>(),
        })
    }
}

/// Where a command reads its state from.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Gallery(NamedState),
    /// The printed Example-1 triple; only meaningful where explicit values are accepted.
    PaperValues,
    File(String),
}

impl Source {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        match text.strip_prefix(GALLERY_PREFIX) {
            Some(name) if name.trim().eq_ignore_ascii_case(PAPER_VALUES_FIXTURE) => {
                Ok(Self::PaperValues)
            }
            Some(name) => name.parse().map(Self::Gallery).map_err(Failure::input),
            None => Ok(Self::File(text.to_string())),
        }
    }

    pub fn ket(&self) -> Result<Ket64, Failure> {
        match self {
            Self::Gallery(named) => named.ket().map_err(Failure::input),
            Self::PaperValues => Err(Failure::Input(format!(
                "{GALLERY_PREFIX}{PAPER_VALUES_FIXTURE} holds values, not a state; use it with `sweep`"
            ))),
            Self::File(path) => read_state(path),
        }
    }

    /// Partition used when none is given: the example's own grouping for
    /// example3, single parties otherwise.
    pub fn default_partition(&self, parties: usize) -> Result<Partition, Failure> {
        match self {
            Self::Gallery(NamedState::Example3) => {
                Partition::parse(EXAMPLE3_PARTITION, parties).map_err(Failure::input)
            }
            _ => Ok(Partition::singletons(parties)),
        }
    }

    /// Measure used when none is given: negativity for the examples built
    /// around it, GEM otherwise.
    pub fn default_measure(&self) -> &'static str {
        match self {
            Self::Gallery(NamedState::Example2 | NamedState::Example3) => "negativity",
            _ => "gem",
        }
    }
}

pub fn read_state(path: impl AsRef<Path>) -> Result<Ket64, Failure> {
    let path = path.as_ref();
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    file.into_ket()
}
