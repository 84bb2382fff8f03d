use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use super::gw::{gw_state, GwSpec};
use crate::error::{Error, Result};
use crate::scalar::{creal, Real};
use crate::tensor::{Dims, Ket};

/// The values printed alongside the three-qutrit example for the cuts
/// A|BC, B|AC, C|AB. They coincide with the largest Schmidt coefficient λ₀
/// of each cut, not with `G = 1 − λ₀`.
pub const EXAMPLE1_PRINTED_VALUES: [f64; 3] = [9.0 / 25.0, 19.0 / 25.0, 14.0 / 25.0];

/// Partition `{A}, {B,C}, {D}` used with the four-party GW example.
pub const EXAMPLE3_PARTITION: &str = "1|2,3|4";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedState {
    /// Three qutrits: `(3|102⟩ + 2√2|200⟩ + 2|010⟩ + √2|020⟩ + √2|001⟩)/5`.
    Example1,
    /// Purification of `I₃/3 ⊗ I₃/3` on dims `[9, 3, 3]`:
    /// `Σ_{jk} |3j+k, j, k⟩ / 3`.
    Example2,
    /// Four-party GW state `0.3|0001⟩ + 0.4|0020⟩ + 0.5|0100⟩ + √0.5|1000⟩`
    /// on dims `[3, 3, 3, 3]`.
    Example3,
    Ghz(usize),
    W(usize),
    Bell,
}

impl NamedState {
    pub const ALL_NAMES: [&'static str; 6] =
        ["example1", "example2", "example3", "ghz(n)", "w(n)", "bell"];

    pub fn ket<T: Real>(&self) -> Result<Ket<T>> {
        let r = |x: f64| creal(T::lit(x));
        match *self {
            Self::Example1 => {
                let dims = Dims::uniform(3, 3)?;
                let s2 = 2f64.sqrt();
                Ket::new(
                    dims,
                    sparse(
                        27,
                        &[
                            (9 + 2, r(3.0 / 5.0)),
                            (18, r(2.0 * s2 / 5.0)),
                            (3, r(2.0 / 5.0)),
                            (6, r(s2 / 5.0)),
                            (1, r(s2 / 5.0)),
                        ],
                    ),
                )
            }
            Self::Example2 => {
                let dims = Dims::new(vec![9, 3, 3])?;
                let mut terms = Vec::with_capacity(9);
                for j in 0..3 {
                    for k in 0..3 {
                        terms.push((dims.flat_index(&[3 * j + k, j, k])?, r(1.0 / 3.0)));
                    }
                }
                Ket::new(dims, sparse(81, &terms))
            }
            Self::Example3 => {
                let coeffs = DMatrix::from_row_slice(
                    4,
                    2,
                    &[
                        r(0.5f64.sqrt()),
                        r(0.0),
                        r(0.5),
                        r(0.0),
                        r(0.0),
                        r(0.4),
                        r(0.3),
                        r(0.0),
                    ],
                );
                Ok(gw_state(&GwSpec::new(coeffs)?))
            }
            Self::Ghz(n) => {
                check_parties(n)?;
                let dims = Dims::uniform(2, n)?;
                let h = r(std::f64::consts::FRAC_1_SQRT_2);
                let last = dims.total() - 1;
                Ket::new(dims, sparse(last + 1, &[(0, h), (last, h)]))
            }
            Self::W(n) => {
                check_parties(n)?;
                let coeffs = DMatrix::from_element(n, 1, r(1.0 / (n as f64).sqrt()));
                Ok(gw_state(&GwSpec::normalized(coeffs)?))
            }
            Self::Bell => {
                let h = r(std::f64::consts::FRAC_1_SQRT_2);
                Ket::new(Dims::new(vec![2, 2])?, sparse(4, &[(0, h), (3, h)]))
            }
        }
    }
}

fn check_parties(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 parties, got {n}"
        )));
    }
    Ok(())
}

fn sparse<C: Copy + Default>(len: usize, terms: &[(usize, C)]) -> Vec<C> {
    let mut v = vec![C::default(); len];
    for &(i, a) in terms {
        v[i] = a;
    }
    v
}

impl FromStr for NamedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let with_n = |prefix: &str| -> Option<Result<usize>> {
            let rest = s.strip_prefix(prefix)?;
            if rest.is_empty() {
                return Some(Ok(3));
            }
            let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
            Some(
                inner
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad party count in {s:?}"))),
            )
        };
        match s.as_str() {
            "example1" => Ok(Self::Example1),
            "example2" => Ok(Self::Example2),
            "example3" => Ok(Self::Example3),
            "bell" => Ok(Self::Bell),
            _ => {
                if let Some(n) = with_n("ghz") {
                    Ok(Self::Ghz(n?))
                } else if let Some(n) = with_n("w") {
                    Ok(Self::W(n?))
                } else {
                    Err(Error::InvalidParameter(format!(
                        "unknown gallery state {s:?}; known: {}",
                        Self::ALL_NAMES.join(", ")
                    )))
                }
            }
        }
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Example1 => f.write_str("example1"),
            Self::Example2 => f.write_str("example2"),
            Self::Example3 => f.write_str("example3"),
            Self::Ghz(n) => write!(f, "ghz({n})"),
            Self::W(n) => write!(f, "w({n})"),
            Self::Bell => f.write_str("bell"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nonzero(k: &Ket<f64>) -> usize {
        k.amplitudes().iter().filter(|z| z.norm() > 0.0).count()
    }

    #[test]
    fn example_shapes() {
        let e1 = NamedState::Example1.ket::<f64>().unwrap();
        assert_eq!(e1.dims().as_slice(), &[3, 3, 3]);
        assert_eq!(nonzero(&e1), 5);
        assert!((e1.amplitude(&[1, 0, 2]).unwrap().re - 0.6).abs() < 1e-15);
        assert!((e1.amplitude(&[2, 0, 0]).unwrap().re - 2.0 * 2f64.sqrt() / 5.0).abs() < 1e-15);
        assert!((e1.amplitude(&[0, 1, 0]).unwrap().re - 0.4).abs() < 1e-15);
        assert!((e1.amplitude(&[0, 2, 0]).unwrap().re - 2f64.sqrt() / 5.0).abs() < 1e-15);
        assert!((e1.amplitude(&[0, 0, 1]).unwrap().re - 2f64.sqrt() / 5.0).abs() < 1e-15);

        let e2 = NamedState::Example2.ket::<f64>().unwrap();
        assert_eq!(e2.dims().as_slice(), &[9, 3, 3]);
        assert_eq!(nonzero(&e2), 9);
        assert!(e2
            .amplitudes()
            .iter()
            .all(|z| z.re == 0.0 || (z.re - 1.0 / 3.0).abs() < 1e-15));
        assert!((e2.amplitude(&[5, 1, 2]).unwrap().re - 1.0 / 3.0).abs() < 1e-15);

        let bell = NamedState::Bell.ket::<f64>().unwrap();
        assert_eq!(bell.dims().as_slice(), &[2, 2]);
        assert!(
            (bell.amplitude(&[1, 1]).unwrap().re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15
        );

        assert_eq!(NamedState::Ghz(4).ket::<f64>().unwrap().dims().parties(), 4);
        assert_eq!(nonzero(&NamedState::W(5).ket::<f64>().unwrap()), 5);
        assert!(NamedState::Ghz(1).ket::<f64>().is_err());
    }

    #[test]
    fn parse_names() {
        for name in ["example1", "example2", "example3", "bell", "ghz(4)", "w(3)"] {
            let s: NamedState = name.parse().unwrap();
            assert_eq!(s.to_string(), name);
        }
        assert_eq!("GHZ".parse::<NamedState>().unwrap(), NamedState::Ghz(3));
        assert_eq!("w( 6 )".parse::<NamedState>().unwrap(), NamedState::W(6));
        assert!("ghz(x)".parse::<NamedState>().is_err());
        assert!("werner".parse::<NamedState>().is_err());
    }
}
