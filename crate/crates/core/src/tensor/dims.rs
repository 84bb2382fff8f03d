use crate::error::{Error, Result};

/// Ordered local dimensions `d₀ … d_{n-1}` of an n-partite system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dims {
    dims: Vec<usize>,
    total: usize,
}

impl Dims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidDims("at least one subsystem required".into()));
        }
        if let Some((k, d)) = dims.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(Error::InvalidDims(format!(
                "subsystem {k} has dimension {d}, need at least 2"
            )));
        }
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidDims("total dimension overflows".into()))?;
        Ok(Self { dims, total })
    }

    /// `n` copies of local dimension `d`.
    pub fn uniform(d: usize, n: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dims
    }

    /// Number of parties.
    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn local(&self, k: usize) -> usize {
        self.dims[k]
    }

    /// Total Hilbert space dimension `Π d_k`.
    pub fn total(&self) -> usize {
        self.total
    }

    /// Row-major strides, last subsystem fastest.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    pub fn flat_index(&self, multi: &[usize]) -> Result<usize> {
        if multi.len() != self.dims.len() {
            return Err(Error::LengthMismatch {
                expected: self.dims.len(),
                got: multi.len(),
            });
        }
        let mut flat = 0;
        for (k, (&i, &d)) in multi.iter().zip(&self.dims).enumerate() {
            if i >= d {
                return Err(Error::IndexOutOfRange {
                    subsystem: k,
                    index: i,
                    dim: d,
                });
            }
            flat = flat * d + i;
        }
        Ok(flat)
    }

    pub fn multi_index(&self, flat: usize) -> Result<Vec<usize>> {
        if flat >= self.total {
            return Err(Error::IndexOutOfRange {
                subsystem: usize::MAX,
                index: flat,
                dim: self.total,
            });
        }
        let mut multi = vec![0; self.dims.len()];
        let mut rest = flat;
        for k in (0..self.dims.len()).rev() {
            multi[k] = rest % self.dims[k];
            rest /= self.dims[k];
        }
        Ok(multi)
    }

    /// Product of the local dimensions in `block`.
    pub fn block_dim(&self, block: &[usize]) -> usize {
        block.iter().map(|&k| self.dims[k]).product()
    }

    /// Sub-profile made of the listed subsystems, in the order given.
    pub fn select(&self, block: &[usize]) -> Result<Dims> {
        Dims::new(block.iter().map(|&k| self.dims[k]).collect())
    }

    /// Subsystems not in `block`, ascending.
    pub fn complement(&self, block: &[usize]) -> Vec<usize> {
        (0..self.dims.len())
            .filter(|k| !block.contains(k))
            .collect()
    }

    /// For every flat index, its row-major position inside `block` and inside
    /// the complement. `block` must be sorted.
    pub(crate) fn split_indices(&self, block: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let n = self.dims.len();
        let mut in_block = vec![false; n];
        for &k in block {
            in_block[k] = true;
        }
        let mut inner = Vec::with_capacity(self.total);
        let mut outer = Vec::with_capacity(self.total);
        let mut digits = vec![0usize; n];
        for _ in 0..self.total {
            let (mut a, mut b) = (0, 0);
            for k in 0..n {
                if in_block[k] {
                    a = a * self.dims[k] + digits[k];
                } else {
                    b = b * self.dims[k] + digits[k];
                }
            }
            inner.push(a);
            outer.push(b);
            // odometer increment, last subsystem fastest
            for k in (0..n).rev() {
                digits[k] += 1;
                if digits[k] < self.dims[k] {
                    break;
                }
                digits[k] = 0;
            }
        }
        (inner, outer)
    }

    /// For every flat index, the part `Σ_{k∈block} i_k · stride_k` of its
    /// flat value contributed by `block`.
    pub(crate) fn block_offsets(&self, block: &[usize]) -> Vec<usize> {
        let strides = self.strides();
        (0..self.total)
            .map(|flat| {
                block
                    .iter()
                    .map(|&k| (flat / strides[k]) % self.dims[k] * strides[k])
                    .sum()
            })
            .collect()
    }
}

/// Validates a subsystem set against `dims` and returns it sorted.
///
/// With `proper` set the block must also leave a non-empty complement.
pub(crate) fn check_block(dims: &Dims, block: &[usize], proper: bool) -> Result<Vec<usize>> {
    if block.is_empty() {
        return Err(Error::InvalidBlock("empty subsystem set".into()));
    }
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    if let Some(&k) = sorted.iter().find(|&&k| k >= dims.parties()) {
        return Err(Error::InvalidBlock(format!(
            "subsystem {k} out of range for {} parties",
            dims.parties()
        )));
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidBlock("repeated subsystem".into()));
    }
    if proper && sorted.len() == dims.parties() {
        return Err(Error::InvalidBlock(
            "block covers every subsystem, no bipartition".into(),
        ));
    }
    Ok(sorted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_index_examples() {
        let d = Dims::new(vec![2, 2, 2]).unwrap();
        assert_eq!(d.flat_index(&[0, 0, 0]).unwrap(), 0);
        let d = Dims::new(vec![3, 3, 3]).unwrap();
        assert_eq!(d.flat_index(&[1, 0, 2]).unwrap(), 11);
        let d = Dims::new(vec![2, 2]).unwrap();
        assert_eq!(d.flat_index(&[1, 1]).unwrap(), 3);
    }

    #[test]
    fn flat_index_bijection_on_all_labels() {
        let d = Dims::new(vec![3, 3, 3]).unwrap();
        let mut seen = vec![false; 27];
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let f = d.flat_index(&[a, b, c]).unwrap();
                    assert_eq!(f, a * 9 + b * 3 + c);
                    assert!(!seen[f]);
                    seen[f] = true;
                    assert_eq!(d.multi_index(f).unwrap(), vec![a, b, c]);
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn rejects_bad_profiles_and_indices() {
        assert!(Dims::new(vec![]).is_err());
        assert!(Dims::new(vec![2, 1]).is_err());
        assert!(Dims::new(vec![usize::MAX, 2]).is_err());
        let d = Dims::new(vec![2, 3]).unwrap();
        assert!(matches!(
            d.flat_index(&[0, 3]),
            Err(Error::IndexOutOfRange { subsystem: 1, .. })
        ));
        assert!(d.flat_index(&[0]).is_err());
        assert!(d.multi_index(6).is_err());
    }

    #[test]
    fn split_indices_matches_multi_index() {
        let d = Dims::new(vec![2, 3, 4]).unwrap();
        let (inner, outer) = d.split_indices(&[0, 2]);
        for flat in 0..d.total() {
            let m = d.multi_index(flat).unwrap();
            assert_eq!(inner[flat], m[0] * 4 + m[2]);
            assert_eq!(outer[flat], m[1]);
        }
        let offs = d.block_offsets(&[1]);
        for flat in 0..d.total() {
            let m = d.multi_index(flat).unwrap();
            assert_eq!(offs[flat], m[1] * 4);
        }
    }

    #[test]
    fn block_checks() {
        let d = Dims::new(vec![2, 2, 2]).unwrap();
        assert_eq!(check_block(&d, &[2, 0], true).unwrap(), vec![0, 2]);
        assert!(check_block(&d, &[], false).is_err());
        assert!(check_block(&d, &[3], false).is_err());
        assert!(check_block(&d, &[1, 1], false).is_err());
        assert!(check_block(&d, &[0, 1, 2], true).is_err());
        assert!(check_block(&d, &[0, 1, 2], false).is_ok());
    }
}
