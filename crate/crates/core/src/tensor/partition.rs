use std::fmt;

use crate::error::{Error, Result};

/// Disjoint, non-empty blocks of subsystem indices covering `0..n`.
///
/// Block order is significant (reports list values in block order); members
/// inside a block are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    parties: usize,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>, parties: usize) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        let mut owner = vec![None; parties];
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        for (b, mut block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            block.sort_unstable();
            for &k in &block {
                let slot = owner.get_mut(k).ok_or_else(|| {
                    Error::InvalidPartition(format!(
                        "subsystem {k} out of range for {parties} parties"
                    ))
                })?;
                if let Some(prev) = slot.replace(b) {
                    return Err(Error::InvalidPartition(format!(
                        "subsystem {k} appears in blocks {prev} and {b}"
                    )));
                }
            }
            sorted_blocks.push(block);
        }
        if let Some(k) = owner.iter().position(Option::is_none) {
            return Err(Error::InvalidPartition(format!(
                "subsystem {k} not covered"
            )));
        }
        Ok(Self {
            blocks: sorted_blocks,
            parties,
        })
    }

    /// `{0} | {1} | … | {n-1}`.
    pub fn singletons(parties: usize) -> Self {
        Self {
            blocks: (0..parties).map(|k| vec![k]).collect(),
            parties,
        }
    }

    /// Parses the 1-based text form used on the command line, e.g. `"1|2,3|4"`.
    pub fn parse(text: &str, parties: usize) -> Result<Self> {
        let blocks = text
            .split('|')
            .map(|block| {
                block
                    .split(',')
                    .map(|tok| {
                        let tok = tok.trim();
                        let k: usize = tok.parse().map_err(|_| {
                            Error::InvalidPartition(format!("cannot parse subsystem {tok:?}"))
                        })?;
                        k.checked_sub(1).ok_or_else(|| {
                            Error::InvalidPartition("subsystems are numbered from 1".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks, parties).map_err(|_| Error::InvalidPartition(format!(
            "{text:?} is not a partition of subsystems 1..={parties} (blocks must be non-empty, disjoint and cover every subsystem)"
        )))
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, j: usize) -> &[usize] {
        &self.blocks[j]
    }

    /// Number of blocks `k`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    /// Same partition with blocks reordered: block `j` of the result is block
    /// `order[j]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let blocks = order
            .iter()
            .map(|&j| {
                self.blocks
                    .get(j)
                    .cloned()
                    .ok_or_else(|| Error::InvalidPartition(format!("no block {j}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks, self.parties)
    }

    /// Every set partition of `0..parties` with between `min_blocks` and
    /// `max_blocks` blocks, in restricted-growth-string order.
    pub fn enumerate(parties: usize, min_blocks: usize, max_blocks: usize) -> Vec<Self> {
        let mut out = Vec::new();
        if parties == 0 {
            return out;
        }
        let mut labels = vec![0usize; parties];
        loop {
            let k = labels.iter().max().map_or(0, |&m| m + 1);
            if (min_blocks..=max_blocks).contains(&k) {
                let mut blocks = vec![Vec::new(); k];
                for (party, &b) in labels.iter().enumerate() {
                    blocks[b].push(party);
                }
                out.push(Self { blocks, parties });
            }
            // next restricted growth string
            let mut pos = parties - 1;
            loop {
                if pos == 0 {
                    return out;
                }
                let prefix_max = labels[..pos].iter().copied().max().unwrap_or(0);
                if labels[pos] <= prefix_max {
                    labels[pos] += 1;
                    labels[pos + 1..].iter_mut().for_each(|l| *l = 0);
                    break;
                }
                pos -= 1;
            }
        }
    }
}

impl fmt::Display for Partition {
    /// 1-based text form, inverse of [`Partition::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, block) in self.blocks.iter().enumerate() {
            if j > 0 {
                f.write_str("|")?;
            }
            for (m, k) in block.iter().enumerate() {
                if m > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", k + 1)?;
            }
        }
        Ok(())
    }
}
