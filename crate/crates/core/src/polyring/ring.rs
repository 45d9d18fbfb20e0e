use std::collections::HashSet;
use std::sync::Arc;

use super::field::PrimeField;
use super::monomial::{var_mask, Monomial, MAX_VARS};
use super::RingError;

/// A named group of variables sharing a bidegree.
///
/// `weight` is the degree each variable of the block contributes to the sugar
/// of a polynomial during Buchberger's algorithm. It does not affect monomial
/// orders; it only matters when an input is homogeneous for a non-standard
/// grading (e.g. `T_i - g_i*t` with `deg T_i = deg g_i + 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableBlock {
    pub name: String,
    pub variables: Vec<String>,
    pub bidegree: (u32, u32),
    pub weight: u32,
}

impl VariableBlock {
    pub fn new(name: &str, variables: Vec<String>, bidegree: (u32, u32)) -> Self {
        Self { name: name.to_string(), variables, bidegree, weight: 1 }
    }

    /// Block `prefix1, ..., prefix{count}`.
    pub fn indexed(name: &str, prefix: &str, count: usize, bidegree: (u32, u32)) -> Self {
        Self::new(name, (1..=count).map(|i| format!("{prefix}{i}")).collect(), bidegree)
    }

    pub fn with_weight(mut self, weight: u32) -> Self {
        self.weight = weight;
        self
    }
}

/// Characteristic plus an ordered list of variable blocks. Immutable once built.
#[derive(Debug, PartialEq, Eq)]
pub struct RingDescriptor {
    field: PrimeField,
    blocks: Vec<VariableBlock>,
    names: Vec<String>,
    weights: Vec<u32>,
    block_masks: Vec<u128>,
}

pub type Ring = Arc<RingDescriptor>;

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingDescriptor {
    pub fn new(characteristic: u64, blocks: Vec<VariableBlock>) -> Result<Ring, RingError> {
        let field = PrimeField::new(characteristic)?;
        let mut seen_blocks = HashSet::new();
        let mut seen_vars = HashSet::new();
        let mut names = Vec::new();
        let mut weights = Vec::new();
        let mut block_masks = Vec::new();
        for b in &blocks {
            if !seen_blocks.insert(b.name.clone()) {
                return Err(RingError::DuplicateName(b.name.clone()));
            }
            let start = names.len();
            for v in &b.variables {
                if !valid_identifier(v) {
                    return Err(RingError::InvalidName(v.clone()));
                }
                if !seen_vars.insert(v.clone()) {
                    return Err(RingError::DuplicateName(v.clone()));
                }
                names.push(v.clone());
                weights.push(b.weight);
            }
            if names.len() > MAX_VARS {
                return Err(RingError::TooManyVariables(names.len()));
            }
            block_masks.push(var_mask(start..names.len()));
        }
        Ok(Arc::new(Self { field, blocks, names, weights, block_masks }))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn blocks(&self) -> &[VariableBlock] {
        &self.blocks
    }

    pub fn block(&self, name: &str) -> Option<&VariableBlock> {
        self.blocks.iter().find(|b| b.name == name)
    }

    /// Indices of the variables of a block.
    pub fn block_variables(&self, name: &str) -> Option<Vec<usize>> {
        let mut start = 0;
        for b in &self.blocks {
            if b.name == name {
                return Some((start..start + b.variables.len()).collect());
            }
            start += b.variables.len();
        }
        None
    }

    pub fn block_mask(&self, name: &str) -> Option<u128> {
        let pos = self.blocks.iter().position(|b| b.name == name)?;
        Some(self.block_masks[pos])
    }

    /// Sugar degree of a monomial under the block weights.
    #[inline]
    pub fn weighted_degree(&self, m: &Monomial) -> u32 {
        if self.weights.iter().all(|&w| w == 1) {
            return m.degree();
        }
        self.blocks
            .iter()
            .zip(&self.block_masks)
            .map(|(b, &mask)| b.weight * m.masked_degree(mask))
            .sum()
    }

    /// True if some block carries a nonzero bidegree.
    pub fn is_bigraded(&self) -> bool {
        self.blocks.iter().any(|b| b.bidegree != (0, 0))
    }

    pub fn bidegree(&self, m: &Monomial) -> (u32, u32) {
        self.blocks.iter().zip(&self.block_masks).fold((0, 0), |(a, b), (blk, &mask)| {
            let k = m.masked_degree(mask);
            (a + k * blk.bidegree.0, b + k * blk.bidegree.1)
        })
    }

    /// A new ring with `block` appended.
    pub fn with_block(&self, block: VariableBlock) -> Result<Ring, RingError> {
        let mut blocks = self.blocks.clone();
        blocks.push(block);
        RingDescriptor::new(self.field.characteristic() as u64, blocks)
    }

    /// A new ring keeping only the named blocks (in their original order).
    pub fn sub_ring(&self, keep: &[&str]) -> Result<Ring, RingError> {
        let blocks = self.blocks.iter().filter(|b| keep.contains(&b.name.as_str())).cloned().collect();
        RingDescriptor::new(self.field.characteristic() as u64, blocks)
    }

    /// A variable name not used in this ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.variable_index(base).is_none() {
            return base.to_string();
        }
        (0..)
            .map(|i| format!("{base}_{i}"))
            .find(|n| self.variable_index(n).is_none())
            .expect("unbounded search")
    }

    /// A new ring with one auxiliary variable of bidegree (0,0) appended.
    /// Returns the ring and the new variable index.
    pub fn with_auxiliary(&self, base: &str, weight: u32) -> Result<(Ring, usize), RingError> {
        let name = self.fresh_name(base);
        let block_name = {
            let mut b = format!("aux_{name}");
            while self.block(&b).is_some() {
                b.push('_');
            }
            b
        };
        let ring = self.with_block(VariableBlock::new(&block_name, vec![name], (0, 0)).with_weight(weight))?;
        let idx = ring.nvars() - 1;
        Ok((ring, idx))
    }
}

/// Structural identity check with a pointer fast path.
#[inline]
pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rees_ring() -> Ring {
        RingDescriptor::new(
            32003,
            vec![VariableBlock::indexed("x", "x", 3, (1, 0)), VariableBlock::indexed("T", "T", 5, (0, 1))],
        )
        .unwrap()
    }

    #[test]
    fn blocks_and_bidegree() {
        let r = rees_ring();
        assert_eq!(r.nvars(), 8);
        assert_eq!(r.variable_index("T2"), Some(4));
        assert_eq!(r.block_variables("T").unwrap(), vec![3, 4, 5, 6, 7]);
        let m = Monomial::from_exponents(&[0, 1, 0, 1, 0, 0, 0, 0]).unwrap();
        assert_eq!(r.bidegree(&m), (1, 1));
        assert!(r.is_bigraded());
    }

    #[test]
    fn rejects_bad_descriptors() {
        let dup = RingDescriptor::new(
            7,
            vec![VariableBlock::indexed("x", "x", 2, (1, 0)), VariableBlock::indexed("y", "x", 1, (0, 1))],
        );
        assert!(matches!(dup, Err(RingError::DuplicateName(_))));
        let big = RingDescriptor::new(7, vec![VariableBlock::indexed("x", "x", 17, (1, 0))]);
        assert!(matches!(big, Err(RingError::TooManyVariables(17))));
        let bad = RingDescriptor::new(9, vec![VariableBlock::indexed("x", "x", 2, (1, 0))]);
        assert!(matches!(bad, Err(RingError::InvalidCharacteristic(9))));
    }

    #[test]
    fn auxiliary_names_are_fresh() {
        let r = rees_ring();
        let (r2, w) = r.with_auxiliary("w", 1).unwrap();
        assert_eq!(w, 8);
        let (r3, w2) = r2.with_auxiliary("w", 1).unwrap();
        assert_eq!(r3.variable_names()[w2], "w_0");
    }
}
