//! Chromosome representation: gene vector plus activation record.

use std::fmt;
use std::str::FromStr;

use crate::catalog::ConfigurationSpace;
use crate::error::Error;

/// How the active subdivision options are encoded on the chromosome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EncodingMethod {
    /// One boolean block per component, exactly one flag set per block.
    Tags,
    /// One integer option index per component.
    IntegerDv,
    /// A single integer indexing the whole configuration space.
    NumericIndexDv,
    /// The numeric index in fixed-width binary.
    BinaryDv,
}

impl EncodingMethod {
    pub const ALL: [EncodingMethod; 4] = [
        EncodingMethod::Tags,
        EncodingMethod::IntegerDv,
        EncodingMethod::NumericIndexDv,
        EncodingMethod::BinaryDv,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            EncodingMethod::Tags => "tags",
            EncodingMethod::IntegerDv => "dv-int",
            EncodingMethod::NumericIndexDv => "dv-num",
            EncodingMethod::BinaryDv => "dv-bin",
        }
    }
}

impl fmt::Display for EncodingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for EncodingMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tags" => Ok(EncodingMethod::Tags),
            "dv-int" => Ok(EncodingMethod::IntegerDv),
            "dv-num" => Ok(EncodingMethod::NumericIndexDv),
            "dv-bin" => Ok(EncodingMethod::BinaryDv),
            other => Err(format!(
                "unknown method '{other}' (expected tags, dv-int, dv-num or dv-bin)"
            )),
        }
    }
}

/// Activation record: which subdivision option each component uses.
#[derive(Clone, Debug, PartialEq)]
pub enum Activation {
    /// Concatenated one-hot blocks, one per component, block `i` of length
    /// `option_counts[i]`.
    Tags(Vec<bool>),
    /// Option index per component, each in `0..option_counts[i]`.
    IntegerDv(Vec<usize>),
    /// Mixed-radix configuration index in `0..cardinality`.
    NumericIndexDv(u64),
    /// Configuration index as fixed-width bits, most significant first.
    BinaryDv(Vec<bool>),
}

impl Activation {
    pub fn method(&self) -> EncodingMethod {
        match self {
            Activation::Tags(_) => EncodingMethod::Tags,
            Activation::IntegerDv(_) => EncodingMethod::IntegerDv,
            Activation::NumericIndexDv(_) => EncodingMethod::NumericIndexDv,
            Activation::BinaryDv(_) => EncodingMethod::BinaryDv,
        }
    }

    /// Encodes a selection into the requested representation.
    pub fn encode(
        selection: &[usize],
        method: EncodingMethod,
        space: &ConfigurationSpace,
    ) -> Activation {
        space
            .validate_selection(selection)
            .expect("selection must be valid for the configuration space");
        match method {
            EncodingMethod::Tags => {
                let mut flags = Vec::with_capacity(space.option_counts().iter().sum());
                for (&sel, &n) in selection.iter().zip(space.option_counts()) {
                    for o in 0..n {
                        flags.push(o == sel);
                    }
                }
                Activation::Tags(flags)
            }
            EncodingMethod::IntegerDv => Activation::IntegerDv(selection.to_vec()),
            EncodingMethod::NumericIndexDv => Activation::NumericIndexDv(space.index_of(selection)),
            EncodingMethod::BinaryDv => {
                let index = space.index_of(selection);
                Activation::BinaryDv(index_to_bits(index, space.index_bits()))
            }
        }
    }

    /// Decodes the activation into one option index per component.
    pub fn selection(&self, space: &ConfigurationSpace) -> Result<Vec<usize>, Error> {
        match self {
            Activation::Tags(flags) => {
                let total: usize = space.option_counts().iter().sum();
                if flags.len() != total {
                    return Err(Error::InvalidChromosome(format!(
                        "tag vector has {} flags, expected {}",
                        flags.len(),
                        total
                    )));
                }
                let mut selection = Vec::with_capacity(space.num_components());
                let mut offset = 0;
                for (ci, &n) in space.option_counts().iter().enumerate() {
                    let block = &flags[offset..offset + n];
                    let set: Vec<usize> = (0..n).filter(|&o| block[o]).collect();
                    match set.as_slice() {
                        [one] => selection.push(*one),
                        _ => {
                            return Err(Error::InvalidChromosome(format!(
                                "tag block of component {ci} has {} set flags, expected exactly 1",
                                set.len()
                            )));
                        }
                    }
                    offset += n;
                }
                Ok(selection)
            }
            Activation::IntegerDv(values) => {
                space.validate_selection(values)?;
                Ok(values.clone())
            }
            Activation::NumericIndexDv(index) => {
                if *index >= space.cardinality() {
                    return Err(Error::InvalidChromosome(format!(
                        "configuration index {index} out of range (cardinality {})",
                        space.cardinality()
                    )));
                }
                Ok(space.selection_of(*index))
            }
            Activation::BinaryDv(bits) => {
                if bits.len() != space.index_bits() {
                    return Err(Error::InvalidChromosome(format!(
                        "binary index has {} bits, expected {}",
                        bits.len(),
                        space.index_bits()
                    )));
                }
                let index = bits_to_index(bits);
                if index >= space.cardinality() {
                    return Err(Error::InvalidChromosome(format!(
                        "binary index {index} out of range (cardinality {})",
                        space.cardinality()
                    )));
                }
                Ok(space.selection_of(index))
            }
        }
    }

    /// Checks structural validity without materializing the selection.
    pub fn validate(&self, space: &ConfigurationSpace) -> Result<(), Error> {
        self.selection(space).map(|_| ())
    }
}

/// Most-significant-first bit encoding of a configuration index.
pub(crate) fn index_to_bits(index: u64, width: usize) -> Vec<bool> {
    (0..width).rev().map(|b| (index >> b) & 1 == 1).collect()
}

pub(crate) fn bits_to_index(bits: &[bool]) -> u64 {
    bits.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
}

/// A GA individual's genotype.
#[derive(Clone, Debug, PartialEq)]
pub struct Chromosome<F> {
    pub genes: Vec<F>,
    pub activation: Activation,
}
