//! Potentials: linear combinations of cycles, stored up to rotation.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::quiver::{Element, IceQuiver, Path};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PotentialError {
    #[error("term is not a cycle (tail {tail} != head {head})")]
    NotACycle { tail: usize, head: usize },
    #[error("term is an empty path")]
    EmptyTerm,
}

/// A potential with every cycle stored as its least rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential<F> {
    element: Element<F>,
}

/// Least rotation of a cycle's arrow word under the arrow order.
pub fn canonical_rotation(cycle: &Path, ends: &[(usize, usize)]) -> Path {
    let n = cycle.arrows.len();
    let mut best = cycle.arrows.clone();
    for k in 1..n {
        let mut rot = cycle.arrows[k..].to_vec();
        rot.extend_from_slice(&cycle.arrows[..k]);
        if rot < best {
            best = rot;
        }
    }
    Path::from_word(&best, ends).expect("rotation of a cycle is a cycle")
}

impl<F: Field> Potential<F> {
    pub fn zero() -> Self {
        Potential {
            element: Element::zero(),
        }
    }

    pub fn new(quiver: &IceQuiver, terms: impl IntoIterator<Item = (Path, F)>) -> Result<Self, PotentialError> {
        let ends = quiver.arrow_ends();
        let mut element = Element::zero();
        for (p, c) in terms {
            if p.is_empty() {
                return Err(PotentialError::EmptyTerm);
            }
            if !p.is_cycle() {
                return Err(PotentialError::NotACycle {
                    tail: p.tail,
                    head: p.head,
                });
            }
            element.add_term(canonical_rotation(&p, &ends), c);
        }
        Ok(Potential { element })
    }

    pub fn from_element(quiver: &IceQuiver, x: &Element<F>) -> Result<Self, PotentialError> {
        Self::new(quiver, x.terms().iter().map(|(p, c)| (p.clone(), c.clone())))
    }

    pub fn element(&self) -> &Element<F> {
        &self.element
    }

    pub fn is_zero(&self) -> bool {
        self.element.is_zero()
    }

    pub fn terms(&self) -> &BTreeMap<Path, F> {
        self.element.terms()
    }

    pub fn max_term_len(&self) -> usize {
        self.element.max_len()
    }
}
