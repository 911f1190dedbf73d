use std::fmt;
use std::sync::Arc;

use crate::endoring::{RingTable, DEFAULT_RING_CAP};
use crate::error::GroupError;
use crate::formulas::Language;
use crate::pgroup::{FiniteGroup, PGroupShape, DEFAULT_GROUP_CAP};

/// A finite structure formulas are evaluated in: a group for the group
/// languages, or its endomorphism ring for the ring language.
#[derive(Clone, Debug)]
pub enum Structure {
    Group(Arc<FiniteGroup>),
    Ring(Arc<RingTable>),
}

impl Structure {
    pub fn group(shape: &PGroupShape) -> Result<Self, GroupError> {
        Self::group_with_cap(shape, DEFAULT_GROUP_CAP)
    }

    pub fn group_with_cap(shape: &PGroupShape, cap: usize) -> Result<Self, GroupError> {
        Ok(Structure::Group(Arc::new(FiniteGroup::new(shape, cap)?)))
    }

    pub fn ring(shape: &PGroupShape) -> Result<Self, GroupError> {
        Self::ring_with_cap(shape, DEFAULT_RING_CAP)
    }

    pub fn ring_with_cap(shape: &PGroupShape, cap: usize) -> Result<Self, GroupError> {
        Ok(Structure::Ring(Arc::new(RingTable::new(shape, cap)?)))
    }

    pub fn shape(&self) -> &PGroupShape {
        match self {
            Structure::Group(g) => g.shape(),
            Structure::Ring(r) => r.shape(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Structure::Group(g) => g.size(),
            Structure::Ring(r) => r.size(),
        }
    }

    pub fn is_ring(&self) -> bool {
        matches!(self, Structure::Ring(_))
    }

    pub fn as_group(&self) -> Option<&FiniteGroup> {
        match self {
            Structure::Group(g) => Some(g),
            Structure::Ring(_) => None,
        }
    }

    pub fn as_ring(&self) -> Option<&RingTable> {
        match self {
            Structure::Ring(r) => Some(r),
            Structure::Group(_) => None,
        }
    }

    /// Languages whose formulas can be evaluated here.
    pub fn accepts(&self, lang: Language) -> bool {
        match self {
            Structure::Group(_) => matches!(lang, Language::Group | Language::Group2),
            Structure::Ring(_) => matches!(lang, Language::Group | Language::Ring),
        }
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        match self {
            Structure::Group(g) => g.add(a, b),
            Structure::Ring(r) => r.add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        match self {
            Structure::Group(g) => g.neg(a),
            Structure::Ring(r) => r.neg(a),
        }
    }

    /// `a - b`.
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Ring product (`a` first, then `b`); `None` on groups.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        match self {
            Structure::Group(_) => None,
            Structure::Ring(r) => Some(r.mul(a, b)),
        }
    }

    /// Human-readable carrier element.
    pub fn label(&self, i: usize) -> String {
        match self {
            Structure::Group(g) => g.element(i).to_string(),
            Structure::Ring(r) => r.element(i).to_string(),
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Structure::Group(g) => write!(f, "{}", g.shape()),
            Structure::Ring(r) => write!(f, "End({})", r.shape()),
        }
    }
}
