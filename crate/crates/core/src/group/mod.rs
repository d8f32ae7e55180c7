//! Group arithmetic for finite multiplication tables, free groups and the
//! integer lattices `Z^d`.

mod finite;
mod free;
mod lattice;
mod measure;

use std::fmt::Debug;
use std::hash::Hash;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub use finite::FiniteGroup;
pub use free::{FreeGroup, Letter, Word};
pub use lattice::{folner_box, Lattice, LatticePoint};
pub use measure::ProbMeasure;

use crate::error::{Error, Result};

/// Default bound on the number of elements any enumeration may produce.
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

/// Environment variable overriding [`DEFAULT_ELEMENT_CAP`].
pub const ELEMENT_CAP_ENV: &str = "ULAM_LAB_MAX_ELEMENTS";

/// The element cap in force, honouring `ULAM_LAB_MAX_ELEMENTS`.
pub fn element_cap() -> usize {
    std::env::var(ELEMENT_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ELEMENT_CAP)
}

pub(crate) fn check_cap(requested: usize) -> Result<()> {
    let cap = element_cap();
    if requested > cap {
        return Err(Error::TooManyElements { requested, cap });
    }
    Ok(())
}

/// A discrete group with a solvable word problem.
///
/// Implementations assume their arguments are valid elements; range-checked
/// entry points live on the concrete types and on [`GroupHandle`].
pub trait Group: Clone + Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Serialize + DeserializeOwned + Send + Sync;

    fn identity(&self) -> Self::Elem;

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    fn inv(&self, x: &Self::Elem) -> Self::Elem;

    /// All elements in enumeration order, or `None` for infinite groups.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    fn descriptor(&self) -> GroupDescriptor;

    fn is_identity(&self, x: &Self::Elem) -> bool {
        *x == self.identity()
    }

    /// `x^{-1} y`
    fn quotient(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.mul(&self.inv(x), y)
    }
}

/// Serializable description of a group, used by config and map files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GroupDescriptor {
    Cyclic { n: usize },
    Dihedral { n: usize },
    Symmetric { n: usize },
    Product { factors: Vec<GroupDescriptor> },
    Table { table: Vec<Vec<usize>> },
    Free { rank: u32 },
    Lattice { dim: usize },
}

impl GroupDescriptor {
    pub fn build(&self) -> Result<GroupHandle> {
        Ok(match self {
            GroupDescriptor::Free { rank } => GroupHandle::Free(FreeGroup::new(*rank)?),
            GroupDescriptor::Lattice { dim } => GroupHandle::Lattice(Lattice::new(*dim)?),
            finite => GroupHandle::Finite(FiniteGroup::from_descriptor(finite)?),
        })
    }
}

/// One of the three supported group families.
#[derive(Debug, Clone)]
pub enum GroupHandle {
    Finite(FiniteGroup),
    Free(FreeGroup),
    Lattice(Lattice),
}

/// An element of some [`GroupHandle`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Element {
    Index(usize),
    Word(Word),
    Point(LatticePoint),
}

impl GroupHandle {
    pub fn descriptor(&self) -> GroupDescriptor {
        match self {
            GroupHandle::Finite(g) => g.descriptor(),
            GroupHandle::Free(g) => g.descriptor(),
            GroupHandle::Lattice(g) => g.descriptor(),
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            GroupHandle::Finite(g) => Element::Index(g.identity()),
            GroupHandle::Free(g) => Element::Word(g.identity()),
            GroupHandle::Lattice(g) => Element::Point(g.identity()),
        }
    }

    /// Product `xy`, validating both operands against the group.
    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        match (self, x, y) {
            (GroupHandle::Finite(g), Element::Index(a), Element::Index(b)) => {
                g.try_mul(*a, *b).map(Element::Index)
            }
            (GroupHandle::Free(g), Element::Word(a), Element::Word(b)) => {
                g.validate(a)?;
                g.validate(b)?;
                Ok(Element::Word(g.mul(a, b)))
            }
            (GroupHandle::Lattice(g), Element::Point(a), Element::Point(b)) => {
                g.validate(a)?;
                g.validate(b)?;
                Ok(Element::Point(g.mul(a, b)))
            }
            _ => Err(Error::KindMismatch(format!(
                "cannot multiply {x:?} and {y:?} in {:?}",
                self.descriptor()
            ))),
        }
    }

    pub fn inv(&self, x: &Element) -> Result<Element> {
        match (self, x) {
            (GroupHandle::Finite(g), Element::Index(a)) => {
                g.check(*a)?;
                Ok(Element::Index(g.inv(a)))
            }
            (GroupHandle::Free(g), Element::Word(a)) => {
                g.validate(a)?;
                Ok(Element::Word(g.inv(a)))
            }
            (GroupHandle::Lattice(g), Element::Point(a)) => {
                g.validate(a)?;
                Ok(Element::Point(g.inv(a)))
            }
            _ => Err(Error::KindMismatch(format!("{x:?} is not an element of {:?}", self.descriptor()))),
        }
    }

    /// Elements of word length at most `r`: reduced length for free groups,
    /// the `l^inf` box for lattices. Finite groups are rejected.
    pub fn ball(&self, r: usize) -> Result<Vec<Element>> {
        match self {
            GroupHandle::Free(g) => Ok(g.ball(r)?.into_iter().map(Element::Word).collect()),
            GroupHandle::Lattice(g) => Ok(g.ball(r)?.into_iter().map(Element::Point).collect()),
            GroupHandle::Finite(_) => Err(Error::KindMismatch(
                "balls are defined for free and lattice groups only".into(),
            )),
        }
    }
}
