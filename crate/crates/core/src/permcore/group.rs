use std::fmt;
use std::sync::{Arc, OnceLock};

use super::chain::{Chain, ChainBuilder};
use super::perm::Perm;
use crate::error::{Error, Result};

struct Inner {
    degree: usize,
    gens: Vec<Perm>,
    chain: OnceLock<Chain>,
    known_order: Option<u128>,
    label: String,
}

/// A permutation group given by generators. The stabilizer chain is built
/// on first use and never changes afterwards; clones share it.
#[derive(Clone)]
pub struct Group(Arc<Inner>);

impl Group {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Group> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, got: g.degree() });
            }
        }
        Ok(Group(Arc::new(Inner { degree, gens, chain: OnceLock::new(), known_order: None, label: String::new() })))
    }

    /// Like [`Group::new`] but with an order the caller vouches for; the
    /// chain build may stop early once it is reached.
    pub fn with_known_order(degree: usize, gens: Vec<Perm>, order: u128) -> Result<Group> {
        let g = Group::new(degree, gens)?;
        let mut inner = Arc::try_unwrap(g.0).ok().expect("fresh");
        inner.known_order = Some(order);
        Ok(Group(Arc::new(inner)))
    }

    pub fn from_chain(chain: Chain) -> Group {
        let gens = chain.strong_gens();
        let n = chain.degree();
        let cell = OnceLock::new();
        let _ = cell.set(chain);
        Group(Arc::new(Inner { degree: n, gens, chain: cell, known_order: None, label: String::new() }))
    }

    pub fn trivial(degree: usize) -> Group {
        Group::new(degree, Vec::new()).expect("no generators")
    }

    pub fn labelled(self, label: impl Into<String>) -> Group {
        let label = label.into();
        match Arc::try_unwrap(self.0) {
            Ok(mut inner) => {
                inner.label = label;
                Group(Arc::new(inner))
            }
            Err(shared) => {
                let chain = OnceLock::new();
                if let Some(c) = shared.chain.get() {
                    let _ = chain.set(c.clone());
                }
                Group(Arc::new(Inner {
                    degree: shared.degree,
                    gens: shared.gens.clone(),
                    chain,
                    known_order: shared.known_order,
                    label,
                }))
            }
        }
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.0.gens
    }

    pub fn chain(&self) -> &Chain {
        self.0.chain.get_or_init(|| {
            let b = ChainBuilder::new(self.0.degree).gens(&self.0.gens);
            match self.0.known_order {
                Some(o) => b.known_order(o).build(),
                None => b.build(),
            }
        })
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.0.gens.iter().all(|g| g.is_identity())
    }

    pub fn elements(&self) -> Vec<Perm> {
        self.chain().elements()
    }

    /// Is every generator of `h` in this group?
    pub fn contains_group(&self, h: &Group) -> bool {
        h.degree() == self.degree() && h.gens().iter().all(|g| self.contains(g))
    }

    pub fn same_group(&self, h: &Group) -> bool {
        self.order() == h.order() && self.contains_group(h)
    }

    /// Subgroup generated by the given elements (membership is checked).
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<Subgroup> {
        Subgroup::new(self, gens)
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, degree {}, {} gens)", self.0.label, self.0.degree, self.0.gens.len())
    }
}

/// A subgroup together with the ambient group it was taken in.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub ambient: Group,
    pub group: Group,
}

impl Subgroup {
    pub fn new(ambient: &Group, gens: Vec<Perm>) -> Result<Subgroup> {
        for g in &gens {
            if g.degree() != ambient.degree() {
                return Err(Error::DegreeMismatch { expected: ambient.degree(), got: g.degree() });
            }
            if !ambient.contains(g) {
                return Err(Error::NotInGroup);
            }
        }
        Ok(Subgroup { ambient: ambient.clone(), group: Group::new(ambient.degree(), gens)? })
    }

    /// Wrap an already-validated group.
    pub fn from_group(ambient: &Group, group: Group) -> Subgroup {
        debug_assert!(ambient.contains_group(&group));
        Subgroup { ambient: ambient.clone(), group }
    }

    pub fn whole(ambient: &Group) -> Subgroup {
        Subgroup { ambient: ambient.clone(), group: ambient.clone() }
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn index(&self) -> u128 {
        self.ambient.order() / self.group.order()
    }
}

impl std::ops::Deref for Subgroup {
    type Target = Group;
    fn deref(&self) -> &Group {
        &self.group
    }
}
