//! Finite groups given by Cayley tables.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::GroupError;

/// Subgroup enumeration refuses groups larger than this unless told otherwise.
pub const DEFAULT_SUBGROUP_BOUND: usize = 16;

/// A sorted, duplicate-free set of element indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct ElementSet(Vec<usize>);

impl ElementSet {
    pub fn from_unsorted(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        ElementSet(v)
    }

    fn from_mask(mask: u64) -> Self {
        ElementSet((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn contains(&self, g: usize) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// A group on `{0, .., order-1}` with multiplication `table[g*order + h] = g·h`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    names: Option<Vec<String>>,
}

/// Outcome of the Dedekind test.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum DedekindVerdict {
    Dedekind,
    /// `subgroup` is not normal: `b ∈ subgroup` and `b·a ∉ a·subgroup`.
    NonDedekind { subgroup: ElementSet, a: usize, b: usize },
}

impl DedekindVerdict {
    pub fn is_dedekind(&self) -> bool {
        matches!(self, DedekindVerdict::Dedekind)
    }
}

/// All subgroups of a group together with their normality flags.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SubgroupLattice {
    pub subgroups: Vec<ElementSet>,
    pub normal: Vec<bool>,
}

impl FiniteGroup {
    /// Validates a raw Cayley table.
    ///
    /// Checks run in the order closure, associativity, identity, inverses, and
    /// each failure names the first witness in row-major order.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { row: i, len: row.len(), expected: n });
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::NotClosed { row: i, col: j, value: v });
                }
            }
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        let m = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| m(e, g) == g && m(g, e) == g))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| m(g, h) == identity && m(h, g) == identity)
                .ok_or(GroupError::NoInverse { element: g })?;
            inverse.push(inv);
        }
        Ok(FiniteGroup { order: n, table, identity, inverse, names: None })
    }

    /// Attaches display names for the elements.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GroupError> {
        if names.len() != self.order {
            return Err(GroupError::NamesMismatch { names: names.len(), order: self.order });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, g: usize) -> String {
        match &self.names {
            Some(n) => n[g].clone(),
            None => alloc::format!("{}", g),
        }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Order of the element `g`.
    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// The subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> ElementSet {
        let mut members = alloc::vec![false; self.order];
        members[self.identity] = true;
        let mut frontier = alloc::vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !members[y] {
                    members[y] = true;
                    frontier.push(y);
                }
            }
        }
        ElementSet((0..self.order).filter(|&i| members[i]).collect())
    }

    /// `{ h·g : h ∈ set }`.
    pub fn right_coset(&self, set: &ElementSet, g: usize) -> ElementSet {
        ElementSet::from_unsorted(set.iter().map(|h| self.mul(h, g)).collect())
    }

    /// `{ g·h : h ∈ set }`.
    pub fn left_coset(&self, g: usize, set: &ElementSet) -> ElementSet {
        ElementSet::from_unsorted(set.iter().map(|h| self.mul(g, h)).collect())
    }

    pub fn is_normal(&self, h: &ElementSet) -> bool {
        self.elements().all(|g| self.left_coset(g, h) == self.right_coset(h, g))
    }

    /// All subgroups, sorted by size and then lexicographically.
    pub fn subgroups(&self) -> Result<Vec<ElementSet>, GroupError> {
        self.subgroups_bounded(DEFAULT_SUBGROUP_BOUND)
    }

    /// Subgroups by closure of generated subsets: starting from `{e}`, every
    /// known subgroup is extended by each element outside it. Every subgroup is
    /// reached because it is generated by adding its elements one at a time.
    pub fn subgroups_bounded(&self, bound: usize) -> Result<Vec<ElementSet>, GroupError> {
        if self.order > bound || self.order > 64 {
            return Err(GroupError::OrderBoundExceeded { order: self.order, bound: bound.min(64) });
        }
        let closure_of = |mask: u64| -> u64 {
            let gens: Vec<usize> = (0..self.order).filter(|i| mask >> i & 1 == 1).collect();
            self.generated(&gens).iter().fold(0u64, |m, i| m | 1 << i)
        };
        let trivial = 1u64 << self.identity;
        let mut seen: Vec<u64> = alloc::vec![trivial];
        let mut queue: Vec<u64> = alloc::vec![trivial];
        while let Some(h) = queue.pop() {
            for g in 0..self.order {
                if h >> g & 1 == 0 {
                    let k = closure_of(h | 1 << g);
                    if let Err(pos) = seen.binary_search(&k) {
                        seen.insert(pos, k);
                        queue.push(k);
                    }
                }
            }
        }
        let mut subs: Vec<ElementSet> = seen.into_iter().map(ElementSet::from_mask).collect();
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(subs)
    }

    pub fn subgroup_lattice(&self) -> Result<SubgroupLattice, GroupError> {
        let subgroups = self.subgroups()?;
        let normal = subgroups.iter().map(|h| self.is_normal(h)).collect();
        Ok(SubgroupLattice { subgroups, normal })
    }

    /// Dedekind test with a canonical witness: the first non-normal subgroup in
    /// [`FiniteGroup::subgroups`] order, the smallest `a` with `aH != Ha`, and
    /// the smallest `b ∈ H` with `b·a ∉ a·H`.
    pub fn is_dedekind(&self) -> Result<DedekindVerdict, GroupError> {
        for h in self.subgroups()? {
            for a in self.elements() {
                let ah = self.left_coset(a, &h);
                if ah == self.right_coset(&h, a) {
                    continue;
                }
                let b = h
                    .iter()
                    .find(|&b| !ah.contains(self.mul(b, a)))
                    .expect("aH != Ha forces some b·a outside aH");
                return Ok(DedekindVerdict::NonDedekind { subgroup: h, a, b });
            }
        }
        Ok(DedekindVerdict::Dedekind)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order: {}", self.order)?;
        for row in self.table.chunks(self.order) {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", v)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
