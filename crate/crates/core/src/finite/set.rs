use std::fmt;

/// A subset of the elements `0..order` of a finite loop.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    mask: Vec<bool>,
    len: usize,
}

impl ElementSet {
    pub fn empty(order: usize) -> Self {
        ElementSet {
            mask: vec![false; order],
            len: 0,
        }
    }

    pub fn full(order: usize) -> Self {
        ElementSet {
            mask: vec![true; order],
            len: order,
        }
    }

    pub fn from_elements(order: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut set = ElementSet::empty(order);
        for x in elements {
            set.insert(x);
        }
        set
    }

    pub(crate) fn from_mask(mask: Vec<bool>) -> Self {
        let len = mask.iter().filter(|&&b| b).count();
        ElementSet { mask, len }
    }

    /// Size of the ambient loop, not of the set.
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    /// Returns `true` if `x` was not already present.
    pub fn insert(&mut self, x: usize) -> bool {
        if self.mask[x] {
            return false;
        }
        self.mask[x] = true;
        self.len += 1;
        true
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.len <= other.len && self.iter().all(|x| other.contains(x))
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for x in other.iter() {
            self.insert(x);
        }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
