use super::{CayleyLoop, ElementSet, LoopError};

/// A normal subloop of a [`CayleyLoop`]. Only constructible through
/// closures or [`CayleyLoop::normal_subloop`], which checks the invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalSubloop {
    members: ElementSet,
}

impl NormalSubloop {
    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset(&self, other: &NormalSubloop) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Order of the loop this subloop lives in.
    pub fn parent_order(&self) -> usize {
        self.members.universe()
    }
}

/// A quotient loop with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub quotient: CayleyLoop,
    /// Element of the parent to its coset index.
    pub projection: Vec<usize>,
    /// Least element of each coset.
    pub representatives: Vec<usize>,
}

/// Incremental saturation of a subset under product, both divisions and,
/// optionally, the inner mapping generators.
pub(crate) struct Closure<'a> {
    lp: &'a CayleyLoop,
    normal: bool,
    set: ElementSet,
    members: Vec<usize>,
    queue: Vec<usize>,
}

impl<'a> Closure<'a> {
    pub(crate) fn new(lp: &'a CayleyLoop, normal: bool) -> Self {
        let mut c = Closure {
            lp,
            normal,
            set: ElementSet::empty(lp.order()),
            members: Vec::new(),
            queue: Vec::new(),
        };
        c.push(lp.identity_index());
        c
    }

    fn push(&mut self, x: usize) {
        if self.set.insert(x) {
            self.members.push(x);
            self.queue.push(x);
        }
    }

    pub(crate) fn add(&mut self, x: usize) {
        if !self.set.contains(x) {
            self.push(x);
            self.saturate();
        }
    }

    pub(crate) fn extend(&mut self, xs: impl IntoIterator<Item = usize>) {
        for x in xs {
            self.push(x);
        }
        self.saturate();
    }

    pub(crate) fn len(&self) -> usize {
        self.set.len()
    }

    pub(crate) fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    fn saturate(&mut self) {
        let lp = self.lp;
        while let Some(z) = self.queue.pop() {
            if self.normal {
                for perm in lp.inner_mapping_generators() {
                    self.push(perm[z] as usize);
                }
            }
            // pairs with later members are handled when those are popped
            let known = self.members.len();
            for k in 0..known {
                let m = self.members[k];
                self.push(lp.product(z, m));
                self.push(lp.product(m, z));
                self.push(lp.left_div(z, m));
                self.push(lp.left_div(m, z));
                self.push(lp.right_div(z, m));
                self.push(lp.right_div(m, z));
            }
        }
    }

    pub(crate) fn into_set(self) -> ElementSet {
        self.set
    }
}

impl CayleyLoop {
    pub fn trivial_subloop(&self) -> NormalSubloop {
        NormalSubloop {
            members: ElementSet::from_elements(self.order(), [self.identity_index()]),
        }
    }

    pub fn whole(&self) -> NormalSubloop {
        NormalSubloop {
            members: ElementSet::full(self.order()),
        }
    }

    /// Least subloop containing `seed`.
    pub fn subloop_closure(&self, seed: &ElementSet) -> ElementSet {
        let mut c = Closure::new(self, false);
        c.extend(seed.iter());
        c.into_set()
    }

    /// Least normal subloop containing `seed`.
    pub fn normal_closure(&self, seed: &ElementSet) -> NormalSubloop {
        let mut c = Closure::new(self, true);
        c.extend(seed.iter());
        NormalSubloop {
            members: c.into_set(),
        }
    }

    pub fn is_subloop(&self, set: &ElementSet) -> bool {
        set.universe() == self.order()
            && set.contains(self.identity_index())
            && set.iter().all(|a| {
                set.iter().all(|b| {
                    set.contains(self.product(a, b))
                        && set.contains(self.left_div(a, b))
                        && set.contains(self.right_div(a, b))
                })
            })
    }

    pub fn is_normal_subloop(&self, set: &ElementSet) -> bool {
        self.is_subloop(set)
            && self
                .inner_mapping_generators()
                .iter()
                .all(|p| set.iter().all(|x| set.contains(p[x] as usize)))
    }

    pub fn normal_subloop(&self, set: &ElementSet) -> Result<NormalSubloop, LoopError> {
        if self.is_normal_subloop(set) {
            Ok(NormalSubloop {
                members: set.clone(),
            })
        } else {
            Err(LoopError::NotNormal)
        }
    }

    pub(crate) fn normal_from_closure(set: ElementSet) -> NormalSubloop {
        NormalSubloop { members: set }
    }

    fn check_parent(&self, n: &NormalSubloop) -> Result<(), LoopError> {
        if n.parent_order() != self.order() {
            return Err(LoopError::Mismatch {
                expected: self.order(),
                got: n.parent_order(),
            });
        }
        Ok(())
    }

    /// `[N, L]`: the smallest normal subloop `M` with `N/M` central in `L/M`.
    ///
    /// `N/M` is central exactly when every `[n, x]`, `(n, x, y)`, `(x, n, y)`
    /// and `(x, y, n)` lies in `M`, so the normal closure of those elements
    /// is the answer; no iteration is needed.
    pub fn bracket(&self, n: &NormalSubloop) -> Result<NormalSubloop, LoopError> {
        self.check_parent(n)?;
        let mut seed = ElementSet::empty(self.order());
        for a in n.members.iter() {
            for x in self.elements() {
                seed.insert(self.comm(a, x));
                for y in self.elements() {
                    seed.insert(self.assoc(a, x, y));
                    seed.insert(self.assoc(x, a, y));
                    seed.insert(self.assoc(x, y, a));
                }
            }
        }
        Ok(self.normal_closure(&seed))
    }

    /// Elements that commute with everything and associate in every slot.
    pub fn centre(&self) -> ElementSet {
        let e = self.identity_index();
        let members = self.elements().filter(|&z| {
            self.elements().all(|x| {
                self.comm(z, x) == e
                    && self.elements().all(|y| {
                        self.assoc(z, x, y) == e
                            && self.assoc(x, z, y) == e
                            && self.assoc(x, y, z) == e
                    })
            })
        });
        ElementSet::from_elements(self.order(), members)
    }

    pub fn quotient(&self, n: &NormalSubloop) -> Result<Quotient, LoopError> {
        self.check_parent(n)?;
        self.quotient_by(n.members())
    }

    /// Coset loop `L/S`. Fails with [`LoopError::NotNormal`] when the cosets
    /// of `S` do not partition `L` or the coset product is ill-defined.
    pub fn quotient_by(&self, set: &ElementSet) -> Result<Quotient, LoopError> {
        let n = self.order();
        if set.universe() != n {
            return Err(LoopError::Mismatch {
                expected: n,
                got: set.universe(),
            });
        }
        if !set.contains(self.identity_index()) {
            return Err(LoopError::NotNormal);
        }
        let mut projection = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        for x in 0..n {
            if projection[x] != usize::MAX {
                continue;
            }
            let class = representatives.len();
            representatives.push(x);
            for s in set.iter() {
                let y = self.product(x, s);
                if projection[y] != usize::MAX {
                    return Err(LoopError::NotNormal);
                }
                projection[y] = class;
            }
        }
        let m = representatives.len();
        for a in 0..n {
            let ra = representatives[projection[a]];
            for b in 0..n {
                let rb = representatives[projection[b]];
                if projection[self.product(a, b)] != projection[self.product(ra, rb)]
                    || projection[self.left_div(a, b)] != projection[self.left_div(ra, rb)]
                    || projection[self.right_div(a, b)] != projection[self.right_div(ra, rb)]
                {
                    return Err(LoopError::NotNormal);
                }
            }
        }
        let rows: Vec<Vec<usize>> = representatives
            .iter()
            .map(|&a| {
                representatives
                    .iter()
                    .map(|&b| projection[self.product(a, b)])
                    .collect()
            })
            .collect();
        let names = representatives
            .iter()
            .map(|&r| self.element_name(r).to_owned())
            .collect();
        let quotient =
            CayleyLoop::from_table(format!("{}/N", self.name()), names, &rows).map_err(|_| LoopError::NotNormal)?;
        debug_assert_eq!(quotient.order(), m);
        Ok(Quotient {
            quotient,
            projection,
            representatives,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::catalog::catalog;

    fn names_of(l: &CayleyLoop, s: &ElementSet) -> Vec<String> {
        let mut v: Vec<String> = s.iter().map(|x| l.element_name(x).to_owned()).collect();
        v.sort();
        v
    }

    fn set(l: &CayleyLoop, names: &[&str]) -> ElementSet {
        ElementSet::from_elements(l.order(), names.iter().map(|s| l.element_by_name(s).unwrap()))
    }

    #[test]
    fn empty_seed_gives_identity() {
        let q8 = catalog("Q8").unwrap();
        let empty = ElementSet::empty(8);
        assert_eq!(q8.subloop_closure(&empty).len(), 1);
        assert!(q8.normal_closure(&empty).is_trivial());
    }

    #[test]
    fn cyclic_subgroup_of_q8() {
        let q8 = catalog("Q8").unwrap();
        let s = q8.subloop_closure(&set(&q8, &["i"]));
        assert_eq!(names_of(&q8, &s), ["-1", "-i", "1", "i"]);
        assert_eq!(q8.subloop_closure(&ElementSet::full(8)).len(), 8);
    }

    #[test]
    fn normal_closure_in_s3() {
        // a reflection is not normal in S3; its normal closure is everything
        let s3 = catalog("S3").unwrap();
        let seed = set(&s3, &["s"]);
        assert_eq!(s3.subloop_closure(&seed).len(), 2);
        assert!(!s3.is_normal_subloop(&s3.subloop_closure(&seed)));
        assert_eq!(s3.normal_closure(&seed).order(), 6);
        assert!(s3.normal_subloop(&s3.subloop_closure(&seed)).is_err());
    }

    #[test]
    fn minus_one_in_o16() {
        let o16 = catalog("O16").unwrap();
        let n = o16.normal_closure(&set(&o16, &["-1"]));
        assert_eq!(names_of(&o16, n.members()), ["-1", "1"]);
    }

    #[test]
    fn brackets() {
        let z4 = catalog("Z_4").unwrap();
        assert!(z4.bracket(&z4.whole()).unwrap().is_trivial());
        for name in ["Q8", "O16"] {
            let l = catalog(name).unwrap();
            let b = l.bracket(&l.whole()).unwrap();
            assert_eq!(names_of(&l, b.members()), ["-1", "1"], "{name}");
        }
        let q8 = catalog("Q8").unwrap();
        assert!(matches!(
            q8.bracket(&catalog("Z_4").unwrap().whole()),
            Err(LoopError::Mismatch { .. })
        ));
    }

    #[test]
    fn centres() {
        assert_eq!(catalog("Z_6").unwrap().centre().len(), 6);
        for name in ["Q8", "O16"] {
            let l = catalog(name).unwrap();
            assert_eq!(names_of(&l, &l.centre()), ["-1", "1"]);
        }
    }

    #[test]
    fn quotients() {
        let q8 = catalog("Q8").unwrap();
        let whole = q8.quotient(&q8.whole()).unwrap();
        assert_eq!(whole.quotient.order(), 1);

        let pm = q8.normal_closure(&set(&q8, &["-1"]));
        let q = q8.quotient(&pm).unwrap().quotient;
        assert_eq!(q.order(), 4);
        let flags = q.check_axioms();
        assert!(flags.associative && flags.commutative);
        // Klein four: every element squares to the identity
        assert!(q.elements().all(|x| q.product(x, x) == q.identity_index()));

        let o16 = catalog("O16").unwrap();
        let pm = o16.normal_closure(&set(&o16, &["-1"]));
        let q = o16.quotient(&pm).unwrap().quotient;
        assert_eq!(q.order(), 8);
        assert!(q.check_axioms().associative && q.check_axioms().commutative);
        assert!(q.elements().all(|x| q.product(x, x) == q.identity_index()));
    }

    #[test]
    fn quotient_by_non_normal_fails() {
        let s3 = catalog("S3").unwrap();
        let h = s3.subloop_closure(&set(&s3, &["s"]));
        assert!(matches!(s3.quotient_by(&h), Err(LoopError::NotNormal)));
        let not_subloop = set(&s3, &["e", "r"]);
        assert!(s3.quotient_by(&not_subloop).is_err());
    }
}
