//! Finite loops given by their Cayley tables.

pub mod catalog;
mod io;
mod set;
pub(crate) mod subloop;

use std::collections::HashSet;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::loops::Loop;

pub use set::ElementSet;
pub use subloop::{NormalSubloop, Quotient};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("table is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("not a quasigroup: row {0} is not a permutation")]
    RowNotPermutation(usize),
    #[error("not a quasigroup: column {0} is not a permutation")]
    ColumnNotPermutation(usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("{names} element names given for a table of order {order}")]
    NameCount { names: usize, order: usize },
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown catalog loop `{0}`")]
    UnknownCatalog(String),
    #[error("malformed table document: {0}")]
    Format(String),
    #[error("subset is not a normal subloop")]
    NotNormal,
    #[error("subloop belongs to a loop of order {got}, expected {expected}")]
    Mismatch { expected: usize, got: usize },
}

/// Flags computed by exhaustive scans of a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub quasigroup: bool,
    pub identity: bool,
    pub associative: bool,
    pub commutative: bool,
    #[serde(rename = "Moufang")]
    pub moufang: bool,
}

/// A finite loop stored as its multiplication table, with precomputed
/// division tables. Elements are the indices `0..order`.
#[derive(Clone, Debug)]
pub struct CayleyLoop {
    name: String,
    names: Vec<String>,
    order: usize,
    mul: Vec<u32>,
    ldiv: Vec<u32>,
    rdiv: Vec<u32>,
    identity: usize,
    inner: OnceLock<Vec<Vec<u32>>>,
}

impl CayleyLoop {
    /// Validates a table (`rows[i][j]` is the index of `names[i]·names[j]`)
    /// and detects its identity.
    pub fn from_table(
        name: impl Into<String>,
        names: Vec<String>,
        rows: &[Vec<usize>],
    ) -> Result<Self, LoopError> {
        let n = rows.len();
        if n == 0 {
            return Err(LoopError::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(LoopError::Ragged {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(LoopError::OutOfRange {
                        row,
                        col,
                        value,
                        order: n,
                    });
                }
            }
        }
        if names.len() != n {
            return Err(LoopError::NameCount {
                names: names.len(),
                order: n,
            });
        }
        let mut seen = HashSet::new();
        for s in &names {
            if !seen.insert(s.as_str()) {
                return Err(LoopError::DuplicateName(s.clone()));
            }
        }

        let mut ldiv = vec![u32::MAX; n * n];
        let mut rdiv = vec![u32::MAX; n * n];
        for (a, r) in rows.iter().enumerate() {
            for (b, &c) in r.iter().enumerate() {
                // a·b = c, so a\c = b and c/b = a
                let l = &mut ldiv[a * n + c];
                if *l != u32::MAX {
                    return Err(LoopError::RowNotPermutation(a));
                }
                *l = b as u32;
                let rr = &mut rdiv[c * n + b];
                if *rr != u32::MAX {
                    return Err(LoopError::ColumnNotPermutation(b));
                }
                *rr = a as u32;
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|j| rows[e][j] == j && rows[j][e] == j))
            .ok_or(LoopError::NoIdentity)?;

        let mul = rows.iter().flatten().map(|&v| v as u32).collect();
        Ok(CayleyLoop {
            name: name.into(),
            names,
            order: n,
            mul,
            ldiv,
            rdiv,
            identity,
            inner: OnceLock::new(),
        })
    }

    /// Builds a table from a product function on indices.
    pub fn from_fn(
        name: impl Into<String>,
        names: Vec<String>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, LoopError> {
        let n = names.len();
        let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        CayleyLoop::from_table(name, names, &rows)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn element_by_name(&self, name: &str) -> Result<usize, LoopError> {
        self.names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| LoopError::UnknownElement(name.to_owned()))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul
            .chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    /// `a\b`.
    #[inline]
    pub fn left_div(&self, a: usize, b: usize) -> usize {
        self.ldiv[a * self.order + b] as usize
    }

    /// `a/b`.
    #[inline]
    pub fn right_div(&self, a: usize, b: usize) -> usize {
        self.rdiv[a * self.order + b] as usize
    }

    #[inline]
    pub(crate) fn comm(&self, a: usize, b: usize) -> usize {
        self.left_div(self.product(b, a), self.product(a, b))
    }

    #[inline]
    pub(crate) fn assoc(&self, a: usize, b: usize, c: usize) -> usize {
        self.left_div(
            self.product(a, self.product(b, c)),
            self.product(self.product(a, b), c),
        )
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.assoc(a, b, c) == self.identity)))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.product(a, b) == self.product(b, a)))
    }

    /// Checks the three Moufang identities
    /// `z(x(zy)) = ((zx)z)y`, `x(z(yz)) = ((xz)y)z`, `(zx)(yz) = (z(xy))z`.
    pub fn is_moufang(&self) -> bool {
        let n = self.order;
        let m = |a, b| self.product(a, b);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if m(z, m(x, m(z, y))) != m(m(m(z, x), z), y)
                        || m(x, m(z, m(y, z))) != m(m(m(x, z), y), z)
                        || m(m(z, x), m(y, z)) != m(m(z, m(x, y)), z)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn check_axioms(&self) -> AxiomReport {
        // quasigroup and identity were established when the table was built
        AxiomReport {
            quasigroup: true,
            identity: true,
            associative: self.is_associative(),
            commutative: self.is_commutative(),
            moufang: self.is_moufang(),
        }
    }

    /// Generators of the inner mapping group, as permutations of the
    /// elements: `T(x) = L_x⁻¹R_x`, `L(x,y) = L_{xy}⁻¹L_xL_y` and
    /// `R(x,y) = R_{yx}⁻¹R_yR_x`, deduplicated, identity map dropped. As
    /// functions: `z ↦ x\(zx)`, `z ↦ (xy)\(x(yz))` and `z ↦ ((zx)y)/(xy)`
    /// (the last is `R(y,x)`; all pairs are taken anyway).
    pub fn inner_mapping_generators(&self) -> &[Vec<u32>] {
        self.inner.get_or_init(|| {
            let n = self.order;
            let identity_perm: Vec<u32> = (0..n as u32).collect();
            let mut seen: HashSet<Vec<u32>> = HashSet::new();
            let mut out = Vec::new();
            let mut push = |p: Vec<u32>| {
                if p != identity_perm && seen.insert(p.clone()) {
                    out.push(p);
                }
            };
            for x in 0..n {
                push((0..n).map(|z| self.left_div(x, self.product(z, x)) as u32).collect());
            }
            for x in 0..n {
                for y in 0..n {
                    let xy = self.product(x, y);
                    push(
                        (0..n)
                            .map(|z| self.left_div(xy, self.product(x, self.product(y, z))) as u32)
                            .collect(),
                    );
                    push(
                        (0..n)
                            .map(|z| self.right_div(self.product(self.product(z, x), y), xy) as u32)
                            .collect(),
                    );
                }
            }
            out
        })
    }

    /// The subloop on `members`, re-indexed in increasing order. Returns the
    /// loop together with the map from new to old indices.
    pub fn restrict(&self, members: &ElementSet) -> Result<(CayleyLoop, Vec<usize>), LoopError> {
        let old: Vec<usize> = members.to_vec();
        let mut new_of = vec![usize::MAX; self.order];
        for (i, &x) in old.iter().enumerate() {
            new_of[x] = i;
        }
        let mut rows = Vec::with_capacity(old.len());
        for &a in &old {
            let mut row = Vec::with_capacity(old.len());
            for &b in &old {
                let c = new_of[self.product(a, b)];
                if c == usize::MAX {
                    return Err(LoopError::Format("subset is not closed under product".into()));
                }
                row.push(c);
            }
            rows.push(row);
        }
        let names = old.iter().map(|&x| self.names[x].clone()).collect();
        let sub = CayleyLoop::from_table(format!("{}|sub", self.name), names, &rows)?;
        Ok((sub, old))
    }

    /// Whether `f` (given as an index map) is an automorphism.
    pub fn is_automorphism(&self, f: &[usize]) -> bool {
        let n = self.order;
        let mut hit = vec![false; n];
        for &v in f {
            if v >= n || std::mem::replace(&mut hit[v], true) {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| f[self.product(a, b)] == self.product(f[a], f[b])))
    }
}

impl Loop for CayleyLoop {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.product(*a, *b)
    }

    fn ldiv(&self, a: &usize, b: &usize) -> usize {
        self.left_div(*a, *b)
    }

    fn rdiv(&self, a: &usize, b: &usize) -> usize {
        self.right_div(*a, *b)
    }
}

pub(crate) fn index_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> CayleyLoop {
        CayleyLoop::from_fn(format!("Z_{n}"), index_names(n), |a, b| (a + b) % n).unwrap()
    }

    #[test]
    fn trivial_loop() {
        let l = CayleyLoop::from_table("1", vec!["e".into()], &[vec![0]]).unwrap();
        assert_eq!(l.order(), 1);
        assert_eq!(l.identity_index(), 0);
        let r = l.check_axioms();
        assert!(r.associative && r.commutative && r.moufang);
    }

    #[test]
    fn identity_is_detected_anywhere() {
        // Z_3 with the identity relabelled to index 2
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let l = CayleyLoop::from_table("z3", index_names(3), &rows).unwrap();
        assert_eq!(l.identity_index(), 2);
    }

    #[test]
    fn divisions_invert_product() {
        let l = cyclic(5);
        for a in l.elements() {
            for b in l.elements() {
                assert_eq!(l.product(a, l.left_div(a, b)), b);
                assert_eq!(l.product(l.right_div(a, b), b), a);
            }
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let names = index_names(2);
        assert!(matches!(
            CayleyLoop::from_table("x", names.clone(), &[vec![0, 1], vec![1]]),
            Err(LoopError::Ragged { row: 1, len: 1, expected: 2 })
        ));
        assert!(matches!(
            CayleyLoop::from_table("x", names.clone(), &[vec![0, 0], vec![1, 1]]),
            Err(LoopError::RowNotPermutation(0))
        ));
        assert!(matches!(
            CayleyLoop::from_table("x", names.clone(), &[vec![0, 1], vec![0, 1]]),
            Err(LoopError::ColumnNotPermutation(_))
        ));
        // Latin square without identity
        let rows = vec![vec![1, 2, 0], vec![0, 1, 2], vec![2, 0, 1]];
        assert!(matches!(
            CayleyLoop::from_table("x", index_names(3), &rows),
            Err(LoopError::NoIdentity)
        ));
        assert!(matches!(
            CayleyLoop::from_table("x", vec!["a".into(), "a".into()], &[vec![0, 1], vec![1, 0]]),
            Err(LoopError::DuplicateName(_))
        ));
        assert!(matches!(
            CayleyLoop::from_table("x", names, &[vec![0, 2], vec![1, 0]]),
            Err(LoopError::OutOfRange { .. })
        ));
    }

    #[test]
    fn z4_flags() {
        let r = cyclic(4).check_axioms();
        assert!(r.associative && r.commutative && r.moufang);
    }

    #[test]
    fn groups_have_trivial_inner_maps_only_when_abelian() {
        assert!(cyclic(6).inner_mapping_generators().is_empty());
    }
}

impl PartialEq for CayleyLoop {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.names == other.names && self.mul == other.mul
    }
}
