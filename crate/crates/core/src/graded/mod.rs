//! The associated graded group `⊕ L_i / L_{i+1}` of a filtration and the
//! operations the commutator, the associator and the deviations induce on
//! it.
//!
//! Each component is a finite abelian group, written additively. An
//! operation is evaluated on classes by lifting every argument to its least
//! representative, evaluating in the loop, and projecting into the component
//! whose degree is the sum of the argument degrees. The checks in
//! [`checks`] confirm, by enumeration, that the result does not depend on
//! the representatives and that it is additive in every slot.

pub mod checks;
mod smith;

use thiserror::Error;

use crate::finite::{CayleyLoop, LoopError};
use crate::loops::Loop;
use crate::series::{Filtration, SeriesKind};
use crate::term::{AlphaSequence, TermError};

pub use checks::{CheckBlock, DegreeReport, GradedChecks, GradedReport};
pub use smith::abelian_invariants;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("quotient of degree {0} is not an abelian group")]
    NonAbelian(usize),
    #[error("no component of degree {0}")]
    MissingComponent(usize),
    #[error("term {0} of the filtration is not contained in the previous one")]
    NotDescending(usize),
    #[error("value lies outside the filtration term of degree {0}")]
    OutsideFiltration(usize),
    #[error("degree {degree} has no class {coset}")]
    InvalidClass { degree: usize, coset: usize },
    #[error("elements of degrees {0} and {1} cannot be added")]
    DegreeMismatch(usize, usize),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Loop(#[from] LoopError),
}

/// `L_i / L_{i+1}` together with the data needed to move between classes
/// and loop elements.
#[derive(Clone, Debug)]
pub struct GradedComponent {
    degree: usize,
    quotient: CayleyLoop,
    invariant_factors: Vec<u64>,
    generators: Vec<usize>,
    /// Parent element to class index; `u32::MAX` outside `L_i`.
    class_of: Vec<u32>,
    cosets: Vec<Vec<usize>>,
}

impl GradedComponent {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn quotient(&self) -> &CayleyLoop {
        &self.quotient
    }

    pub fn order(&self) -> usize {
        self.quotient.order()
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// One class of order `d_t` per invariant factor; together they
    /// generate the component.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Least parent element of the class.
    pub fn lift(&self, class: usize) -> usize {
        self.cosets[class][0]
    }

    pub fn coset(&self, class: usize) -> &[usize] {
        &self.cosets[class]
    }

    pub fn class_of(&self, x: usize) -> Option<usize> {
        match self.class_of.get(x) {
            Some(&c) if c != u32::MAX => Some(c as usize),
            _ => None,
        }
    }

    pub fn zero(&self) -> usize {
        self.quotient.identity_index()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.quotient.product(a, b)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.quotient.left_div(a, self.zero())
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn class_name(&self, class: usize) -> &str {
        self.quotient.element_name(class)
    }
}

/// A homogeneous element: a class in the component of its degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedElement {
    pub degree: usize,
    pub coset: usize,
}

#[derive(Clone, Debug)]
pub struct GradedGroup {
    parent: CayleyLoop,
    kind: SeriesKind,
    depth: usize,
    lower_bound: bool,
    components: Vec<GradedComponent>,
}

/// Builds the components `L_i / L_{i+1}` for `1 ≤ i < depth`.
pub fn graded_group(f: &Filtration) -> Result<GradedGroup, GradedError> {
    let lp = f.parent();
    let mut components = Vec::new();
    for i in 1..f.depth() {
        let upper = f.term(i);
        let lower = f.term(i + 1);
        if !lower.is_subset(upper) {
            return Err(GradedError::NotDescending(i + 1));
        }
        let (sub, old_of_new) = lp.restrict(upper.members())?;
        let mut new_of_old = vec![usize::MAX; lp.order()];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old] = new;
        }
        let lower_local = crate::finite::ElementSet::from_elements(
            sub.order(),
            lower.members().iter().map(|x| new_of_old[x]),
        );
        let q = sub.quotient_by(&lower_local)?;
        let quotient = q.quotient.with_name(format!("{}:L{}/L{}", lp.name(), i, i + 1));
        if !quotient.is_commutative() || !quotient.is_associative() {
            return Err(GradedError::NonAbelian(i));
        }
        let mut class_of = vec![u32::MAX; lp.order()];
        let mut cosets = vec![Vec::new(); quotient.order()];
        for (new, &old) in old_of_new.iter().enumerate() {
            let c = q.projection[new];
            class_of[old] = c as u32;
            cosets[c].push(old);
        }
        let (invariant_factors, generators) = abelian_invariants(&quotient);
        components.push(GradedComponent {
            degree: i,
            quotient,
            invariant_factors,
            generators,
            class_of,
            cosets,
        });
    }
    Ok(GradedGroup {
        parent: lp.clone(),
        kind: f.kind(),
        depth: f.depth(),
        lower_bound: f.any_lower_bound(),
        components,
    })
}

impl GradedGroup {
    pub fn parent(&self) -> &CayleyLoop {
        &self.parent
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    /// Depth of the filtration the group was built from; components exist
    /// for degrees `1..depth`.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn top_degree(&self) -> usize {
        self.components.len()
    }

    pub fn is_lower_bound(&self) -> bool {
        self.lower_bound
    }

    pub fn components(&self) -> &[GradedComponent] {
        &self.components
    }

    pub fn component(&self, degree: usize) -> Result<&GradedComponent, GradedError> {
        degree
            .checked_sub(1)
            .and_then(|k| self.components.get(k))
            .ok_or(GradedError::MissingComponent(degree))
    }

    pub fn element(&self, degree: usize, coset: usize) -> Result<GradedElement, GradedError> {
        if coset >= self.component(degree)?.order() {
            return Err(GradedError::InvalidClass { degree, coset });
        }
        Ok(GradedElement { degree, coset })
    }

    pub fn elements(&self, degree: usize) -> Result<Vec<GradedElement>, GradedError> {
        let c = self.component(degree)?;
        Ok((0..c.order()).map(|coset| GradedElement { degree, coset }).collect())
    }

    pub fn zero(&self, degree: usize) -> Result<GradedElement, GradedError> {
        Ok(GradedElement {
            degree,
            coset: self.component(degree)?.zero(),
        })
    }

    pub fn is_zero(&self, x: GradedElement) -> bool {
        self.component(x.degree).is_ok_and(|c| c.zero() == x.coset)
    }

    pub fn add(&self, x: GradedElement, y: GradedElement) -> Result<GradedElement, GradedError> {
        if x.degree != y.degree {
            return Err(GradedError::DegreeMismatch(x.degree, y.degree));
        }
        let c = self.component(x.degree)?;
        Ok(GradedElement {
            degree: x.degree,
            coset: c.add(x.coset, y.coset),
        })
    }

    pub fn neg(&self, x: GradedElement) -> Result<GradedElement, GradedError> {
        let c = self.component(x.degree)?;
        Ok(GradedElement {
            degree: x.degree,
            coset: c.neg(x.coset),
        })
    }

    /// Class of a loop element in the component of `degree`.
    pub fn class_of(&self, degree: usize, x: usize) -> Result<GradedElement, GradedError> {
        let coset = self
            .component(degree)?
            .class_of(x)
            .ok_or(GradedError::OutsideFiltration(degree))?;
        Ok(GradedElement { degree, coset })
    }

    pub fn lift(&self, x: GradedElement) -> Result<usize, GradedError> {
        let c = self.component(x.degree)?;
        if x.coset >= c.order() {
            return Err(GradedError::InvalidClass {
                degree: x.degree,
                coset: x.coset,
            });
        }
        Ok(c.lift(x.coset))
    }

    fn lifts(&self, xs: &[GradedElement]) -> Result<(Vec<usize>, usize), GradedError> {
        let mut out = Vec::with_capacity(xs.len());
        for &x in xs {
            out.push(self.lift(x)?);
        }
        let degree = xs.iter().map(|x| x.degree).sum();
        self.component(degree)?;
        Ok((out, degree))
    }

    /// Class of `[a, b]` in degree `p + q`.
    pub fn bracket(&self, x: GradedElement, y: GradedElement) -> Result<GradedElement, GradedError> {
        let (a, degree) = self.lifts(&[x, y])?;
        self.class_of(degree, self.parent.commutator(&a[0], &a[1]))
    }

    /// Class of `(a, b, c)` in degree `p + q + r`.
    pub fn associator(
        &self,
        x: GradedElement,
        y: GradedElement,
        z: GradedElement,
    ) -> Result<GradedElement, GradedError> {
        let (a, degree) = self.lifts(&[x, y, z])?;
        self.class_of(degree, self.parent.associator(&a[0], &a[1], &a[2]))
    }

    /// Class of a deviation of the lifts in degree `Σ p_k`.
    pub fn deviation(
        &self,
        xs: &[GradedElement],
        alphas: &AlphaSequence,
    ) -> Result<GradedElement, GradedError> {
        if xs.len() != alphas.arity() {
            return Err(TermError::Arity {
                level: alphas.level(),
                expected: alphas.arity(),
                got: xs.len(),
            }
            .into());
        }
        let (a, degree) = self.lifts(xs)?;
        self.class_of(degree, self.parent.deviation(&a, alphas.as_slice()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::series::{ca_filtration, lower_central_series};

    #[test]
    fn q8_components() {
        let g = graded_group(&ca_filtration(&catalog("Q8").unwrap(), 3)).unwrap();
        assert_eq!(g.top_degree(), 2);
        assert_eq!(g.component(1).unwrap().invariant_factors(), [2, 2]);
        assert_eq!(g.component(2).unwrap().invariant_factors(), [2]);
        assert!(matches!(g.component(3), Err(GradedError::MissingComponent(3))));
    }

    #[test]
    fn z4_and_o16_degree_one() {
        let g = graded_group(&ca_filtration(&catalog("Z_4").unwrap(), 2)).unwrap();
        assert_eq!(g.component(1).unwrap().invariant_factors(), [4]);
        let g = graded_group(&ca_filtration(&catalog("O16").unwrap(), 2)).unwrap();
        assert_eq!(g.component(1).unwrap().invariant_factors(), [2, 2, 2]);
    }

    #[test]
    fn zero_arguments_give_zero() {
        let g = graded_group(&ca_filtration(&catalog("O16").unwrap(), 4)).unwrap();
        let zero = g.zero(1).unwrap();
        for x in g.elements(1).unwrap() {
            assert!(g.is_zero(g.bracket(zero, x).unwrap()));
            assert!(g.is_zero(g.bracket(x, zero).unwrap()));
            for y in g.elements(1).unwrap() {
                assert!(g.is_zero(g.associator(zero, x, y).unwrap()));
                assert!(g.is_zero(g.associator(x, zero, y).unwrap()));
                assert!(g.is_zero(g.associator(x, y, zero).unwrap()));
            }
        }
    }

    #[test]
    fn o16_associator_nonzero_in_degree_three() {
        let g = graded_group(&ca_filtration(&catalog("O16").unwrap(), 4)).unwrap();
        let ones = g.elements(1).unwrap();
        let nonzero = ones.iter().any(|&x| {
            ones.iter()
                .any(|&y| ones.iter().any(|&z| !g.is_zero(g.associator(x, y, z).unwrap())))
        });
        assert!(nonzero);
        // the degree-two component is trivial, so every bracket vanishes
        for &x in &ones {
            for &y in &ones {
                assert!(g.is_zero(g.bracket(x, y).unwrap()));
            }
        }
    }

    #[test]
    fn group_bracket_matches_commutator_of_representatives() {
        let d4 = catalog("D4").unwrap();
        let g = graded_group(&lower_central_series(&d4, 3)).unwrap();
        let e = d4.identity_index();
        for x in g.elements(1).unwrap() {
            for y in g.elements(1).unwrap() {
                let (a, b) = (g.lift(x).unwrap(), g.lift(y).unwrap());
                // a⁻¹ b⁻¹ a b
                let inv = |v| d4.left_div(v, e);
                let c = d4.product(d4.product(inv(a), inv(b)), d4.product(a, b));
                assert_eq!(g.bracket(x, y).unwrap(), g.class_of(2, c).unwrap());
            }
        }
    }

    #[test]
    fn errors() {
        let g = graded_group(&ca_filtration(&catalog("Q8").unwrap(), 3)).unwrap();
        let x = g.element(1, 1).unwrap();
        assert!(matches!(g.bracket(x, g.element(2, 0).unwrap()), Err(GradedError::MissingComponent(3))));
        assert!(matches!(g.element(1, 9), Err(GradedError::InvalidClass { .. })));
        assert!(matches!(
            g.add(x, g.element(2, 0).unwrap()),
            Err(GradedError::DegreeMismatch(1, 2))
        ));
        let alphas = AlphaSequence::new(vec![1]).unwrap();
        assert!(matches!(g.deviation(&[x, x, x], &alphas), Err(GradedError::Term(_))));
    }
}
