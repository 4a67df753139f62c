//! Syntactic elements of a free loop.
//!
//! A [`Term`] is a binary tree over named generators with three operations:
//! product `*`, left division `\` and right division `/`. Nothing is ever
//! simplified; two terms are equal only when their trees are. Whether a term
//! is trivial in the free loop is decided, soundly in one direction only, by
//! evaluating it somewhere: in a finite loop or in the extension loop of
//! [`crate::higman`].

pub(crate) mod alpha;
mod parse;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::loops::Loop;

pub use alpha::{enumerate_alphas, AlphaSequence};
pub use parse::{parse_term, ParseError, ParseErrorKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Mul,
    LDiv,
    RDiv,
}

impl Op {
    pub fn symbol(self) -> char {
        match self {
            Op::Mul => '*',
            Op::LDiv => '\\',
            Op::RDiv => '/',
        }
    }

    pub fn from_symbol(c: char) -> Option<Op> {
        match c {
            '*' => Some(Op::Mul),
            '\\' => Some(Op::LDiv),
            '/' => Some(Op::RDiv),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Gen(String),
    Node(Op, Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("deviation of level {level} takes {expected} arguments, got {got}")]
    Arity {
        level: usize,
        expected: usize,
        got: usize,
    },
    #[error("alpha {value} at position {position} is outside 1..={max}")]
    InvalidAlpha {
        position: usize,
        value: i64,
        max: usize,
    },
    #[error("generator `{0}` is not bound")]
    Unbound(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
}

pub(crate) fn is_ident(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Term {
    /// A generator. Panics on names that are not identifiers of the term
    /// grammar; use [`Term::try_gen`] for untrusted input.
    pub fn gen(name: &str) -> Term {
        Term::try_gen(name).expect("invalid generator name")
    }

    pub fn try_gen(name: &str) -> Result<Term, TermError> {
        if is_ident(name) {
            Ok(Term::Gen(name.to_owned()))
        } else {
            Err(TermError::InvalidName(name.to_owned()))
        }
    }

    pub fn node(op: Op, left: Term, right: Term) -> Term {
        Term::Node(op, Box::new(left), Box::new(right))
    }

    pub fn mul(left: Term, right: Term) -> Term {
        Term::node(Op::Mul, left, right)
    }

    pub fn ldiv(left: Term, right: Term) -> Term {
        Term::node(Op::LDiv, left, right)
    }

    pub fn rdiv(left: Term, right: Term) -> Term {
        Term::node(Op::RDiv, left, right)
    }

    /// Right-normed power `(((y y) y) …) y` with `m ≥ 1` factors.
    pub fn power(y: &Term, m: usize) -> Term {
        assert!(m >= 1, "power needs at least one factor");
        let mut acc = y.clone();
        for _ in 1..m {
            acc = Term::mul(acc, y.clone());
        }
        acc
    }

    /// `[a, b] = (ba)\(ab)`.
    pub fn commutator(a: &Term, b: &Term) -> Term {
        Term::ldiv(
            Term::mul(b.clone(), a.clone()),
            Term::mul(a.clone(), b.clone()),
        )
    }

    /// `(a, b, c) = (a(bc))\((ab)c)`.
    pub fn associator(a: &Term, b: &Term, c: &Term) -> Term {
        Term::ldiv(
            Term::mul(a.clone(), Term::mul(b.clone(), c.clone())),
            Term::mul(Term::mul(a.clone(), b.clone()), c.clone()),
        )
    }

    /// The deviation `(a₁, …, a_{n+3})_{α₁…αₙ}`.
    ///
    /// Level zero is the associator. For `n ≥ 1`, with `A(x)` the level
    /// `n − 1` deviation of the arguments where slot `αₙ` holds `x` and slot
    /// `αₙ + 1` is dropped, the result is `(A(a_αₙ)·A(a_αₙ₊₁)) \ A(a_αₙ·a_αₙ₊₁)`.
    pub fn deviation(args: &[Term], alphas: &AlphaSequence) -> Result<Term, TermError> {
        alphas.check_arity(args.len())?;
        Ok(deviation_unchecked(args, alphas.as_slice()))
    }

    pub fn is_generator(&self) -> bool {
        matches!(self, Term::Gen(_))
    }

    pub fn generators(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Gen(name) => {
                out.insert(name);
            }
            Term::Node(_, l, r) => {
                l.collect_generators(out);
                r.collect_generators(out);
            }
        }
    }

    /// Number of nodes and leaves.
    pub fn size(&self) -> usize {
        match self {
            Term::Gen(_) => 1,
            Term::Node(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Gen(_) => 0,
            Term::Node(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Structural evaluation in `lp`, with generators looked up in `env`.
    pub fn eval<L: Loop>(
        &self,
        env: &HashMap<String, L::Elem>,
        lp: &L,
    ) -> Result<L::Elem, TermError> {
        eval_term(self, env, lp)
    }

    fn write_nested(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Gen(name) => f.write_str(name),
            Term::Node(..) => {
                f.write_str("(")?;
                self.write_bare(f)?;
                f.write_str(")")
            }
        }
    }

    fn write_bare(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Gen(name) => f.write_str(name),
            Term::Node(op, l, r) => {
                l.write_nested(f)?;
                write!(f, "{}", op.symbol())?;
                r.write_nested(f)
            }
        }
    }
}

pub(crate) fn deviation_unchecked(args: &[Term], alphas: &[u32]) -> Term {
    let Some((&last, prefix)) = alphas.split_last() else {
        return Term::associator(&args[0], &args[1], &args[2]);
    };
    let slot = last as usize - 1;
    let inner = |x: Term| {
        let mut sub = Vec::with_capacity(args.len() - 1);
        sub.extend_from_slice(&args[..slot]);
        sub.push(x);
        sub.extend_from_slice(&args[slot + 2..]);
        deviation_unchecked(&sub, prefix)
    };
    Term::ldiv(
        Term::mul(inner(args[slot].clone()), inner(args[slot + 1].clone())),
        inner(Term::mul(args[slot].clone(), args[slot + 1].clone())),
    )
}

/// Canonical printing: every inner node is parenthesised, the outermost
/// parentheses are dropped. Sugar forms are never printed.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_bare(f)
    }
}

impl FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Term, ParseError> {
        parse_term(s)
    }
}

pub fn eval_term<L: Loop>(
    t: &Term,
    env: &HashMap<String, L::Elem>,
    lp: &L,
) -> Result<L::Elem, TermError> {
    match t {
        Term::Gen(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| TermError::Unbound(name.clone())),
        Term::Node(op, l, r) => {
            let a = eval_term(l, env, lp)?;
            let b = eval_term(r, env, lp)?;
            Ok(match op {
                Op::Mul => lp.mul(&a, &b),
                Op::LDiv => lp.ldiv(&a, &b),
                Op::RDiv => lp.rdiv(&a, &b),
            })
        }
    }
}

/// Checked direct evaluation of a deviation in a concrete loop.
pub fn eval_deviation<L: Loop>(
    lp: &L,
    args: &[L::Elem],
    alphas: &AlphaSequence,
) -> Result<L::Elem, TermError> {
    alphas.check_arity(args.len())?;
    Ok(lp.deviation(args, alphas.as_slice()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::Integers;
    use num_bigint::BigInt;

    fn g(name: &str) -> Term {
        Term::gen(name)
    }

    #[test]
    fn commutator_shape() {
        let t = Term::commutator(&g("a"), &g("b"));
        assert_eq!(
            t,
            Term::ldiv(Term::mul(g("b"), g("a")), Term::mul(g("a"), g("b")))
        );
    }

    #[test]
    fn associator_shape() {
        let t = Term::associator(&g("a"), &g("b"), &g("c"));
        assert_eq!(
            t,
            Term::ldiv(
                Term::mul(g("a"), Term::mul(g("b"), g("c"))),
                Term::mul(Term::mul(g("a"), g("b")), g("c"))
            )
        );
        assert_eq!(t.to_string(), "(a*(b*c))\\((a*b)*c)");
    }

    #[test]
    fn level_zero_deviation_is_associator() {
        let args = [g("a"), g("b"), g("c")];
        let dev = Term::deviation(&args, &AlphaSequence::empty()).unwrap();
        assert_eq!(dev, Term::associator(&args[0], &args[1], &args[2]));
    }

    #[test]
    fn level_one_deviations_match_displayed_formulas() {
        let (a, b, c, d) = (g("a"), g("b"), g("c"), g("d"));
        let args = [a.clone(), b.clone(), c.clone(), d.clone()];
        let asc = Term::associator;

        let first = Term::ldiv(
            Term::mul(asc(&a, &c, &d), asc(&b, &c, &d)),
            asc(&Term::mul(a.clone(), b.clone()), &c, &d),
        );
        let second = Term::ldiv(
            Term::mul(asc(&a, &b, &d), asc(&a, &c, &d)),
            asc(&a, &Term::mul(b.clone(), c.clone()), &d),
        );
        let third = Term::ldiv(
            Term::mul(asc(&a, &b, &c), asc(&a, &b, &d)),
            asc(&a, &b, &Term::mul(c.clone(), d.clone())),
        );
        for (alpha, expected) in [(1, first), (2, second), (3, third)] {
            let seq = AlphaSequence::new(vec![alpha]).unwrap();
            assert_eq!(Term::deviation(&args, &seq).unwrap(), expected);
        }
    }

    #[test]
    fn deviation_arity_errors() {
        let args = [g("a"), g("b"), g("c")];
        let seq = AlphaSequence::new(vec![1]).unwrap();
        assert_eq!(
            Term::deviation(&args, &seq),
            Err(TermError::Arity {
                level: 1,
                expected: 4,
                got: 3
            })
        );
    }

    #[test]
    fn deviation_size_grows_by_three() {
        let args: Vec<Term> = ["a", "b", "c", "d", "e", "f"].map(g).to_vec();
        let sizes: Vec<usize> = (0..=3)
            .map(|n| {
                let seq = AlphaSequence::new(vec![1; n]).unwrap();
                Term::deviation(&args[..n + 3], &seq).unwrap().size()
            })
            .collect();
        // each level wraps three copies of the previous one
        for w in sizes.windows(2) {
            assert!(w[1] > 3 * w[0]);
        }
    }

    #[test]
    fn power_is_right_normed() {
        let y = g("y");
        let p3 = Term::power(&y, 3);
        assert_eq!(p3, Term::mul(Term::mul(y.clone(), y.clone()), y.clone()));
        assert_eq!(Term::power(&y, 1), y);
    }

    #[test]
    fn eval_in_integers() {
        let z = Integers;
        let mut env = HashMap::new();
        env.insert("y".to_owned(), BigInt::from(1));
        env.insert("a".to_owned(), BigInt::from(9));
        let five = Term::power(&g("y"), 5);
        assert_eq!(eval_term(&five, &env, &z).unwrap(), BigInt::from(5));
        let com = Term::commutator(&g("y"), &g("y"));
        assert_eq!(eval_term(&com, &env, &z).unwrap(), BigInt::from(0));
        let aa = Term::ldiv(g("a"), g("a"));
        assert_eq!(eval_term(&aa, &env, &z).unwrap(), BigInt::from(0));
    }

    #[test]
    fn eval_unbound_generator() {
        let env: HashMap<String, BigInt> = HashMap::new();
        assert_eq!(
            eval_term(&g("q"), &env, &Integers),
            Err(TermError::Unbound("q".into()))
        );
    }

    #[test]
    fn generator_names_are_checked() {
        assert!(Term::try_gen("x_1").is_ok());
        assert!(Term::try_gen("1x").is_err());
        assert!(Term::try_gen("").is_err());
    }

    #[test]
    fn generators_are_collected() {
        let t: Term = "com(a,asc(b,c,a))".parse().unwrap();
        let gens: Vec<&str> = t.generators().into_iter().collect();
        assert_eq!(gens, ["a", "b", "c"]);
    }
}
