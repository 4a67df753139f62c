//! The extension loop `(L, B)` of a loop `L` by the free abelian group `B`
//! on symbols `f(l₁, l₂)` (`l₁, l₂ ≠ 1`) and `g(x)` (one per free generator).
//!
//! Multiplication and the two divisions are
//!
//! ```text
//! (l₁, b₁)(l₂, b₂) = (l₁l₂, b₁ + b₂ + f(l₁, l₂))
//! (l₁, b₁)/(l₂, b₂) = (l₁/l₂, b₁ − b₂ − f(l₁/l₂, l₂))
//! (l₂, b₂)\(l₁, b₁) = (l₂\l₁, b₁ − b₂ − f(l₂, l₂\l₁))
//! ```
//!
//! with `f(l, 1) = f(1, l) = 0`. Sending each generator `x` of a free loop to
//! `δx = (p(x), g(x))` extends to a homomorphism whose kernel is `[N, F]`,
//! `N` the kernel of `p`. With `p` onto the integers and `N` containing the
//! commutators, a term with `δt ≠ (0, 0)` is therefore not in `γ₃F`.
//!
//! ```
//! use loopforge::higman::{delta_power_closed_form, HigmanLoop};
//! use loopforge::{Integers, Loop, Term};
//! use num_bigint::BigInt;
//! use std::collections::HashMap;
//!
//! let h = HigmanLoop::new(Integers);
//! let p = HashMap::from([("y".to_owned(), BigInt::from(1))]);
//! let y3 = Term::power(&Term::gen("y"), 3);
//! assert_eq!(h.delta_eval(&y3, &p).unwrap(), delta_power_closed_form(3));
//! assert_eq!(h.delta_eval(&y3, &p).unwrap().to_string(), "(3, f(1,1) + f(2,1) + 3g(y))");
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::loops::{Integers, Loop};
use crate::term::{eval_term, AlphaSequence, Term, TermError};

/// A free generator of `B`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisSymbol<E> {
    F(E, E),
    G(String),
}

impl<E: fmt::Display> fmt::Display for BasisSymbol<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSymbol::F(a, b) => write!(f, "f({a},{b})"),
            BasisSymbol::G(x) => write!(f, "g({x})"),
        }
    }
}

/// A finitely supported integer combination of basis symbols. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbVector<E: Ord> {
    coeffs: BTreeMap<BasisSymbol<E>, BigInt>,
}

impl<E: Ord> Default for AbVector<E> {
    fn default() -> Self {
        AbVector {
            coeffs: BTreeMap::new(),
        }
    }
}

impl<E: Ord + Clone> AbVector<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(sym: BasisSymbol<E>) -> Self {
        let mut v = Self::zero();
        v.add_term(sym, BigInt::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, sym: &BasisSymbol<E>) -> BigInt {
        self.coeffs.get(sym).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisSymbol<E>, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, sym: BasisSymbol<E>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(sym).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        AbVector {
            coeffs: self.coeffs.iter().map(|(s, c)| (s.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        AbVector {
            coeffs: self.coeffs.iter().map(|(s, c)| (s.clone(), c * k)).collect(),
        }
    }
}

impl<E: Ord + fmt::Display> fmt::Display for AbVector<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, (s, c)) in self.coeffs.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match k {
                0 if c.is_negative() => f.write_str("-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{s}")?;
            } else {
                write!(f, "{a}{s}")?;
            }
        }
        Ok(())
    }
}

/// An element `(l, b)` of `(L, B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HigmanElement<E: Ord> {
    pub l: E,
    pub b: AbVector<E>,
}

impl<E: Ord + fmt::Display> fmt::Display for HigmanElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.l, self.b)
    }
}

/// `(L, B)` over an ambient loop `L`.
#[derive(Clone, Debug)]
pub struct HigmanLoop<A> {
    ambient: A,
}

impl<A: Loop> HigmanLoop<A>
where
    A::Elem: Ord,
{
    pub fn new(ambient: A) -> Self {
        HigmanLoop { ambient }
    }

    pub fn ambient(&self) -> &A {
        &self.ambient
    }

    /// `f(l₁, l₂)`, or zero when either coordinate is the identity.
    pub fn f(&self, l1: &A::Elem, l2: &A::Elem) -> AbVector<A::Elem> {
        let e = self.ambient.identity();
        if *l1 == e || *l2 == e {
            AbVector::zero()
        } else {
            AbVector::single(BasisSymbol::F(l1.clone(), l2.clone()))
        }
    }

    /// `δx = (l, g(x))`.
    pub fn generator(&self, name: &str, l: A::Elem) -> HigmanElement<A::Elem> {
        HigmanElement {
            l,
            b: AbVector::single(BasisSymbol::G(name.to_owned())),
        }
    }

    /// Evaluates `t` under `δ`, generator `x` going to `(p(x), g(x))`.
    pub fn delta_eval(
        &self,
        t: &Term,
        p: &HashMap<String, A::Elem>,
    ) -> Result<HigmanElement<A::Elem>, TermError> {
        let mut env = HashMap::new();
        for x in t.generators() {
            let l = p.get(x).ok_or_else(|| TermError::Unbound(x.to_owned()))?;
            env.insert(x.to_owned(), self.generator(x, l.clone()));
        }
        eval_term(t, &env, self)
    }
}

impl<A: Loop> Loop for HigmanLoop<A>
where
    A::Elem: Ord,
{
    type Elem = HigmanElement<A::Elem>;

    fn identity(&self) -> Self::Elem {
        HigmanElement {
            l: self.ambient.identity(),
            b: AbVector::zero(),
        }
    }

    fn mul(&self, u: &Self::Elem, v: &Self::Elem) -> Self::Elem {
        HigmanElement {
            l: self.ambient.mul(&u.l, &v.l),
            b: u.b.add(&v.b).add(&self.f(&u.l, &v.l)),
        }
    }

    /// `(l₂, b₂)\(l₁, b₁) = (l₂\l₁, b₁ − b₂ − f(l₂, l₂\l₁))`.
    fn ldiv(&self, u: &Self::Elem, v: &Self::Elem) -> Self::Elem {
        let l = self.ambient.ldiv(&u.l, &v.l);
        let b = v.b.sub(&u.b).sub(&self.f(&u.l, &l));
        HigmanElement { l, b }
    }

    /// `(l₁, b₁)/(l₂, b₂) = (l₁/l₂, b₁ − b₂ − f(l₁/l₂, l₂))`.
    fn rdiv(&self, u: &Self::Elem, v: &Self::Elem) -> Self::Elem {
        let l = self.ambient.rdiv(&u.l, &v.l);
        let b = u.b.sub(&v.b).sub(&self.f(&l, &v.l));
        HigmanElement { l, b }
    }
}

fn z(k: u64) -> BigInt {
    BigInt::from(k)
}

/// `δyᵐ = (m, m·g(y) + f(1,1) + f(2,1) + … + f(m−1,1))` over the integers
/// with `p(y) = 1`.
pub fn delta_power_closed_form(m: u64) -> HigmanElement<BigInt> {
    let mut b = AbVector::zero();
    b.add_term(BasisSymbol::G("y".to_owned()), z(m));
    for j in 1..m {
        b.add_term(BasisSymbol::F(z(j), z(1)), BigInt::one());
    }
    HigmanElement { l: z(m), b }
}

/// The free-loop element `(yᵐ, y, …, y)` with alpha sequence `(1, …, 1)` of
/// length `n`.
pub fn witness_term(m: usize, n: usize) -> Term {
    let y = Term::gen("y");
    let mut args = vec![Term::power(&y, m)];
    args.extend(std::iter::repeat(y).take(n + 2));
    let alphas = AlphaSequence::new(vec![1; n]).expect("all-ones alphas are valid");
    Term::deviation(&args, &alphas).expect("arity matches")
}

/// Largest `n` accepted by [`higman_witness`].
pub const MAX_WITNESS_LEVEL: u64 = 256;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HigmanError {
    #[error("m must be at least 1 (got {0})")]
    InvalidPower(u64),
    #[error("n must be at most {MAX_WITNESS_LEVEL} (got {0})")]
    LevelTooLarge(u64),
}

/// Memoised `δ(yᵐ, y, …, y)_{1,…,1}` over the integers with `p(y) = 1`,
/// using `W(m, n) = (W(m, n−1)·W(1, n−1)) \ W(m+1, n−1)`.
pub struct WitnessEvaluator {
    h: HigmanLoop<Integers>,
    y: HigmanElement<BigInt>,
    powers: Vec<HigmanElement<BigInt>>,
    memo: HashMap<(u64, u64), HigmanElement<BigInt>>,
}

impl Default for WitnessEvaluator {
    fn default() -> Self {
        Self::new()
    }
}

impl WitnessEvaluator {
    pub fn new() -> Self {
        let h = HigmanLoop::new(Integers);
        let y = h.generator("y", BigInt::one());
        WitnessEvaluator {
            powers: vec![h.identity()],
            h,
            y,
            memo: HashMap::new(),
        }
    }

    fn power(&mut self, m: u64) -> HigmanElement<BigInt> {
        while self.powers.len() as u64 <= m {
            let next = self.h.mul(self.powers.last().unwrap(), &self.y);
            self.powers.push(next);
        }
        self.powers[m as usize].clone()
    }

    pub fn value(&mut self, m: u64, n: u64) -> HigmanElement<BigInt> {
        if let Some(v) = self.memo.get(&(m, n)) {
            return v.clone();
        }
        let v = if n == 0 {
            let ym = self.power(m);
            self.h.associator(&ym, &self.y, &self.y)
        } else {
            let first = self.value(m, n - 1);
            let second = self.value(1, n - 1);
            let joined = self.value(m + 1, n - 1);
            self.h.ldiv(&self.h.mul(&first, &second), &joined)
        };
        self.memo.insert((m, n), v.clone());
        v
    }
}

fn ser_int<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

fn ser_opt_int<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_int(v, s),
        None => s.serialize_none(),
    }
}

fn ser_opt_pair<S: Serializer>(x: &Option<[BigInt; 2]>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    match x {
        Some([p, q]) => {
            let mut seq = s.serialize_seq(Some(2))?;
            seq.serialize_element(&IntJson(p))?;
            seq.serialize_element(&IntJson(q))?;
            seq.end()
        }
        None => s.serialize_none(),
    }
}

struct IntJson<'a>(&'a BigInt);

impl Serialize for IntJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_int(self.0, s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientEntry {
    pub symbol: String,
    #[serde(serialize_with = "ser_int")]
    pub coeff: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub m: u64,
    pub n: u64,
    #[serde(serialize_with = "ser_int")]
    pub loop_part: BigInt,
    /// The `f(p, q)` in the support with the largest `p` (then `q`).
    #[serde(serialize_with = "ser_opt_pair")]
    pub leading_symbol: Option<[BigInt; 2]>,
    #[serde(serialize_with = "ser_int")]
    pub leading_coeff: BigInt,
    /// Largest first index among the remaining `f` symbols.
    #[serde(serialize_with = "ser_opt_int")]
    pub max_other_p: Option<BigInt>,
    #[serde(serialize_with = "ser_int")]
    pub g_coeff: BigInt,
    pub nonzero: bool,
    /// `"outside gamma3"`, `"degenerate"` for `n + m − 1 = 0`, or
    /// `"inconclusive"` if the value is the identity.
    pub verdict: String,
    /// `n + m − 1`.
    pub stated_index: u64,
    /// Coefficient of `f(n+m−1, 1)`.
    #[serde(serialize_with = "ser_int")]
    pub stated_coeff: BigInt,
    /// Whether the value is `(0, f(n+m−1,1) + Σ_{p<n+m−1} a_{p,q} f(p,q))`;
    /// `None` when `n + m − 1 = 0`.
    pub lemma_holds: Option<bool>,
    /// Whether the value has that form with leading index `n + m + 1`,
    /// the index the computation actually produces.
    pub shifted_form_holds: bool,
    pub value: String,
    pub coefficients: Vec<CoefficientEntry>,
}

/// Largest-first-index form: loop part 0, no `g(y)`, coefficient `+1` on
/// `f(k, 1)` and every other `f(p, q)` with `p < k`.
fn has_leading_form(v: &HigmanElement<BigInt>, k: &BigInt) -> bool {
    let one = BigInt::one();
    v.l.is_zero()
        && v.b.coeff(&BasisSymbol::F(k.clone(), one.clone())).is_one()
        && v.b.iter().all(|(s, _)| match s {
            BasisSymbol::F(p, q) => (p, q) == (k, &one) || p < k,
            BasisSymbol::G(_) => false,
        })
}

/// Computes `δ(yᵐ, y, …, y)_{1,…,1}` (level `n`) over the integers with
/// `p(y) = 1` and describes its shape.
pub fn higman_witness(m: u64, n: u64) -> Result<WitnessReport, HigmanError> {
    if m == 0 {
        return Err(HigmanError::InvalidPower(m));
    }
    if n > MAX_WITNESS_LEVEL {
        return Err(HigmanError::LevelTooLarge(n));
    }
    let v = WitnessEvaluator::new().value(m, n);
    Ok(witness_report(m, n, &v))
}

pub(crate) fn witness_report(m: u64, n: u64, v: &HigmanElement<BigInt>) -> WitnessReport {
    let fs: Vec<(&BigInt, &BigInt, &BigInt)> = v
        .b
        .iter()
        .filter_map(|(s, c)| match s {
            BasisSymbol::F(p, q) => Some((p, q, c)),
            BasisSymbol::G(_) => None,
        })
        .collect();
    let leading = fs.iter().max_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    let leading_symbol = leading.map(|(p, q, _)| [(*p).clone(), (*q).clone()]);
    let leading_coeff = leading.map(|(_, _, c)| (*c).clone()).unwrap_or_default();
    let max_other_p = fs
        .iter()
        .filter(|(p, q, _)| Some([(*p).clone(), (*q).clone()]) != leading_symbol)
        .map(|(p, _, _)| (*p).clone())
        .max();
    let g_coeff = v.b.coeff(&BasisSymbol::G("y".to_owned()));
    let nonzero = !v.l.is_zero() || !v.b.is_zero();

    let stated_index = n + m - 1;
    let degenerate = stated_index == 0;
    let lemma_holds = (!degenerate).then(|| has_leading_form(v, &z(stated_index)));
    let verdict = if degenerate {
        "degenerate"
    } else if nonzero {
        "outside gamma3"
    } else {
        "inconclusive"
    };
    WitnessReport {
        m,
        n,
        loop_part: v.l.clone(),
        leading_symbol,
        leading_coeff,
        max_other_p,
        g_coeff,
        nonzero,
        verdict: verdict.to_owned(),
        stated_index,
        stated_coeff: v.b.coeff(&BasisSymbol::F(z(stated_index), BigInt::one())),
        lemma_holds,
        shifted_form_holds: has_leading_form(v, &z(n + m + 1)),
        value: v.to_string(),
        coefficients: v
            .b
            .iter()
            .map(|(s, c)| CoefficientEntry {
                symbol: s.to_string(),
                coeff: c.clone(),
            })
            .collect(),
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "delta (y^{}, y, ..., y) level {}", self.m, self.n)?;
        writeln!(f, "  value:          {}", self.value)?;
        writeln!(f, "  loop part:      {}", self.loop_part)?;
        match &self.leading_symbol {
            Some([p, q]) => writeln!(f, "  leading symbol: f({p},{q})  coefficient {}", self.leading_coeff)?,
            None => writeln!(f, "  leading symbol: none")?,
        }
        match &self.max_other_p {
            Some(p) => writeln!(f, "  max other p:    {p}")?,
            None => writeln!(f, "  max other p:    none")?,
        }
        writeln!(f, "  g(y) coeff:     {}", self.g_coeff)?;
        let yes = |b: bool| if b { "yes" } else { "no" };
        match self.lemma_holds {
            Some(ok) => writeln!(
                f,
                "  form with leading f({},1): {} (coefficient {})",
                self.stated_index,
                yes(ok),
                self.stated_coeff
            )?,
            None => writeln!(f, "  form with leading f(0,1): not applicable")?,
        }
        writeln!(
            f,
            "  form with leading f({},1): {}",
            self.n + self.m + 1,
            yes(self.shifted_form_holds)
        )?;
        writeln!(f, "verdict: {}", self.verdict)
    }
}
