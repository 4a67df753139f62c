//! Descending filtrations of a finite loop by normal subloops.
//!
//! * [`SeriesKind::Gamma`]: the lower central series, `γ₁ = L`,
//!   `γ_{i+1} = [γ_i, L]`.
//! * [`SeriesKind::Ca`]: the commutator-associator filtration. `L₁ = L` and
//!   `L_i` is normally generated by commutators, associators and deviations
//!   of every level whose arguments have total weight at least `i`, an
//!   argument from `L_p` having weight `p`.
//! * [`SeriesKind::Naive`]: the same recursion with commutators and
//!   associators only.
//!
//! See [`engine`] for the finite generating families actually enumerated.

pub(crate) mod engine;
mod report;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::finite::{CayleyLoop, NormalSubloop};

pub use report::{compare_series, CompareFlags, CompareReport, SeriesReport, TermReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Gamma,
    Ca,
    Naive,
}

impl SeriesKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesKind::Gamma => "gamma",
            SeriesKind::Ca => "ca",
            SeriesKind::Naive => "naive",
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SeriesKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "gamma" => Ok(SeriesKind::Gamma),
            "ca" => Ok(SeriesKind::Ca),
            "naive" => Ok(SeriesKind::Naive),
            _ => Err(format!("unknown series kind `{s}` (expected gamma, ca or naive)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeriesOptions {
    /// Work cap for one generator family, in associator evaluations.
    /// Families above it are sampled.
    pub max_evals: u64,
    pub seed: u64,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            max_evals: 25_000_000,
            seed: 0x5eed_1005,
        }
    }
}

/// A computed chain `chain[0] = L ⊇ chain[1] ⊇ …`, indexed from 1 in the
/// accessors.
#[derive(Clone, Debug)]
pub struct Filtration {
    parent: CayleyLoop,
    kind: SeriesKind,
    chain: Vec<NormalSubloop>,
    lower_bound: Vec<bool>,
}

impl Filtration {
    pub fn parent(&self) -> &CayleyLoop {
        &self.parent
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn depth(&self) -> usize {
        self.chain.len()
    }

    /// Term `i`, counting from 1.
    pub fn term(&self, i: usize) -> &NormalSubloop {
        &self.chain[i - 1]
    }

    pub fn terms(&self) -> &[NormalSubloop] {
        &self.chain
    }

    pub fn orders(&self) -> Vec<usize> {
        self.chain.iter().map(NormalSubloop::order).collect()
    }

    /// Whether term `i` is only known to be contained in the true term
    /// (because a generator family had to be sampled).
    pub fn is_lower_bound(&self, i: usize) -> bool {
        self.lower_bound[i - 1]
    }

    pub fn any_lower_bound(&self) -> bool {
        self.lower_bound.iter().any(|&b| b)
    }

    /// First index whose term is trivial; all later terms are trivial too.
    pub fn stabilized_at(&self) -> Option<usize> {
        self.chain.iter().position(NormalSubloop::is_trivial).map(|i| i + 1)
    }

    pub fn is_descending(&self) -> bool {
        self.chain.windows(2).all(|w| w[1].is_subset(&w[0]))
    }
}

pub fn lower_central_series(lp: &CayleyLoop, depth: usize) -> Filtration {
    filtration(lp, SeriesKind::Gamma, depth, &SeriesOptions::default())
}

pub fn ca_filtration(lp: &CayleyLoop, depth: usize) -> Filtration {
    filtration(lp, SeriesKind::Ca, depth, &SeriesOptions::default())
}

pub fn naive_filtration(lp: &CayleyLoop, depth: usize) -> Filtration {
    filtration(lp, SeriesKind::Naive, depth, &SeriesOptions::default())
}

/// Computes the first `depth ≥ 1` terms of a filtration.
pub fn filtration(
    lp: &CayleyLoop,
    kind: SeriesKind,
    depth: usize,
    opts: &SeriesOptions,
) -> Filtration {
    assert!(depth >= 1, "filtration depth must be at least 1");
    let mut chain = vec![lp.whole()];
    let mut lower_bound = vec![false];
    let mut engine = engine::Engine::new(lp, opts);
    for i in 2..=depth {
        let prev = &chain[i - 2];
        let prev_lower = lower_bound[i - 2];
        // once trivial, always trivial
        if prev.is_trivial() && !prev_lower {
            chain.push(prev.clone());
            lower_bound.push(false);
            continue;
        }
        let (term, lower) = match kind {
            SeriesKind::Gamma => (lp.bracket(prev).expect("same parent"), false),
            _ => {
                let upper = (!prev_lower).then(|| prev.order());
                let out = engine.term(kind, &chain, i, upper);
                let reached_upper = upper == Some(out.term.order());
                let lower = !reached_upper && (out.sampled || lower_bound.iter().any(|&b| b));
                (out.term, lower)
            }
        };
        chain.push(term);
        lower_bound.push(lower);
    }
    Filtration {
        parent: lp.clone(),
        kind,
        chain,
        lower_bound,
    }
}
