//! Generator enumeration for one term of the commutator-associator (or
//! naive) filtration.
//!
//! Term `i` is the normal closure of finitely many generator families:
//!
//! 1. commutators `[a, b]` with `a ∈ L_p`, `b ∈ L_q`, `p + q = i`;
//! 2. for every level `n` with `n + 3 < i`, deviations of that level with
//!    arguments in `L_{p₁} × … × L_{p_{n+3}}`, over every composition
//!    `p₁ + … + p_{n+3} = i` into positive parts;
//! 3. deviations of level `n₀ = max(i − 3, 0)` with unrestricted arguments.
//!
//! This is exactly the subloop normally generated by all commutators,
//! associators and deviations of total weight at least `i`:
//!
//! * the chain is descending, so a degree vector of sum `> i` is dominated by
//!   one of sum exactly `i` (shrink any part greater than one), and every part
//!   of a composition of `i` into at least two parts is below `i`;
//! * a level `n ≥ n₀` deviation has weight at least `n + 3 ≥ i` whatever its
//!   arguments, and a level `n + 1` value is `(A·A′)\A″` with `A`, `A′`, `A″`
//!   level `n` values; a subloop containing every level `n₀` value therefore
//!   contains every higher level value as well.
//!
//! The naive filtration uses families 1 and, for associators only, 2 and 3.
//!
//! Each family is enumerated exhaustively when its cost fits the evaluation
//! budget and sampled otherwise; a sampled family makes the term a lower
//! bound unless the closure already reached the previous term, which bounds
//! it from above.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::finite::subloop::Closure;
use crate::finite::{CayleyLoop, ElementSet, NormalSubloop};
use crate::loops::Loop;
use crate::term::{alpha::alpha_count, enumerate_alphas};

use super::{SeriesKind, SeriesOptions};

/// All ways of writing `total` as an ordered sum of `parts` positive
/// integers, in lexicographic order.
pub(crate) fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            if total >= 1 {
                prefix.push(total);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for first in 1..total {
            if total - first < parts - 1 {
                break;
            }
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts >= 1 {
        go(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// Deviation values of one level over all of `L^{level+3}`, one vector per
/// alpha sequence in lexicographic order. Tuples are indexed base `order`,
/// first argument most significant.
pub(crate) struct LevelTables {
    order: usize,
    levels: Vec<Vec<Vec<u32>>>,
}

impl LevelTables {
    pub(crate) fn new(lp: &CayleyLoop) -> Self {
        let n = lp.order();
        let mut level0 = vec![0u32; n * n * n];
        level0
            .par_chunks_mut(n * n)
            .enumerate()
            .for_each(|(a, chunk)| {
                for b in 0..n {
                    for c in 0..n {
                        chunk[b * n + c] = lp.assoc(a, b, c) as u32;
                    }
                }
            });
        LevelTables {
            order: n,
            levels: vec![vec![level0]],
        }
    }

    pub(crate) fn built(&self) -> usize {
        self.levels.len()
    }

    /// Size in entries of the table for `level`.
    pub(crate) fn table_size(order: usize, level: usize) -> u128 {
        (order as u128).pow(level as u32 + 3) * alpha_count(level) as u128
    }

    pub(crate) fn extend_to(&mut self, lp: &CayleyLoop, level: usize) {
        while self.levels.len() <= level {
            let k = self.levels.len();
            let prev = &self.levels[k - 1];
            let size = self.order.pow(k as u32 + 3);
            let next: Vec<Vec<u32>> = (0..alpha_count(k))
                .map(|ai| {
                    let mut v = vec![0u32; size];
                    v.par_iter_mut().enumerate().for_each(|(t, out)| {
                        *out = step(lp, self.order, k, prev, ai, t) as u32;
                    });
                    v
                })
                .collect();
            self.levels.push(next);
        }
    }

    /// Value of the level `k` deviation with alpha index `ai` at tuple `t`,
    /// computed from the level `k − 1` table.
    pub(crate) fn value(&self, lp: &CayleyLoop, k: usize, ai: usize, t: usize) -> usize {
        if k == 0 {
            return self.levels[0][0][t] as usize;
        }
        step(lp, self.order, k, &self.levels[k - 1], ai, t)
    }
}

fn step(lp: &CayleyLoop, n: usize, k: usize, prev: &[Vec<u32>], ai: usize, t: usize) -> usize {
    let prefix = ai / (k + 2);
    let slot = ai % (k + 2);
    let m = k + 3;
    let low_pw = n.pow((m - slot - 2) as u32);
    let low = t % low_pw;
    let high = t / (low_pw * n * n);
    let x = (t / (low_pw * n)) % n;
    let y = (t / low_pw) % n;
    let table = &prev[prefix];
    let sub = |v: usize| table[(high * n + v) * low_pw + low] as usize;
    let first = sub(x);
    let second = sub(y);
    let joined = sub(lp.product(x, y));
    lp.left_div(lp.product(first, second), joined)
}

pub(crate) struct TermOutcome {
    pub term: NormalSubloop,
    pub sampled: bool,
}

pub(crate) struct Engine<'a> {
    lp: &'a CayleyLoop,
    opts: &'a SeriesOptions,
    tables: Option<LevelTables>,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(lp: &'a CayleyLoop, opts: &'a SeriesOptions) -> Self {
        Engine {
            lp,
            opts,
            tables: None,
        }
    }

    /// Computes term `i ≥ 2` from `chain[p − 1] = L_p` for `p < i`.
    /// `upper` is the previous term when it is known exactly.
    pub(crate) fn term(
        &mut self,
        kind: SeriesKind,
        chain: &[NormalSubloop],
        i: usize,
        upper: Option<usize>,
    ) -> TermOutcome {
        debug_assert!(i >= 2 && chain.len() >= i - 1);
        let lp = self.lp;
        let members: Vec<Vec<usize>> = chain.iter().map(|t| t.members().to_vec()).collect();
        let slot_set = |p: usize| &members[p - 1];

        let mut closure = Closure::new(lp, true);
        let saturated = |c: &Closure| upper.is_some_and(|u| c.len() >= u);
        let mut sampled = false;

        // commutators of weight exactly i
        for comp in compositions(i, 2) {
            let (xs, ys) = (slot_set(comp[0]), slot_set(comp[1]));
            let mut seeds = ElementSet::empty(lp.order());
            for &a in xs {
                for &b in ys {
                    seeds.insert(lp.comm(a, b));
                }
            }
            closure.extend(seeds.iter());
            if saturated(&closure) {
                return done(closure, false);
            }
        }

        let max_level = match kind {
            SeriesKind::Naive => 0,
            _ => usize::MAX,
        };
        let mut level = 0;
        while level <= max_level {
            let parts = level + 3;
            if parts < i {
                for comp in compositions(i, parts) {
                    let sets: Vec<&[usize]> = comp.iter().map(|&p| slot_set(p).as_slice()).collect();
                    let block = self.restricted_block(level, &sets, &closure, i, &comp);
                    sampled |= block.1;
                    closure.extend(block.0.iter());
                    if saturated(&closure) {
                        return done(closure, false);
                    }
                }
            } else {
                sampled |= self.unrestricted_block(level, &mut closure, i, &saturated);
                if saturated(&closure) {
                    return done(closure, false);
                }
                break;
            }
            level += 1;
        }
        done(closure, sampled)
    }

    fn restricted_block(
        &self,
        level: usize,
        sets: &[&[usize]],
        closure: &Closure,
        i: usize,
        comp: &[usize],
    ) -> (ElementSet, bool) {
        let lp = self.lp;
        let alphas = enumerate_alphas(level);
        let tuples: u128 = sets.iter().map(|s| s.len() as u128).product();
        let cost = tuples * alphas.len() as u128 * 3u128.pow(level as u32);
        if cost <= self.opts.max_evals as u128 {
            let found = alphas
                .par_iter()
                .flat_map_iter(|a| sets[0].iter().map(move |&x| (a, x)))
                .fold(
                    || vec![false; lp.order()],
                    |mut mask, (alpha, first)| {
                        let mut args = vec![first; sets.len()];
                        let mut idx = vec![0usize; sets.len() - 1];
                        if sets[1..].iter().any(|s| s.is_empty()) {
                            return mask;
                        }
                        loop {
                            for (k, &j) in idx.iter().enumerate() {
                                args[k + 1] = sets[k + 1][j];
                            }
                            mask[lp.deviation(&args, alpha.as_slice())] = true;
                            if !advance(&mut idx, &sets[1..]) {
                                break;
                            }
                        }
                        mask
                    },
                )
                .reduce(|| vec![false; lp.order()], or_masks);
            (ElementSet::from_mask(found), false)
        } else {
            let per_sample = 3u64.pow(level as u32).max(1);
            let samples = (self.opts.max_evals / per_sample).max(1);
            let mut rng = ChaCha8Rng::seed_from_u64(block_seed(self.opts.seed, i, comp));
            let mut mask = vec![false; lp.order()];
            let mut args = vec![0usize; sets.len()];
            for _ in 0..samples {
                let alpha = &alphas[rng.gen_range(0..alphas.len())];
                for (slot, s) in sets.iter().enumerate() {
                    args[slot] = s[rng.gen_range(0..s.len())];
                }
                let v = lp.deviation(&args, alpha.as_slice());
                if !closure.contains(v) {
                    mask[v] = true;
                }
            }
            (ElementSet::from_mask(mask), true)
        }
    }

    /// Returns whether the family was sampled.
    fn unrestricted_block(
        &mut self,
        level: usize,
        closure: &mut Closure,
        i: usize,
        saturated: &dyn Fn(&Closure) -> bool,
    ) -> bool {
        let lp = self.lp;
        let n = lp.order();
        let count = LevelTables::table_size(n, level);
        if count <= self.opts.max_evals as u128 {
            let tables = self.tables.get_or_insert_with(|| LevelTables::new(lp));
            if level >= 1 && tables.built() < level {
                tables.extend_to(lp, level - 1);
            }
            let tables = &*tables;
            let size = n.pow(level as u32 + 3);
            for ai in 0..alpha_count(level) {
                let mask = (0..size)
                    .into_par_iter()
                    .fold(
                        || vec![false; n],
                        |mut mask, t| {
                            mask[tables.value(lp, level, ai, t)] = true;
                            mask
                        },
                    )
                    .reduce(|| vec![false; n], or_masks);
                closure.extend(ElementSet::from_mask(mask).iter());
                if saturated(closure) {
                    break;
                }
            }
            false
        } else {
            let alphas = enumerate_alphas(level);
            let per_sample = 3u64.pow(level as u32).max(1);
            let samples = (self.opts.max_evals / per_sample).max(1);
            let mut rng = ChaCha8Rng::seed_from_u64(block_seed(self.opts.seed, i, &[0]));
            let mut args = vec![0usize; level + 3];
            for s in 0..samples {
                let alpha = &alphas[rng.gen_range(0..alphas.len())];
                for a in args.iter_mut() {
                    *a = rng.gen_range(0..n);
                }
                closure.add(lp.deviation(&args, alpha.as_slice()));
                if s % 1024 == 0 && saturated(closure) {
                    break;
                }
            }
            true
        }
    }
}

fn done(closure: Closure, sampled: bool) -> TermOutcome {
    TermOutcome {
        term: CayleyLoop::normal_from_closure(closure.into_set()),
        sampled,
    }
}

fn or_masks(mut a: Vec<bool>, b: Vec<bool>) -> Vec<bool> {
    for (x, y) in a.iter_mut().zip(b) {
        *x |= y;
    }
    a
}

fn advance(idx: &mut [usize], sets: &[&[usize]]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < sets[k].len() {
            return true;
        }
        idx[k] = 0;
    }
    false
}

fn block_seed(seed: u64, i: usize, comp: &[usize]) -> u64 {
    comp.iter().fold(seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15), |h, &p| {
        (h ^ p as u64).wrapping_mul(0x1000_0000_01b3)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
        assert!(compositions(2, 3).is_empty());
        // C(i-1, parts-1)
        assert_eq!(compositions(7, 4).len(), 20);
    }

    #[test]
    fn tables_agree_with_direct_recursion() {
        for name in ["LS5", "S3"] {
            let lp = catalog(name).unwrap();
            let n = lp.order();
            let mut tables = LevelTables::new(&lp);
            tables.extend_to(&lp, 1);
            for level in 0..=2 {
                for (ai, alpha) in enumerate_alphas(level).iter().enumerate() {
                    for t in (0..n.pow(level as u32 + 3)).step_by(7) {
                        let mut args = vec![0; level + 3];
                        let mut r = t;
                        for slot in (0..level + 3).rev() {
                            args[slot] = r % n;
                            r /= n;
                        }
                        assert_eq!(
                            tables.value(&lp, level, ai, t),
                            lp.deviation(&args, alpha.as_slice()),
                            "{name} level {level} alpha {alpha} args {args:?}"
                        );
                    }
                }
            }
        }
    }
}
