//! Enumerative checks on the graded group: representative independence,
//! additivity in each slot, grading, and the Akivis identity.
//!
//! Every family of cases is enumerated exhaustively when it fits the budget
//! and sampled with a fixed seed otherwise; the `coverage` lines of each
//! [`CheckBlock`] say which happened.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{GradedComponent, GradedGroup};
use crate::loops::Loop;
use crate::series::engine::compositions;
use crate::series::SeriesKind;
use crate::term::enumerate_alphas;

const MAX_LISTED_VIOLATIONS: usize = 50;

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckBlock {
    pub checked: u64,
    pub violations: Vec<String>,
    pub violation_count: u64,
    pub sampled: bool,
    pub coverage: Vec<String>,
}

impl CheckBlock {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn violation(&mut self, msg: impl FnOnce() -> String) {
        self.violation_count += 1;
        if self.violations.len() < MAX_LISTED_VIOLATIONS {
            self.violations.push(msg());
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub order: usize,
    pub invariant_factors: Vec<u64>,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedChecks {
    pub bilinear: CheckBlock,
    pub trilinear: CheckBlock,
    pub deviation_multilinear: CheckBlock,
    pub akivis: CheckBlock,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedReport {
    #[serde(rename = "loop")]
    pub loop_name: String,
    pub kind: SeriesKind,
    pub depth: usize,
    pub lower_bound: bool,
    pub degrees: Vec<DegreeReport>,
    pub checks: GradedChecks,
}

impl GradedReport {
    pub fn passed(&self) -> bool {
        let c = &self.checks;
        c.bilinear.passed() && c.trilinear.passed() && c.deviation_multilinear.passed() && c.akivis.passed()
    }
}

/// Tuning for the enumerations.
#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// Largest number of cases one family may enumerate exhaustively.
    pub budget: u64,
    /// Cases drawn for level-2 deviations, which are always sampled.
    pub level2_samples: u64,
    /// Highest deviation level checked (at most 2).
    pub max_deviation_level: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            budget: 2_000_000,
            level2_samples: 20_000,
            max_deviation_level: 2,
            seed: 0xa1c1_5eed,
        }
    }
}

type Eval<'a> = dyn Fn(&[usize]) -> usize + 'a;

/// Every tuple of the cartesian product, or `samples` random ones.
fn for_tuples(lists: &[&[usize]], samples: Option<(u64, &mut ChaCha8Rng)>, mut f: impl FnMut(&[usize])) {
    if lists.iter().any(|l| l.is_empty()) {
        return;
    }
    let mut tuple: Vec<usize> = lists.iter().map(|l| l[0]).collect();
    match samples {
        Some((count, rng)) => {
            for _ in 0..count {
                for (slot, l) in lists.iter().enumerate() {
                    tuple[slot] = l[rng.gen_range(0..l.len())];
                }
                f(&tuple);
            }
        }
        None => {
            let mut idx = vec![0usize; lists.len()];
            loop {
                f(&tuple);
                let mut k = lists.len();
                loop {
                    if k == 0 {
                        return;
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < lists[k].len() {
                        tuple[k] = lists[k][idx[k]];
                        break;
                    }
                    idx[k] = 0;
                    tuple[k] = lists[k][0];
                }
            }
        }
    }
}

struct Checker<'g> {
    g: &'g GradedGroup,
    opts: CheckOptions,
    rng: ChaCha8Rng,
}

impl<'g> Checker<'g> {
    fn new(g: &'g GradedGroup, opts: &CheckOptions) -> Self {
        Checker {
            g,
            opts: opts.clone(),
            rng: ChaCha8Rng::seed_from_u64(opts.seed),
        }
    }

    /// Representative independence, grading and additivity in each slot of
    /// one operation at one degree vector.
    fn multilinear(
        &mut self,
        block: &mut CheckBlock,
        label: &str,
        degrees: &[usize],
        eval: &Eval<'_>,
        forced_samples: Option<u64>,
    ) {
        let g = self.g;
        let target = degrees.iter().sum::<usize>();
        let Ok(out) = g.component(target) else {
            return;
        };
        let comps: Vec<&GradedComponent> =
            degrees.iter().map(|&d| g.component(d).expect("degree below target")).collect();
        let class_value = |classes: &[usize]| -> Option<usize> {
            let lifts: Vec<usize> = classes.iter().zip(&comps).map(|(&c, k)| k.lift(c)).collect();
            out.class_of(eval(&lifts))
        };

        let before = block.checked;
        let mut sampled = false;

        // representatives and grading
        let members: Vec<Vec<usize>> = comps
            .iter()
            .map(|k| (0..k.order()).flat_map(|c| k.coset(c).iter().copied()).collect())
            .collect();
        let lists: Vec<&[usize]> = members.iter().map(Vec::as_slice).collect();
        let total: u128 = lists.iter().map(|l| l.len() as u128).product();
        let samples = forced_samples.or((total > self.opts.budget as u128).then_some(self.opts.budget));
        sampled |= samples.is_some();
        for_tuples(&lists, samples.map(|s| (s, &mut self.rng)), |elems| {
            block.checked += 1;
            let classes: Vec<usize> = elems
                .iter()
                .zip(&comps)
                .map(|(&x, k)| k.class_of(x).expect("member of the component"))
                .collect();
            let direct = out.class_of(eval(elems));
            match direct {
                None => block.violation(|| format!("{label}{degrees:?}: value at {elems:?} leaves degree {target}")),
                Some(v) if Some(v) != class_value(&classes) => block.violation(|| {
                    format!("{label}{degrees:?}: representatives {elems:?} change the class")
                }),
                _ => {}
            }
        });

        // additivity in each slot
        let class_lists: Vec<Vec<usize>> = comps.iter().map(|k| (0..k.order()).collect()).collect();
        for slot in 0..degrees.len() {
            let mut lists: Vec<&[usize]> = class_lists.iter().map(Vec::as_slice).collect();
            lists.push(&class_lists[slot]);
            let total: u128 = lists.iter().map(|l| l.len() as u128).product();
            let samples = forced_samples.or((total > self.opts.budget as u128).then_some(self.opts.budget));
            sampled |= samples.is_some();
            let k = comps[slot];
            for_tuples(&lists, samples.map(|s| (s, &mut self.rng)), |t| {
                block.checked += 1;
                let (base, extra) = t.split_at(degrees.len());
                let mut summed = base.to_vec();
                summed[slot] = k.add(base[slot], extra[0]);
                let mut other = base.to_vec();
                other[slot] = extra[0];
                let lhs = class_value(&summed);
                let rhs = match (class_value(base), class_value(&other)) {
                    (Some(a), Some(b)) => Some(out.add(a, b)),
                    _ => None,
                };
                if lhs.is_none() || lhs != rhs {
                    block.violation(|| {
                        format!(
                            "{label}{degrees:?}: not additive in slot {} at classes {base:?} + {}",
                            slot + 1,
                            extra[0]
                        )
                    });
                }
            });
        }
        block.sampled |= sampled;
        block.coverage.push(format!(
            "{label}{degrees:?}: {} cases, {}",
            block.checked - before,
            if sampled { "sampled" } else { "exhaustive" }
        ));
    }
}

/// Degree vectors with `arity` positive entries summing to at most `top`.
fn degree_vectors(arity: usize, top: usize) -> Vec<Vec<usize>> {
    (arity..=top).flat_map(|s| compositions(s, arity)).collect()
}

pub fn check_bilinear(g: &GradedGroup, opts: &CheckOptions) -> CheckBlock {
    let mut block = CheckBlock::default();
    let mut c = Checker::new(g, opts);
    let lp = g.parent();
    for degrees in degree_vectors(2, g.top_degree()) {
        c.multilinear(&mut block, "bracket", &degrees, &|a| lp.comm(a[0], a[1]), None);
    }
    block
}

pub fn check_trilinear(g: &GradedGroup, opts: &CheckOptions) -> CheckBlock {
    let mut block = CheckBlock::default();
    let mut c = Checker::new(g, opts);
    let lp = g.parent();
    for degrees in degree_vectors(3, g.top_degree()) {
        c.multilinear(&mut block, "associator", &degrees, &|a| lp.assoc(a[0], a[1], a[2]), None);
    }
    block
}

/// Level-1 deviations within the budget, level-2 deviations always sampled.
pub fn check_deviations(g: &GradedGroup, opts: &CheckOptions) -> CheckBlock {
    let mut block = CheckBlock::default();
    let mut c = Checker::new(g, opts);
    let lp = g.parent();
    let levels = [(1usize, None), (2, Some(opts.level2_samples))];
    for (level, forced) in levels.into_iter().take(opts.max_deviation_level) {
        let vectors = degree_vectors(level + 3, g.top_degree());
        if vectors.is_empty() {
            block
                .coverage
                .push(format!("level {level}: skipped, needs degree {}", level + 3));
            continue;
        }
        for alpha in enumerate_alphas(level) {
            let label = format!("deviation{alpha}");
            for degrees in &vectors {
                let eval = |a: &[usize]| lp.deviation(a, alpha.as_slice());
                c.multilinear(&mut block, &label, degrees, &eval, forced);
            }
        }
    }
    block
}

/// `[[a,b],c] + [[b,c],a] + [[c,a],b]
///  = (a,b,c) + (b,c,a) + (c,a,b) − (a,c,b) − (c,b,a) − (b,a,c)`
/// for every homogeneous triple of degrees `(p, q, r)`.
pub fn check_akivis(g: &GradedGroup, degrees: (usize, usize, usize), opts: &CheckOptions) -> CheckBlock {
    let mut block = CheckBlock::default();
    let (p, q, r) = degrees;
    let target = p + q + r;
    if p == 0 || q == 0 || r == 0 || g.component(target).is_err() {
        block
            .coverage
            .push(format!("akivis{:?}: skipped, needs degree {target}", [p, q, r]));
        return block;
    }
    let (cp, cq, cr) = (
        g.elements(p).unwrap(),
        g.elements(q).unwrap(),
        g.elements(r).unwrap(),
    );
    let total = (cp.len() * cq.len() * cr.len()) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xa41);
    let exhaustive = total <= opts.budget;
    let mut triples = Vec::new();
    if exhaustive {
        for &a in &cp {
            for &b in &cq {
                for &c in &cr {
                    triples.push((a, b, c));
                }
            }
        }
    } else {
        for _ in 0..opts.budget {
            triples.push((
                cp[rng.gen_range(0..cp.len())],
                cq[rng.gen_range(0..cq.len())],
                cr[rng.gen_range(0..cr.len())],
            ));
        }
    }
    for (a, b, c) in triples {
        block.checked += 1;
        let sides = (|| {
            let br = |x, y| g.bracket(x, y);
            let asc = |x, y, z| g.associator(x, y, z);
            let mut lhs = g.zero(target)?;
            for t in [br(br(a, b)?, c)?, br(br(b, c)?, a)?, br(br(c, a)?, b)?] {
                lhs = g.add(lhs, t)?;
            }
            let mut rhs = g.zero(target)?;
            for t in [asc(a, b, c)?, asc(b, c, a)?, asc(c, a, b)?] {
                rhs = g.add(rhs, t)?;
            }
            for t in [asc(a, c, b)?, asc(c, b, a)?, asc(b, a, c)?] {
                rhs = g.add(rhs, g.neg(t)?)?;
            }
            Ok::<_, super::GradedError>((lhs, rhs))
        })();
        match sides {
            Ok((lhs, rhs)) if lhs == rhs => {}
            Ok((lhs, rhs)) => block.violation(|| {
                format!(
                    "akivis at classes ({}, {}, {}): {} != {}",
                    a.coset, b.coset, c.coset, lhs.coset, rhs.coset
                )
            }),
            Err(e) => block.violation(|| format!("akivis at ({}, {}, {}): {e}", a.coset, b.coset, c.coset)),
        }
    }
    block.sampled = !exhaustive;
    block.coverage.push(format!(
        "akivis{:?}: {} triples, {}",
        [p, q, r],
        block.checked,
        if exhaustive { "exhaustive" } else { "sampled" }
    ));
    block
}

/// Components plus all four check blocks. The Akivis identity is checked at
/// `akivis` (default `(1, 1, 1)`).
pub fn graded_report(
    g: &GradedGroup,
    akivis: Option<(usize, usize, usize)>,
    opts: &CheckOptions,
) -> GradedReport {
    let degrees = g
        .components()
        .iter()
        .map(|c| DegreeReport {
            degree: c.degree(),
            order: c.order(),
            invariant_factors: c.invariant_factors().to_vec(),
            generators: c.generators().iter().map(|&x| c.class_name(x).to_owned()).collect(),
        })
        .collect();
    GradedReport {
        loop_name: g.parent().name().to_owned(),
        kind: g.kind(),
        depth: g.depth(),
        lower_bound: g.is_lower_bound(),
        degrees,
        checks: GradedChecks {
            bilinear: check_bilinear(g, opts),
            trilinear: check_trilinear(g, opts),
            deviation_multilinear: check_deviations(g, opts),
            akivis: check_akivis(g, akivis.unwrap_or((1, 1, 1)), opts),
        },
    }
}

fn factors(f: &[u64]) -> String {
    if f.is_empty() {
        "0".to_owned()
    } else {
        f.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join(" + ")
    }
}

impl fmt::Display for GradedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "graded group of {} ({} filtration, depth {})",
            self.loop_name, self.kind, self.depth
        )?;
        for d in &self.degrees {
            writeln!(f, "  degree {:>2}: order {:>4}  {}", d.degree, d.order, factors(&d.invariant_factors))?;
        }
        let blocks = [
            ("bilinear", &self.checks.bilinear),
            ("trilinear", &self.checks.trilinear),
            ("deviation multilinear", &self.checks.deviation_multilinear),
            ("akivis", &self.checks.akivis),
        ];
        for (name, b) in blocks {
            writeln!(
                f,
                "  {name:<22} {:>9} cases  {:>3} violations{}",
                b.checked,
                b.violation_count,
                if b.sampled { "  (sampled)" } else { "" }
            )?;
            for v in &b.violations {
                writeln!(f, "    {v}")?;
            }
        }
        if self.lower_bound {
            writeln!(f, "warning: filtration contains lower-bound terms")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graded::graded_group;
    use crate::series::{ca_filtration, naive_filtration};

    #[test]
    fn degree_vector_enumeration() {
        assert_eq!(degree_vectors(2, 3), vec![vec![1, 1], vec![1, 2], vec![2, 1]]);
        assert!(degree_vectors(4, 3).is_empty());
    }

    #[test]
    fn tuples_cover_product() {
        let a = [1, 2];
        let b = [7, 8, 9];
        let mut seen = Vec::new();
        for_tuples(&[&a, &b], None, |t| seen.push(t.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], [1, 7]);
        assert_eq!(seen[5], [2, 9]);
    }

    #[test]
    fn o16_report_is_clean() {
        let g = graded_group(&ca_filtration(&catalog("O16").unwrap(), 4)).unwrap();
        let r = graded_report(&g, None, &CheckOptions::default());
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.akivis.checked, 512);
        assert!(!r.checks.akivis.sampled);
    }

    #[test]
    fn naive_filtration_can_break_trilinearity() {
        // whatever the outcome, the checker must run and report counts
        let g = graded_group(&naive_filtration(&catalog("M(S3,2)").unwrap(), 4)).unwrap();
        let b = check_trilinear(&g, &CheckOptions::default());
        assert!(b.checked > 0 || g.top_degree() < 3);
    }
}
