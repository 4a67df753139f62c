use std::fmt;

use serde::Serialize;

use super::{filtration, Filtration, SeriesKind, SeriesOptions};
use crate::finite::CayleyLoop;

/// Member lists are included for loops up to this order.
const MEMBER_LIST_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermReport {
    pub index: usize,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<String>>,
    pub lower_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    #[serde(rename = "loop")]
    pub loop_name: String,
    pub order: usize,
    pub kind: SeriesKind,
    pub depth: usize,
    pub terms: Vec<TermReport>,
    pub stabilized_at: Option<usize>,
    pub lower_bound: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompareFlags {
    /// `γ₂L = L₂` as sets.
    pub gamma2_eq_ca2: bool,
    /// The whole γ chain equals the CA chain.
    pub gamma_eq_ca: bool,
    pub naive_eq_ca: bool,
    /// `γ_i ⊆ L_i` and naive `L_i ⊆` CA `L_i` for every computed `i`.
    pub containments_ok: bool,
    pub lower_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    #[serde(rename = "loop")]
    pub loop_name: String,
    pub order: usize,
    pub depth: usize,
    pub gamma: Vec<TermReport>,
    pub ca: Vec<TermReport>,
    pub naive: Vec<TermReport>,
    pub flags: CompareFlags,
}

fn term_reports(f: &Filtration) -> Vec<TermReport> {
    let l = f.parent();
    (1..=f.depth())
        .map(|i| {
            let t = f.term(i);
            TermReport {
                index: i,
                order: t.order(),
                members: (l.order() <= MEMBER_LIST_LIMIT).then(|| {
                    t.members()
                        .iter()
                        .map(|x| l.element_name(x).to_owned())
                        .collect()
                }),
                lower_bound: f.is_lower_bound(i),
            }
        })
        .collect()
}

impl SeriesReport {
    pub fn new(f: &Filtration) -> Self {
        SeriesReport {
            loop_name: f.parent().name().to_owned(),
            order: f.parent().order(),
            kind: f.kind(),
            depth: f.depth(),
            terms: term_reports(f),
            stabilized_at: f.stabilized_at(),
            lower_bound: f.any_lower_bound(),
        }
    }
}

/// Computes all three filtrations and checks `γ₂L = L₂`, `γ_i ⊆ L_i` and
/// naive `⊆` CA termwise.
pub fn compare_series(lp: &CayleyLoop, depth: usize, opts: &SeriesOptions) -> CompareReport {
    let gamma = filtration(lp, SeriesKind::Gamma, depth, opts);
    let ca = filtration(lp, SeriesKind::Ca, depth, opts);
    let naive = filtration(lp, SeriesKind::Naive, depth, opts);
    let same = |a: &Filtration, b: &Filtration| a.terms() == b.terms();
    let gamma2_eq_ca2 = depth < 2 || gamma.term(2) == ca.term(2);
    let containments_ok = (1..=depth).all(|i| {
        gamma.term(i).is_subset(ca.term(i)) && naive.term(i).is_subset(ca.term(i))
    });
    CompareReport {
        loop_name: lp.name().to_owned(),
        order: lp.order(),
        depth,
        flags: CompareFlags {
            gamma2_eq_ca2,
            gamma_eq_ca: same(&gamma, &ca),
            naive_eq_ca: same(&naive, &ca),
            containments_ok,
            lower_bound: ca.any_lower_bound() || naive.any_lower_bound(),
        },
        gamma: term_reports(&gamma),
        ca: term_reports(&ca),
        naive: term_reports(&naive),
    }
}

fn order_cell(t: &TermReport) -> String {
    if t.lower_bound {
        format!(">={}", t.order)
    } else {
        t.order.to_string()
    }
}

impl fmt::Display for SeriesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} series of {} (order {}), depth {}",
            self.kind, self.loop_name, self.order, self.depth
        )?;
        for t in &self.terms {
            write!(f, "  {:>2}: {:>6}", t.index, order_cell(t))?;
            if let Some(m) = &t.members {
                write!(f, "  {{{}}}", m.join(", "))?;
            }
            writeln!(f)?;
        }
        if self.lower_bound {
            writeln!(f, "warning: some terms are lower bounds (evaluation budget exceeded)")?;
        }
        Ok(())
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (order {}), depth {}", self.loop_name, self.order, self.depth)?;
        writeln!(f, "   i  {:>6}  {:>6}  {:>6}", "gamma", "ca", "naive")?;
        for i in 0..self.depth {
            writeln!(
                f,
                "  {:>2}  {:>6}  {:>6}  {:>6}",
                i + 1,
                order_cell(&self.gamma[i]),
                order_cell(&self.ca[i]),
                order_cell(&self.naive[i])
            )?;
        }
        let fl = &self.flags;
        writeln!(f, "gamma_2 = L_2:        {}", fl.gamma2_eq_ca2)?;
        writeln!(f, "gamma = ca:           {}", fl.gamma_eq_ca)?;
        writeln!(f, "naive = ca:           {}", fl.naive_eq_ca)?;
        writeln!(f, "containments hold:    {}", fl.containments_ok)?;
        if fl.lower_bound {
            writeln!(f, "warning: some terms are lower bounds (evaluation budget exceeded)")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn q8_all_equal() {
        let r = compare_series(&catalog("Q8").unwrap(), 3, &SeriesOptions::default());
        assert!(r.flags.gamma2_eq_ca2 && r.flags.gamma_eq_ca && r.flags.naive_eq_ca);
        assert!(r.flags.containments_ok && !r.flags.lower_bound);
        assert_eq!(r.gamma[1].members.as_deref(), Some(&["1".to_owned(), "-1".to_owned()][..]));
    }

    #[test]
    fn members_omitted_for_large_loops() {
        let l = catalog("Z_16").unwrap();
        let f = filtration(&l, SeriesKind::Ca, 2, &SeriesOptions::default());
        assert!(SeriesReport::new(&f).terms[0].members.is_some());
        let big = catalog("CML81").unwrap();
        let f = filtration(&big, SeriesKind::Gamma, 2, &SeriesOptions::default());
        assert!(SeriesReport::new(&f).terms[0].members.is_none());
    }
}
