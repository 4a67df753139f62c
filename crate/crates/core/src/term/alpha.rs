use std::fmt;

use super::TermError;

/// Index word `(α₁, …, αₙ)` selecting one deviation of level `n`, with
/// `1 ≤ α_k ≤ k + 2`. The empty word is the associator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AlphaSequence(Vec<u32>);

impl AlphaSequence {
    pub fn empty() -> Self {
        AlphaSequence(Vec::new())
    }

    pub fn new(alphas: Vec<u32>) -> Result<Self, TermError> {
        for (k, &a) in alphas.iter().enumerate() {
            let max = k + 3;
            if a == 0 || a as usize > max {
                return Err(TermError::InvalidAlpha {
                    position: k + 1,
                    value: a as i64,
                    max,
                });
            }
        }
        Ok(AlphaSequence(alphas))
    }

    /// Like [`AlphaSequence::new`] but accepts signed input, as read from
    /// text.
    pub fn from_signed(alphas: &[i64]) -> Result<Self, TermError> {
        let mut out = Vec::with_capacity(alphas.len());
        for (k, &a) in alphas.iter().enumerate() {
            if a < 1 || a > (k + 3) as i64 {
                return Err(TermError::InvalidAlpha {
                    position: k + 1,
                    value: a,
                    max: k + 3,
                });
            }
            out.push(a as u32);
        }
        Ok(AlphaSequence(out))
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn arity(&self) -> usize {
        self.0.len() + 3
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Position in the lexicographic enumeration of its level.
    pub fn index(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &a)| acc * (k + 3) + (a as usize - 1))
    }

    pub(crate) fn check_arity(&self, got: usize) -> Result<(), TermError> {
        if got != self.arity() {
            return Err(TermError::Arity {
                level: self.level(),
                expected: self.arity(),
                got,
            });
        }
        Ok(())
    }
}

impl fmt::Display for AlphaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// `(level + 2)! / 2`, the number of deviations of a level.
pub fn alpha_count(level: usize) -> usize {
    (3..=level + 2).product()
}

/// All alpha sequences of the given level in lexicographic order.
pub fn enumerate_alphas(level: usize) -> Vec<AlphaSequence> {
    let mut out = Vec::with_capacity(alpha_count(level));
    let mut current = vec![1u32; level];
    loop {
        out.push(AlphaSequence(current.clone()));
        // odometer, last position fastest
        let mut k = level;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if (current[k] as usize) < k + 3 {
                current[k] += 1;
                break;
            }
            current[k] = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels() {
        assert_eq!(enumerate_alphas(0), vec![AlphaSequence::empty()]);
        let one: Vec<String> = enumerate_alphas(1).iter().map(|a| a.to_string()).collect();
        assert_eq!(one, ["(1)", "(2)", "(3)"]);
        assert_eq!(enumerate_alphas(2).len(), 12);
        assert_eq!(enumerate_alphas(3).len(), 60);
    }

    #[test]
    fn counts_match_factorial_formula() {
        let expected = [1, 3, 12, 60, 360, 2520, 20160];
        for (n, &want) in expected.iter().enumerate() {
            assert_eq!(alpha_count(n), want);
            assert_eq!(enumerate_alphas(n).len(), want);
        }
    }

    #[test]
    fn enumeration_is_sorted_and_indexed() {
        let all = enumerate_alphas(3);
        for (i, a) in all.iter().enumerate() {
            assert_eq!(a.index(), i);
            assert!(AlphaSequence::new(a.as_slice().to_vec()).is_ok());
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(AlphaSequence::new(vec![4]).is_err());
        assert!(AlphaSequence::new(vec![0]).is_err());
        assert!(AlphaSequence::new(vec![3, 4]).is_ok());
        assert!(AlphaSequence::new(vec![3, 5]).is_err());
        assert!(AlphaSequence::from_signed(&[-1]).is_err());
    }
}
