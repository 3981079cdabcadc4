use serde::{Deserialize, Serialize};

/// One failed condition together with the lexicographically smallest tuple of
/// element indices on which it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: String,
    pub witness: Vec<usize>,
}

/// Outcome of a full scan over a family of conditions.
///
/// `passed` is true exactly when `violations` is empty. Violations are kept in
/// the order the conditions are declared by the checker that produced them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn pass() -> Self {
        CheckReport {
            passed: true,
            violations: Vec::new(),
        }
    }

    pub fn from_violations(violations: Vec<Violation>) -> Self {
        CheckReport {
            passed: violations.is_empty(),
            violations,
        }
    }

    pub fn push(&mut self, condition: impl Into<String>, witness: Vec<usize>) {
        self.violations.push(Violation {
            condition: condition.into(),
            witness,
        });
        self.passed = false;
    }

    pub fn merge(&mut self, other: CheckReport) {
        for v in other.violations {
            self.push(v.condition, v.witness);
        }
    }

    pub fn fails(&self, condition: &str) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }

    pub fn witness(&self, condition: &str) -> Option<&[usize]> {
        self.violations
            .iter()
            .find(|v| v.condition == condition)
            .map(|v| v.witness.as_slice())
    }

    pub fn failed_conditions(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.condition.as_str()).collect()
    }
}

/// Finds the lexicographically first tuple in `0..dims[0] × … × 0..dims[K-1]`
/// for which `holds` is false.
#[inline]
pub(crate) fn first_failure<const K: usize>(
    dims: [usize; K],
    mut holds: impl FnMut([usize; K]) -> bool,
) -> Option<[usize; K]> {
    if dims.contains(&0) {
        return None;
    }
    let mut idx = [0usize; K];
    loop {
        if !holds(idx) {
            return Some(idx);
        }
        let mut k = K;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < dims[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Collects violations for a sequence of conditions, optionally stopping at the
/// first failing one.
pub(crate) struct Scanner {
    stop_at_first: bool,
    violations: Vec<Violation>,
}

impl Scanner {
    pub(crate) fn new(stop_at_first: bool) -> Self {
        Scanner {
            stop_at_first,
            violations: Vec::new(),
        }
    }

    /// Records the first failure of one condition. Returns true when the
    /// caller should stop scanning.
    #[inline]
    pub(crate) fn check<const K: usize>(
        &mut self,
        condition: &'static str,
        dims: [usize; K],
        holds: impl FnMut([usize; K]) -> bool,
    ) -> bool {
        if let Some(w) = first_failure(dims, holds) {
            self.violations.push(Violation {
                condition: condition.to_string(),
                witness: w.to_vec(),
            });
            return self.stop_at_first;
        }
        false
    }

    pub(crate) fn finish(self) -> CheckReport {
        CheckReport::from_violations(self.violations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_lexicographic() {
        let w = first_failure([3, 3], |[x, y]| !(x + y == 3));
        assert_eq!(w, Some([1, 2]));
        assert_eq!(first_failure([2, 2, 2], |_| true), None);
        assert_eq!(first_failure([0, 5], |_| false), None);
    }

    #[test]
    fn scanner_stops_when_asked() {
        let mut s = Scanner::new(true);
        assert!(s.check("a", [2], |[x]| x == 0));
        let r = s.finish();
        assert!(!r.passed);
        assert_eq!(r.witness("a"), Some(&[1usize][..]));
    }
}
