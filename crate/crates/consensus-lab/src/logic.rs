//! CNF formulas and two-level quantified instances, with exact brute-force
//! deciders sized for gadget verification (a few variables, not SAT
//! solving).

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Brute-force assignment enumeration cap (2^24 evaluations).
const MAX_BRUTE_VARS: usize = 24;

/// A CNF formula in DIMACS conventions: variables `1..=num_vars`, literals
/// as nonzero signed integers, clauses as literal lists. Duplicate literals
/// within a clause are allowed (the gadget constructions pad clauses by
/// repetition); empty clauses are allowed and are unsatisfiable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        if num_vars > i32::MAX as usize {
            return Err(Error::invalid("formula", "variable count out of range"));
        }
        for clause in &clauses {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(Error::invalid(
                        "formula",
                        format!("literal {lit} outside 1..={num_vars}"),
                    ));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// Variables that actually occur in some clause.
    pub fn used_vars(&self) -> BTreeSet<u32> {
        self.clauses
            .iter()
            .flatten()
            .map(|lit| lit.unsigned_abs())
            .collect()
    }

    /// `assignment[v-1]` is the value of variable `v`.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.satisfied_clause_count(assignment) == self.clauses.len()
    }

    pub fn satisfied_clause_count(&self, assignment: &[bool]) -> usize {
        debug_assert_eq!(assignment.len(), self.num_vars);
        self.clauses
            .iter()
            .filter(|clause| {
                clause.iter().any(|&lit| {
                    let value = assignment[(lit.unsigned_abs() - 1) as usize];
                    (lit > 0) == value
                })
            })
            .count()
    }

    pub fn is_satisfiable(&self) -> Result<bool> {
        Ok(self.max_satisfiable()? == self.clauses.len())
    }

    /// Maximum number of simultaneously satisfiable clauses, by exhaustive
    /// assignment enumeration.
    pub fn max_satisfiable(&self) -> Result<usize> {
        if self.num_vars > MAX_BRUTE_VARS {
            return Err(Error::SizeLimit {
                what: "brute-force formula variables",
                actual: self.num_vars,
                limit: MAX_BRUTE_VARS,
            });
        }
        let mut assignment = vec![false; self.num_vars];
        let mut best = 0;
        for bits in 0u64..1 << self.num_vars {
            for (v, slot) in assignment.iter_mut().enumerate() {
                *slot = bits >> v & 1 == 1;
            }
            best = best.max(self.satisfied_clause_count(&assignment));
            if best == self.clauses.len() {
                break;
            }
        }
        Ok(best)
    }
}

/// A quantified instance: does some assignment of the outer block make the
/// formula unsatisfiable no matter how the inner block is set?
///
/// The outer block is existential; the inner block is an existential under
/// a negation (hence the `negated` in the file header naming), which makes
/// the whole question Sigma-2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qsat2Instance {
    formula: CnfFormula,
    outer_vars: Vec<u32>, // sorted
    inner_vars: Vec<u32>, // sorted
}

impl Qsat2Instance {
    /// Blocks must partition `1..=num_vars` (disjoint and exhaustive).
    /// Equal block sizes are NOT required here; the graph construction that
    /// needs them enforces it and `pad_blocks` repairs it.
    pub fn new(formula: CnfFormula, outer_vars: Vec<u32>, inner_vars: Vec<u32>) -> Result<Self> {
        let mut outer = outer_vars;
        let mut inner = inner_vars;
        outer.sort_unstable();
        inner.sort_unstable();
        let outer_set: BTreeSet<u32> = outer.iter().copied().collect();
        let inner_set: BTreeSet<u32> = inner.iter().copied().collect();
        if outer_set.len() != outer.len() || inner_set.len() != inner.len() {
            return Err(Error::invalid(
                "quantified formula",
                "duplicate block entry",
            ));
        }
        if !outer_set.is_disjoint(&inner_set) {
            return Err(Error::invalid(
                "quantified formula",
                "variable blocks overlap",
            ));
        }
        let all: BTreeSet<u32> = (1..=formula.num_vars() as u32).collect();
        let union: BTreeSet<u32> = outer_set.union(&inner_set).copied().collect();
        if union != all {
            return Err(Error::invalid(
                "quantified formula",
                "blocks must cover exactly the formula's variables",
            ));
        }
        Ok(Qsat2Instance {
            formula,
            outer_vars: outer,
            inner_vars: inner,
        })
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn outer_vars(&self) -> &[u32] {
        &self.outer_vars
    }

    pub fn inner_vars(&self) -> &[u32] {
        &self.inner_vars
    }

    /// Equalize block sizes by appending fresh variables (occurring in no
    /// clause) to the smaller block. Truth is preserved: the new variables
    /// constrain nothing.
    pub fn pad_blocks(&self) -> Result<Qsat2Instance> {
        let diff = self.outer_vars.len().abs_diff(self.inner_vars.len());
        if diff == 0 {
            return Ok(self.clone());
        }
        let old_n = self.formula.num_vars();
        let fresh: Vec<u32> = (1..=diff).map(|i| (old_n + i) as u32).collect();
        let formula = CnfFormula::new(old_n + diff, self.formula.clauses.clone())?;
        let mut outer = self.outer_vars.clone();
        let mut inner = self.inner_vars.clone();
        if outer.len() < inner.len() {
            outer.extend(&fresh);
        } else {
            inner.extend(&fresh);
        }
        Qsat2Instance::new(formula, outer, inner)
    }

    /// Exhaustive truth: exists an outer assignment such that no inner
    /// assignment satisfies the formula.
    pub fn truth(&self) -> Result<bool> {
        let n = self.formula.num_vars();
        if n > MAX_BRUTE_VARS {
            return Err(Error::SizeLimit {
                what: "brute-force formula variables",
                actual: n,
                limit: MAX_BRUTE_VARS,
            });
        }
        let mut assignment = vec![false; n];
        for outer_bits in 0u64..1 << self.outer_vars.len() {
            for (b, &v) in self.outer_vars.iter().enumerate() {
                assignment[(v - 1) as usize] = outer_bits >> b & 1 == 1;
            }
            let mut beaten = false;
            for inner_bits in 0u64..1 << self.inner_vars.len() {
                for (b, &v) in self.inner_vars.iter().enumerate() {
                    assignment[(v - 1) as usize] = inner_bits >> b & 1 == 1;
                }
                if self.formula.is_satisfied_by(&assignment) {
                    beaten = true;
                    break;
                }
            }
            if !beaten {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_validation() {
        assert!(CnfFormula::new(2, vec![vec![1, -2]]).is_ok());
        assert!(CnfFormula::new(2, vec![vec![0]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![3]]).is_err());
        assert!(CnfFormula::new(0, vec![vec![]]).is_ok());
    }

    #[test]
    fn satisfiability_small_cases() {
        let f = CnfFormula::new(2, vec![vec![1, 2], vec![-1], vec![-2, 1]]).unwrap();
        assert!(!f.is_satisfiable().unwrap());
        assert_eq!(f.max_satisfiable().unwrap(), 2);
        let g = CnfFormula::new(2, vec![vec![1, 2], vec![-1, -2]]).unwrap();
        assert!(g.is_satisfiable().unwrap());
        let empty_clause = CnfFormula::new(1, vec![vec![]]).unwrap();
        assert!(!empty_clause.is_satisfiable().unwrap());
        let no_clauses = CnfFormula::new(1, vec![]).unwrap();
        assert!(no_clauses.is_satisfiable().unwrap());
    }

    #[test]
    fn qsat2_block_validation() {
        let f = CnfFormula::new(2, vec![vec![1, 2]]).unwrap();
        assert!(Qsat2Instance::new(f.clone(), vec![1], vec![2]).is_ok());
        assert!(Qsat2Instance::new(f.clone(), vec![1], vec![1]).is_err());
        assert!(Qsat2Instance::new(f.clone(), vec![1], vec![]).is_err());
        assert!(Qsat2Instance::new(f, vec![1, 2], vec![2]).is_err());
    }

    #[test]
    fn qsat2_truth_small_cases() {
        // Formula (y1): inner y1 = true always satisfies it, so no outer
        // choice blocks it.
        let f = CnfFormula::new(2, vec![vec![2]]).unwrap();
        let q = Qsat2Instance::new(f, vec![1], vec![2]).unwrap();
        assert!(!q.truth().unwrap());

        // Formula (x1 AND NOT y1) as CNF (x1)(-y1)... as clauses {x1},{-y1}:
        // outer x1 = false falsifies clause {x1} for every inner value.
        let f = CnfFormula::new(2, vec![vec![1], vec![-2]]).unwrap();
        let q = Qsat2Instance::new(f, vec![1], vec![2]).unwrap();
        assert!(q.truth().unwrap());

        // Formula (x1 OR y1)(x1 OR -y1): outer x1 = false leaves (y1)(-y1),
        // unsatisfiable by any inner value.
        let f = CnfFormula::new(2, vec![vec![1, 2], vec![1, -2]]).unwrap();
        let q = Qsat2Instance::new(f, vec![1], vec![2]).unwrap();
        assert!(q.truth().unwrap());
    }

    #[test]
    fn block_padding_preserves_truth() {
        let f = CnfFormula::new(3, vec![vec![2], vec![-3]]).unwrap();
        let q = Qsat2Instance::new(f, vec![1, 2], vec![3]).unwrap();
        let padded = q.pad_blocks().unwrap();
        assert_eq!(padded.outer_vars().len(), padded.inner_vars().len());
        assert_eq!(padded.formula().num_vars(), 4);
        assert_eq!(q.truth().unwrap(), padded.truth().unwrap());
    }
}
