use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::HarnessError;

/// A finite set of non-negative integer weights, kept sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct WeightSet(Vec<u64>);

impl WeightSet {
    pub fn new(mut values: Vec<u64>) -> Result<Self, HarnessError> {
        if values.is_empty() {
            return Err(HarnessError::WeightSet("empty".into()));
        }
        values.sort_unstable();
        values.dedup();
        Ok(WeightSet(values))
    }

    /// `{0, 1}`.
    pub fn binary() -> Self {
        WeightSet(vec![0, 1])
    }

    /// `{0, 1, ..., max}`.
    pub fn up_to(max: u64) -> Self {
        WeightSet((0..=max).collect())
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, w: u64) -> bool {
        self.0.binary_search(&w).is_ok()
    }

    pub fn max(&self) -> u64 {
        *self.0.last().expect("nonempty")
    }

    /// `|set|^n`, saturating.
    pub fn count(&self, n: usize) -> u128 {
        (self.0.len() as u128)
            .checked_pow(n as u32)
            .unwrap_or(u128::MAX)
    }
}

impl TryFrom<Vec<u64>> for WeightSet {
    type Error = HarnessError;

    fn try_from(values: Vec<u64>) -> Result<Self, HarnessError> {
        WeightSet::new(values)
    }
}

impl From<WeightSet> for Vec<u64> {
    fn from(set: WeightSet) -> Vec<u64> {
        set.0
    }
}

/// Parses `"0,1,2"`.
impl FromStr for WeightSet {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, HarnessError> {
        let values = s
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| HarnessError::WeightSet(s.to_owned()))?;
        WeightSet::new(values)
    }
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// All `|set|^n` assignments in lexicographic order (vertex 0 most
/// significant), refusing up front when there are more than `budget`.
pub fn enumerate_weightings(
    n: usize,
    set: &WeightSet,
    budget: u64,
) -> Result<Weightings, HarnessError> {
    let count = set.count(n);
    if count > u128::from(budget) {
        return Err(HarnessError::WeightBudget { count, budget });
    }
    Ok(Weightings::new(n, set.clone(), None))
}

/// Assignments with values in `0..=max_weight` and at most `max_nonzero`
/// nonzero entries, in lexicographic order.
pub fn sparse_weightings(n: usize, max_weight: u64, max_nonzero: usize) -> Weightings {
    Weightings::new(n, WeightSet::up_to(max_weight), Some(max_nonzero))
}

/// Odometer over weight assignments.
#[derive(Debug, Clone)]
pub struct Weightings {
    set: WeightSet,
    digits: Vec<usize>,
    max_nonzero: Option<usize>,
    done: bool,
}

impl Weightings {
    fn new(n: usize, set: WeightSet, max_nonzero: Option<usize>) -> Self {
        Weightings {
            set,
            digits: vec![0; n],
            max_nonzero,
            done: false,
        }
    }

    fn advance(&mut self) {
        let base = self.set.len();
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < base {
                return;
            }
            *d = 0;
        }
        self.done = true;
    }

    fn admissible(&self) -> bool {
        let zero = self.set.values()[0] == 0;
        match self.max_nonzero {
            Some(k) if zero => self.digits.iter().filter(|&&d| d != 0).count() <= k,
            Some(k) => self.digits.len() <= k,
            None => true,
        }
    }
}

impl Iterator for Weightings {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        while !self.done {
            let admissible = self.admissible();
            let current =
                admissible.then(|| self.digits.iter().map(|&d| self.set.values()[d]).collect());
            self.advance();
            if current.is_some() {
                return current;
            }
        }
        None
    }
}
