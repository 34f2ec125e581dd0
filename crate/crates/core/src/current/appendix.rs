use serde::Serialize;

use crate::error::KncError;
use crate::exact::{Rat, RatFunc};
use crate::forms::Form;
use crate::ops::lie_derivative;

/// `g_n = z^{-n} (z - 1)^n` and `e_n = z^n (z - 1)^{1-n} d/dz`, with poles
/// only at `0`, `1` and `∞`.
pub fn fixture_pair(n: i64) -> (Form, Form) {
    let zero = Rat::zero();
    let one = Rat::one();
    let g = RatFunc::from_factors(&one, [(&zero, -n), (&one, n)]);
    let e = RatFunc::from_factors(&one, [(&zero, n), (&one, 1 - n)]);
    (Form::function(g), Form::vector_field(e))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub max_n: i64,
    /// Values of `n` where `e_n . g_n` differs from `n z^{-1}`.
    pub failures: Vec<i64>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check `e_n . g_n' = n z^{-1}` for `1 ≤ n ≤ max_n`.
pub fn fixture_check(max_n: i64) -> Result<FixtureReport, KncError> {
    let mut failures = Vec::new();
    for n in 1..=max_n {
        let (g, e) = fixture_pair(n);
        let lhs = lie_derivative(&e, &g)?;
        let rhs = RatFunc::from_factors(&Rat::from_int(n), [(&Rat::zero(), -1)]);
        if lhs.func != rhs {
            failures.push(n);
        }
    }
    Ok(FixtureReport { max_n, failures })
}
