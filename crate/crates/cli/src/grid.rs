//! The (d, a, p, u) sweep: polygon dominance, Hasse nonvanishing and the two
//! counting identities, one CSV row per tuple.

use std::fs;

use num_traits::Zero;
use rayon::prelude::*;
use twisted_newton_core::arith::{int, is_prime, Rational};
use twisted_newton_core::hasse::{hasse_component, lambda_table, minimal_monomial_witness};
use twisted_newton_core::polygon::{arithmetic_polygon, hodge_polygon};
use twisted_newton_core::TwistData;

use crate::args::GridArgs;
use crate::{CliError, Outcome};

pub const HEADER: &str = "d,a,p,u,q,epsilon,polygon,hasse,delta_balance,ceiling_balance,pass";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tuple {
    pub d: u64,
    pub a: u32,
    pub p: u64,
    pub u: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub tuple: Tuple,
    pub q: u64,
    pub epsilon: u64,
    pub polygon: bool,
    pub hasse: bool,
    pub delta_balance: bool,
    pub ceiling_balance: bool,
}

impl Row {
    pub fn pass(&self) -> bool {
        self.polygon && self.hasse && self.delta_balance && self.ceiling_balance
    }

    pub fn csv(&self) -> String {
        let t = &self.tuple;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            t.d, t.a, t.p, t.u, self.q, self.epsilon, self.polygon, self.hasse, self.delta_balance, self.ceiling_balance,
            self.pass()
        )
    }
}

/// For every `(d, a, u)` the `count` smallest primes with `p > 4d - ε(u)`,
/// `p^a <= q_max` and `u <= p^a - 2`. Sorted.
pub fn tuples(args: &GridArgs) -> Vec<Tuple> {
    let mut out = Vec::new();
    for d in args.d_min..=args.d_max {
        for &a in &args.a_values {
            let primes: Vec<u64> = (2..=args.q_max)
                .filter(|&p| is_prime(p) && p.checked_pow(a).is_some_and(|q| q <= args.q_max))
                .collect();
            let Some(&largest) = primes.last() else { continue };
            for u in 0..largest.pow(a) - 1 {
                let admissible = primes.iter().filter(|&&p| {
                    u + 2 <= p.pow(a) && TwistData::new(p, a, d, u).is_ok_and(|td| td.satisfies_prime_bound())
                });
                out.extend(admissible.take(args.primes_per_tuple).map(|&p| Tuple { d, a, p, u }));
            }
        }
    }
    out.sort();
    out
}

/// The checks behind one row. Returns `None` if the tuple is not a valid twist.
pub fn check_tuple(t: &Tuple) -> Option<Row> {
    let td = TwistData::new(t.p, t.a, t.d, t.u).ok()?;
    let d = td.d;
    let scaled = hodge_polygon(&td, 3 * d).scale(&int(td.p as i64 - 1)).ok()?;
    let polygon = arithmetic_polygon(&td, 3 * d)
        .and_then(|p| p.compare(&scaled, &Rational::zero(), &int(3 * d as i64)))
        .is_ok_and(|r| r.dominates && r.touches_at(&int(d as i64)));
    let hasse = hasse_ok(&td);
    let blocks = 0..td.b as usize;
    let delta_balance = blocks.clone().all(|i| (1..=3 * d).all(|n| {
        let (l, r) = td.delta_balance(i, n);
        l == r
    }));
    let ceiling_balance = blocks.into_iter().all(|i| (1..=d).all(|n| {
        let (l, r) = td.ceiling_balance(i, n);
        l == r
    }));
    Some(Row { tuple: *t, q: td.q, epsilon: td.epsilon(), polygon, hasse, delta_balance, ceiling_balance })
}

/// Every component nonzero with a unit witness coefficient matching its prediction.
pub fn hasse_ok(td: &TwistData) -> bool {
    let Ok(lambdas) = lambda_table(td) else { return false };
    (1..td.d).all(|n| {
        (0..td.b as usize).all(|i| {
            let nonzero = hasse_component(td, n, i, &lambdas).is_ok_and(|h| !h.is_zero());
            let unit = minimal_monomial_witness(td, n, i, &lambdas)
                .is_ok_and(|w| w.coefficient % td.p != 0 && w.coefficient == w.predicted);
            nonzero && unit
        })
    })
}

/// Run `check` over the tuples in parallel; rows come back sorted by tuple.
pub fn run_grid<F>(tuples: &[Tuple], check: F) -> Result<(String, bool), CliError>
where
    F: Fn(&Tuple) -> Option<Row> + Sync,
{
    let mut rows: Vec<Row> = tuples
        .par_iter()
        .map(|t| check(t).ok_or_else(|| CliError::Invalid(format!("not a valid twist: {t:?}"))))
        .collect::<Result<_, _>>()?;
    rows.sort_by_key(|r| r.tuple);
    let ok = rows.iter().all(Row::pass);
    let mut csv = String::from(HEADER);
    csv.push('\n');
    for r in &rows {
        csv.push_str(&r.csv());
        csv.push('\n');
    }
    Ok((csv, ok))
}

pub fn cmd_grid(args: &GridArgs) -> Result<Outcome, CliError> {
    if args.d_min < 1 {
        return Err(CliError::Invalid("d must be at least 1".into()));
    }
    let (body, passed) = run_grid(&tuples(args), check_tuple)?;
    if let Some(path) = &args.out {
        fs::write(path, &body)?;
    }
    Ok(Outcome { body, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid_is_header_only() {
        let args = GridArgs { d_min: 3, d_max: 2, ..GridArgs::default() };
        let out = cmd_grid(&args).unwrap();
        assert_eq!(out.body, format!("{HEADER}\n"));
        assert!(out.passed);
    }

    #[test]
    fn injected_failure_fails_the_grid() {
        let ts = [Tuple { d: 2, a: 1, p: 11, u: 3 }, Tuple { d: 2, a: 1, p: 7, u: 0 }];
        let (csv, ok) = run_grid(&ts, check_tuple).unwrap();
        assert!(ok);
        assert!(csv.lines().nth(1).unwrap().starts_with("2,1,7,0,"));
        let (csv, ok) = run_grid(&ts, |t| {
            let mut r = check_tuple(t)?;
            r.hasse &= t.p != 11;
            Some(r)
        })
        .unwrap();
        assert!(!ok);
        assert!(csv.lines().last().unwrap().ends_with(",false"));
    }

    #[test]
    fn primes_are_the_two_smallest_admissible() {
        let args = GridArgs { d_min: 2, d_max: 2, a_values: vec![1], q_max: 23, ..GridArgs::default() };
        let ts = tuples(&args);
        let for_u0: Vec<u64> = ts.iter().filter(|t| t.u == 0).map(|t| t.p).collect();
        // ε(0) = d, so p > 3d = 6
        assert_eq!(for_u0, [7, 11]);
    }
}
