//! Random instances, the exhaustive oracle, and the experiment runner.
//!
//! Random formulas use `ChaCha8Rng::seed_from_u64(seed)`: each of the `t`
//! clauses picks two distinct variables uniformly and independent uniform
//! polarities. Duplicates are left in and removed by normalization.

use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::compressed::count_models;
use crate::error::{Error, Result};
use crate::formula::{Assignment, Clause2, Cnf2, Literal};

/// Largest variable count accepted by [`brute_force_models`].
pub const BRUTE_FORCE_MAX_VARS: usize = 24;

pub fn random_2cnf(n: usize, t: usize, seed: u64) -> Result<Cnf2> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 variables, got {n}")));
    }
    if t < 1 {
        return Err(Error::InvalidParameter("need at least one clause".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..t)
        .map(|_| {
            let a = rng.random_range(1..=n);
            let mut b = rng.random_range(1..n);
            if b >= a {
                b += 1;
            }
            Clause2::new(
                Literal::new(a, rng.random_bool(0.5)),
                Literal::new(b, rng.random_bool(0.5)),
            )
        })
        .collect();
    Cnf2::new(n, clauses, Vec::new())
}

/// Every satisfying assignment, by scanning all `2^n` candidates.
pub fn brute_force_models(f: &Cnf2) -> Result<Vec<Assignment>> {
    let n = f.num_vars();
    if n > BRUTE_FORCE_MAX_VARS {
        return Err(Error::TooManyVariables {
            num_vars: n,
            max: BRUTE_FORCE_MAX_VARS,
        });
    }
    // a literal is true under `bits` iff its bit equals its polarity
    let lit = |l: Literal| (1u32 << (l.var() - 1), if l.is_positive() { 1u32 << (l.var() - 1) } else { 0 });
    let clauses: Vec<_> = f.clauses().iter().map(|c| (lit(c.first), lit(c.second))).collect();
    let units: Vec<_> = f.units().iter().map(|&u| lit(u)).collect();
    let holds = |bits: u32, (mask, want): (u32, u32)| bits & mask == want;
    Ok((0..1u32 << n)
        .filter(|&bits| {
            clauses.iter().all(|&(a, b)| holds(bits, a) || holds(bits, b))
                && units.iter().all(|&u| holds(bits, u))
        })
        .map(|bits| Assignment::from_bits(n, bits as u64))
        .collect())
}

/// One row of the experiment table.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentRecord {
    pub n: usize,
    pub t: usize,
    pub seed: u64,
    pub time_ms: f64,
    pub satisfiable: bool,
    #[serde(serialize_with = "as_decimal")]
    pub count: BigUint,
    pub poset_size: usize,
    pub largest_component_size: usize,
    pub rigid_size: usize,
    pub halfcore_size: usize,
    pub isolated_count: usize,
    pub mean_twos: f64,
    pub cubes: u64,
}

fn as_decimal<S: serde::Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

impl ExperimentRecord {
    pub const CSV_HEADER: &'static str =
        "n,t,seed,time_ms,satisfiable,models,poset_size,largest_component,rigid_size,halfcore_size,isolated,mean_twos,cubes";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{:.3},{},{},{},{},{},{},{},{:.3},{}",
            self.n,
            self.t,
            self.seed,
            self.time_ms,
            self.satisfiable,
            self.count,
            self.poset_size,
            self.largest_component_size,
            self.rigid_size,
            self.halfcore_size,
            self.isolated_count,
            self.mean_twos,
            self.cubes
        )
    }
}

/// Counts one random instance and records the statistics.
pub fn run_instance(n: usize, t: usize, seed: u64) -> Result<ExperimentRecord> {
    let f = random_2cnf(n, t, seed)?;
    let start = Instant::now();
    let report = count_models(&f);
    let time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(ExperimentRecord {
        n,
        t,
        seed,
        time_ms,
        satisfiable: report.satisfiable,
        count: report.count,
        poset_size: report.poset_size,
        largest_component_size: report.largest_component,
        rigid_size: report.rigid_size,
        halfcore_size: report.halfcore_size,
        isolated_count: report.isolated_count,
        mean_twos: report.mean_twos,
        cubes: report.cubes,
    })
}

/// Instances use seeds `seed, seed+1, ...`; they run in parallel and come
/// back in seed order.
pub fn run_experiment(n: usize, t: usize, num_instances: usize, seed: u64) -> Result<Vec<ExperimentRecord>> {
    (0..num_instances as u64)
        .into_par_iter()
        .map(|i| run_instance(n, t, seed.wrapping_add(i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::collections::BTreeSet;

    #[test]
    fn random_formula_shape_and_determinism() {
        let f = random_2cnf(20, 20, 11).unwrap();
        assert_eq!(f.clauses().len(), 20);
        assert!(f.clauses().iter().all(|c| c.first.var() != c.second.var()));
        assert!(f.clauses().iter().all(|c| c.first.var() <= 20 && c.second.var() <= 20));
        assert_eq!(f, random_2cnf(20, 20, 11).unwrap());
        assert_ne!(f, random_2cnf(20, 20, 12).unwrap());
    }

    #[test]
    fn random_rejects_bad_parameters() {
        assert!(matches!(random_2cnf(1, 3, 0), Err(Error::InvalidParameter(_))));
        assert!(matches!(random_2cnf(3, 0, 0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn dense_instances_are_sometimes_unsat() {
        let sat = (0..10).filter(|&s| run_instance(20, 40, s).unwrap().satisfiable).count();
        assert!(sat < 10, "expected some unsatisfiable (20,40) instances");
    }

    #[test]
    fn brute_force_fixtures() {
        assert_eq!(brute_force_models(&fixtures::thirty_models()).unwrap().len(), 30);
        let got: BTreeSet<String> = brute_force_models(&fixtures::four_models())
            .unwrap()
            .iter()
            .map(|a| a.to_bitstring())
            .collect();
        let expect: BTreeSet<String> = ["1110110", "1010110", "1010100", "0001110"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(got, expect);
        let empty = Cnf2::new(3, vec![], vec![]).unwrap();
        assert_eq!(brute_force_models(&empty).unwrap().len(), 8);
    }

    #[test]
    fn brute_force_refuses_large_instances() {
        let f = Cnf2::new(25, vec![], vec![]).unwrap();
        assert_eq!(
            brute_force_models(&f).unwrap_err(),
            Error::TooManyVariables { num_vars: 25, max: 24 }
        );
    }

    #[test]
    fn experiment_records_are_ordered_and_consistent() {
        let recs = run_experiment(16, 16, 6, 100).unwrap();
        assert_eq!(recs.iter().map(|r| r.seed).collect::<Vec<_>>(), (100..106).collect::<Vec<_>>());
        for r in &recs {
            let f = random_2cnf(16, 16, r.seed).unwrap();
            let brute = brute_force_models(&f).unwrap().len();
            assert_eq!(r.count, BigUint::from(brute));
            assert_eq!(r.satisfiable, brute > 0);
            if r.satisfiable {
                assert_eq!(r.rigid_size, r.poset_size - 2 * r.halfcore_size);
                assert!(r.isolated_count <= r.halfcore_size);
            }
        }
        let csv = recs[0].to_csv();
        assert_eq!(csv.split(',').count(), ExperimentRecord::CSV_HEADER.split(',').count());
    }

    #[test]
    fn unsat_record() {
        let rec = (0..50)
            .map(|s| run_instance(20, 40, s).unwrap())
            .find(|r| !r.satisfiable)
            .expect("some unsat instance");
        assert_eq!(rec.count, BigUint::from(0u32));
        assert_eq!(rec.cubes, 0);
    }
}
