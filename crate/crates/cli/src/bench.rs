//! Scaling benchmark: time solvers over generated instances of growing size.

use std::io::Write;
use std::time::Instant;

use envyfree_core::{generate, social_welfare, Distribution, GenSpec};
use serde::Serialize;

use crate::solvers::SolverKind;

/// One timed solve. CSV header: `n,solver,wall_time_s,revenue,welfare`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub solver: String,
    pub wall_time_s: f64,
    pub revenue: f64,
    pub welfare: f64,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub repetitions: usize,
    pub seed: u64,
    pub solvers: Vec<SolverKind>,
    /// Cubic and exhaustive solvers are skipped above this size.
    pub cubic_cap: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![256, 512, 1024],
            repetitions: 3,
            seed: 0,
            solvers: vec![SolverKind::Monge, SolverKind::Hungarian],
            cubic_cap: 1024,
        }
    }
}

fn applies(solver: SolverKind, n: usize, cap: usize) -> bool {
    match solver {
        SolverKind::Monge | SolverKind::MongeFast => true,
        SolverKind::Hungarian => n <= cap,
        SolverKind::Brute => n <= envyfree_core::oracles::MAX_BRUTE_FORCE_N.min(cap),
    }
}

/// Runs every applicable solver on `repetitions` instances per size.
///
/// Instance `r` of size `n` uses seed `seed + r` with integer budgets and
/// qualities in `1..=10_000`. Each record times one solve call.
pub fn run_bench(cfg: &BenchConfig) -> envyfree_core::Result<Vec<BenchRecord>> {
    let mut records = Vec::new();
    for &n in &cfg.sizes {
        for rep in 0..cfg.repetitions {
            let spec =
                GenSpec::new(n, Distribution::UniformInt, 1.0, 10_000.0, cfg.seed.wrapping_add(rep as u64));
            let inst = generate(&spec)?;
            for &solver in cfg.solvers.iter().filter(|&&s| applies(s, n, cfg.cubic_cap)) {
                let start = Instant::now();
                let out = solver.run(&inst)?;
                let wall_time_s = start.elapsed().as_secs_f64();
                records.push(BenchRecord {
                    n,
                    solver: solver.name().to_string(),
                    wall_time_s,
                    revenue: out.revenue,
                    welfare: social_welfare(&inst, &out.assignment),
                });
            }
        }
    }
    Ok(records)
}

/// Least-squares slope of log(mean wall time) against log(n).
///
/// `None` with fewer than two sizes or a zero timing.
pub fn loglog_slope(records: &[BenchRecord], solver: &str) -> Option<f64> {
    let mut sizes: Vec<usize> = records.iter().filter(|r| r.solver == solver).map(|r| r.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 2 {
        return None;
    }
    let mut points = Vec::with_capacity(sizes.len());
    for n in sizes {
        let times: Vec<f64> =
            records.iter().filter(|r| r.solver == solver && r.n == n).map(|r| r.wall_time_s).collect();
        let mean = times.iter().sum::<f64>() / times.len() as f64;
        if mean <= 0.0 {
            return None;
        }
        points.push(((n as f64).ln(), mean.ln()));
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

pub fn write_csv<W: Write>(records: &[BenchRecord], writer: W) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    for record in records {
        wtr.serialize(record)?;
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(n: usize, t: f64) -> BenchRecord {
        BenchRecord { n, solver: "monge".into(), wall_time_s: t, revenue: 0.0, welfare: 0.0 }
    }

    #[test]
    fn slope_of_exact_power_law() {
        let records: Vec<_> =
            [100usize, 200, 400, 800].iter().map(|&n| record(n, 1e-9 * (n as f64).powi(2))).collect();
        assert!((loglog_slope(&records, "monge").unwrap() - 2.0).abs() < 1e-9);
        assert_eq!(loglog_slope(&records[..1], "monge"), None);
        assert_eq!(loglog_slope(&records, "hungarian"), None);
    }

    #[test]
    fn csv_header() {
        let mut buf = Vec::new();
        write_csv(&[record(4, 0.5)], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "n,solver,wall_time_s,revenue,welfare\n4,monge,0.5,0.0,0.0\n"
        );
    }

    #[test]
    fn caps_skip_slow_solvers() {
        let cfg = BenchConfig {
            sizes: vec![4, 16],
            repetitions: 2,
            seed: 3,
            solvers: vec![SolverKind::Monge, SolverKind::Hungarian, SolverKind::Brute],
            cubic_cap: 8,
        };
        let records = run_bench(&cfg).unwrap();
        let count =
            |solver: &str, n: usize| records.iter().filter(|r| r.solver == solver && r.n == n).count();
        assert_eq!((count("monge", 4), count("hungarian", 4), count("brute", 4)), (2, 2, 2));
        assert_eq!((count("monge", 16), count("hungarian", 16), count("brute", 16)), (2, 0, 0));
        for pair in records.chunks(3).take(2) {
            assert!(pair.iter().all(|r| r.revenue == pair[0].revenue && r.welfare == pair[0].welfare));
        }
        assert!(records.iter().all(|r| r.wall_time_s >= 0.0));
    }
}
