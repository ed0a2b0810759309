//! Runtime scaling of GOLS in the number of columns.

use gols::ensembles::seed::derive_seed;
use gols::ensembles::{make_problem, MatrixEnsemble, MatrixKind, SignalDist, SignalEnsemble};
use gols::solvers::{gols_run, SolverConfig};

use crate::error::{BenchError, Result};

#[derive(Debug, Clone)]
pub struct ProbeSpec {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub m_values: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
}

impl Default for ProbeSpec {
    fn default() -> Self {
        Self {
            n: 64,
            k: 8,
            l: 2,
            m_values: vec![128, 256, 512, 1024],
            reps: 21,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    /// `(m, median seconds)`.
    pub points: Vec<(usize, f64)>,
    /// Least-squares slope of `ln(median)` against `ln(m)`.
    pub slope: f64,
}

/// Times `gols_run` on `reps` fresh Gaussian instances per `m` and fits the
/// log-log slope of the median runtime.
pub fn complexity_probe(spec: &ProbeSpec) -> Result<ProbeReport> {
    if spec.m_values.len() < 2 || spec.reps == 0 {
        return Err(BenchError::Config(
            "complexity probe needs at least two m values and one repetition".into(),
        ));
    }
    let cfg = SolverConfig::new(spec.k, spec.l);
    let ensembles: Vec<(MatrixEnsemble, SignalEnsemble)> = spec
        .m_values
        .iter()
        .map(|&m| {
            (
                MatrixEnsemble::new(MatrixKind::Gaussian, spec.n, m),
                SignalEnsemble::new(SignalDist::GaussianUnit, m, spec.k),
            )
        })
        .collect();
    let mut times = vec![Vec::with_capacity(spec.reps); spec.m_values.len()];
    // rep 0 warms caches and is discarded; m values are interleaved so that
    // slow periods hit every m alike
    for rep in 0..=spec.reps {
        for (i, (me, se)) in ensembles.iter().enumerate() {
            let m = spec.m_values[i];
            let seed = derive_seed(spec.seed, &[m as u64, rep as u64]);
            let wrap = |source| BenchError::Solver {
                context: format!("probe m={m} rep={rep}"),
                source,
            };
            let p = make_problem(me, se, 0.0, seed).map_err(wrap)?;
            let res = gols_run(&p.a, &p.y, &cfg).map_err(wrap)?;
            if rep > 0 {
                times[i].push(res.elapsed.as_secs_f64());
            }
        }
    }
    let points: Vec<(usize, f64)> = spec
        .m_values
        .iter()
        .zip(&mut times)
        .map(|(&m, t)| (m, median(t)))
        .collect();
    let slope = loglog_slope(&points);
    Ok(ProbeReport { points, slope })
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    }
}

pub fn loglog_slope(points: &[(usize, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|(m, _)| (*m as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, t)| t.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(usize, f64)> = [128, 256, 512, 1024]
            .iter()
            .map(|&m| (m, 3e-6 * (m as f64).powf(1.5)))
            .collect();
        assert!((loglog_slope(&pts) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn rejects_degenerate_probe() {
        let spec = ProbeSpec {
            m_values: vec![128],
            ..ProbeSpec::default()
        };
        assert!(complexity_probe(&spec).is_err());
    }
}
