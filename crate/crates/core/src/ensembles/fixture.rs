//! Plain-text fixture format for [`SparseProblem`]s.
//!
//! ```text
//! gols-fixture 1
//! n <rows>
//! m <cols>
//! k <sparsity>
//! matrix <gaussian|bernoulli>
//! normalize_columns <true|false>
//! signal <gaussian-unit|rademacher>
//! seed <u64>
//! noise_sigma <real>
//! support <k ascending indices>
//! A
//! <n lines of m reals, row-major>
//! x
//! <m reals>
//! y
//! <n reals>
//! ```
//!
//! Reals are written with 17 significant digits, so reading a fixture back
//! reproduces every entry bit for bit.

use std::io::{BufRead, Write};

use super::{MatrixEnsemble, SignalEnsemble, SparseProblem};
use crate::error::{Error, Result};
use crate::fmt_f64;
use crate::linalg::{DenseMatrix, DenseVector};

pub const FIXTURE_MAGIC: &str = "gols-fixture 1";

pub fn write_fixture<W: Write>(p: &SparseProblem, mut w: W) -> Result<()> {
    let join = |xs: &[f64]| xs.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(" ");
    writeln!(w, "{FIXTURE_MAGIC}")?;
    writeln!(w, "n {}", p.n())?;
    writeln!(w, "m {}", p.m())?;
    writeln!(w, "k {}", p.k())?;
    writeln!(w, "matrix {}", p.matrix.kind)?;
    writeln!(w, "normalize_columns {}", p.matrix.normalize_columns)?;
    writeln!(w, "signal {}", p.signal.dist)?;
    writeln!(w, "seed {}", p.seed)?;
    writeln!(w, "noise_sigma {}", fmt_f64(p.noise_sigma))?;
    let support: Vec<String> = p.support_true.iter().map(usize::to_string).collect();
    writeln!(w, "support {}", support.join(" "))?;
    writeln!(w, "A")?;
    for i in 0..p.n() {
        writeln!(w, "{}", join(p.a.row(i)))?;
    }
    writeln!(w, "x")?;
    writeln!(w, "{}", join(p.x_true.as_slice()))?;
    writeln!(w, "y")?;
    writeln!(w, "{}", join(p.y.as_slice()))?;
    Ok(())
}

pub fn read_fixture<R: BufRead>(r: R) -> Result<SparseProblem> {
    let mut lines = Lines {
        inner: r.lines(),
        line: 0,
    };
    if lines.next()? != FIXTURE_MAGIC {
        return Err(bad("missing `gols-fixture 1` header"));
    }
    let n: usize = lines.field("n")?;
    let m: usize = lines.field("m")?;
    let k: usize = lines.field("k")?;
    let kind = lines.field("matrix")?;
    let normalize_columns = lines.field("normalize_columns")?;
    let dist = lines.field("signal")?;
    let seed = lines.field("seed")?;
    let noise_sigma = lines.field("noise_sigma")?;
    let support_true: Vec<usize> = parse_list(&lines.keyed("support")?)?;
    if support_true.len() != k {
        return Err(bad(format!(
            "support lists {} indices, expected {k}",
            support_true.len()
        )));
    }

    lines.expect("A")?;
    let mut a = Vec::with_capacity(n * m);
    for _ in 0..n {
        let row: Vec<f64> = parse_list(&lines.next()?)?;
        if row.len() != m {
            return Err(bad(format!(
                "matrix row has {} entries, expected {m}",
                row.len()
            )));
        }
        a.extend(row);
    }
    lines.expect("x")?;
    let x: Vec<f64> = parse_list(&lines.next()?)?;
    lines.expect("y")?;
    let y: Vec<f64> = parse_list(&lines.next()?)?;
    if x.len() != m || y.len() != n {
        return Err(bad("x or y has the wrong length"));
    }
    let off_support = (0..m).any(|j| x[j] != 0.0 && !support_true.contains(&j));
    if off_support {
        return Err(bad("x is non-zero outside the listed support"));
    }

    Ok(SparseProblem {
        matrix: MatrixEnsemble {
            kind,
            n,
            m,
            normalize_columns,
        },
        signal: SignalEnsemble { dist, m, k },
        a: DenseMatrix::from_row_major(n, m, a)?,
        x_true: DenseVector::new(x)?,
        support_true,
        y: DenseVector::new(y)?,
        noise_sigma,
        seed,
    })
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Fixture(msg.into())
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| bad(format!("cannot parse `{t}`"))))
        .collect()
}

struct Lines<R> {
    inner: std::io::Lines<R>,
    line: usize,
}

impl<R: BufRead> Lines<R> {
    fn next(&mut self) -> Result<String> {
        self.line += 1;
        match self.inner.next() {
            Some(l) => Ok(l?.trim_end().to_string()),
            None => Err(bad(format!(
                "unexpected end of input at line {}",
                self.line
            ))),
        }
    }

    fn expect(&mut self, tag: &str) -> Result<()> {
        let l = self.next()?;
        if l != tag {
            return Err(bad(format!(
                "line {}: expected `{tag}`, found `{l}`",
                self.line
            )));
        }
        Ok(())
    }

    fn keyed(&mut self, key: &str) -> Result<String> {
        let l = self.next()?;
        match l.split_once(' ') {
            Some((k, v)) if k == key => Ok(v.trim().to_string()),
            _ if l == key => Ok(String::new()),
            _ => Err(bad(format!("line {}: expected `{key} <value>`", self.line))),
        }
    }

    fn field<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let v = self.keyed(key)?;
        v.parse()
            .map_err(|_| bad(format!("line {}: bad value `{v}` for {key}", self.line)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{make_problem, MatrixKind, SignalDist};

    #[test]
    fn round_trip_is_bit_exact() {
        let me = MatrixEnsemble::new(MatrixKind::Gaussian, 5, 7);
        let se = SignalEnsemble::new(SignalDist::GaussianUnit, 7, 2);
        let p = make_problem(&me, &se, 0.25, 1234).unwrap();
        let mut buf = Vec::new();
        write_fixture(&p, &mut buf).unwrap();
        let q = read_fixture(buf.as_slice()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn truncated_input_is_rejected() {
        let me = MatrixEnsemble::new(MatrixKind::Bernoulli, 3, 4);
        let se = SignalEnsemble::new(SignalDist::Rademacher, 4, 1);
        let p = make_problem(&me, &se, 0.0, 1).unwrap();
        let mut buf = Vec::new();
        write_fixture(&p, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let cut: String = text.lines().take(12).collect::<Vec<_>>().join("\n");
        assert!(matches!(
            read_fixture(cut.as_bytes()),
            Err(Error::Fixture(_))
        ));
        assert!(matches!(
            read_fixture("hello\n".as_bytes()),
            Err(Error::Fixture(_))
        ));
    }
}
