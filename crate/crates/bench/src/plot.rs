//! Plot data from an aggregate CSV.
//!
//! Writes one whitespace-separated table per metric (`err.dat`,
//! `exact_rate.dat`, `mse.dat`, `mse_topk.dat`, `time.dat`): one row per
//! `k`, one column per solver series. Values are copied verbatim from the
//! CSV. A gnuplot script `plot.gp` renders all of them to PNG.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use crate::error::{BenchError, Result};
use crate::output::{ensure_dir, write_text};

/// `(file stem, aggregate column, axis label)` for every emitted table.
pub const PLOT_METRICS: [(&str, &str, &str); 5] = [
    ("err", "err", "component recovery rate"),
    ("exact_rate", "exact_rate", "exact support rate"),
    ("mse", "mse", "MSE"),
    ("mse_topk", "mse_topk", "MSE (top-k)"),
    ("time", "time_mean_s", "time [s]"),
];

const MISSING: &str = "nan";

/// Parsed aggregate: `series → k → column → raw value`.
struct Aggregate {
    header: String,
    series: Vec<String>,
    ks: Vec<usize>,
    values: BTreeMap<(String, usize), BTreeMap<String, String>>,
}

fn parse_aggregate(path: &Path) -> Result<Aggregate> {
    let file = File::open(path).map_err(|e| BenchError::io(path, e))?;
    let mut reader = BufReader::new(file);
    let mut first = String::new();
    reader
        .read_line(&mut first)
        .map_err(|e| BenchError::io(path, e))?;
    let header = first.trim_end().to_string();
    if !header.starts_with('#') {
        return Err(BenchError::Parse(format!(
            "{}: missing `#` header line",
            path.display()
        )));
    }

    let mut csv = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(reader);
    let columns = csv.headers()?.clone();
    let col = |name: &str| {
        columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| BenchError::Parse(format!("aggregate CSV lacks column `{name}`")))
    };
    let (alg, l, k) = (col("algorithm")?, col("L")?, col("k")?);
    let metric_cols: Vec<(String, usize)> = PLOT_METRICS
        .iter()
        .map(|(_, c, _)| Ok((c.to_string(), col(c)?)))
        .collect::<Result<_>>()?;

    let mut agg = Aggregate {
        header,
        series: Vec::new(),
        ks: Vec::new(),
        values: BTreeMap::new(),
    };
    for rec in csv.records() {
        let rec = rec?;
        let field = |i: usize| {
            rec.get(i)
                .ok_or_else(|| BenchError::Parse(format!("short row: {rec:?}")))
        };
        let algorithm = field(alg)?;
        let series = if algorithm == "gols" {
            format!("gols_L{}", field(l)?)
        } else {
            algorithm.to_string()
        };
        let kv: usize = field(k)?
            .parse()
            .map_err(|_| BenchError::Parse(format!("bad k in row {rec:?}")))?;
        if !agg.series.contains(&series) {
            agg.series.push(series.clone());
        }
        if !agg.ks.contains(&kv) {
            agg.ks.push(kv);
        }
        let mut cell = BTreeMap::new();
        for (name, i) in &metric_cols {
            let raw = field(*i)?;
            raw.parse::<f64>()
                .map_err(|_| BenchError::Parse(format!("bad {name} value `{raw}`")))?;
            cell.insert(name.clone(), raw.to_string());
        }
        agg.values.insert((series, kv), cell);
    }
    if agg.values.is_empty() {
        return Err(BenchError::Parse(format!(
            "{}: aggregate has no rows",
            path.display()
        )));
    }
    agg.ks.sort_unstable();
    Ok(agg)
}

/// Writes the per-metric tables and `plot.gp` into `out_dir`; returns the
/// written paths.
pub fn emit_plot_data(aggregate_csv: &Path, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let agg = parse_aggregate(aggregate_csv)?;
    ensure_dir(out_dir)?;
    let mut written = Vec::new();
    for (stem, column, _) in PLOT_METRICS {
        let mut text = format!("{}\n# k {}\n", agg.header, agg.series.join(" "));
        for &k in &agg.ks {
            let mut row = vec![k.to_string()];
            for s in &agg.series {
                let v = agg
                    .values
                    .get(&(s.clone(), k))
                    .and_then(|c| c.get(column))
                    .map_or(MISSING, String::as_str);
                row.push(v.to_string());
            }
            text.push_str(&row.join(" "));
            text.push('\n');
        }
        let path = out_dir.join(format!("{stem}.dat"));
        write_text(&path, &text)?;
        written.push(path);
    }
    let script = out_dir.join("plot.gp");
    write_text(&script, &gnuplot_script(&agg))?;
    written.push(script);
    Ok(written)
}

fn gnuplot_script(agg: &Aggregate) -> String {
    let mut s = format!(
        "{}\n# usage: gnuplot plot.gp (run inside this directory)\n\
         set terminal pngcairo size 800,600\nset key outside right\nset xlabel 'k'\n",
        agg.header
    );
    for (stem, _, label) in PLOT_METRICS {
        let log = if stem.starts_with("mse") || stem == "time" {
            "set logscale y\n"
        } else {
            "unset logscale y\n"
        };
        s.push_str(&format!(
            "\nset output '{stem}.png'\nset ylabel '{label}'\n{log}plot "
        ));
        let series: Vec<String> = agg
            .series
            .iter()
            .enumerate()
            .map(|(i, name)| {
                format!(
                    "'{stem}.dat' using 1:{} with linespoints title '{name}'",
                    i + 2
                )
            })
            .collect();
        s.push_str(&series.join(", \\\n     "));
        s.push('\n');
    }
    s
}
