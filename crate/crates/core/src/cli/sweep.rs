//! Parameter grids and their parallel evaluation.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::eval::Target;
use super::params::{is_known, Params};

/// One sweep axis. Several keys may move together, e.g. `gnb+ue=4+4,64+16`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axis {
    pub keys: Vec<String>,
    pub values: Vec<Vec<String>>,
}

impl Axis {
    pub fn new(keys: &[&str], values: &[&str]) -> Result<Self> {
        let spec = format!("{}={}", keys.join("+"), values.join(","));
        let keys: Vec<String> = keys.iter().map(|k| k.to_string()).collect();
        for k in &keys {
            if !is_known(k) {
                return Err(Error::validation("axis", format!("unknown parameter {k} in {spec}")));
            }
        }
        if values.is_empty() {
            return Err(Error::validation("axis", format!("{spec} has no values")));
        }
        let values = values
            .iter()
            .map(|v| {
                let parts: Vec<String> = v.split('+').map(|s| s.trim().to_string()).collect();
                if parts.len() == keys.len() {
                    Ok(parts)
                } else {
                    Err(Error::validation(
                        "axis",
                        format!("value {v} does not match the {} keys of {spec}", keys.len()),
                    ))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Axis { keys, values })
    }

    /// Parses `key=v1,v2,...` or `k1+k2=a1+a2,b1+b2`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (keys, values) = spec
            .split_once('=')
            .ok_or_else(|| Error::validation("axis", format!("expected key=v1,v2,... (got {spec})")))?;
        let keys: Vec<&str> = keys.split('+').map(str::trim).collect();
        let values: Vec<&str> = values.split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
        Axis::new(&keys, &values)
    }
}

/// A target evaluated over the cartesian product of its axes.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub target: Target,
    pub base: Params,
    pub axes: Vec<Axis>,
}

/// CSV-ready result table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io {
            path: "csv output".into(),
            source: std::io::Error::other(e),
        };
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        w.flush().map_err(|source| Error::Io {
            path: "csv output".into(),
            source,
        })
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("CSV of UTF-8 cells"))
    }

    /// Cell of `row` under column `name`.
    pub fn cell(&self, row: usize, name: &str) -> Option<&str> {
        let col = self.header.iter().position(|h| h == name)?;
        self.rows.get(row).map(|r| r[col].as_str())
    }
}

impl SweepSpec {
    pub fn size(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    /// Axis keys that are not already echoed as target inputs.
    fn extra_columns(&self) -> Vec<String> {
        let inputs = self.target.inputs();
        let mut extra: Vec<String> = Vec::new();
        for k in self.axes.iter().flat_map(|a| a.keys.iter()) {
            if !inputs.contains(&k.as_str()) && !extra.contains(k) {
                extra.push(k.clone());
            }
        }
        extra
    }

    pub fn header(&self) -> Vec<String> {
        self.extra_columns()
            .into_iter()
            .chain(self.target.inputs().iter().map(|s| s.to_string()))
            .chain(self.target.metrics().iter().map(|s| s.to_string()))
            .collect()
    }

    /// Grid points in row-major order (first axis outermost).
    pub fn points(&self) -> Result<Vec<Params>> {
        let mut points = vec![self.base.clone()];
        for axis in &self.axes {
            let mut next = Vec::with_capacity(points.len() * axis.values.len());
            for p in &points {
                for values in &axis.values {
                    let mut q = p.clone();
                    for (k, v) in axis.keys.iter().zip(values) {
                        q.set(k, v)?;
                    }
                    next.push(q);
                }
            }
            points = next;
        }
        Ok(points)
    }

    /// Evaluates every grid point on a pool of `threads` workers (0 = default).
    /// Rows come back in grid order whatever the scheduling.
    pub fn run(&self, threads: usize) -> Result<Table> {
        let points = self.points()?;
        let extra = self.extra_columns();
        let target = self.target;
        let eval = |p: &Params| -> Result<Vec<String>> {
            let metrics = target.evaluate(p, threads)?;
            Ok(extra
                .iter()
                .map(|k| p.get(k))
                .chain(target.inputs().iter().map(|k| p.get(k)))
                .chain(metrics)
                .collect())
        };
        // Monte Carlo points parallelise internally.
        let rows: Vec<Result<Vec<String>>> = if target.is_monte_carlo() {
            points.iter().map(eval).collect()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Undefined(format!("cannot start worker pool: {e}")))?;
            pool.install(|| points.par_iter().map(eval).collect())
        };
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                r.map_err(|e| match e {
                    Error::Undefined(m) => Error::Undefined(format!("grid point {i}: {m}")),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Table {
            header: self.header(),
            rows,
        })
    }
}
