//! Symmetric TSP instances.
//!
//! An [`Instance`] is an immutable cost oracle over `n` nodes. Random uniform
//! instances store the `n(n-1)/2` costs in a row-major upper-triangle array.
//! Geometric instances keep their points and either materialize the same
//! triangle (small `n`) or compute costs on demand (large `n`); both paths use
//! the same distance function, so they agree exactly.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::seeded;

/// Geometric instances with at most this many nodes get a materialized
/// cost triangle by default.
pub const DEFAULT_MATERIALIZE_LIMIT: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    ExplicitMatrix,
    Euclidean,
    TsplibEuc2d,
    TsplibCeil2d,
}

impl InstanceKind {
    pub fn is_geometric(self) -> bool {
        !matches!(self, InstanceKind::ExplicitMatrix)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn distance(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// Row-major strict upper triangle of a symmetric matrix with zero diagonal.
#[derive(Debug, Clone)]
struct Triangle {
    n: usize,
    // row_base[u] + v is the slot of (u, v) for u < v
    row_base: Vec<isize>,
    data: Vec<f64>,
}

impl Triangle {
    fn row_bases(n: usize) -> Vec<isize> {
        (0..n)
            .map(|u| (u * (2 * n - u - 1) / 2) as isize - u as isize - 1)
            .collect()
    }

    fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                data.push(f(u, v));
            }
        }
        Triangle {
            n,
            row_base: Self::row_bases(n),
            data,
        }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> f64 {
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        if lo == hi {
            return 0.0;
        }
        debug_assert!(hi < self.n);
        self.data[(self.row_base[lo] + hi as isize) as usize]
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    kind: InstanceKind,
    n: usize,
    name: Option<String>,
    points: Vec<Point>,
    matrix: Option<Triangle>,
}

impl Instance {
    /// Uniform random instance: every edge cost is an independent draw in
    /// `[0, 1)`, filled in row-major upper-triangle order.
    pub fn uniform(n: usize, seed: u64) -> Result<Self> {
        check_size(n)?;
        let mut rng = seeded(seed);
        let matrix = Triangle::from_fn(n, |_, _| rng.random::<f64>());
        Ok(Instance {
            kind: InstanceKind::ExplicitMatrix,
            n,
            name: None,
            points: Vec::new(),
            matrix: Some(matrix),
        })
    }

    /// `n` points drawn uniformly in the unit square, Euclidean costs.
    pub fn euclidean(n: usize, seed: u64) -> Result<Self> {
        check_size(n)?;
        let mut rng = seeded(seed);
        let points = (0..n)
            .map(|_| Point::new(rng.random::<f64>(), rng.random::<f64>()))
            .collect();
        Self::from_points(InstanceKind::Euclidean, points)
    }

    /// Geometric instance over the given points, using the default
    /// materialization limit.
    pub fn from_points(kind: InstanceKind, points: Vec<Point>) -> Result<Self> {
        Self::from_points_with_limit(kind, points, DEFAULT_MATERIALIZE_LIMIT)
    }

    /// Geometric instance that materializes its cost triangle only when
    /// `points.len() <= materialize_limit`.
    pub fn from_points_with_limit(
        kind: InstanceKind,
        points: Vec<Point>,
        materialize_limit: usize,
    ) -> Result<Self> {
        if !kind.is_geometric() {
            return Err(Error::Usage(
                "explicit-matrix instances cannot be built from points".into(),
            ));
        }
        let n = points.len();
        check_size(n)?;
        let mut inst = Instance {
            kind,
            n,
            name: None,
            points,
            matrix: None,
        };
        if n <= materialize_limit {
            let m = Triangle::from_fn(n, |u, v| inst.point_cost(u, v));
            inst.matrix = Some(m);
        }
        Ok(inst)
    }

    /// Explicit instance from a full symmetric matrix.
    pub fn from_matrix(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        check_size(n)?;
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Usage(format!(
                    "matrix row {u} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if row[u] != 0.0 {
                return Err(Error::Usage(format!(
                    "matrix diagonal entry {u} is not zero"
                )));
            }
            for v in 0..n {
                let c = row[v];
                if !(c >= 0.0) || !c.is_finite() {
                    return Err(Error::Usage(format!(
                        "cost ({u}, {v}) = {c} is not a finite non-negative value"
                    )));
                }
                if c != rows[v][u] {
                    return Err(Error::Usage(format!(
                        "matrix is not symmetric at ({u}, {v})"
                    )));
                }
            }
        }
        Ok(Instance {
            kind: InstanceKind::ExplicitMatrix,
            n,
            name: None,
            points: Vec::new(),
            matrix: Some(Triangle::from_fn(n, |u, v| rows[u][v])),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn kind(&self) -> InstanceKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coordinates of a geometric instance; empty for explicit matrices.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn is_materialized(&self) -> bool {
        self.matrix.is_some()
    }

    /// Cost of the edge `{u, v}`.
    ///
    /// Panics if either node is out of range.
    #[inline]
    pub fn cost(&self, u: usize, v: usize) -> f64 {
        assert!(u < self.n && v < self.n, "node out of range");
        match &self.matrix {
            Some(m) => m.get(u, v),
            None => self.point_cost(u, v),
        }
    }

    pub fn try_cost(&self, u: usize, v: usize) -> Result<f64> {
        for index in [u, v] {
            if index >= self.n {
                return Err(Error::NodeOutOfRange { index, n: self.n });
            }
        }
        Ok(self.cost(u, v))
    }

    #[inline]
    fn point_cost(&self, u: usize, v: usize) -> f64 {
        let d = self.points[u].distance(self.points[v]);
        match self.kind {
            InstanceKind::Euclidean => d,
            // TSPLIB nint(): nearest integer, halves rounded up
            InstanceKind::TsplibEuc2d => (d + 0.5).floor(),
            InstanceKind::TsplibCeil2d => d.ceil(),
            InstanceKind::ExplicitMatrix => {
                unreachable!("explicit instances are always materialized")
            }
        }
    }

    /// Writes every edge as a `u,v,cost` row with `u < v`.
    pub fn write_snapshot<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for u in 0..self.n {
            for v in u + 1..self.n {
                w.serialize(EdgeRow {
                    u,
                    v,
                    cost: self.cost(u, v),
                })?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn save_snapshot(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_snapshot(BufWriter::new(file))
            .map_err(|e| Error::csv(path, e))
    }

    /// Reads a `u,v,cost` snapshot into an explicit-matrix instance. Every
    /// unordered pair must appear exactly once.
    pub fn read_snapshot<R: Read>(input: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(input);
        let mut rows = Vec::new();
        for (k, rec) in rdr.deserialize::<EdgeRow>().enumerate() {
            let line = k + 2;
            let row = rec.map_err(|e| Error::parse(line, e.to_string()))?;
            if row.u == row.v {
                return Err(Error::parse(line, "self-loop in snapshot"));
            }
            if !(row.cost >= 0.0) || !row.cost.is_finite() {
                return Err(Error::parse(line, format!("invalid cost {}", row.cost)));
            }
            rows.push((line, row));
        }
        let n = rows
            .iter()
            .map(|(_, r)| r.u.max(r.v) + 1)
            .max()
            .unwrap_or(0);
        check_size(n)?;
        let expected = n * (n - 1) / 2;
        let mut full = vec![vec![0.0; n]; n];
        let mut seen = vec![vec![false; n]; n];
        for (line, r) in &rows {
            let (u, v) = (r.u.min(r.v), r.u.max(r.v));
            if seen[u][v] {
                return Err(Error::parse(*line, format!("duplicate edge ({u}, {v})")));
            }
            seen[u][v] = true;
            full[u][v] = r.cost;
            full[v][u] = r.cost;
        }
        if rows.len() != expected {
            return Err(Error::parse(
                rows.len() + 1,
                format!(
                    "snapshot has {} edges, expected {expected} for n = {n}",
                    rows.len()
                ),
            ));
        }
        Self::from_matrix(&full)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeRow {
    u: usize,
    v: usize,
    cost: f64,
}

pub(crate) fn check_size(n: usize) -> Result<()> {
    if n < 4 {
        Err(Error::InvalidSize(n))
    } else {
        Ok(())
    }
}

/// Minimum incident edge cost of every node.
///
/// Every edge satisfies `cost(u, v) >= (values[u] + values[v]) / 2`, which is
/// what makes the strengthened pivot key a valid pruning bound.
#[derive(Debug, Clone, PartialEq)]
pub struct CminTable {
    values: Vec<f64>,
}

impl CminTable {
    /// Θ(n²) scan over all edges.
    pub fn new(inst: &Instance) -> Self {
        let n = inst.n();
        let mut values = vec![f64::INFINITY; n];
        for u in 0..n {
            for v in u + 1..n {
                let c = inst.cost(u, v);
                if c < values[u] {
                    values[u] = c;
                }
                if c < values[v] {
                    values[v] = c;
                }
            }
        }
        CminTable { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, u: usize) -> f64 {
        self.values[u]
    }

    /// Strengthened key of the edge `{u, v}` given its cost.
    #[inline]
    pub fn reduced(&self, cost: f64, u: usize, v: usize) -> f64 {
        cost - (self.values[u] + self.values[v]) / 2.0
    }
}
