//! Complete-graph travel distances between the depot and all sites.
//!
//! Node 0 is the depot and site `i` is node `i + 1`. Travel cost equals
//! distance; travel time is distance divided by vehicle speed.

use std::fmt;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, MetricMode, Point};

pub const DEPOT: usize = 0;
pub const EARTH_RADIUS_KM: f64 = 6371.0;
/// Slack allowed on symmetry and triangle checks.
pub const METRIC_TOL: f64 = 1e-9;

/// Matrix node index of a site id.
#[inline]
pub fn node(site: usize) -> usize {
    site + 1
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    dim: usize,
    data: Vec<f64>,
    speed: f64,
}

impl DistanceMatrix {
    /// Wraps rows as-is; call [`DistanceMatrix::check`] to verify metric properties.
    pub fn from_rows(rows: &[Vec<f64>], speed: f64) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Metric(format!("matrix is not square ({dim} rows)")));
        }
        Ok(DistanceMatrix {
            dim,
            data: rows.iter().flatten().copied().collect(),
            speed,
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// Number of nodes, depot included.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn cost(&self, i: usize, j: usize) -> f64 {
        self.distance(i, j)
    }

    #[inline]
    pub fn time(&self, i: usize, j: usize) -> f64 {
        self.distance(i, j) / self.speed
    }

    fn set_sym(&mut self, i: usize, j: usize, d: f64) {
        self.data[i * self.dim + j] = d;
        self.data[j * self.dim + i] = d;
    }

    /// Verifies zero diagonal, symmetry, nonnegativity and the triangle inequality.
    pub fn check(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            if self.distance(i, i) != 0.0 {
                return Err(Error::Metric(format!(
                    "nonzero diagonal entry at {}",
                    NodeName(i)
                )));
            }
            for j in 0..n {
                let d = self.distance(i, j);
                if !(d.is_finite() && d >= 0.0) {
                    return Err(Error::Metric(format!(
                        "invalid distance {d} between {} and {}",
                        NodeName(i),
                        NodeName(j)
                    )));
                }
                if (d - self.distance(j, i)).abs() > METRIC_TOL {
                    return Err(Error::Metric(format!(
                        "asymmetric distance between {} and {}",
                        NodeName(i),
                        NodeName(j)
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.distance(i, j) > self.distance(i, k) + self.distance(k, j) + METRIC_TOL {
                        return Err(Error::Metric(format!(
                            "triangle inequality violated: d({a},{b}) > d({a},{c}) + d({c},{b})",
                            a = NodeName(i),
                            b = NodeName(j),
                            c = NodeName(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Floyd-Warshall closure; unknown entries are `f64::INFINITY`.
    pub fn shortest_path_closure(&mut self) {
        let n = self.dim;
        for k in 0..n {
            for i in 0..n {
                let dik = self.distance(i, k);
                if !dik.is_finite() {
                    continue;
                }
                for j in 0..n {
                    let via = dik + self.distance(k, j);
                    if via < self.distance(i, j) {
                        self.data[i * n + j] = via;
                    }
                }
            }
        }
    }
}

struct NodeName(usize);

impl fmt::Display for NodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            DEPOT => write!(f, "depot"),
            n => write!(f, "site {}", n - 1),
        }
    }
}

pub fn haversine_km(a: &Point, b: &Point) -> f64 {
    let (lat1, lat2) = (a.y.to_radians(), b.y.to_radians());
    let dlat = lat2 - lat1;
    let dlon = (b.x - a.x).to_radians();
    let h = (dlat / 2.0).sin().powi(2) + lat1.cos() * lat2.cos() * (dlon / 2.0).sin().powi(2);
    2.0 * EARTH_RADIUS_KM * h.sqrt().min(1.0).asin()
}

fn node_points(inst: &Instance) -> Vec<Point> {
    std::iter::once(inst.depot)
        .chain(inst.sites.iter().map(|s| s.point()))
        .collect()
}

pub fn build_metric(inst: &Instance) -> Result<DistanceMatrix> {
    let points = node_points(inst);
    let dim = points.len();
    let from_fn = |f: &dyn Fn(&Point, &Point) -> f64| {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                let d = f(&points[i], &points[j]);
                data[i * dim + j] = d;
                data[j * dim + i] = d;
            }
        }
        DistanceMatrix {
            dim,
            data,
            speed: inst.speed,
        }
    };
    match inst.metric.mode {
        MetricMode::Euclidean => Ok(from_fn(&|a, b| a.distance(b))),
        MetricMode::Haversine => Ok(from_fn(&haversine_km)),
        MetricMode::Matrix => {
            let rows = inst
                .metric
                .matrix
                .as_ref()
                .ok_or_else(|| Error::Metric("matrix mode without a matrix".into()))?;
            if rows.len() != dim {
                return Err(Error::Metric(format!(
                    "matrix has {} rows, expected {dim}",
                    rows.len()
                )));
            }
            let m = DistanceMatrix::from_rows(rows, inst.speed)?;
            m.check()?;
            Ok(m)
        }
    }
}

/// Either a site id or the string `"depot"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeKey {
    Site(usize),
    Named(String),
}

impl NodeKey {
    fn resolve(&self, n_sites: usize) -> Result<usize> {
        match self {
            NodeKey::Site(id) if *id < n_sites => Ok(node(*id)),
            NodeKey::Site(id) => Err(Error::UnknownSite(*id)),
            NodeKey::Named(s) if s.eq_ignore_ascii_case("depot") => Ok(DEPOT),
            NodeKey::Named(s) => Err(Error::Validation(format!("unknown node '{s}' in cache"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub from: NodeKey,
    pub to: NodeKey,
    pub distance_km: f64,
    /// Recorded for reference only; travel time is always distance / speed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_min: Option<f64>,
}

/// Builds a metric from an offline directions cache.
///
/// Directed entries are symmetrised by taking the shorter direction, gaps are
/// filled by shortest paths over the known entries, and the whole matrix is
/// replaced by its shortest-path closure so the triangle inequality holds.
pub fn import_directions_cache<R: Read>(mut source: R, inst: &Instance) -> Result<DistanceMatrix> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    let entries: Vec<CacheEntry> = serde_json::from_str(&text)?;
    matrix_from_cache(&entries, inst)
}

pub fn matrix_from_cache(entries: &[CacheEntry], inst: &Instance) -> Result<DistanceMatrix> {
    let dim = inst.len() + 1;
    let mut m = DistanceMatrix {
        dim,
        data: vec![f64::INFINITY; dim * dim],
        speed: inst.speed,
    };
    for i in 0..dim {
        m.data[i * dim + i] = 0.0;
    }
    for e in entries {
        let (i, j) = (e.from.resolve(inst.len())?, e.to.resolve(inst.len())?);
        if !(e.distance_km.is_finite() && e.distance_km >= 0.0) {
            return Err(Error::Validation(format!(
                "invalid cached distance {} between {} and {}",
                e.distance_km,
                NodeName(i),
                NodeName(j)
            )));
        }
        if i != j && e.distance_km < m.distance(i, j) {
            m.set_sym(i, j, e.distance_km);
        }
    }
    m.shortest_path_closure();
    for i in 0..dim {
        for j in (i + 1)..dim {
            if !m.distance(i, j).is_finite() {
                return Err(Error::IncompleteCache {
                    from: NodeName(i).to_string(),
                    to: NodeName(j).to_string(),
                });
            }
        }
    }
    Ok(m)
}
