//! Problem instance model and the versioned JSON instance format.
//!
//! An instance is a depot, a list of supplier sites and a single vehicle
//! type. Time windows are integers in `[0, horizon]`; site `i` is stored at
//! position `i` after loading.

use std::collections::HashSet;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Site {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    /// Units of product available; unit price is 1.
    pub quantity: f64,
    /// Earliest service time `e_i`.
    pub open: u32,
    /// Latest service time `l_i`.
    pub close: u32,
}

impl Site {
    pub fn point(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MetricMode {
    /// Planar distances between `(x, y)` in km.
    #[default]
    Euclidean,
    /// Explicit `(n+1) x (n+1)` matrix, index 0 is the depot.
    Matrix,
    /// `(x, y)` read as (longitude, latitude) degrees on a 6371 km sphere.
    Haversine,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct MetricSpec {
    pub mode: MetricMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub name: String,
    pub depot: Point,
    /// Vehicle capacity `Q`.
    pub capacity: f64,
    /// Vehicle speed in km per time unit.
    pub speed: f64,
    /// Horizon `T`; every window closes at or before it.
    pub horizon: u32,
    pub metric: MetricSpec,
    pub sites: Vec<Site>,
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    version: u32,
    name: String,
    depot: Point,
    capacity: f64,
    speed: f64,
    horizon: u32,
    #[serde(default)]
    metric: MetricSpec,
    sites: Vec<Site>,
}

impl Instance {
    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn total_quantity(&self) -> f64 {
        self.sites.iter().map(|s| s.quantity).sum()
    }

    pub fn site(&self, id: usize) -> Result<&Site> {
        self.sites.get(id).ok_or(Error::UnknownSite(id))
    }

    /// Checks every data invariant and puts sites in id order.
    pub fn validate(mut self) -> Result<Self> {
        let bad = |msg: String| Err(Error::Validation(msg));
        if !(self.capacity.is_finite() && self.capacity > 0.0) {
            return bad(format!("capacity must be positive, got {}", self.capacity));
        }
        if !(self.speed.is_finite() && self.speed > 0.0) {
            return bad(format!("speed must be positive, got {}", self.speed));
        }
        if self.horizon == 0 {
            return bad("horizon must be a positive integer".into());
        }
        if !(self.depot.x.is_finite() && self.depot.y.is_finite()) {
            return bad("depot coordinates must be finite".into());
        }

        let mut seen = HashSet::with_capacity(self.sites.len());
        for s in &self.sites {
            if !seen.insert(s.id) {
                return bad(format!("duplicate site id {}", s.id));
            }
            if s.id >= self.sites.len() {
                return bad(format!(
                    "site id {} out of range, ids must be 0..{}",
                    s.id,
                    self.sites.len()
                ));
            }
            if !(s.x.is_finite() && s.y.is_finite()) {
                return bad(format!("site {} has non-finite coordinates", s.id));
            }
            if !(s.quantity.is_finite() && s.quantity >= 0.0) {
                return bad(format!("site {} has invalid quantity {}", s.id, s.quantity));
            }
            if s.open > s.close {
                return bad(format!(
                    "site {} window opens at {} after it closes at {}",
                    s.id, s.open, s.close
                ));
            }
            if s.close > self.horizon {
                return bad(format!(
                    "site {} window closes at {} after horizon {}",
                    s.id, s.close, self.horizon
                ));
            }
        }
        self.sites.sort_by_key(|s| s.id);

        match self.metric.mode {
            MetricMode::Matrix => {
                let dim = self.sites.len() + 1;
                match &self.metric.matrix {
                    None => return bad("metric mode 'matrix' requires a matrix".into()),
                    Some(m) if m.len() != dim || m.iter().any(|row| row.len() != dim) => {
                        return bad(format!("distance matrix must be {dim}x{dim}"));
                    }
                    Some(_) => {}
                }
            }
            MetricMode::Haversine => {
                let lat_ok = |y: f64| (-90.0..=90.0).contains(&y);
                if !lat_ok(self.depot.y) || self.sites.iter().any(|s| !lat_ok(s.y)) {
                    return bad("haversine latitudes (y) must lie in [-90, 90]".into());
                }
            }
            MetricMode::Euclidean => {}
        }
        Ok(self)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        Self::from_file(file)
    }

    fn from_file(file: InstanceFile) -> Result<Self> {
        if file.version != FORMAT_VERSION {
            return Err(Error::Validation(format!(
                "unsupported instance format version {}",
                file.version
            )));
        }
        Instance {
            name: file.name,
            depot: file.depot,
            capacity: file.capacity,
            speed: file.speed,
            horizon: file.horizon,
            metric: file.metric,
            sites: file.sites,
        }
        .validate()
    }

    pub fn to_json_string(&self) -> String {
        let file = InstanceFile {
            version: FORMAT_VERSION,
            name: self.name.clone(),
            depot: self.depot,
            capacity: self.capacity,
            speed: self.speed,
            horizon: self.horizon,
            metric: self.metric.clone(),
            sites: self.sites.clone(),
        };
        serde_json::to_string_pretty(&file).expect("instance serialization cannot fail")
    }
}

/// Reads and validates an instance document.
pub fn load_instance<R: Read>(mut source: R) -> Result<Instance> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    Instance::from_json_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "version": 1, "name": "one", "depot": {"x": 0, "y": 0},
        "capacity": 10, "speed": 1, "horizon": 10,
        "metric": {"mode": "euclidean"},
        "sites": [{"id": 0, "x": 1, "y": 0, "quantity": 5, "open": 0, "close": 10}]
    }"#;

    #[test]
    fn loads_minimal_file() {
        let inst = load_instance(MINIMAL.as_bytes()).unwrap();
        assert_eq!(inst.len(), 1);
        assert_eq!(inst.sites[0].quantity, 5.0);
        assert_eq!(inst.metric.mode, MetricMode::Euclidean);
    }

    #[test]
    fn rejects_close_after_horizon() {
        let text = MINIMAL.replace(r#""close": 10"#, r#""close": 11"#);
        assert!(matches!(
            load_instance(text.as_bytes()),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn rejects_inverted_window_and_bad_capacity() {
        let text = MINIMAL.replace(r#""open": 0"#, r#""open": 7"#).replace(r#""close": 10"#, r#""close": 3"#);
        assert!(matches!(load_instance(text.as_bytes()), Err(Error::Validation(_))));
        let text = MINIMAL.replace(r#""capacity": 10"#, r#""capacity": 0"#);
        assert!(matches!(load_instance(text.as_bytes()), Err(Error::Validation(_))));
    }

    #[test]
    fn rejects_duplicate_ids() {
        let text = MINIMAL.replace(
            r#""sites": ["#,
            r#""sites": [{"id": 0, "x": 2, "y": 0, "quantity": 1, "open": 0, "close": 1},"#,
        );
        assert!(matches!(load_instance(text.as_bytes()), Err(Error::Validation(_))));
    }

    #[test]
    fn malformed_is_parse_error() {
        assert!(matches!(load_instance(&b"{not json"[..]), Err(Error::Parse(_))));
        let text = MINIMAL.replace(r#""version": 1"#, r#""version": 2"#);
        assert!(matches!(load_instance(text.as_bytes()), Err(Error::Validation(_))));
    }

    #[test]
    fn sites_are_reordered_by_id() {
        let text = MINIMAL.replace(
            r#""sites": [{"id": 0"#,
            r#""sites": [{"id": 1, "x": 2, "y": 0, "quantity": 1, "open": 0, "close": 1}, {"id": 0"#,
        );
        let inst = load_instance(text.as_bytes()).unwrap();
        assert_eq!(inst.sites[0].id, 0);
        assert_eq!(inst.sites[1].id, 1);
    }

    #[test]
    fn matrix_mode_needs_matrix_of_right_shape() {
        let text = MINIMAL.replace(r#""mode": "euclidean""#, r#""mode": "matrix""#);
        assert!(load_instance(text.as_bytes()).is_err());
        let text = MINIMAL.replace(
            r#""mode": "euclidean""#,
            r#""mode": "matrix", "matrix": [[0, 7], [7, 0]]"#,
        );
        assert!(load_instance(text.as_bytes()).is_ok());
    }
}
