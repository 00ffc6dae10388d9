//! Seeded random instances.
//!
//! Sites are uniform in a square box with the depot at its centre. Window
//! opens are uniform integers in `[0, floor(T/2)]`, closes uniform integers
//! in `[ceil(T/2), T]` and quantities uniform reals in `[q_lo, q_hi]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, MetricSpec, Point, Site};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub n: usize,
    pub horizon: u32,
    /// Side of the square box in km.
    pub box_km: f64,
    pub q_lo: f64,
    pub q_hi: f64,
    pub capacity: f64,
    pub speed: f64,
    pub seed: u64,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        GeneratorSpec {
            n: 10,
            horizon: 15,
            box_km: 20.0,
            q_lo: 20.0,
            q_hi: 200.0,
            capacity: 450.0,
            speed: 4.0,
            seed: 0,
        }
    }
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Parameter(msg));
        if self.n < 1 {
            return bad("generator needs n >= 1".into());
        }
        if self.horizon < 2 {
            return bad(format!("horizon must be at least 2, got {}", self.horizon));
        }
        if !(self.q_lo > 0.0 && self.q_hi >= self.q_lo && self.q_hi.is_finite()) {
            return bad(format!("quantity range [{}, {}] is invalid", self.q_lo, self.q_hi));
        }
        for (name, v) in [("box", self.box_km), ("capacity", self.capacity), ("speed", self.speed)] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        Ok(())
    }
}

pub fn generate_instance(spec: &GeneratorSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let t = spec.horizon;
    let sites = (0..spec.n)
        .map(|id| Site {
            id,
            x: rng.gen_range(0.0..=spec.box_km),
            y: rng.gen_range(0.0..=spec.box_km),
            quantity: rng.gen_range(spec.q_lo..=spec.q_hi),
            open: rng.gen_range(0..=t / 2),
            close: rng.gen_range(t.div_ceil(2)..=t),
        })
        .collect();
    let inst = Instance {
        name: format!("rand_n{}_t{}_s{}", spec.n, t, spec.seed),
        depot: Point::new(spec.box_km / 2.0, spec.box_km / 2.0),
        capacity: spec.capacity,
        speed: spec.speed,
        horizon: t,
        metric: MetricSpec::default(),
        sites,
    };
    inst.validate()
}
