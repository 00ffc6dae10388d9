use crate::error::{Error, Result};
use crate::instance::{Instance, Site};
use crate::metric::{build_metric, node, DistanceMatrix, DEPOT};

/// Slack on time-window comparisons.
pub const TIME_TOL: f64 = 1e-9;

/// An instance together with its travel metric. Immutable once built.
#[derive(Debug, Clone)]
pub struct Problem {
    instance: Instance,
    metric: DistanceMatrix,
}

/// Service times along a visit sequence that starts at the depot at time 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    /// Service start at each visit, i.e. `max(open, arrival)`.
    pub service: Vec<f64>,
    /// Positions whose raw arrival is after the window close.
    pub late: Vec<usize>,
    /// Depot-to-depot travel cost.
    pub cost: f64,
}

impl Problem {
    pub fn new(instance: Instance) -> Result<Self> {
        let metric = build_metric(&instance)?;
        Ok(Problem { instance, metric })
    }

    pub fn with_metric(instance: Instance, metric: DistanceMatrix) -> Result<Self> {
        if metric.dim() != instance.len() + 1 {
            return Err(Error::Metric(format!(
                "metric has {} nodes, instance needs {}",
                metric.dim(),
                instance.len() + 1
            )));
        }
        Ok(Problem { instance, metric })
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn metric(&self) -> &DistanceMatrix {
        &self.metric
    }

    pub fn n(&self) -> usize {
        self.instance.len()
    }

    pub fn capacity(&self) -> f64 {
        self.instance.capacity
    }

    pub fn site(&self, id: usize) -> &Site {
        &self.instance.sites[id]
    }

    pub fn quantity(&self, id: usize) -> f64 {
        self.instance.sites[id].quantity
    }

    /// Quantity a vehicle actually carries home from sites totalling `load`.
    #[inline]
    pub fn collected(&self, load: f64) -> f64 {
        load.min(self.instance.capacity)
    }

    /// Distance between two sites, or a site and the depot when `None`.
    #[inline]
    pub fn dist(&self, a: Option<usize>, b: Option<usize>) -> f64 {
        self.metric
            .distance(a.map_or(DEPOT, node), b.map_or(DEPOT, node))
    }

    /// Raw arrival time at `to` when leaving `from` (`None` = depot) at `t`.
    #[inline]
    pub fn arrival(&self, from: Option<usize>, t: f64, to: usize) -> f64 {
        t + self.metric.time(from.map_or(DEPOT, node), node(to))
    }

    #[inline]
    pub fn is_late(&self, site: usize, arrival: f64) -> bool {
        arrival > self.instance.sites[site].close as f64 + TIME_TOL
    }

    #[inline]
    pub fn service_start(&self, site: usize, arrival: f64) -> f64 {
        arrival.max(self.instance.sites[site].open as f64)
    }

    pub fn schedule(&self, visits: &[usize]) -> Schedule {
        self.schedule_from(None, 0.0, visits)
    }

    /// Schedule for a path leaving `start` at time `t0` and ending at the depot.
    pub fn schedule_from(&self, start: Option<usize>, t0: f64, visits: &[usize]) -> Schedule {
        let mut service = Vec::with_capacity(visits.len());
        let mut late = Vec::new();
        let (mut prev, mut t, mut cost) = (start, t0, 0.0);
        for (pos, &site) in visits.iter().enumerate() {
            let a = self.arrival(prev, t, site);
            if self.is_late(site, a) {
                late.push(pos);
            }
            cost += self.dist(prev, Some(site));
            t = self.service_start(site, a);
            service.push(t);
            prev = Some(site);
        }
        cost += self.dist(prev, None);
        Schedule { service, late, cost }
    }

    pub fn load_of(&self, visits: &[usize]) -> f64 {
        visits.iter().map(|&s| self.quantity(s)).sum()
    }
}
