//! GeoJSON export of an instance and its routes.
//!
//! The depot and each site become point features; each route becomes a line
//! string that starts and ends at the depot. Coordinates are written as
//! given in the instance.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::solution::{check_feasibility, Solution};

pub fn export_geojson(problem: &Problem, solution: &Solution) -> Result<String> {
    let violations = check_feasibility(problem, solution)?;
    if !violations.is_empty() {
        return Err(Error::Infeasible(violations));
    }
    let inst = problem.instance();
    let depot = [inst.depot.x, inst.depot.y];
    let mut features = vec![json!({
        "type": "Feature",
        "geometry": {"type": "Point", "coordinates": depot},
        "properties": {"kind": "depot"},
    })];
    for s in &inst.sites {
        features.push(json!({
            "type": "Feature",
            "geometry": {"type": "Point", "coordinates": [s.x, s.y]},
            "properties": {
                "kind": "site",
                "id": s.id,
                "quantity": s.quantity,
                "window": [s.open, s.close],
            },
        }));
    }
    for r in solution.routes.iter().filter(|r| !r.is_empty()) {
        let mut coords = vec![depot];
        coords.extend(r.visits.iter().map(|&v| {
            let s = problem.site(v);
            [s.x, s.y]
        }));
        coords.push(depot);
        features.push(json!({
            "type": "Feature",
            "geometry": {"type": "LineString", "coordinates": coords},
            "properties": {
                "kind": "route",
                "vehicle": r.vehicle,
                "visits": r.visits,
                "profit": r.profit(),
            },
        }));
    }
    let doc: Value = json!({"type": "FeatureCollection", "features": features});
    Ok(serde_json::to_string_pretty(&doc).expect("geojson serialization cannot fail"))
}
