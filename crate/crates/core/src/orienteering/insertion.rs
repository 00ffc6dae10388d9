use super::{Anchor, OrienteeringQuery};
use crate::problem::Problem;
use crate::solution::Route;

/// Cheapest feasible insertion.
///
/// Starting from an empty loop, repeatedly inserts the site and position with
/// the largest positive `marginal revenue - added travel cost` that keeps
/// every visit on time. Ties go to the lower site id, then earlier position.
pub fn solve_insertion(query: &OrienteeringQuery<'_>) -> Route {
    let path = insertion_path(query.problem, &query.sites, Anchor::DEPOT);
    Route::new(query.problem, 0, path)
}

pub(crate) fn insertion_path(problem: &Problem, sites: &[usize], anchor: Anchor) -> Vec<usize> {
    let mut unrouted: Vec<usize> = sites.to_vec();
    unrouted.sort_unstable();
    let mut path: Vec<usize> = Vec::new();
    let mut load = anchor.load;
    let mut trial = Vec::with_capacity(sites.len());

    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for (u, &s) in unrouted.iter().enumerate() {
            let gain = problem.collected(load + problem.quantity(s)) - problem.collected(load);
            for pos in 0..=path.len() {
                let prev = if pos == 0 { anchor.site } else { Some(path[pos - 1]) };
                let next = path.get(pos).copied();
                let delta = problem.dist(prev, Some(s)) + problem.dist(Some(s), next)
                    - problem.dist(prev, next);
                let score = gain - delta;
                if score <= best.map_or(0.0, |b| b.0) {
                    continue;
                }
                trial.clear();
                trial.extend_from_slice(&path[..pos]);
                trial.push(s);
                trial.extend_from_slice(&path[pos..]);
                if anchor.feasible(problem, &trial) {
                    best = Some((score, u, pos));
                }
            }
        }
        let Some((_, u, pos)) = best else { break };
        let s = unrouted.remove(u);
        load += problem.quantity(s);
        path.insert(pos, s);
    }
    path
}
