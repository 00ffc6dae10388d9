use super::EXACT_DP_MAX_SITES;
use crate::problem::Problem;

/// Whether one loop can visit every site in `sites` on time.
///
/// Exact (earliest service time per visited set and last site) up to
/// `exact_limit` sites; above that an earliest-deadline insertion heuristic,
/// which may report `false` for a feasible set.
pub fn visits_all_on_time(problem: &Problem, sites: &[usize], exact_limit: usize) -> bool {
    if sites.is_empty() {
        return true;
    }
    if sites.len() <= exact_limit.min(EXACT_DP_MAX_SITES) {
        earliest_completion(problem, sites).is_some()
    } else {
        deadline_insertion(problem, sites)
    }
}

fn earliest_completion(problem: &Problem, sites: &[usize]) -> Option<f64> {
    let k = sites.len();
    let full = 1usize << k;
    let mut best = vec![f64::INFINITY; full * k];
    for (j, &s) in sites.iter().enumerate() {
        let a = problem.arrival(None, 0.0, s);
        if !problem.is_late(s, a) {
            best[(1 << j) * k + j] = problem.service_start(s, a);
        }
    }
    for mask in 1..full {
        for last in 0..k {
            let t = best[mask * k + last];
            if !t.is_finite() {
                continue;
            }
            for j in 0..k {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let a = problem.arrival(Some(sites[last]), t, sites[j]);
                if problem.is_late(sites[j], a) {
                    continue;
                }
                let slot = &mut best[(mask | (1 << j)) * k + j];
                *slot = slot.min(problem.service_start(sites[j], a));
            }
        }
    }
    best[(full - 1) * k..].iter().copied().reduce(f64::min).filter(|t| t.is_finite())
}

fn deadline_insertion(problem: &Problem, sites: &[usize]) -> bool {
    let mut order = sites.to_vec();
    order.sort_by_key(|&s| (problem.site(s).close, problem.site(s).open, s));
    if problem.schedule(&order).late.is_empty() {
        return true;
    }
    let mut path: Vec<usize> = Vec::with_capacity(order.len());
    for s in order {
        let mut best: Option<(f64, usize)> = None;
        for pos in 0..=path.len() {
            path.insert(pos, s);
            let sched = problem.schedule(&path);
            if sched.late.is_empty() {
                let finish = *sched.service.last().expect("nonempty");
                if best.map_or(true, |b| finish < b.0) {
                    best = Some((finish, pos));
                }
            }
            path.remove(pos);
        }
        match best {
            Some((_, pos)) => path.insert(pos, s),
            None => return false,
        }
    }
    true
}
