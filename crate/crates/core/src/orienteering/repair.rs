use crate::problem::Problem;
use crate::solution::Route;

/// Removes late visits until none remain.
///
/// Arrivals are recomputed from the start; the first visit reached after its
/// window closes is dropped and its neighbours are joined directly. Under a
/// metric the splice cannot make later visits later, but the scan repeats to a
/// fixpoint regardless.
pub fn repair_route(route: &Route, problem: &Problem) -> Route {
    let mut visits = route.visits.clone();
    while let Some(&pos) = problem.schedule(&visits).late.first() {
        visits.remove(pos);
    }
    Route::new(problem, route.vehicle, visits)
}
