//! Split trees and well-separated pair decompositions of planar point sets.
//!
//! A node's enclosing ball is the circumscribed ball of its tight bounding
//! box. Two nodes `A`, `B` are `s`-separated when
//! `|c_A - c_B| - r_A - r_B >= s * max(2 r_A, 2 r_B)`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instance::Point;

pub const MIN_SEPARATION: f64 = 0.1;
pub const MAX_SEPARATION: f64 = 64.0;
const CALIBRATION_STEPS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub min: Point,
    pub max: Point,
}

impl BoundingBox {
    fn of(points: &[Point], ids: &[usize]) -> Self {
        let mut b = BoundingBox {
            min: Point::new(f64::INFINITY, f64::INFINITY),
            max: Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        };
        for &i in ids {
            let p = points[i];
            b.min.x = b.min.x.min(p.x);
            b.min.y = b.min.y.min(p.y);
            b.max.x = b.max.x.max(p.x);
            b.max.y = b.max.y.max(p.y);
        }
        b
    }

    pub fn center(&self) -> Point {
        Point::new((self.min.x + self.max.x) / 2.0, (self.min.y + self.max.y) / 2.0)
    }

    pub fn radius(&self) -> f64 {
        self.min.distance(&self.max) / 2.0
    }

    fn side(&self, axis: usize) -> f64 {
        if axis == 0 {
            self.max.x - self.min.x
        } else {
            self.max.y - self.min.y
        }
    }
}

fn coord_of(p: Point, axis: usize) -> f64 {
    if axis == 0 {
        p.x
    } else {
        p.y
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitNode {
    pub points: Vec<usize>,
    pub bbox: BoundingBox,
    pub children: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitTree {
    pub nodes: Vec<SplitNode>,
    pub root: usize,
}

/// Builds the fair split tree: each internal node halves its longest box
/// side (x on ties). A box with no extent is split by index parity.
pub fn build_split_tree(points: &[Point]) -> Result<SplitTree> {
    if points.is_empty() {
        return Err(Error::Parameter("split tree needs at least one point".into()));
    }
    if points.iter().any(|p| !(p.x.is_finite() && p.y.is_finite())) {
        return Err(Error::Parameter("split tree points must be finite".into()));
    }
    let mut nodes = Vec::with_capacity(2 * points.len() - 1);
    let root = grow(points, (0..points.len()).collect(), &mut nodes);
    Ok(SplitTree { nodes, root })
}

fn grow(points: &[Point], ids: Vec<usize>, nodes: &mut Vec<SplitNode>) -> usize {
    let bbox = BoundingBox::of(points, &ids);
    let children = if ids.len() == 1 {
        None
    } else {
        let axis = if bbox.side(1) > bbox.side(0) { 1 } else { 0 };
        let (left, right): (Vec<usize>, Vec<usize>) = if bbox.side(axis) > 0.0 {
            let coord = |i: usize| coord_of(points[i], axis);
            let mid = coord_of(bbox.center(), axis);
            ids.iter().partition(|&&i| coord(i) < mid)
        } else {
            let (even, odd): (Vec<_>, Vec<_>) = ids.iter().enumerate().partition(|(k, _)| k % 2 == 0);
            (even.into_iter().map(|(_, &i)| i).collect(), odd.into_iter().map(|(_, &i)| i).collect())
        };
        let l = grow(points, left, nodes);
        let r = grow(points, right, nodes);
        Some((l, r))
    };
    nodes.push(SplitNode {
        points: ids,
        bbox,
        children,
    });
    nodes.len() - 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WspdPair {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl WspdPair {
    pub fn len(&self) -> usize {
        self.a.len() + self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The separation test on two bounding boxes.
pub fn boxes_separated(a: &BoundingBox, b: &BoundingBox, s: f64) -> bool {
    let (ra, rb) = (a.radius(), b.radius());
    a.center().distance(&b.center()) - ra - rb >= s * (2.0 * ra).max(2.0 * rb)
}

/// Callahan-Kosaraju pairing over the split tree.
pub fn compute_wspd(tree: &SplitTree, s: f64) -> Result<Vec<WspdPair>> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::Parameter(format!("separation must be positive, got {s}")));
    }
    let mut out = Vec::new();
    visit(tree, tree.root, s, &mut out);
    Ok(out)
}

fn visit(tree: &SplitTree, u: usize, s: f64, out: &mut Vec<WspdPair>) {
    if let Some((l, r)) = tree.nodes[u].children {
        visit(tree, l, s, out);
        visit(tree, r, s, out);
        find_pairs(tree, l, r, s, out);
    }
}

fn find_pairs(tree: &SplitTree, v: usize, w: usize, s: f64, out: &mut Vec<WspdPair>) {
    let (nv, nw) = (&tree.nodes[v], &tree.nodes[w]);
    if boxes_separated(&nv.bbox, &nw.bbox, s) {
        out.push(WspdPair {
            a: nv.points.clone(),
            b: nw.points.clone(),
        });
        return;
    }
    // a node with zero radius is always separated from another of zero
    // radius, so the larger one here is internal
    if nv.bbox.radius() >= nw.bbox.radius() {
        let (l, r) = nv.children.expect("positive radius implies internal node");
        find_pairs(tree, l, w, s, out);
        find_pairs(tree, r, w, s, out);
    } else {
        let (l, r) = nw.children.expect("positive radius implies internal node");
        find_pairs(tree, v, l, s, out);
        find_pairs(tree, v, r, s, out);
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub s: f64,
    pub pairs: usize,
    /// Even the smallest separation produced more than the target.
    pub clamped: bool,
}

/// Largest `s` in `[0.1, 64]` whose decomposition has at most `target_m`
/// pairs, found by bisection.
pub fn calibrate_separation(points: &[Point], target_m: usize) -> Result<Calibration> {
    if target_m < 1 {
        return Err(Error::Parameter("target pair count must be at least 1".into()));
    }
    let tree = build_split_tree(points)?;
    let count = |s: f64| compute_wspd(&tree, s).map(|p| p.len());

    let top = count(MAX_SEPARATION)?;
    if top <= target_m {
        return Ok(Calibration {
            s: MAX_SEPARATION,
            pairs: top,
            clamped: false,
        });
    }
    let bottom = count(MIN_SEPARATION)?;
    if bottom > target_m {
        return Ok(Calibration {
            s: MIN_SEPARATION,
            pairs: bottom,
            clamped: true,
        });
    }
    let (mut lo, mut lo_pairs, mut hi) = (MIN_SEPARATION, bottom, MAX_SEPARATION);
    for _ in 0..CALIBRATION_STEPS {
        let mid = (lo + hi) / 2.0;
        let c = count(mid)?;
        if c <= target_m {
            lo = mid;
            lo_pairs = c;
        } else {
            hi = mid;
        }
    }
    Ok(Calibration {
        s: lo,
        pairs: lo_pairs,
        clamped: false,
    })
}

/// Plain-text listing of a decomposition, one pair per line.
pub fn render_pairs(pairs: &[WspdPair], s: f64) -> String {
    let mut out = format!("# wspd s={s} pairs={}\n", pairs.len());
    for (k, p) in pairs.iter().enumerate() {
        let _ = writeln!(out, "{k}\tA={:?}\tB={:?}", p.a, p.b);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn line(xs: &[f64]) -> Vec<Point> {
        xs.iter().map(|&x| Point::new(x, 0.0)).collect()
    }

    /// Every unordered pair covered once, every pair separated, with boxes
    /// recomputed from scratch.
    fn verify(points: &[Point], pairs: &[WspdPair], s: f64) -> std::result::Result<(), String> {
        let n = points.len();
        let mut cover = vec![vec![0u32; n]; n];
        for (k, p) in pairs.iter().enumerate() {
            if p.a.iter().any(|x| p.b.contains(x)) {
                return Err(format!("pair {k} sides overlap"));
            }
            for &u in &p.a {
                for &v in &p.b {
                    cover[u.min(v)][u.max(v)] += 1;
                }
            }
            let (ba, bb) = (BoundingBox::of(points, &p.a), BoundingBox::of(points, &p.b));
            let (ca, cb) = (ba.center(), bb.center());
            let (ra, rb) = (ba.radius(), bb.radius());
            let gap = ((ca.x - cb.x).powi(2) + (ca.y - cb.y).powi(2)).sqrt() - ra - rb;
            if gap < s * 2.0 * ra.max(rb) - 1e-9 {
                return Err(format!("pair {k} not separated"));
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                if cover[u][v] != 1 {
                    return Err(format!("({u},{v}) covered {} times", cover[u][v]));
                }
            }
        }
        Ok(())
    }

    #[test]
    fn single_point_is_a_leaf() {
        let t = build_split_tree(&line(&[3.0])).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert!(compute_wspd(&t, 2.0).unwrap().is_empty());
        assert!(build_split_tree(&[]).is_err());
    }

    #[test]
    fn two_points_give_one_pair() {
        let t = build_split_tree(&line(&[0.0, 1.0])).unwrap();
        assert_eq!(t.nodes[t.root].children.map(|_| ()), Some(()));
        for s in [0.5, 2.0, 60.0] {
            assert_eq!(
                compute_wspd(&t, s).unwrap(),
                vec![WspdPair {
                    a: vec![0],
                    b: vec![1]
                }]
            );
        }
    }

    #[test]
    fn three_points_on_a_line() {
        let pts = line(&[0.0, 1.0, 100.0]);
        let t = build_split_tree(&pts).unwrap();
        let pairs = compute_wspd(&t, 2.0).unwrap();
        assert_eq!(
            pairs,
            vec![
                WspdPair {
                    a: vec![0],
                    b: vec![1]
                },
                WspdPair {
                    a: vec![0, 1],
                    b: vec![2]
                },
            ]
        );
        verify(&pts, &pairs, 2.0).unwrap();
    }

    #[test]
    fn coincident_points_split_by_parity() {
        let pts = vec![Point::new(1.0, 1.0); 5];
        let t = build_split_tree(&pts).unwrap();
        let root = &t.nodes[t.root];
        let (l, r) = root.children.unwrap();
        assert_eq!(t.nodes[l].points, vec![0, 2, 4]);
        assert_eq!(t.nodes[r].points, vec![1, 3]);
        verify(&pts, &compute_wspd(&t, 5.0).unwrap(), 5.0).unwrap();
    }

    #[test]
    fn children_partition_parent() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(4);
        let pts: Vec<Point> = (0..50)
            .map(|_| Point::new(rand::Rng::gen_range(&mut rng, 0.0..10.0), rand::Rng::gen_range(&mut rng, 0.0..3.0)))
            .collect();
        let t = build_split_tree(&pts).unwrap();
        assert_eq!(t.nodes.len(), 99);
        for node in &t.nodes {
            match node.children {
                None => assert_eq!(node.points.len(), 1),
                Some((l, r)) => {
                    let mut both = [t.nodes[l].points.clone(), t.nodes[r].points.clone()].concat();
                    both.sort_unstable();
                    let mut own = node.points.clone();
                    own.sort_unstable();
                    assert_eq!(both, own);
                    assert!(!t.nodes[l].points.is_empty() && !t.nodes[r].points.is_empty());
                }
            }
        }
    }

    #[test]
    fn calibration_limits() {
        let two = line(&[0.0, 5.0]);
        let c = calibrate_separation(&two, 1).unwrap();
        assert_eq!((c.s, c.pairs, c.clamped), (MAX_SEPARATION, 1, false));
        assert!(calibrate_separation(&two, 0).is_err());

        let pts: Vec<Point> = (0..12).map(|i| Point::new((i * i) as f64, (i % 3) as f64)).collect();
        let all = 12 * 11 / 2;
        assert_eq!(calibrate_separation(&pts, all).unwrap().s, MAX_SEPARATION);
        let c = calibrate_separation(&pts, 1).unwrap();
        assert!(c.clamped && c.s == MIN_SEPARATION && c.pairs > 1);
    }

    #[test]
    fn calibration_lands_between_jumps() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(8);
        let pts: Vec<Point> = (0..20)
            .map(|k| {
                let (cx, cy) = [(0.0, 0.0), (50.0, 0.0), (0.0, 50.0), (50.0, 50.0)][k % 4];
                Point::new(cx + rand::Rng::gen_range(&mut rng, 0.0..2.0), cy + rand::Rng::gen_range(&mut rng, 0.0..2.0))
            })
            .collect();
        let tree = build_split_tree(&pts).unwrap();
        let count = |s: f64| compute_wspd(&tree, s).unwrap().len();
        for target in [count(1.0), count(3.0), count(5.0)] {
            let c = calibrate_separation(&pts, target).unwrap();
            assert!(c.pairs <= target);
            assert_eq!(count(c.s), c.pairs);
            if c.s < MAX_SEPARATION {
                assert!(count(c.s + 1e-6) > target);
            }
        }
    }

    #[test]
    fn render_lists_every_pair() {
        let pts = line(&[0.0, 1.0, 100.0]);
        let pairs = compute_wspd(&build_split_tree(&pts).unwrap(), 2.0).unwrap();
        let text = render_pairs(&pairs, 2.0);
        assert_eq!(text, "# wspd s=2 pairs=2\n0\tA=[0]\tB=[1]\n1\tA=[0, 1]\tB=[2]\n");
    }

    proptest! {
        #[test]
        fn decomposition_covers_and_separates(
            raw in prop::collection::vec((0u8..40, 0u8..40), 1..35),
            s in prop::sample::select(vec![0.5, 2.0, 5.0, 10.0]),
        ) {
            let pts: Vec<Point> = raw.iter().map(|&(x, y)| Point::new(x as f64 / 4.0, y as f64)).collect();
            let tree = build_split_tree(&pts).unwrap();
            let pairs = compute_wspd(&tree, s).unwrap();
            prop_assert_eq!(verify(&pts, &pairs, s), Ok(()));
            prop_assert_eq!(compute_wspd(&tree, s).unwrap(), pairs);
        }
    }
}
