//! Affine dimension and (strong) general position predicates.

use itertools::Itertools;

use super::linalg::{rank, AffineFlat};
use super::point::Point;
use super::GeomError;

/// Default bound on the number of points accepted by the strong general
/// position check, whose enumeration is exponential in the point count.
pub const DEFAULT_SGP_CAP: usize = 12;

fn check_dims(points: &[Point], d: usize) -> Result<(), GeomError> {
    for p in points {
        if p.dim() != d {
            return Err(GeomError::DimensionMismatch { expected: d, found: p.dim() });
        }
    }
    Ok(())
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_dim(points: &[Point]) -> Result<usize, GeomError> {
    let first = points.first().ok_or(GeomError::EmptyPointSet)?;
    check_dims(points, first.dim())?;
    Ok(affine_dim_unchecked(points))
}

pub(crate) fn affine_dim_unchecked(points: &[Point]) -> usize {
    let dirs: Vec<_> = points[1..]
        .iter()
        .map(|p| (p - &points[0]).into_coords())
        .collect();
    rank(&dirs)
}

pub(crate) fn affinely_independent(points: &[Point]) -> bool {
    points.len() <= points[0].dim() + 1 && affine_dim_unchecked(points) + 1 == points.len()
}

/// First subset (by index) of size at most `d + 1` that is affinely
/// dependent, or `None` when the set is in general position in R^d.
///
/// No `i`-flat holding `i + 2` points, for `1 <= i < d`, is the same as every
/// subset of at most `d + 1` points being affinely independent. Subsets of
/// independent sets are independent, so only the largest size is enumerated.
pub fn general_position_witness(points: &[Point], d: usize) -> Result<Option<Vec<usize>>, GeomError> {
    check_dims(points, d)?;
    let n = points.len();
    if n == 0 {
        return Ok(None);
    }
    let size = n.min(d + 1);
    for subset in (0..n).combinations(size) {
        let pts: Vec<Point> = subset.iter().map(|&i| points[i].clone()).collect();
        if affine_dim_unchecked(&pts) + 1 != size {
            return Ok(Some(subset));
        }
    }
    Ok(None)
}

pub fn in_general_position(points: &[Point], d: usize) -> Result<bool, GeomError> {
    Ok(general_position_witness(points, d)?.is_none())
}

struct Block {
    members: Vec<usize>,
    mask: u64,
    flat: AffineFlat,
    dim: usize,
}

/// A collection of pairwise disjoint subsets (as index lists) violating
/// `dim of the intersection of the hulls <= sum of hull dims - d (r - 1)`,
/// or `None` when the set is in strong general position.
///
/// Only collections of affinely independent subsets spanning proper flats are
/// enumerated: shrinking a subset to an independent spanning subset changes
/// neither side of the inequality, and dropping a subset whose hull is all of
/// R^d lowers both sides equally. Branches whose flats already have empty
/// intersection are cut, since adding subsets keeps the intersection empty.
pub fn strong_general_position_witness(
    points: &[Point],
    d: usize,
    cap: usize,
) -> Result<Option<Vec<Vec<usize>>>, GeomError> {
    check_dims(points, d)?;
    let n = points.len();
    if n > cap || n > 64 {
        return Err(GeomError::CapExceeded { what: "strong general position", limit: cap.min(64), found: n });
    }
    let mut blocks = Vec::new();
    for size in 1..=n.min(d) {
        for subset in (0..n).combinations(size) {
            let pts: Vec<Point> = subset.iter().map(|&i| points[i].clone()).collect();
            if affine_dim_unchecked(&pts) + 1 != size {
                continue;
            }
            let mask = subset.iter().fold(0u64, |m, &i| m | (1 << i));
            blocks.push(Block { flat: AffineFlat::hull(&pts), dim: size - 1, members: subset, mask });
        }
    }
    blocks.sort_by(|a, b| a.members.cmp(&b.members));
    let mut chosen = Vec::new();
    let found = search(&blocks, 0, &AffineFlat::whole(d), 0, 0, d as isize, &mut chosen);
    Ok(found.then(|| chosen.iter().map(|&b| blocks[b].members.clone()).collect()))
}

fn search(
    blocks: &[Block],
    start: usize,
    flat: &AffineFlat,
    used: u64,
    dim_sum: isize,
    d: isize,
    chosen: &mut Vec<usize>,
) -> bool {
    let min_used = chosen.last().map(|&b| blocks[b].members[0]);
    for (i, b) in blocks.iter().enumerate().skip(start) {
        if b.mask & used != 0 || min_used.is_some_and(|m| b.members[0] <= m) {
            continue;
        }
        let Some(next) = flat.intersect(&b.flat) else {
            continue;
        };
        chosen.push(i);
        let r = chosen.len() as isize;
        let sum = dim_sum + b.dim as isize;
        if r >= 2 && next.dim() as isize > sum - d * (r - 1) {
            return true;
        }
        if search(blocks, i + 1, &next, used | b.mask, sum, d, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

pub fn in_strong_general_position(points: &[Point], d: usize) -> Result<bool, GeomError> {
    in_strong_general_position_capped(points, d, DEFAULT_SGP_CAP)
}

pub fn in_strong_general_position_capped(points: &[Point], d: usize, cap: usize) -> Result<bool, GeomError> {
    Ok(strong_general_position_witness(points, d, cap)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;

    fn pts(xs: &[&[i64]]) -> Vec<Point> {
        xs.iter().map(|c| Point::from_ints(c)).collect()
    }

    /// Brute-force oracle: every collection of r >= 2 pairwise disjoint
    /// nonempty subsets, hulls and intersections from scratch.
    fn sgp_oracle(points: &[Point], d: usize) -> bool {
        let n = points.len();
        // Assign each point to "unused" (0) or one of up to n labelled parts.
        let mut labels = vec![0usize; n];
        loop {
            let parts = *labels.iter().max().unwrap();
            // canonical labelling: first occurrences appear in order 1, 2, ...
            let mut seen = 0;
            let canonical = labels.iter().all(|&l| {
                if l == 0 || l <= seen {
                    true
                } else if l == seen + 1 {
                    seen += 1;
                    true
                } else {
                    false
                }
            });
            if canonical && parts >= 2 {
                let mut flat = AffineFlat::whole(d);
                let mut sum = 0isize;
                let mut empty = false;
                for part in 1..=parts {
                    let sub: Vec<Point> =
                        (0..n).filter(|&i| labels[i] == part).map(|i| points[i].clone()).collect();
                    sum += affine_dim(&sub).unwrap() as isize;
                    match flat.intersect(&AffineFlat::hull(&sub)) {
                        Some(f) => flat = f,
                        None => {
                            empty = true;
                            break;
                        }
                    }
                }
                if !empty && flat.dim() as isize > sum - d as isize * (parts as isize - 1) {
                    return false;
                }
            }
            // next labelling in base (n + 1)
            let mut i = 0;
            loop {
                if i == n {
                    return true;
                }
                labels[i] += 1;
                if labels[i] <= n {
                    break;
                }
                labels[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn affine_dim_examples() {
        assert_eq!(affine_dim(&pts(&[&[0, 0]])).unwrap(), 0);
        assert_eq!(affine_dim(&pts(&[&[0, 0], &[2, 0], &[5, 0]])).unwrap(), 1);
        assert_eq!(affine_dim(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap(), 2);
        assert!(matches!(affine_dim(&[]), Err(GeomError::EmptyPointSet)));
        assert!(matches!(
            affine_dim(&pts(&[&[0, 0], &[1, 0, 0]])),
            Err(GeomError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn general_position_examples() {
        assert!(!in_general_position(&pts(&[&[0, 0], &[1, 0], &[2, 0]]), 2).unwrap());
        assert!(in_general_position(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]), 2).unwrap());
        assert!(in_general_position(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 3).unwrap());
        assert!(!in_general_position(&pts(&[&[1, 1], &[1, 1]]), 2).unwrap());
    }

    #[test]
    fn general_position_agrees_with_rank_oracle_on_square() {
        // every 3-subset of the square's corners spans the plane
        let sq = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        for s in (0..4).combinations(3) {
            let sub: Vec<Point> = s.iter().map(|&i| sq[i].clone()).collect();
            assert_eq!(affine_dim(&sub).unwrap(), 2);
        }
        assert!(in_general_position(&sq, 2).unwrap());
    }

    #[test]
    fn strong_general_position_square() {
        let sq = pts(&[&[0, 0], &[1, 1], &[1, 0], &[0, 1]]);
        assert!(sgp_oracle(&sq, 2));
        assert!(in_strong_general_position(&sq, 2).unwrap());
    }

    #[test]
    fn concurrent_diameters_fail() {
        let v = vec![
            Point::new(vec![rat(1, 1), rat(0, 1)]),
            Point::new(vec![rat(-1, 1), rat(0, 1)]),
            Point::new(vec![rat(0, 1), rat(1, 1)]),
            Point::new(vec![rat(0, 1), rat(-1, 1)]),
            Point::new(vec![rat(3, 5), rat(4, 5)]),
            Point::new(vec![rat(-3, 5), rat(-4, 5)]),
        ];
        assert!(!sgp_oracle(&v, 2));
        let w = strong_general_position_witness(&v, 2, DEFAULT_SGP_CAP).unwrap().unwrap();
        assert!(w.len() >= 2);
        // the six points themselves are in ordinary general position
        assert!(in_general_position(&v, 2).unwrap());
    }

    #[test]
    fn independent_sets_pass_and_match_oracle() {
        let simplex = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(sgp_oracle(&simplex, 3));
        assert!(in_strong_general_position(&simplex, 3).unwrap());
        let tri = pts(&[&[0, 0, 0], &[3, 1, 0], &[1, 4, 2]]);
        assert!(sgp_oracle(&tri, 3));
        assert!(in_strong_general_position(&tri, 3).unwrap());
    }

    #[test]
    fn cap_is_an_error() {
        let many: Vec<Point> = (0..13).map(|i| Point::from_ints(&[i, i * i])).collect();
        assert!(matches!(
            strong_general_position_witness(&many, 2, DEFAULT_SGP_CAP),
            Err(GeomError::CapExceeded { .. })
        ));
    }

    #[test]
    fn pruned_search_matches_oracle_on_small_sets() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..60 {
            let d = 2 + trial % 2;
            let n = 4 + trial % 3;
            // tiny grid so that degeneracies actually occur
            let v: Vec<Point> = (0..n)
                .map(|_| Point::from_ints(&(0..d).map(|_| rng.gen_range(-2..=2)).collect::<Vec<_>>()))
                .collect();
            assert_eq!(
                in_strong_general_position(&v, d).unwrap(),
                sgp_oracle(&v, d),
                "trial {trial}: {v:?}"
            );
        }
    }
}
