//! Exact Gaussian elimination over the rationals and affine flats.

use num_traits::{One, Zero};

use super::point::{dot, Point};
use super::rational::Rational;

/// Reduces `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let cols = first.len();
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// Basis of `{x : row . x = 0 for all rows}` for vectors of length `cols`.
pub fn null_space(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solution set `particular + span(basis)` of a consistent affine system.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub basis: Vec<Vec<Rational>>,
}

/// Solves `a . x = b` for every `(a, b)` in `eqs`; `None` when inconsistent.
pub fn solve_affine(eqs: &[(Vec<Rational>, Rational)], dim: usize) -> Option<AffineSolution> {
    let mut m: Vec<Vec<Rational>> = eqs
        .iter()
        .map(|(a, b)| {
            let mut row = a.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let pivots = rref(&mut m, dim + 1);
    if pivots.last() == Some(&dim) {
        return None;
    }
    let mut particular = vec![Rational::zero(); dim];
    for (row, &p) in m.iter().zip(&pivots) {
        particular[p] = row[dim].clone();
    }
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); dim];
            v[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, basis })
}

/// Scales a functional so its first nonzero coefficient is one. Two
/// functionals define the same hyperplane iff their normal forms agree.
pub fn normalize_hyperplane(a: &[Rational], b: &Rational) -> (Vec<Rational>, Rational) {
    match a.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = Rational::one() / lead;
            (a.iter().map(|x| x * &inv).collect(), b * &inv)
        }
        None => (a.to_vec(), b.clone()),
    }
}

/// An affine subspace of R^d stored as a reduced system of equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFlat {
    ambient: usize,
    /// RREF rows `[a | b]` meaning `a . x = b`.
    eqs: Vec<Vec<Rational>>,
}

impl AffineFlat {
    pub fn whole(ambient: usize) -> Self {
        AffineFlat { ambient, eqs: Vec::new() }
    }

    /// Affine hull of a nonempty point set.
    pub fn hull(points: &[Point]) -> Self {
        let ambient = points[0].dim();
        let dirs: Vec<Vec<Rational>> = points[1..]
            .iter()
            .map(|p| (p - &points[0]).into_coords())
            .collect();
        let normals = if dirs.is_empty() {
            identity(ambient)
        } else {
            null_space(&dirs, ambient)
        };
        let eqs: Vec<(Vec<Rational>, Rational)> = normals
            .into_iter()
            .map(|n| {
                let b = points[0].dot(&n);
                (n, b)
            })
            .collect();
        Self::from_equations(ambient, &eqs).expect("hull equations are consistent")
    }

    pub fn from_equations(ambient: usize, eqs: &[(Vec<Rational>, Rational)]) -> Option<Self> {
        let mut m: Vec<Vec<Rational>> = eqs
            .iter()
            .map(|(a, b)| {
                let mut row = a.clone();
                row.push(b.clone());
                row
            })
            .collect();
        let pivots = rref(&mut m, ambient + 1);
        if pivots.last() == Some(&ambient) {
            return None;
        }
        Some(AffineFlat { ambient, eqs: m })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.eqs.len()
    }

    pub fn equations(&self) -> Vec<(Vec<Rational>, Rational)> {
        self.eqs
            .iter()
            .map(|row| (row[..self.ambient].to_vec(), row[self.ambient].clone()))
            .collect()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.eqs
            .iter()
            .all(|row| dot(&row[..self.ambient], p.coords()) == row[self.ambient])
    }

    /// Intersection, or `None` when the flats are disjoint.
    pub fn intersect(&self, other: &AffineFlat) -> Option<AffineFlat> {
        let mut eqs = self.equations();
        eqs.extend(other.equations());
        Self::from_equations(self.ambient, &eqs)
    }
}

pub(crate) fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, rat};

    #[test]
    fn rank_and_null_space() {
        let rows = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(0), int(1), int(1)],
        ];
        assert_eq!(rank(&rows), 2);
        let ns = null_space(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(dot(r, &ns[0]).is_zero());
        }
    }

    #[test]
    fn inconsistent_system() {
        let eqs = vec![(vec![int(1), int(1)], int(1)), (vec![int(2), int(2)], int(3))];
        assert!(solve_affine(&eqs, 2).is_none());
        let eqs = vec![(vec![int(1), int(1)], int(1))];
        let s = solve_affine(&eqs, 2).unwrap();
        assert_eq!(s.basis.len(), 1);
    }

    #[test]
    fn flats_meet_in_expected_dimension() {
        let l1 = AffineFlat::hull(&[Point::from_ints(&[0, 0]), Point::from_ints(&[1, 1])]);
        let l2 = AffineFlat::hull(&[Point::from_ints(&[0, 1]), Point::from_ints(&[1, 0])]);
        let x = l1.intersect(&l2).unwrap();
        assert_eq!(x.dim(), 0);
        assert!(x.contains(&Point::new(vec![rat(1, 2), rat(1, 2)])));
        let l3 = AffineFlat::hull(&[Point::from_ints(&[0, 1]), Point::from_ints(&[1, 2])]);
        assert!(l1.intersect(&l3).is_none());
    }
}
