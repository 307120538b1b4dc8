//! Seeded generators for test inputs. All randomness comes from ChaCha8
//! seeded with a `u64`, so equal seeds give equal outputs on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::Chain;
use crate::complex::{boundary_sphere, torus_gadget, AbstractComplex};
use crate::geom::{in_strong_general_position, GeomSimplex, Point, Rational};
use crate::link::{components_disjoint, BorromeanConfig, LinkError};
use crate::plmap::PLMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with denominator `den` in `[lo, hi]`.
pub fn rational(rng: &mut impl Rng, lo: i64, hi: i64, den: i64) -> Rational {
    Rational::new(rng.gen_range(lo * den..=hi * den).into(), den.into())
}

pub fn point(rng: &mut impl Rng, d: usize, lo: i64, hi: i64, den: i64) -> Point {
    Point::new((0..d).map(|_| rational(rng, lo, hi, den)).collect())
}

pub fn points(rng: &mut impl Rng, count: usize, d: usize, lo: i64, hi: i64, den: i64) -> Vec<Point> {
    (0..count).map(|_| point(rng, d, lo, hi, den)).collect()
}

/// A `c`-chain in `R^d` with at most `max` simplices whose vertices come
/// from a small integer grid, so that faces are often shared.
pub fn grid_chain(rng: &mut impl Rng, c: usize, d: usize, max: usize) -> Chain {
    let grid: Vec<Point> = (0..3usize.pow(d as u32))
        .map(|mut i| {
            Point::from_ints(
                &(0..d)
                    .map(|_| {
                        let v = (i % 3) as i64;
                        i /= 3;
                        v
                    })
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let target = rng.gen_range(0..=max);
    let mut out = Chain::empty(c, d);
    for _ in 0..target * 4 {
        if out.len() >= target {
            break;
        }
        let vs: Vec<Point> = grid.choose_multiple(rng, c + 1).cloned().collect();
        if let Ok(s) = GeomSimplex::new(vs) {
            if !out.contains(&s) {
                out.toggle(s).expect("dimensions match");
            }
        }
    }
    out
}

/// Images of a realized complex at random generic points.
pub fn realize(rng: &mut impl Rng, k: AbstractComplex, d: usize, lo: i64, hi: i64) -> AbstractComplex {
    let n = k.vertex_count();
    k.with_realization(points(rng, n, d, lo, hi, 97)).expect("sizes match")
}

/// A closed polygon with `n` vertices on a fixed convex domain, mapped to
/// random points of the plane.
pub fn polygon_map(rng: &mut impl Rng, n: usize, lo: i64, hi: i64) -> PLMap {
    let facets = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    // the domain: points (i, i^2) of a parabola, in convex position
    let domain = AbstractComplex::new(n, facets)
        .expect("in range")
        .with_realization((0..n as i64).map(|i| Point::from_ints(&[i, i * i])).collect())
        .expect("sizes match");
    PLMap::new(domain, points(rng, n, 2, lo, hi, 97)).expect("valid map")
}

/// `∂Δ^{k+1}` realized on random points.
pub fn sphere_chain(rng: &mut impl Rng, k: usize, d: usize, lo: i64, hi: i64) -> Chain {
    loop {
        let pts = points(rng, k + 2, d, lo, hi, 97);
        if let Ok(s) = GeomSimplex::new(pts) {
            return Chain::from_simplices(k, d, s.facets()).expect("dimensions match");
        }
    }
}

/// A polygon map with a triangle cycle in strong general position with
/// respect to it.
pub fn polygon_case(rng: &mut impl Rng) -> (PLMap, Chain) {
    loop {
        let n = rng.gen_range(3..=6);
        let f = polygon_map(rng, n, -10, 10);
        let c = sphere_chain(rng, 1, 2, -10, 10);
        let mut all = f.vertex_images();
        all.extend(c.vertices());
        if in_strong_general_position(&all, 2).unwrap_or(false) {
            return (f, c);
        }
    }
}

/// A map of `∂Δ³` into `R³` near the standard embedding and a tetrahedron
/// surface meeting it.
pub fn surface_case(rng: &mut impl Rng) -> (PLMap, Chain) {
    let base = [[0, 0, 0], [12, 0, 0], [0, 12, 0], [0, 0, 12]];
    loop {
        let real: Vec<Point> = base.iter().map(|c| Point::from_ints(c)).collect();
        let domain = boundary_sphere(2).with_realization(real.clone()).expect("four points");
        let images: Vec<Point> = real
            .iter()
            .map(|p| Point::new(p.coords().iter().map(|x| x + rational(rng, -2, 2, 97)).collect()))
            .collect();
        let Ok(f) = PLMap::new(domain, images) else { continue };
        let c = sphere_chain(rng, 2, 3, -4, 8);
        let mut all = f.vertex_images();
        all.extend(c.vertices());
        if in_strong_general_position(&all, 3).unwrap_or(false) {
            return (f, c);
        }
    }
}

/// A configuration `T ⊔ S_p ⊔ S_m -> R^{k+l+1}` with random vertex images
/// and pairwise disjoint component images, found by rejection.
pub fn borromean_config(rng: &mut impl Rng, k: usize, l: usize) -> Result<BorromeanConfig, LinkError> {
    let d = k + l + 1;
    loop {
        let t = torus_gadget(l);
        let tn = t.vertex_count();
        let torus_dom = realize(rng, t, 2 * l + 2, 0, 10);
        let torus = PLMap::new(torus_dom, points(rng, tn, d, -6, 6, 97))?;
        let mut sphere = || -> Result<PLMap, LinkError> {
            let dom = realize(rng, boundary_sphere(k), k + 1, 0, 10);
            let centre = point(rng, d, -3, 3, 97);
            let imgs = (0..k + 2)
                .map(|_| {
                    let off = point(rng, d, -3, 3, 97);
                    Point::new(centre.coords().iter().zip(off.coords()).map(|(a, b)| a + b).collect())
                })
                .collect();
            Ok(PLMap::new(dom, imgs)?)
        };
        let (sp, sm) = (sphere()?, sphere()?);
        let Ok(cfg) = BorromeanConfig::new(k, l, torus, sp, sm) else { continue };
        if components_disjoint(&cfg) {
            return Ok(cfg);
        }
    }
}
