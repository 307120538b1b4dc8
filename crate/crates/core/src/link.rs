//! Mod-2 linking numbers through cones, the singular Borromean rings
//! properties, and the three-term cone intersection identity.

use num_traits::One;
use thiserror::Error;

use crate::chain::{Chain, ChainError};
use crate::complex::{boundary_sphere, AbstractComplex, ComplexError};
use crate::geom::{intersect_polytopes, one, rat, zero, GeomError, GeomSimplex, Point, Polytope, Rational};
use crate::plmap::{PLMap, PlmapError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("cannot cone over an empty chain")]
    EmptyBase,
    #[error("apex {apex:?} is affinely dependent on base simplex {simplex:?}")]
    DegenerateJoin { apex: Point, simplex: GeomSimplex },
    #[error("cone over a {c}-chain does not fit in R^{d}")]
    ConeTooLarge { c: usize, d: usize },
    #[error("dimensions {dims:?} do not sum to {expected}")]
    DimensionSum { dims: Vec<usize>, expected: usize },
    #[error("ambient dimensions differ: {0} vs {1}")]
    Ambient(usize, usize),
    #[error("{0} is not a cycle")]
    NotACycle(&'static str),
    #[error("supports meet: {first:?} and {second:?}")]
    NotDisjoint { first: GeomSimplex, second: GeomSimplex },
    #[error("non-transversal intersection among {simplices:?}")]
    NonTransversal { simplices: Vec<GeomSimplex> },
    #[error("no admissible apex among the first {0}")]
    ApexExhausted(usize),
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Plmap(#[from] PlmapError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Apexes tried before giving up.
pub const APEX_TRIES: usize = 64;

/// The `t`-th apex in `R^d`: the point `(Mt, (Mt)², …, (Mt)^d)` on the
/// moment curve, with `M = 1009/7`. Distinct moment-curve points are in
/// general position, so only finitely many `t` can be bad for any input.
pub fn apex(t: usize, d: usize) -> Point {
    let s = rat(1009, 7) * Rational::from_integer((t as i64).into());
    let mut x = Rational::one();
    Point::new(
        (0..d)
            .map(|_| {
                x = &x * &s;
                x.clone()
            })
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub apex: Point,
    pub base: Chain,
    pub cells: Chain,
}

pub fn cone(apex: &Point, base: &Chain) -> Result<Cone, LinkError> {
    if base.is_empty() {
        return Err(LinkError::EmptyBase);
    }
    if apex.dim() != base.ambient() {
        return Err(LinkError::Ambient(apex.dim(), base.ambient()));
    }
    if base.dim() + 1 > base.ambient() {
        return Err(LinkError::ConeTooLarge { c: base.dim(), d: base.ambient() });
    }
    let mut cells = Chain::empty(base.dim() + 1, base.ambient());
    for s in base.iter() {
        let mut vs = s.vertices().to_vec();
        vs.push(apex.clone());
        let joined = GeomSimplex::new(vs)
            .map_err(|_| LinkError::DegenerateJoin { apex: apex.clone(), simplex: s.clone() })?;
        cells.toggle(joined)?;
    }
    Ok(Cone { apex: apex.clone(), base: base.clone(), cells })
}

/// A point common to all, lying in the relative interior of each, or an
/// error when the common part is anything else.
fn transversal_point(simplices: &[&GeomSimplex]) -> Result<bool, LinkError> {
    let mut acc: Polytope = simplices[0].polytope().clone();
    for s in &simplices[1..] {
        if !acc.bbox_overlaps(s.polytope()) {
            return Ok(false);
        }
        match intersect_polytopes(&acc, s.polytope()) {
            Some(x) => acc = x,
            None => return Ok(false),
        }
    }
    let fail = || LinkError::NonTransversal { simplices: simplices.iter().map(|s| (*s).clone()).collect() };
    if acc.affine_dim() != 0 {
        return Err(fail());
    }
    let x = &acc.vertices()[0];
    if simplices.iter().all(|s| s.polytope().contains_in_relint(x)) {
        Ok(true)
    } else {
        Err(fail())
    }
}

/// Parity of `|A ∩ B|` for chains of complementary dimension.
pub fn transversal_parity(a: &Chain, b: &Chain) -> Result<u8, LinkError> {
    if a.ambient() != b.ambient() {
        return Err(LinkError::Ambient(a.ambient(), b.ambient()));
    }
    if a.dim() + b.dim() != a.ambient() {
        return Err(LinkError::DimensionSum { dims: vec![a.dim(), b.dim()], expected: a.ambient() });
    }
    let mut count = 0u8;
    for s in a.iter() {
        for t in b.iter() {
            if transversal_point(&[s, t])? {
                count ^= 1;
            }
        }
    }
    Ok(count)
}

/// Parity of `|A ∩ B ∩ C|` when the codimensions sum to the ambient
/// dimension, so that the common part is a finite point set.
pub fn triple_parity(a: &Chain, b: &Chain, c: &Chain) -> Result<u8, LinkError> {
    Ok((triple_count(a, b, c)? % 2) as u8)
}

/// Number of transversal triple points, before reduction mod 2.
pub fn triple_count(a: &Chain, b: &Chain, c: &Chain) -> Result<usize, LinkError> {
    let d = a.ambient();
    if b.ambient() != d || c.ambient() != d {
        return Err(LinkError::Ambient(d, b.ambient().max(c.ambient())));
    }
    if a.dim() + b.dim() + c.dim() != 2 * d {
        return Err(LinkError::DimensionSum { dims: vec![a.dim(), b.dim(), c.dim()], expected: 2 * d });
    }
    let mut count = 0;
    for s in a.iter() {
        for t in b.iter() {
            if !s.polytope().bbox_overlaps(t.polytope()) {
                continue;
            }
            let Some(st) = intersect_polytopes(s.polytope(), t.polytope()) else { continue };
            for u in c.iter() {
                if !st.bbox_overlaps(u.polytope()) || intersect_polytopes(&st, u.polytope()).is_none() {
                    continue;
                }
                if transversal_point(&[s, t, u])? {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// First simplex pair witnessing that the supports meet.
pub fn support_contact(a: &Chain, b: &Chain) -> Option<(GeomSimplex, GeomSimplex)> {
    for s in a.iter() {
        for t in b.iter() {
            if s.polytope().bbox_overlaps(t.polytope()) && intersect_polytopes(s.polytope(), t.polytope()).is_some() {
                return Some((s.clone(), t.clone()));
            }
        }
    }
    None
}

fn check_linkable(x: &Chain, y: &Chain) -> Result<(), LinkError> {
    if x.ambient() != y.ambient() {
        return Err(LinkError::Ambient(x.ambient(), y.ambient()));
    }
    if x.dim() + y.dim() + 1 != x.ambient() {
        return Err(LinkError::DimensionSum { dims: vec![x.dim(), y.dim()], expected: x.ambient() - 1 });
    }
    if !x.is_cycle() {
        return Err(LinkError::NotACycle("first chain"));
    }
    if !y.is_cycle() {
        return Err(LinkError::NotACycle("second chain"));
    }
    if let Some((first, second)) = support_contact(x, y) {
        return Err(LinkError::NotDisjoint { first, second });
    }
    Ok(())
}

/// `|cone(apex, X) ∩ Y| mod 2` for one given apex.
pub fn linking_mod2_with_apex(x: &Chain, y: &Chain, a: &Point) -> Result<u8, LinkError> {
    check_linkable(x, y)?;
    transversal_parity(&cone(a, x)?.cells, y)
}

/// Linking number mod 2 of disjoint cycles `X`, `Y` with
/// `dim X + dim Y = d - 1`, using the first admissible apex.
pub fn linking_mod2(x: &Chain, y: &Chain) -> Result<u8, LinkError> {
    Ok(linking_mod2_traced(x, y)?.0)
}

/// As [`linking_mod2`], also returning the index of the apex used.
pub fn linking_mod2_traced(x: &Chain, y: &Chain) -> Result<(u8, usize), LinkError> {
    check_linkable(x, y)?;
    for t in 1..=APEX_TRIES {
        let Ok(c) = cone(&apex(t, x.ambient()), x) else { continue };
        match transversal_parity(&c.cells, y) {
            Ok(bit) => return Ok((bit, t)),
            Err(LinkError::NonTransversal { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(LinkError::ApexExhausted(APEX_TRIES))
}

/// A map of `T ⊔ S_p ⊔ S_m` into `R^{k+l+1}`, given componentwise; the
/// torus domain carries the marks named by `meridian` and `parallel`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorromeanConfig {
    pub k: usize,
    pub l: usize,
    pub torus: PLMap,
    pub sphere_p: PLMap,
    pub sphere_m: PLMap,
    pub meridian: String,
    pub parallel: String,
}

impl BorromeanConfig {
    pub fn new(k: usize, l: usize, torus: PLMap, sphere_p: PLMap, sphere_m: PLMap) -> Result<Self, LinkError> {
        let cfg = BorromeanConfig {
            k,
            l,
            torus,
            sphere_p,
            sphere_m,
            meridian: "m".to_string(),
            parallel: "p".to_string(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn ambient(&self) -> usize {
        self.k + self.l + 1
    }

    pub fn validate(&self) -> Result<(), LinkError> {
        let d = self.ambient();
        if self.k <= self.l {
            return Err(LinkError::Config(format!("need k > l, got k={} l={}", self.k, self.l)));
        }
        for (name, f, n) in [
            ("torus", &self.torus, 2 * self.l),
            ("sphere_p", &self.sphere_p, self.k),
            ("sphere_m", &self.sphere_m, self.k),
        ] {
            if f.d() != d {
                return Err(LinkError::Config(format!("{name} maps to R^{}, expected R^{d}", f.d())));
            }
            if f.n() != n {
                return Err(LinkError::Config(format!("{name} has dimension {}, expected {n}", f.n())));
            }
        }
        for mark in [&self.meridian, &self.parallel] {
            if !self.torus.domain().marks().contains_key(mark) {
                return Err(LinkError::Config(format!("torus has no mark {mark:?}")));
            }
        }
        Ok(())
    }

    pub fn torus_chain(&self) -> Result<Chain, LinkError> {
        Ok(self.torus.image_chain(2 * self.l)?)
    }

    pub fn sphere_p_chain(&self) -> Result<Chain, LinkError> {
        Ok(self.sphere_p.image_chain(self.k)?)
    }

    pub fn sphere_m_chain(&self) -> Result<Chain, LinkError> {
        Ok(self.sphere_m.image_chain(self.k)?)
    }

    pub fn meridian_chain(&self) -> Result<Chain, LinkError> {
        Ok(self.torus.mark_image(&self.meridian)?)
    }

    pub fn parallel_chain(&self) -> Result<Chain, LinkError> {
        Ok(self.torus.mark_image(&self.parallel)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorromeanReport {
    pub disjoint: bool,
    /// `lk(f S_p, f p)`; `None` when the two images meet.
    pub lk_pp: Option<u8>,
    pub lk_pm: Option<u8>,
    pub lk_mm: Option<u8>,
    pub lk_mp: Option<u8>,
    pub property1: bool,
    pub property2: bool,
    pub property3: bool,
    pub transcript: Vec<String>,
}

impl BorromeanReport {
    pub fn all_hold(&self) -> bool {
        self.property1 && self.property2 && self.property3
    }

    pub fn bits(&self) -> Option<(u8, u8, u8, u8)> {
        Some((self.lk_pp?, self.lk_pm?, self.lk_mm?, self.lk_mp?))
    }
}

fn facets_meet(a: &PLMap, b: &PLMap) -> Option<(usize, usize)> {
    let (fa, fb) = (a.facet_images(), b.facet_images());
    for (i, x) in fa.iter().enumerate() {
        for (j, y) in fb.iter().enumerate() {
            if x.bbox_overlaps(y) && intersect_polytopes(x, y).is_some() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Property 1 alone: pairwise disjointness of the component images.
pub fn components_disjoint(cfg: &BorromeanConfig) -> bool {
    facets_meet(&cfg.torus, &cfg.sphere_p).is_none()
        && facets_meet(&cfg.torus, &cfg.sphere_m).is_none()
        && facets_meet(&cfg.sphere_p, &cfg.sphere_m).is_none()
}

pub fn borromean_check(cfg: &BorromeanConfig) -> Result<BorromeanReport, LinkError> {
    cfg.validate_relaxed()?;
    let mut transcript = Vec::new();
    let comps = [("T", &cfg.torus), ("S_p", &cfg.sphere_p), ("S_m", &cfg.sphere_m)];
    let mut disjoint = true;
    for i in 0..3 {
        for j in i + 1..3 {
            match facets_meet(comps[i].1, comps[j].1) {
                None => transcript.push(format!("f({}) and f({}) are disjoint", comps[i].0, comps[j].0)),
                Some((a, b)) => {
                    disjoint = false;
                    transcript.push(format!(
                        "f({}) facet {a} meets f({}) facet {b}",
                        comps[i].0, comps[j].0
                    ));
                }
            }
        }
    }
    let (sp, sm) = (cfg.sphere_p_chain()?, cfg.sphere_m_chain()?);
    let (m, p) = (cfg.meridian_chain()?, cfg.parallel_chain()?);
    let mut lk = |x: &Chain, y: &Chain, name: &str| -> Result<Option<u8>, LinkError> {
        match linking_mod2_traced(x, y) {
            Ok((bit, t)) => {
                transcript.push(format!("{name} = {bit} (apex {t})"));
                Ok(Some(bit))
            }
            Err(LinkError::NotDisjoint { .. }) => {
                transcript.push(format!("{name} undefined: images meet"));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    };
    let lk_pp = lk(&sp, &p, "lk(fS_p, fp)")?;
    let lk_pm = lk(&sp, &m, "lk(fS_p, fm)")?;
    let lk_mm = lk(&sm, &m, "lk(fS_m, fm)")?;
    let lk_mp = lk(&sm, &p, "lk(fS_m, fp)")?;
    let property2 = lk_pp == Some(1) && lk_pm == Some(0);
    let property3 = lk_mm == Some(1) && lk_mp == Some(0);
    Ok(BorromeanReport {
        disjoint,
        lk_pp,
        lk_pm,
        lk_mm,
        lk_mp,
        property1: disjoint,
        property2,
        property3,
        transcript,
    })
}

impl BorromeanConfig {
    /// Validation allowing `l = 0`, for which the torus is four points.
    fn validate_relaxed(&self) -> Result<(), LinkError> {
        match self.validate() {
            Err(LinkError::Config(msg)) if self.l == 0 && msg.starts_with("need k > l") => Ok(()),
            other => other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizReport {
    /// `|f(T) ∩ C_p ∩ C_m|`, `|C_T ∩ f(S_p) ∩ C_m|`, `|C_T ∩ C_p ∩ f(S_m)|`
    /// mod 2.
    pub terms: [u8; 3],
    /// Intersection point counts behind `terms`.
    pub counts: [usize; 3],
    pub sum: u8,
    /// Set when the terms read `(1, 0, 0)` or sum to 1.
    pub alarm: bool,
    pub apexes: [usize; 3],
}

/// Cones over the three components with apexes `3j+1, 3j+2, 3j+3` for the
/// first `j` that makes all triple intersections transversal.
pub fn leibniz_terms(cfg: &BorromeanConfig) -> Result<LeibnizReport, LinkError> {
    cfg.validate()?;
    if cfg.l == 0 {
        return Err(LinkError::Config("need l >= 1".to_string()));
    }
    if !components_disjoint(cfg) {
        return Err(LinkError::Config("component images are not pairwise disjoint".to_string()));
    }
    let d = cfg.ambient();
    let (t, sp, sm) = (cfg.torus_chain()?, cfg.sphere_p_chain()?, cfg.sphere_m_chain()?);
    if !t.is_cycle() || !sp.is_cycle() || !sm.is_cycle() {
        return Err(LinkError::NotACycle("component image"));
    }
    'apexes: for j in 0..APEX_TRIES {
        let ts = [3 * j + 1, 3 * j + 2, 3 * j + 3];
        let cones = [cone(&apex(ts[0], d), &t), cone(&apex(ts[1], d), &sp), cone(&apex(ts[2], d), &sm)];
        let [Ok(ct), Ok(cp), Ok(cm)] = cones else { continue };
        let mut counts = [0usize; 3];
        for (slot, (a, b, c)) in [(&t, &cp.cells, &cm.cells), (&ct.cells, &sp, &cm.cells), (&ct.cells, &cp.cells, &sm)]
            .into_iter()
            .enumerate()
        {
            match triple_count(a, b, c) {
                Ok(n) => counts[slot] = n,
                Err(LinkError::NonTransversal { .. }) => continue 'apexes,
                Err(e) => return Err(e),
            }
        }
        let terms = counts.map(|n| (n % 2) as u8);
        let sum = (terms[0] + terms[1] + terms[2]) % 2;
        let alarm = terms == [1, 0, 0] || sum == 1;
        return Ok(LeibnizReport { terms, counts, sum, alarm, apexes: ts });
    }
    Err(LinkError::ApexExhausted(APEX_TRIES))
}

/// A rational unit vector in `R^n` with every coordinate negative.
fn negative_unit(n: usize) -> Vec<Rational> {
    let mut v = vec![-one()];
    for _ in 1..n {
        let mut w: Vec<Rational> = v.iter().map(|x| x * rat(3, 5)).collect();
        w.push(rat(-4, 5));
        v = w;
    }
    v
}

/// `∂Δ^{k+1}` realized with vertices on the unit sphere of `R^{k+1}`: the
/// standard basis and one vector with all coordinates negative.
pub fn unit_sphere(k: usize) -> AbstractComplex {
    let n = k + 1;
    let mut pts: Vec<Point> = (0..n)
        .map(|i| Point::new((0..n).map(|j| if i == j { one() } else { zero() }).collect()))
        .collect();
    pts.push(Point::new(negative_unit(n)));
    boundary_sphere(k).with_realization(pts).expect("k + 2 points")
}

fn translated(c: &AbstractComplex, shift: &[Rational]) -> Vec<Point> {
    c.realization()
        .expect("realized")
        .iter()
        .map(|p| Point::new(p.coords().iter().zip(shift).map(|(a, b)| a + b).collect()))
        .collect()
}

/// The map with `l = 0`: the torus `{±1}²` sits in the first two
/// coordinates and the two unit `k`-spheres are centred at `(1, -1, 0, …)`
/// for `S_p` and `(-1, 1, 0, …)` for `S_m`.
pub fn remark_a_config(k: usize) -> Result<BorromeanConfig, LinkError> {
    if k == 0 {
        return Err(LinkError::Config("need k >= 1".to_string()));
    }
    let d = k + 1;
    let corners = [(-1, -1), (-1, 1), (1, -1), (1, 1)];
    let torus = AbstractComplex::new(4, (0..4).map(|i| vec![i]).collect())?
        .with_realization(corners.iter().map(|&(a, b)| Point::from_ints(&[a, b])).collect())?
        .with_mark("m", vec![vec![1], vec![3]])?
        .with_mark("p", vec![vec![2], vec![3]])?;
    let images = corners
        .iter()
        .map(|&(a, b)| {
            let mut c = vec![0i64; d];
            c[0] = a;
            c[1] = b;
            Point::from_ints(&c)
        })
        .collect();
    let torus = PLMap::new(torus, images)?;
    let s = unit_sphere(k);
    let mut shift = vec![zero(); d];
    shift[0] = one();
    shift[1] = -one();
    let sphere_p = PLMap::new(s.clone(), translated(&s, &shift))?;
    let back: Vec<Rational> = shift.iter().map(|x| -x).collect();
    let sphere_m = PLMap::new(s.clone(), translated(&s, &back))?;
    let cfg = BorromeanConfig {
        k,
        l: 0,
        torus,
        sphere_p,
        sphere_m,
        meridian: "m".to_string(),
        parallel: "p".to_string(),
    };
    cfg.validate_relaxed()?;
    Ok(cfg)
}

/// Whether `x` lies strictly inside the polytope bounded by a closed
/// hypersurface given as the hull of its vertices. Used by tests for
/// convex spheres only.
pub fn inside_convex_hull(points: &[Point], x: &Point) -> bool {
    let hull = Polytope::from_points(points.to_vec()).expect("nonempty");
    hull.contains_in_relint(x) && hull.affine_dim() == x.dim()
}
