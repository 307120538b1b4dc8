//! Assembling the complex `K(Φ)` from sphere and torus gadgets.
//!
//! How the clauses of `Φ` choose spheres and tori is taken as input (a
//! [`LinkagePlan`]). [`default_plan`] is a placeholder convention, and
//! outputs built from it say so in their provenance.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{boundary_sphere, torus_gadget, AbstractComplex};

pub const IDENTIFY_BOUNDARY_SPHERE: &str = "identify-boundary-sphere";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("literal {literal} out of range for {variables} variables")]
    LiteralRange { literal: i64, variables: usize },
    #[error("parameters out of range: need k >= 2 and k+2 <= d <= 3k/2+1, got k={k}, d={d}")]
    Range { k: usize, d: usize },
    #[error("plan references unknown sphere {0:?}")]
    UnknownSphere(String),
    #[error("duplicate gadget id {0:?}")]
    DuplicateId(String),
    #[error("torus {0:?} must join two distinct spheres")]
    SameSphere(String),
    #[error("unknown attachment convention {0:?}")]
    UnknownConvention(String),
    #[error("no free face on sphere {sphere:?} for torus {torus:?}")]
    NoFreeFace { torus: String, sphere: String },
    #[error("assembled complex has dimension {found}, expected {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("assembled complex has {found} simplices, above the bound {bound}")]
    Size { found: usize, bound: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    pub variable_count: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<Vec<i64>>) -> Result<Self, ReduceError> {
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(ReduceError::EmptyClause(i));
            }
            for &lit in c {
                if lit == 0 || lit.unsigned_abs() as usize > variable_count {
                    return Err(ReduceError::LiteralRange { literal: lit, variables: variable_count });
                }
            }
        }
        Ok(CnfFormula { variable_count, clauses })
    }

    /// Parses DIMACS CNF: `c` comment lines, one `p cnf V C` header, then
    /// literals with each clause closed by `0`.
    pub fn parse_dimacs(text: &str) -> Result<Self, ReduceError> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |message: String| ReduceError::Parse { line: i + 1, message };
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if header.is_some() {
                    return Err(err("second header".into()));
                }
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(err(format!("bad header {line:?}")));
                }
                let v = parts[2].parse().map_err(|_| err(format!("bad variable count {:?}", parts[2])))?;
                let c = parts[3].parse().map_err(|_| err(format!("bad clause count {:?}", parts[3])))?;
                header = Some((v, c));
                continue;
            }
            if header.is_none() {
                return Err(err("clause before header".into()));
            }
            for tok in line.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| err(format!("bad literal {tok:?}")))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(lit);
                }
            }
        }
        let (v, c) = header.ok_or(ReduceError::Parse { line: 0, message: "missing header".into() })?;
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != c {
            return Err(ReduceError::Parse {
                line: text.lines().count(),
                message: format!("header declares {c} clauses, found {}", clauses.len()),
            });
        }
        CnfFormula::new(v, clauses)
    }
}

#[derive(Clone, Debug)]
pub struct GadgetKit {
    pub k: usize,
    pub d: usize,
    pub l: usize,
    pub sphere: AbstractComplex,
    pub torus: AbstractComplex,
}

/// The `k`-sphere and the `2l`-torus with `l = d - k - 1`, for
/// `k >= 2` and `k + 2 <= d <= 3k/2 + 1`.
pub fn build_gadget_kit(k: usize, d: usize) -> Result<GadgetKit, ReduceError> {
    if k < 2 || d < k + 2 || 2 * d > 3 * k + 2 {
        return Err(ReduceError::Range { k, d });
    }
    let l = d - k - 1;
    Ok(GadgetKit { k, d, l, sphere: boundary_sphere(k), torus: torus_gadget(l) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusLink {
    pub id: String,
    pub sphere_q: String,
    pub sphere_r: String,
    pub convention: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkagePlan {
    pub spheres: Vec<String>,
    pub tori: Vec<TorusLink>,
    /// Set for plans produced by [`default_plan`].
    #[serde(default)]
    pub placeholder: bool,
}

impl LinkagePlan {
    pub fn validate(&self) -> Result<(), ReduceError> {
        let mut ids = BTreeSet::new();
        for s in self.spheres.iter().chain(self.tori.iter().map(|t| &t.id)) {
            if !ids.insert(s.as_str()) {
                return Err(ReduceError::DuplicateId(s.clone()));
            }
        }
        let spheres: BTreeSet<&str> = self.spheres.iter().map(String::as_str).collect();
        for t in &self.tori {
            for s in [&t.sphere_q, &t.sphere_r] {
                if !spheres.contains(s.as_str()) {
                    return Err(ReduceError::UnknownSphere(s.clone()));
                }
            }
            if t.sphere_q == t.sphere_r {
                return Err(ReduceError::SameSphere(t.id.clone()));
            }
            if t.convention != IDENTIFY_BOUNDARY_SPHERE {
                return Err(ReduceError::UnknownConvention(t.convention.clone()));
            }
        }
        Ok(())
    }
}

/// Placeholder wiring: one sphere per literal occurrence, and one torus for
/// each pair of occurrences of complementary literals.
pub fn default_plan(phi: &CnfFormula) -> LinkagePlan {
    let mut occ = Vec::new();
    for (i, c) in phi.clauses.iter().enumerate() {
        for (j, &lit) in c.iter().enumerate() {
            occ.push((format!("s{i}.{j}"), lit));
        }
    }
    let mut tori = Vec::new();
    for (a, (sa, la)) in occ.iter().enumerate() {
        for (sb, lb) in &occ[a + 1..] {
            if *la == -*lb {
                tori.push(TorusLink {
                    id: format!("t{}", tori.len()),
                    sphere_q: sa.clone(),
                    sphere_r: sb.clone(),
                    convention: IDENTIFY_BOUNDARY_SPHERE.to_string(),
                });
            }
        }
    }
    LinkagePlan { spheres: occ.into_iter().map(|(s, _)| s).collect(), tori, placeholder: true }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetRecord {
    pub id: String,
    pub kind: String,
    /// Vertex ids of the gadget in the assembled complex, in kit order.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttachmentRecord {
    pub torus: String,
    pub meridian_face: Vec<usize>,
    pub parallel_face: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub k: usize,
    pub d: usize,
    pub l: usize,
    pub placeholder: bool,
    pub note: String,
    pub formula: CnfFormula,
    pub plan: LinkagePlan,
    pub gadgets: Vec<GadgetRecord>,
    pub attachments: Vec<AttachmentRecord>,
    pub simplex_count: usize,
    pub size_bound: usize,
}

#[derive(Clone, Debug)]
pub struct Assembly {
    pub complex: AbstractComplex,
    pub provenance: Provenance,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Whether identifying `pairs` keeps every gadget's vertices distinct.
fn injective_after(uf: &UnionFind, pairs: &[(usize, usize)], gadgets: &[Vec<usize>]) -> bool {
    let mut trial = UnionFind(uf.0.clone());
    for &(a, b) in pairs {
        trial.union(a, b);
    }
    gadgets.iter().all(|g| {
        let roots: BTreeSet<usize> = g.iter().map(|&v| trial.find(v)).collect();
        roots.len() == g.len()
    })
}

/// Glues the plan's gadgets. Under `identify-boundary-sphere` each torus
/// meridian is identified with the boundary of an `(l+1)`-face of `S_q` and
/// its parallel with one of `S_r`; faces are taken in lexicographic order,
/// skipping any choice that would merge two vertices of one gadget.
pub fn assemble_k_phi(phi: &CnfFormula, k: usize, d: usize, plan: &LinkagePlan) -> Result<Assembly, ReduceError> {
    let kit = build_gadget_kit(k, d)?;
    plan.validate()?;
    let l = kit.l;
    let mut whole = AbstractComplex::new(0, vec![]).expect("empty");
    let mut gadgets = Vec::new();
    let mut sphere_vertices: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for s in &plan.spheres {
        let base = whole.vertex_count();
        whole = whole.disjoint_union(&kit.sphere, "");
        let vs: Vec<usize> = (base..whole.vertex_count()).collect();
        sphere_vertices.insert(s, vs.clone());
        gadgets.push(GadgetRecord { id: s.clone(), kind: "sphere".into(), vertices: vs });
    }
    let mut torus_vertices = Vec::new();
    for t in &plan.tori {
        let base = whole.vertex_count();
        whole = whole.disjoint_union(&kit.torus, &format!("{}:", t.id));
        let vs: Vec<usize> = (base..whole.vertex_count()).collect();
        torus_vertices.push(vs.clone());
        gadgets.push(GadgetRecord { id: t.id.clone(), kind: "torus".into(), vertices: vs });
    }

    let n = l + 2;
    let all_gadgets: Vec<Vec<usize>> = gadgets.iter().map(|g| g.vertices.clone()).collect();
    let mut uf = UnionFind((0..whole.vertex_count()).collect());
    let mut attachments = Vec::new();
    let faces: Vec<Vec<usize>> = itertools::Itertools::combinations(0..k + 2, l + 2).collect();
    for (t, tv) in plan.tori.iter().zip(&torus_vertices) {
        let (q, r) = (&sphere_vertices[t.sphere_q.as_str()], &sphere_vertices[t.sphere_r.as_str()]);
        let meridian: Vec<usize> = (0..n).map(|a| tv[a * n]).collect();
        let parallel: Vec<usize> = (0..n).map(|b| tv[b]).collect();
        let mut chosen = None;
        'search: for fq in &faces {
            for fr in &faces {
                let mut pairs: Vec<(usize, usize)> = meridian.iter().zip(fq).map(|(&a, &i)| (a, q[i])).collect();
                pairs.extend(parallel.iter().zip(fr).map(|(&b, &i)| (b, r[i])));
                if injective_after(&uf, &pairs, &all_gadgets) {
                    chosen = Some((fq.clone(), fr.clone(), pairs));
                    break 'search;
                }
            }
        }
        let (fq, fr, pairs) =
            chosen.ok_or_else(|| ReduceError::NoFreeFace { torus: t.id.clone(), sphere: t.sphere_q.clone() })?;
        for (a, b) in pairs {
            uf.union(a, b);
        }
        attachments.push(AttachmentRecord {
            torus: t.id.clone(),
            meridian_face: fq.iter().map(|&i| q[i]).collect(),
            parallel_face: fr.iter().map(|&i| r[i]).collect(),
        });
    }

    let roots: BTreeSet<usize> = (0..whole.vertex_count()).map(|v| uf.find(v)).collect();
    let index: BTreeMap<usize, usize> = roots.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let map: Vec<usize> = (0..whole.vertex_count()).map(|v| index[&uf.find(v)]).collect();
    let mut complex = whole.relabel(&map, roots.len());
    for g in gadgets.iter_mut() {
        for v in g.vertices.iter_mut() {
            *v = map[*v];
        }
    }
    for a in attachments.iter_mut() {
        for v in a.meridian_face.iter_mut().chain(a.parallel_face.iter_mut()) {
            *v = map[*v];
        }
    }
    // name every gadget
    for g in &gadgets {
        let kit_complex = if g.kind == "sphere" { &kit.sphere } else { &kit.torus };
        let faces = kit_complex.facets().iter().map(|f| f.iter().map(|&i| g.vertices[i]).collect()).collect();
        complex = complex.with_mark(&format!("{}:{}", g.kind, g.id), faces).expect("in range");
    }

    let expected = k.max(2 * l);
    if !plan.spheres.is_empty() && complex.dim() != expected {
        return Err(ReduceError::Dimension { expected, found: complex.dim() });
    }
    let simplex_count = complex.simplex_count();
    let size_bound = plan.spheres.len() * kit.sphere.simplex_count() + plan.tori.len() * kit.torus.simplex_count();
    if simplex_count > size_bound {
        return Err(ReduceError::Size { found: simplex_count, bound: size_bound });
    }
    let note = if plan.placeholder {
        "placeholder wiring: one sphere per literal occurrence, one torus per complementary pair".to_string()
    } else {
        "explicit plan".to_string()
    };
    let provenance = Provenance {
        k,
        d,
        l,
        placeholder: plan.placeholder,
        note,
        formula: phi.clone(),
        plan: plan.clone(),
        gadgets,
        attachments,
        simplex_count,
        size_bound,
    };
    Ok(Assembly { complex, provenance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::is_isomorphic;

    const CNF: &str = "c tiny\np cnf 3 2\n1 -2 3 0\n-1 2 0\n";

    #[test]
    fn dimacs() {
        let phi = CnfFormula::parse_dimacs(CNF).unwrap();
        assert_eq!(phi.variable_count, 3);
        assert_eq!(phi.clauses, vec![vec![1, -2, 3], vec![-1, 2]]);
        let multi = CnfFormula::parse_dimacs("p cnf 2 2\n1\n2 0 -1 0\n").unwrap();
        assert_eq!(multi.clauses, vec![vec![1, 2], vec![-1]]);
        assert!(matches!(CnfFormula::parse_dimacs("p cnf 2 1\n3 0\n"), Err(ReduceError::LiteralRange { .. })));
        assert!(matches!(CnfFormula::parse_dimacs("p cnf 2 1\n1 x 0\n"), Err(ReduceError::Parse { line: 2, .. })));
        assert!(CnfFormula::parse_dimacs("1 2 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
    }

    #[test]
    fn kits() {
        let kit = build_gadget_kit(2, 4).unwrap();
        assert_eq!(kit.l, 1);
        assert_eq!(kit.sphere.face_vector(), vec![4, 6, 4]);
        assert_eq!(kit.torus.face_vector(), vec![9, 27, 18]);
        let kit = build_gadget_kit(4, 7).unwrap();
        assert_eq!(kit.l, 2);
        assert_eq!(kit.torus.dim(), 4);
        let err = build_gadget_kit(2, 5).unwrap_err();
        assert!(err.to_string().contains("k+2 <= d <= 3k/2+1"));
        assert!(build_gadget_kit(2, 3).is_err());
        assert!(build_gadget_kit(1, 3).is_err());
        assert!(build_gadget_kit(3, 5).is_ok());
        assert!(build_gadget_kit(3, 6).is_err());
    }

    #[test]
    fn spheres_only() {
        let phi = CnfFormula::new(1, vec![vec![1]]).unwrap();
        let plan = LinkagePlan { spheres: vec!["a".into(), "b".into()], tori: vec![], placeholder: false };
        let out = assemble_k_phi(&phi, 2, 4, &plan).unwrap();
        assert_eq!(out.complex.dim(), 2);
        assert_eq!(out.complex.face_vector(), vec![8, 12, 8]);
    }

    #[test]
    fn one_torus() {
        let phi = CnfFormula::new(1, vec![vec![1]]).unwrap();
        let plan = LinkagePlan {
            spheres: vec!["q".into(), "r".into()],
            tori: vec![TorusLink {
                id: "t".into(),
                sphere_q: "q".into(),
                sphere_r: "r".into(),
                convention: IDENTIFY_BOUNDARY_SPHERE.into(),
            }],
            placeholder: false,
        };
        let out = assemble_k_phi(&phi, 2, 4, &plan).unwrap();
        let c = &out.complex;
        assert_eq!(c.dim(), 2);
        let t = c.mark("torus:t").unwrap();
        assert_eq!(t.euler_characteristic(), 0);
        assert_eq!(t.face_vector(), vec![9, 27, 18]);
        let m = c.mark("t:m").unwrap();
        let p = c.mark("t:p").unwrap();
        assert!(is_isomorphic(&m, &boundary_sphere(1)));
        assert!(is_isomorphic(&p, &boundary_sphere(1)));
        // the meridian now lies on the sphere q
        let q = c.mark("sphere:q").unwrap();
        assert!(m.used_vertices().is_subset(&q.used_vertices()));
        let r = c.mark("sphere:r").unwrap();
        assert!(p.used_vertices().is_subset(&r.used_vertices()));
        // five torus vertices land on the spheres, and m ∩ p pins a vertex
        // of q to a vertex of r
        assert_eq!(c.vertex_count(), 4 + 4 + 9 - 6);
    }

    #[test]
    fn bad_plans() {
        let phi = CnfFormula::new(1, vec![vec![1]]).unwrap();
        let link = |q: &str, r: &str, conv: &str| TorusLink {
            id: "t".into(),
            sphere_q: q.into(),
            sphere_r: r.into(),
            convention: conv.into(),
        };
        let plan = |t| LinkagePlan { spheres: vec!["q".into(), "r".into()], tori: vec![t], placeholder: false };
        assert!(matches!(
            assemble_k_phi(&phi, 2, 4, &plan(link("q", "x", IDENTIFY_BOUNDARY_SPHERE))),
            Err(ReduceError::UnknownSphere(_))
        ));
        assert!(matches!(
            assemble_k_phi(&phi, 2, 4, &plan(link("q", "q", IDENTIFY_BOUNDARY_SPHERE))),
            Err(ReduceError::SameSphere(_))
        ));
        assert!(matches!(
            assemble_k_phi(&phi, 2, 4, &plan(link("q", "r", "glue-anyhow"))),
            Err(ReduceError::UnknownConvention(_))
        ));
    }

    #[test]
    fn default_plan_for_small_formula() {
        let phi = CnfFormula::parse_dimacs(CNF).unwrap();
        let plan = default_plan(&phi);
        assert_eq!(plan.spheres.len(), 5);
        assert_eq!(plan.tori.len(), 2);
        assert!(plan.placeholder);
        let out = assemble_k_phi(&phi, 2, 4, &plan).unwrap();
        assert_eq!(out.complex.dim(), 2);
        assert!(out.provenance.placeholder);
        assert!(out.provenance.simplex_count <= out.provenance.size_bound);
    }
}
