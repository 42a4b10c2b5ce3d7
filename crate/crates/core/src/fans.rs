//! Simplicial cones and fans: validation, completeness, and point location.
//! A complete fan is the classifying invariant of a closed hyperbolic domain.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::exact::{feasibility, linalg, rat, Rat};
use crate::{Error, Result};

/// A simplicial cone given by linearly independent generators; no generators
/// means the cone {0}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialCone {
    ambient_dim: usize,
    generators: Vec<Vec<Rat>>,
}

impl SimplicialCone {
    pub fn new(ambient_dim: usize, generators: Vec<Vec<Rat>>) -> Result<Self> {
        if generators.iter().any(|g| g.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(
                "cone generator has wrong length".into(),
            ));
        }
        if linalg::rank(&generators) != generators.len() {
            return Err(Error::InvalidArgument(
                "cone generators must be linearly independent".into(),
            ));
        }
        Ok(Self {
            ambient_dim,
            generators,
        })
    }

    pub fn origin(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            generators: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.generators
    }
}

/// Location of a point relative to a simplicial cone, from the unique
/// expression w = sum t_i g_i when w lies in the span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeLocation {
    Interior,
    Face(BTreeSet<usize>),
    Outside,
}

/// Locate w relative to c: Interior iff all coordinates positive, Face(S)
/// iff the positive-coordinate set S is a proper subset (zero cone and w = 0
/// give Face of the empty generator set), Outside otherwise.
pub fn cone_locate(c: &SimplicialCone, w: &[Rat]) -> Result<ConeLocation> {
    if w.len() != c.ambient_dim {
        return Err(Error::DimensionMismatch("cone_locate point".into()));
    }
    if c.generators.is_empty() {
        return Ok(if w.iter().all(|x| x.is_zero()) {
            ConeLocation::Face(BTreeSet::new())
        } else {
            ConeLocation::Outside
        });
    }
    let Some(t) = linalg::solve_columns(&c.generators, w) else {
        return Ok(ConeLocation::Outside);
    };
    if t.iter().any(|x| x.is_negative()) {
        return Ok(ConeLocation::Outside);
    }
    let support: BTreeSet<usize> = t
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_positive())
        .map(|(i, _)| i)
        .collect();
    Ok(if support.len() == c.generators.len() {
        ConeLocation::Interior
    } else {
        ConeLocation::Face(support)
    })
}

/// True iff w lies in the relative interior of c ({0} for the zero cone).
pub fn in_relative_interior(c: &SimplicialCone, w: &[Rat]) -> Result<bool> {
    Ok(match cone_locate(c, w)? {
        ConeLocation::Interior => true,
        ConeLocation::Face(s) => s.is_empty() && c.dim() == 0,
        ConeLocation::Outside => false,
    })
}

/// True iff a is a face of b (as closed cones): a must be the cone over a
/// subset of b's generators.
pub fn is_face_of(a: &SimplicialCone, b: &SimplicialCone) -> Result<bool> {
    let mut support: BTreeSet<usize> = BTreeSet::new();
    for g in a.generators() {
        match cone_locate(b, g)? {
            ConeLocation::Outside => return Ok(false),
            ConeLocation::Interior => {
                support.extend(0..b.dim());
            }
            ConeLocation::Face(s) => support.extend(s),
        }
    }
    if support.len() != a.dim() {
        return Ok(false);
    }
    // Mutual containment: each supporting generator of b must lie in a.
    for &i in &support {
        if cone_locate(a, &b.generators()[i])? == ConeLocation::Outside {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A fan: an indexed family of simplicial cones with one marked vector per
/// ray. Face relation is recomputed geometrically at construction; ray marks
/// default to the stored generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    ambient_dim: usize,
    cones: Vec<SimplicialCone>,
    ray_marks: BTreeMap<usize, Vec<Rat>>,
    face_relation: Vec<(usize, usize)>,
}

impl Fan {
    pub fn new(
        ambient_dim: usize,
        cones: Vec<SimplicialCone>,
        mut ray_marks: BTreeMap<usize, Vec<Rat>>,
    ) -> Result<Self> {
        if cones.iter().any(|c| c.ambient_dim() != ambient_dim) {
            return Err(Error::DimensionMismatch("fan cone dimension".into()));
        }
        for (i, c) in cones.iter().enumerate() {
            if c.dim() == 1 {
                ray_marks
                    .entry(i)
                    .or_insert_with(|| c.generators()[0].clone());
            }
        }
        let mut face_relation = Vec::new();
        for (i, a) in cones.iter().enumerate() {
            for (j, b) in cones.iter().enumerate() {
                if i != j && a.dim() < b.dim() && is_face_of(a, b)? {
                    face_relation.push((i, j));
                }
            }
        }
        Ok(Self {
            ambient_dim,
            cones,
            ray_marks,
            face_relation,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cones(&self) -> &[SimplicialCone] {
        &self.cones
    }

    pub fn ray_marks(&self) -> &BTreeMap<usize, Vec<Rat>> {
        &self.ray_marks
    }

    /// Pairs (child, parent): child is a proper face of parent.
    pub fn face_relation(&self) -> &[(usize, usize)] {
        &self.face_relation
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FanRule {
    Disjointness,
    FaceClosure,
    RayMark,
    MarkOnRay,
}

impl fmt::Display for FanRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FanRule::Disjointness => "disjointness",
            FanRule::FaceClosure => "face-closure",
            FanRule::RayMark => "ray-mark",
            FanRule::MarkOnRay => "mark-on-ray",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanViolation {
    pub rule: FanRule,
    pub cones: Vec<usize>,
    pub witness: Option<Vec<Rat>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanValidationReport {
    pub ok: bool,
    pub violations: Vec<FanViolation>,
}

/// A rational point common to the relative interiors of a and b, if any.
/// Decided exactly: the open cones overlap iff the homogeneous system
/// {G t = H s, t > 0, s > 0} has a rational solution.
fn open_overlap_witness(a: &SimplicialCone, b: &SimplicialCone) -> Option<Vec<Rat>> {
    let n = a.ambient_dim();
    let (p, q) = (a.dim(), b.dim());
    if p == 0 && q == 0 {
        return Some(vec![Rat::zero(); n]); // both relative interiors are {0}
    }
    let nvars = p + q;
    let mut eq = Vec::with_capacity(n);
    for row in 0..n {
        let mut r = Vec::with_capacity(nvars);
        for g in a.generators() {
            r.push(g[row].clone());
        }
        for h in b.generators() {
            r.push(-&h[row]);
        }
        eq.push(r);
    }
    let mut strict = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let mut r = vec![Rat::zero(); nvars];
        r[i] = rat(1);
        strict.push(r);
    }
    let sol = feasibility::strict_feasible_with_equalities(&eq, &strict, nvars)?;
    let mut w = vec![Rat::zero(); n];
    for (i, g) in a.generators().iter().enumerate() {
        for (row, x) in w.iter_mut().enumerate() {
            *x = &*x + &(&g[row] * &sol[i]);
        }
    }
    if p == 0 {
        // a = {0}: the witness is the origin itself.
        return Some(w);
    }
    Some(w)
}

/// Check disjointness of relatively open cones, face closure, ray-mark
/// totality, and mark-on-ray.
pub fn validate_fan(f: &Fan) -> Result<FanValidationReport> {
    let mut violations = Vec::new();
    // Disjointness of relatively open cones.
    for i in 0..f.cones.len() {
        for j in (i + 1)..f.cones.len() {
            if let Some(w) = open_overlap_witness(&f.cones[i], &f.cones[j]) {
                violations.push(FanViolation {
                    rule: FanRule::Disjointness,
                    cones: vec![i, j],
                    witness: Some(w),
                });
            }
        }
    }
    // Face closure: every subset of a cone's generators spans a stored cone.
    for (i, c) in f.cones.iter().enumerate() {
        let d = c.dim();
        for mask in 0..(1u32 << d) {
            let gens: Vec<Vec<Rat>> = (0..d)
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| c.generators()[k].clone())
                .collect();
            let face = SimplicialCone::new(f.ambient_dim, gens)?;
            let found = f.cones.iter().any(|other| {
                other.dim() == face.dim()
                    && is_face_of(&face, other).unwrap_or(false)
                    && is_face_of(other, &face).unwrap_or(false)
            });
            if !found {
                let witness = face.generators().iter().fold(
                    vec![Rat::zero(); f.ambient_dim],
                    |mut acc, g| {
                        for (x, y) in acc.iter_mut().zip(g.iter()) {
                            *x = &*x + y;
                        }
                        acc
                    },
                );
                violations.push(FanViolation {
                    rule: FanRule::FaceClosure,
                    cones: vec![i],
                    witness: Some(witness),
                });
            }
        }
    }
    // Ray marks: present exactly on rays, and on the ray itself.
    for (i, c) in f.cones.iter().enumerate() {
        if c.dim() == 1 && !f.ray_marks.contains_key(&i) {
            violations.push(FanViolation {
                rule: FanRule::RayMark,
                cones: vec![i],
                witness: None,
            });
        }
    }
    for (&i, mark) in &f.ray_marks {
        let ray = f.cones.get(i);
        if ray.map_or(true, |c| c.dim() != 1) {
            violations.push(FanViolation {
                rule: FanRule::RayMark,
                cones: vec![i],
                witness: Some(mark.clone()),
            });
            continue;
        }
        if cone_locate(ray.unwrap(), mark)? != ConeLocation::Interior {
            violations.push(FanViolation {
                rule: FanRule::MarkOnRay,
                cones: vec![i],
                witness: Some(mark.clone()),
            });
        }
    }
    Ok(FanValidationReport {
        ok: violations.is_empty(),
        violations,
    })
}

/// Completeness of a valid fan: the cones partition R^n. Decided by (a) an
/// n-cone exists, (b) every (n-1)-cone is a facet of exactly two n-cones,
/// (c) the dual graph on n-cones through shared facets is connected.
pub fn is_complete(f: &Fan) -> Result<bool> {
    if !validate_fan(f)?.ok {
        return Err(Error::Precondition("fan is not valid".into()));
    }
    let n = f.ambient_dim;
    let top: Vec<usize> = (0..f.cones.len()).filter(|&i| f.cones[i].dim() == n).collect();
    if top.is_empty() {
        return Ok(false);
    }
    let ridges: Vec<usize> = (0..f.cones.len())
        .filter(|&i| f.cones[i].dim() + 1 == n)
        .collect();
    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &r in &ridges {
        let owners: Vec<usize> = top
            .iter()
            .copied()
            .filter(|&t| f.face_relation.contains(&(r, t)))
            .collect();
        if owners.len() != 2 {
            return Ok(false);
        }
        adjacency.entry(owners[0]).or_default().push(owners[1]);
        adjacency.entry(owners[1]).or_default().push(owners[0]);
    }
    // Connectivity of the dual graph.
    let mut seen = BTreeSet::new();
    let mut stack = vec![top[0]];
    while let Some(t) = stack.pop() {
        if !seen.insert(t) {
            continue;
        }
        if let Some(next) = adjacency.get(&t) {
            stack.extend(next.iter().copied());
        }
    }
    Ok(seen.len() == top.len())
}

/// Index of the unique cone whose relative interior contains w.
pub fn fan_locate(f: &Fan, w: &[Rat]) -> Result<usize> {
    if !is_complete(f)? {
        return Err(Error::Precondition("fan is not complete".into()));
    }
    for (i, c) in f.cones.iter().enumerate() {
        if in_relative_interior(c, w)? {
            return Ok(i);
        }
    }
    Err(Error::InvalidFan(
        "complete fan failed to locate a point".into(),
    ))
}

/// The fan of a convex p-gon (p >= 3): p rays at angles j/p turns (realized
/// as rounded integer vectors), p 2-cones between consecutive rays, and the
/// origin. The result is validated complete at construction.
pub fn polygon_fan(p: usize) -> Result<Fan> {
    if p < 3 {
        return Err(Error::InvalidArgument("polygon needs at least 3 rays".into()));
    }
    let rays: Vec<Vec<Rat>> = (0..p)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / (p as f64);
            vec![
                rat((1000.0 * theta.cos()).round() as i64),
                rat((1000.0 * theta.sin()).round() as i64),
            ]
        })
        .collect();
    let mut cones = vec![SimplicialCone::origin(2)];
    for r in &rays {
        cones.push(SimplicialCone::new(2, vec![r.clone()])?);
    }
    for j in 0..p {
        cones.push(SimplicialCone::new(
            2,
            vec![rays[j].clone(), rays[(j + 1) % p].clone()],
        )?);
    }
    let fan = Fan::new(2, cones, BTreeMap::new())?;
    if !is_complete(&fan)? {
        return Err(Error::InvalidFan("polygon fan is not complete".into()));
    }
    Ok(fan)
}

/// The complete coordinate fan of R^n: one cone per sign pattern in
/// {-1,0,+1}^n, spanned by the signed coordinate vectors; 3^n cones total.
pub fn coordinate_fan(n: usize) -> Result<Fan> {
    let mut cones = Vec::new();
    let mut pattern = vec![0i8; n];
    fn rec(n: usize, k: usize, pattern: &mut Vec<i8>, cones: &mut Vec<SimplicialCone>) {
        if k == n {
            let gens: Vec<Vec<Rat>> = (0..n)
                .filter(|&i| pattern[i] != 0)
                .map(|i| {
                    let mut v = vec![Rat::zero(); n];
                    v[i] = rat(pattern[i] as i64);
                    v
                })
                .collect();
            cones.push(SimplicialCone::new(n, gens).expect("coordinate cone"));
            return;
        }
        for s in [-1i8, 0, 1] {
            pattern[k] = s;
            rec(n, k + 1, pattern, cones);
        }
        pattern[k] = 0;
    }
    rec(n, 0, &mut pattern, &mut cones);
    Fan::new(n, cones, BTreeMap::new())
}

/// The quadrant fan of R^2 (the n = 2 coordinate fan): 9 cones.
pub fn quadrant_fan() -> Result<Fan> {
    coordinate_fan(2)
}

/// The 3-ray complete fan of R^2 with rays (1,0), (0,1), (-1,-1).
pub fn three_ray_fan() -> Result<Fan> {
    let rays = [
        vec![rat(1), rat(0)],
        vec![rat(0), rat(1)],
        vec![rat(-1), rat(-1)],
    ];
    let mut cones = vec![SimplicialCone::origin(2)];
    for r in &rays {
        cones.push(SimplicialCone::new(2, vec![r.clone()])?);
    }
    for j in 0..3 {
        cones.push(SimplicialCone::new(
            2,
            vec![rays[j].clone(), rays[(j + 1) % 3].clone()],
        )?);
    }
    Fan::new(2, cones, BTreeMap::new())
}
