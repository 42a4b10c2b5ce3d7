//! Canonical linear models of orbits: HERT invariants, twisting groups,
//! closed-form exact flows, limit-orbit queries on totally hyperbolic charts,
//! and enumeration of singularity types.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::exact::{Int, Rat};
use crate::{Error, Result};

/// The (h, e, r, t) invariant of an orbit: h hyperbolic and e elbolic
/// transversal components, orbit type R^r x T^t, in ambient dimension n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct HertInvariant {
    pub h: usize,
    pub e: usize,
    pub r: usize,
    pub t: usize,
    pub n: usize,
}

impl HertInvariant {
    pub fn new(h: usize, e: usize, r: usize, t: usize, n: usize) -> Result<Self> {
        if h + 2 * e + r + t != n {
            return Err(Error::InvalidArgument(format!(
                "h + 2e + r + t = {} but n = {n}",
                h + 2 * e + r + t
            )));
        }
        Ok(Self { h, e, r, t, n })
    }
}

/// Toric degree of the local model: e + t.
pub fn toric_degree_of_hert(q: &HertInvariant) -> usize {
    q.e + q.t
}

/// A finite twisting group (Z_2)^k acting on the h hyperbolic components by
/// sign flips and on the torus T^t by half-period translations. Generator i
/// flips the components in `hyperbolic_masks[i]` (a bitmask over h bits) and
/// translates circle factor `torus_targets[i]` by a half period.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TwistingGroup {
    pub rank: usize,
    pub hyperbolic_masks: Vec<u64>,
    pub torus_targets: Vec<usize>,
}

impl TwistingGroup {
    pub fn trivial() -> Self {
        Self {
            rank: 0,
            hyperbolic_masks: Vec::new(),
            torus_targets: Vec::new(),
        }
    }

    pub fn new(hyperbolic_masks: Vec<u64>, torus_targets: Vec<usize>) -> Result<Self> {
        if hyperbolic_masks.len() != torus_targets.len() {
            return Err(Error::InvalidArgument(
                "one torus target per twisting generator".into(),
            ));
        }
        let rank = hyperbolic_masks.len();
        if !masks_independent(&hyperbolic_masks) {
            return Err(Error::InvalidArgument(
                "twisting generators must be independent over Z_2".into(),
            ));
        }
        let distinct: BTreeSet<usize> = torus_targets.iter().copied().collect();
        if distinct.len() != rank {
            return Err(Error::InvalidArgument(
                "torus targets must be distinct circle factors".into(),
            ));
        }
        Ok(Self {
            rank,
            hyperbolic_masks,
            torus_targets,
        })
    }

    pub fn validate_against(&self, hert: &HertInvariant) -> Result<()> {
        if self.rank > hert.h.min(hert.t) {
            return Err(Error::InvalidArgument(
                "twisting rank exceeds min(h, t)".into(),
            ));
        }
        if self
            .hyperbolic_masks
            .iter()
            .any(|m| *m == 0 || *m >> hert.h != 0)
        {
            return Err(Error::InvalidArgument(
                "twisting mask outside the hyperbolic components".into(),
            ));
        }
        if self.torus_targets.iter().any(|&i| i >= hert.t) {
            return Err(Error::InvalidArgument(
                "torus target outside the torus factors".into(),
            ));
        }
        Ok(())
    }
}

fn masks_independent(masks: &[u64]) -> bool {
    let mut basis: Vec<u64> = Vec::new();
    for &m in masks {
        let mut v = m;
        for &b in &basis {
            let high = 63 - b.leading_zeros();
            if v >> high & 1 == 1 {
                v ^= b;
            }
        }
        if v == 0 {
            return false;
        }
        basis.push(v);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
    true
}

/// What the i-th canonical generator Y_i of a linear model is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// x_i d/dx_i on the i-th hyperbolic component.
    Hyperbolic(usize),
    /// Radial field of the j-th elbolic pair.
    ElbolicRadial(usize),
    /// Rotation field of the j-th elbolic pair (period one in turns).
    ElbolicRotation(usize),
    /// d/dz_i on the i-th circle factor.
    Torus(usize),
    /// d/dzeta_i on the i-th flat factor.
    Flat(usize),
}

/// The canonical semi-local linear model: n commuting generators in the
/// layout h hyperbolic, e elbolic pairs (radial, rotation), t torus, r flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearModel {
    pub hert: HertInvariant,
    pub twist: TwistingGroup,
}

impl LinearModel {
    pub fn new(hert: HertInvariant, twist: TwistingGroup) -> Result<Self> {
        twist.validate_against(&hert)?;
        Ok(Self { hert, twist })
    }

    pub fn totally_hyperbolic_chart(n: usize) -> Result<Self> {
        Self::new(HertInvariant::new(n, 0, 0, 0, n)?, TwistingGroup::trivial())
    }

    pub fn generators(&self) -> Vec<GeneratorKind> {
        let q = &self.hert;
        let mut out = Vec::with_capacity(q.n);
        for i in 0..q.h {
            out.push(GeneratorKind::Hyperbolic(i));
        }
        for j in 0..q.e {
            out.push(GeneratorKind::ElbolicRadial(j));
            out.push(GeneratorKind::ElbolicRotation(j));
        }
        for i in 0..q.t {
            out.push(GeneratorKind::Torus(i));
        }
        for i in 0..q.r {
            out.push(GeneratorKind::Flat(i));
        }
        out
    }
}

/// A hyperbolic coordinate value mantissa * exp(exponent), kept exact so
/// sign, zero-limit, and divergence predicates are decidable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledCoord {
    pub mantissa: Rat,
    pub exponent: Rat,
}

/// An elbolic pair (x, y) scaled by exp(log_scale) and rotated by `turns`
/// full turns; turns is reduced mod 1 so periodicity tests are exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElbolicCoord {
    pub x: Rat,
    pub y: Rat,
    pub log_scale: Rat,
    pub turns: Rat,
}

/// A point of the model, with exact flow bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelPoint {
    pub hyperbolic: Vec<ScaledCoord>,
    pub elbolic: Vec<ElbolicCoord>,
    pub torus: Vec<Rat>,
    pub flat: Vec<Rat>,
}

/// Reduce a rational into [0, 1).
pub fn mod_one(x: &Rat) -> Rat {
    let f = x.floor();
    x - f
}

impl ModelPoint {
    pub fn origin_chart(values: Vec<Rat>) -> Self {
        Self {
            hyperbolic: values
                .into_iter()
                .map(|v| ScaledCoord {
                    mantissa: v,
                    exponent: Rat::zero(),
                })
                .collect(),
            elbolic: Vec::new(),
            torus: Vec::new(),
            flat: Vec::new(),
        }
    }

    pub fn matches(&self, model: &LinearModel) -> bool {
        let q = &model.hert;
        self.hyperbolic.len() == q.h
            && self.elbolic.len() == q.e
            && self.torus.len() == q.t
            && self.flat.len() == q.r
    }

    /// Floating-point coordinates, used only by the numeric cross-checks.
    pub fn to_f64(&self) -> Vec<f64> {
        let rf = |x: &Rat| -> f64 {
            let n = x.numer();
            let d = x.denom();
            num_to_f64(n) / num_to_f64(d)
        };
        let mut out = Vec::new();
        for c in &self.hyperbolic {
            out.push(rf(&c.mantissa) * rf(&c.exponent).exp());
        }
        for p in &self.elbolic {
            let s = rf(&p.log_scale).exp();
            let th = 2.0 * std::f64::consts::PI * rf(&p.turns);
            let (x, y) = (rf(&p.x), rf(&p.y));
            out.push(s * (x * th.cos() - y * th.sin()));
            out.push(s * (x * th.sin() + y * th.cos()));
        }
        for z in &self.torus {
            out.push(rf(z));
        }
        for z in &self.flat {
            out.push(rf(z));
        }
        out
    }
}

fn num_to_f64(n: &Int) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(f64::NAN)
}

/// Closed-form flow of the model field sum_i w_i Y_i for `time` units,
/// exact in the (mantissa, exponent) representation. Rotation rates are in
/// turns per unit time.
pub fn flow(model: &LinearModel, w: &[Rat], z0: &ModelPoint, time: &Rat) -> Result<ModelPoint> {
    let q = &model.hert;
    if w.len() != q.n {
        return Err(Error::DimensionMismatch("flow direction".into()));
    }
    if !z0.matches(model) {
        return Err(Error::DimensionMismatch("flow start point".into()));
    }
    let mut z = z0.clone();
    let mut idx = 0;
    for c in z.hyperbolic.iter_mut() {
        c.exponent = &c.exponent + &(&w[idx] * time);
        idx += 1;
    }
    for p in z.elbolic.iter_mut() {
        p.log_scale = &p.log_scale + &(&w[idx] * time);
        p.turns = mod_one(&(&p.turns + &(&w[idx + 1] * time)));
        idx += 2;
    }
    for zc in z.torus.iter_mut() {
        *zc = mod_one(&(&*zc + &(&w[idx] * time)));
        idx += 1;
    }
    for zc in z.flat.iter_mut() {
        *zc = &*zc + &(&w[idx] * time);
        idx += 1;
    }
    Ok(z)
}

/// Limit of the flow of -w from a generic point of a totally hyperbolic
/// chart: the orbit on which every coordinate with w_i > 0 has collapsed to
/// zero, or divergence when some w_i < 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitOrbit {
    OrbitId(BTreeSet<usize>),
    Divergent,
}

pub fn limit_orbit(model: &LinearModel, w: &[Rat]) -> Result<LimitOrbit> {
    let q = &model.hert;
    if q.h != q.n || q.e != 0 || q.r != 0 || q.t != 0 {
        return Err(Error::Precondition(
            "limit_orbit needs a totally hyperbolic chart (h = n)".into(),
        ));
    }
    if w.len() != q.n {
        return Err(Error::DimensionMismatch("limit direction".into()));
    }
    if w.iter().any(|x| x.is_negative()) {
        return Ok(LimitOrbit::Divergent);
    }
    Ok(LimitOrbit::OrbitId(
        w.iter()
            .enumerate()
            .filter(|(_, x)| x.is_positive())
            .map(|(i, _)| i)
            .collect(),
    ))
}

/// One entry of the singularity-type census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityType {
    /// Roman-numeral label I..X when the type is one of the named ones.
    pub label: Option<&'static str>,
    /// Structural name such as "(h-h)_t".
    pub name: String,
    pub hert: HertInvariant,
    pub twist: TwistingGroup,
}

/// Canonical form of a rank-k subgroup of (Z_2)^h under permutations of the
/// h components: the lexicographically smallest sorted element list over all
/// permutations.
fn canonical_subgroup(generators: &[u64], h: usize) -> Vec<u64> {
    let mut elements: BTreeSet<u64> = BTreeSet::new();
    elements.insert(0);
    for &g in generators {
        let snapshot: Vec<u64> = elements.iter().copied().collect();
        for e in snapshot {
            elements.insert(e ^ g);
        }
    }
    let perms = permutations(h);
    let mut best: Option<Vec<u64>> = None;
    for perm in &perms {
        let mut image: Vec<u64> = elements
            .iter()
            .map(|&e| {
                let mut out = 0u64;
                for (src, &dst) in perm.iter().enumerate() {
                    if e >> src & 1 == 1 {
                        out |= 1 << dst;
                    }
                }
                out
            })
            .collect();
        image.sort_unstable();
        if best.as_ref().map_or(true, |b| &image < b) {
            best = Some(image);
        }
    }
    best.unwrap_or_else(|| vec![0])
}

fn permutations(h: usize) -> Vec<Vec<usize>> {
    if h == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for sub in permutations(h - 1) {
        for pos in 0..h {
            let mut p = sub.clone();
            p.insert(pos, h - 1);
            out.push(p);
        }
    }
    out
}

/// Reduced generating set (bitwise Gaussian basis) of a subgroup given by its
/// element list.
fn subgroup_basis(elements: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &e in elements {
        let mut v = e;
        for &b in &basis {
            let high = 63 - b.leading_zeros();
            if v >> high & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.sort_unstable();
    basis
}

fn roman_label(name: &str) -> Option<&'static str> {
    Some(match name {
        "(h)" => "I",
        "(h_t)" => "II",
        "(e)" => "III",
        "(h-h)" => "IV",
        "(h-h_t)" => "V",
        "(h-h)_t" => "VI",
        "(e-h)" => "VII",
        "(h_t-h_t)" => "VIII",
        "(e-h_t)" => "IX",
        "(e-e)" => "X",
        _ => return None,
    })
}

/// Structural name of a type: elbolic components first, then untwisted
/// hyperbolic, then component-twisted hyperbolic; a single generator flipping
/// several components at once subscripts the whole parenthesis.
fn type_name(hert: &HertInvariant, basis: &[u64]) -> String {
    let singles: Vec<u64> = basis.iter().copied().filter(|m| m.count_ones() == 1).collect();
    let multis: Vec<u64> = basis.iter().copied().filter(|m| m.count_ones() > 1).collect();
    let twisted_bits: u64 = singles.iter().fold(0, |a, m| a | m);
    let mut parts: Vec<String> = Vec::new();
    for _ in 0..hert.e {
        parts.push("e".into());
    }
    if multis.len() == 1 && singles.is_empty() {
        let mask = multis[0];
        if mask.count_ones() as usize == hert.h {
            // Jointly twisted hyperbolic block: subscript outside the parens.
            for _ in 0..hert.h {
                parts.push("h".into());
            }
            return format!("({})_t", parts.join("-"));
        }
    }
    if multis.is_empty() {
        for i in 0..hert.h {
            if twisted_bits >> i & 1 == 0 {
                parts.push("h".into());
            }
        }
        for i in 0..hert.h {
            if twisted_bits >> i & 1 == 1 {
                parts.push("h_t".into());
            }
        }
        return format!("({})", parts.join("-"));
    }
    // Exotic combination outside the named tables: spell out the masks.
    for _ in 0..hert.h {
        parts.push("h".into());
    }
    let masks: Vec<String> = basis.iter().map(|m| format!("{m:b}")).collect();
    format!("({})[{}]", parts.join("-"), masks.join(","))
}

/// Enumerate all singularity types in ambient dimension n with the given
/// toric degree: all (h, e, r, t) with h + 2e + r + t = n, e + t = toric
/// degree, e + h >= 1, with twisting groups of rank k <= min(h, t) counted
/// up to permutation of the hyperbolic components.
pub fn enumerate_singularity_types(n: usize, toric_degree: usize) -> Result<Vec<SingularityType>> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    if toric_degree > n {
        return Err(Error::InvalidArgument("toric degree exceeds n".into()));
    }
    let mut out = Vec::new();
    for e in 0..=toric_degree {
        let t = toric_degree - e;
        if 2 * e + t > n {
            continue;
        }
        for h in 0..=(n - 2 * e - t) {
            let r = n - 2 * e - t - h;
            if e + h == 0 {
                continue;
            }
            let hert = HertInvariant::new(h, e, r, t, n)?;
            let kmax = h.min(t);
            for k in 0..=kmax {
                for class in twisting_classes(h, k) {
                    let basis = subgroup_basis(&class);
                    let twist = TwistingGroup::new(basis.clone(), (0..k).collect())?;
                    twist.validate_against(&hert)?;
                    let name = type_name(&hert, &basis);
                    out.push(SingularityType {
                        label: roman_label(&name),
                        name,
                        hert,
                        twist,
                    });
                }
            }
        }
    }
    let roman_index = |l: Option<&str>| match l {
        Some("I") => 0,
        Some("II") => 1,
        Some("III") => 2,
        Some("IV") => 3,
        Some("V") => 4,
        Some("VI") => 5,
        Some("VII") => 6,
        Some("VIII") => 7,
        Some("IX") => 8,
        Some("X") => 9,
        _ => 100,
    };
    out.sort_by(|a, b| {
        roman_index(a.label)
            .cmp(&roman_index(b.label))
            .then_with(|| a.name.cmp(&b.name))
            .then_with(|| a.hert.cmp(&b.hert))
    });
    Ok(out)
}

/// All rank-k subgroups of (Z_2)^h up to permutation of the h components,
/// returned as canonical element lists.
fn twisting_classes(h: usize, k: usize) -> Vec<Vec<u64>> {
    if k == 0 {
        return vec![vec![0]];
    }
    let all: Vec<u64> = (1..(1u64 << h)).collect();
    let mut classes: BTreeSet<Vec<u64>> = BTreeSet::new();
    // Enumerate k-tuples of independent elements; dedupe by subgroup, then
    // by permutation class.
    fn rec(
        all: &[u64],
        k: usize,
        start: usize,
        chosen: &mut Vec<u64>,
        h: usize,
        classes: &mut BTreeSet<Vec<u64>>,
    ) {
        if chosen.len() == k {
            classes.insert(canonical_subgroup(chosen, h));
            return;
        }
        for i in start..all.len() {
            chosen.push(all[i]);
            if masks_independent(chosen) {
                rec(all, k, i + 1, chosen, h, classes);
            }
            chosen.pop();
        }
    }
    let mut chosen = Vec::new();
    rec(&all, k, 0, &mut chosen, h, &mut classes);
    classes.into_iter().collect()
}

/// Validation report for the elbolic constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElbolicReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Elbolic-mode constraints: no hyperbolic components; a compact orbit of
/// dimension t forces toric degree (n + t)/2; a fixed point forces r = t = 0,
/// n even, and toric degree n/2.
pub fn check_elbolic_constraints(hert: &HertInvariant, has_fixed_point: bool) -> ElbolicReport {
    let mut violations = Vec::new();
    if hert.h > 0 {
        violations.push(format!(
            "elbolic mode admits no hyperbolic components (h = {})",
            hert.h
        ));
    }
    if has_fixed_point {
        if hert.r != 0 || hert.t != 0 {
            violations.push("a fixed point requires r = t = 0".into());
        }
        if hert.n % 2 != 0 {
            violations.push(format!("a fixed point requires even n (n = {})", hert.n));
        } else if hert.r == 0 && hert.t == 0 && hert.h == 0 {
            let d = toric_degree_of_hert(hert);
            if d != hert.n / 2 {
                violations.push(format!("fixed point needs toric degree n/2, got {d}"));
            }
        }
    } else if hert.h == 0 && hert.r == 0 {
        // Compact orbit of dimension t.
        let d = toric_degree_of_hert(hert);
        if 2 * d != hert.n + hert.t {
            violations.push(format!(
                "compact orbit of dimension {} needs toric degree (n+k)/2, got {d}",
                hert.t
            ));
        }
    }
    ElbolicReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// Consistency rule: HERT invariants arising from a single
/// action must all share the same toric degree e + t.
pub fn consistent_toric_degree(herts: &[HertInvariant]) -> bool {
    let mut degrees = herts.iter().map(toric_degree_of_hert);
    match degrees.next() {
        None => true,
        Some(d) => degrees.all(|x| x == d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn hert_arithmetic() {
        let torus = HertInvariant::new(0, 0, 0, 3, 3).unwrap();
        assert_eq!(toric_degree_of_hert(&torus), 3);
        let type_i = HertInvariant::new(1, 0, 1, 1, 3).unwrap();
        assert_eq!(toric_degree_of_hert(&type_i), 1);
        let type_iii = HertInvariant::new(0, 1, 1, 0, 3).unwrap();
        assert_eq!(toric_degree_of_hert(&type_iii), 1);
        assert!(HertInvariant::new(1, 1, 1, 1, 3).is_err());
    }

    #[test]
    fn census_3_1_has_seven_types() {
        let types = enumerate_singularity_types(3, 1).unwrap();
        let labels: Vec<_> = types.iter().map(|t| t.label.unwrap()).collect();
        assert_eq!(labels, ["I", "II", "III", "IV", "V", "VI", "VII"]);
        let names: Vec<_> = types.iter().map(|t| t.name.as_str()).collect();
        assert_eq!(
            names,
            ["(h)", "(h_t)", "(e)", "(h-h)", "(h-h_t)", "(h-h)_t", "(e-h)"]
        );
    }

    #[test]
    fn census_4_2_has_ten_types() {
        let types = enumerate_singularity_types(4, 2).unwrap();
        assert_eq!(types.len(), 10);
        let names: BTreeSet<&str> = types.iter().map(|t| t.name.as_str()).collect();
        for expected in ["(h_t-h_t)", "(e-h_t)", "(e-e)"] {
            assert!(names.contains(expected), "missing {expected}");
        }
        let labels: Vec<_> = types.iter().map(|t| t.label.unwrap()).collect();
        assert_eq!(
            labels,
            ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X"]
        );
    }

    #[test]
    fn census_2_2_empty() {
        assert!(enumerate_singularity_types(2, 2).unwrap().is_empty());
    }

    #[test]
    fn flow_identity_and_group_law() {
        let model = LinearModel::totally_hyperbolic_chart(2).unwrap();
        let z0 = ModelPoint::origin_chart(v(&[2, -3]));
        let zero = flow(&model, &v(&[0, 0]), &z0, &rat(7)).unwrap();
        assert_eq!(zero, z0);
        let w = v(&[1, 2]);
        let a = flow(&model, &w, &z0, &frac(3, 2)).unwrap();
        let b = flow(&model, &w, &a, &frac(1, 2)).unwrap();
        let c = flow(&model, &w, &z0, &rat(2)).unwrap();
        assert_eq!(b, c);
    }

    #[test]
    fn elbolic_rotation_periodicity() {
        let hert = HertInvariant::new(0, 1, 0, 0, 2).unwrap();
        let model = LinearModel::new(hert, TwistingGroup::trivial()).unwrap();
        let z0 = ModelPoint {
            hyperbolic: vec![],
            elbolic: vec![ElbolicCoord {
                x: rat(1),
                y: rat(0),
                log_scale: Rat::zero(),
                turns: Rat::zero(),
            }],
            torus: vec![],
            flat: vec![],
        };
        // Pure rotation at rate 1 turn per unit time: period exactly 1.
        let w = v(&[0, 1]);
        let z1 = flow(&model, &w, &z0, &rat(1)).unwrap();
        assert_eq!(z1, z0);
        let half = flow(&model, &w, &z0, &frac(1, 2)).unwrap();
        assert_eq!(half.elbolic[0].turns, frac(1, 2));
    }

    #[test]
    fn hyperbolic_flow_monotone() {
        let model = LinearModel::totally_hyperbolic_chart(1).unwrap();
        let z0 = ModelPoint::origin_chart(v(&[2]));
        let z1 = flow(&model, &v(&[1]), &z0, &rat(1)).unwrap();
        let f0 = z0.to_f64()[0];
        let f1 = z1.to_f64()[0];
        assert!(f1 > f0 && f0 > 0.0 && f1 > 0.0);
    }

    #[test]
    fn limit_orbit_cases() {
        let model = LinearModel::totally_hyperbolic_chart(3).unwrap();
        assert_eq!(
            limit_orbit(&model, &v(&[0, 0, 0])).unwrap(),
            LimitOrbit::OrbitId(BTreeSet::new())
        );
        assert_eq!(
            limit_orbit(&model, &v(&[1, 0, 0])).unwrap(),
            LimitOrbit::OrbitId([0].into_iter().collect())
        );
        assert_eq!(
            limit_orbit(&model, &v(&[1, 1, 1])).unwrap(),
            LimitOrbit::OrbitId([0, 1, 2].into_iter().collect())
        );
        assert_eq!(
            limit_orbit(&model, &v(&[1, -1, 0])).unwrap(),
            LimitOrbit::Divergent
        );
    }

    #[test]
    fn elbolic_constraint_checks() {
        // n = 4 fixed point with e = 2: accepted.
        let good = HertInvariant::new(0, 2, 0, 0, 4).unwrap();
        assert!(check_elbolic_constraints(&good, true).ok);
        // n = 3 admits no elbolic fixed point (parity).
        let odd = HertInvariant::new(0, 1, 1, 0, 3).unwrap();
        assert!(!check_elbolic_constraints(&odd, true).ok);
        // Hyperbolic component in elbolic mode.
        let hyp = HertInvariant::new(1, 1, 1, 0, 4).unwrap();
        assert!(!check_elbolic_constraints(&hyp, false).ok);
        // Compact orbit rule: n = 3, e = 1, t = 1 has d = 2 = (3+1)/2.
        let compact = HertInvariant::new(0, 1, 0, 1, 3).unwrap();
        assert!(check_elbolic_constraints(&compact, false).ok);
    }

    #[test]
    fn twisting_group_validation() {
        assert!(TwistingGroup::new(vec![0b01, 0b10], vec![0, 1]).is_ok());
        assert!(TwistingGroup::new(vec![0b01, 0b01], vec![0, 1]).is_err());
        assert!(TwistingGroup::new(vec![0b01, 0b10], vec![0, 0]).is_err());
        let hert = HertInvariant::new(2, 0, 0, 1, 3).unwrap();
        let too_big = TwistingGroup::new(vec![0b01, 0b10], vec![0, 1]).unwrap();
        assert!(too_big.validate_against(&hert).is_err());
    }

    #[test]
    fn consistent_degrees() {
        let a = HertInvariant::new(1, 0, 1, 1, 3).unwrap();
        let b = HertInvariant::new(0, 1, 1, 0, 3).unwrap();
        let c = HertInvariant::new(0, 0, 1, 2, 3).unwrap();
        assert!(consistent_toric_degree(&[a, b]));
        assert!(!consistent_toric_degree(&[a, c]));
    }

    #[test]
    fn generator_layout() {
        let hert = HertInvariant::new(1, 1, 1, 1, 5).unwrap();
        let model = LinearModel::new(hert, TwistingGroup::trivial()).unwrap();
        assert_eq!(
            model.generators(),
            [
                GeneratorKind::Hyperbolic(0),
                GeneratorKind::ElbolicRadial(0),
                GeneratorKind::ElbolicRotation(0),
                GeneratorKind::Torus(0),
                GeneratorKind::Flat(0),
            ]
        );
    }
}
