//! Classification data and validators: marked graphs for toric degree n-1,
//! monodromy decomposition and retwisting, and 2D totally hyperbolic
//! arrangement feasibility.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{feasibility, frac, linalg, rat, Int, IntegerLattice, Rat};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Marked graphs (toric degree n-1).

/// Vertex mark: the associated vector of a singular orbit, or an associated
/// vector couple (v, w) with w an integer vector defined up to sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mark {
    Single(Vec<Rat>),
    Couple { v: Vec<Rat>, w: Vec<Int> },
}

impl Mark {
    pub fn vector(&self) -> &[Rat] {
        match self {
            Mark::Single(v) => v,
            Mark::Couple { v, .. } => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphTopology {
    Circle,
    Interval,
}

/// The quotient graph of a toric-degree-(n-1) action with its vertex marks,
/// listed in order along the circle or interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedGraph {
    pub topology: GraphTopology,
    pub vertices: Vec<Mark>,
    pub ambient_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// The linear functional (up to scale) vanishing on the span of Z's basis;
/// requires rank(Z) = n - 1.
fn side_functional(z: &IntegerLattice) -> Result<Vec<Rat>> {
    let n = z.ambient_dim();
    let rows: Vec<Vec<Rat>> = z
        .basis()
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let null = linalg::nullspace(&rows, n);
    if null.len() != 1 {
        return Err(Error::Precondition("Z must have rank n - 1".into()));
    }
    Ok(null.into_iter().next().unwrap())
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x * y)
        .fold(Rat::zero(), |s, x| s + x)
}

/// Check conditions C_i-C_iv of the toric degree n-1 classification against
/// the isotropy lattice Z (rank n - 1).
pub fn validate_marked_graph(g: &MarkedGraph, z: &IntegerLattice) -> Result<GraphReport> {
    let n = g.ambient_dim;
    if z.ambient_dim() != n {
        return Err(Error::DimensionMismatch("lattice ambient dimension".into()));
    }
    let mut violations = Vec::new();
    // C_iii: Z is a lattice of rank n - 1.
    if z.rank() + 1 != n {
        violations.push(format!("C_iii: rank(Z) = {} but n - 1 = {}", z.rank(), n - 1));
        return Ok(GraphReport {
            ok: false,
            violations,
        });
    }
    // C_i / C_ii: topology, counts, and mark placement.
    match g.topology {
        GraphTopology::Circle => {
            if g.vertices.is_empty() || g.vertices.len() % 2 != 0 {
                violations.push(format!(
                    "C_i: a circle graph needs an even positive vertex count, got {}",
                    g.vertices.len()
                ));
            }
            if g.vertices.iter().any(|m| matches!(m, Mark::Couple { .. })) {
                violations.push("C_ii: couples are only allowed at interval ends".into());
            }
        }
        GraphTopology::Interval => {
            if g.vertices.is_empty() {
                violations.push("C_i: an interval graph needs at least one vertex".into());
            }
            for (i, m) in g.vertices.iter().enumerate() {
                let is_end = i == 0 || i + 1 == g.vertices.len();
                if !is_end && matches!(m, Mark::Couple { .. }) {
                    violations.push(format!(
                        "C_ii: interior vertex {i} carries a couple"
                    ));
                }
            }
        }
    }
    // C_iv: transversality, primitivity of couple vectors, alternating sides.
    let phi = side_functional(z)?;
    let mut signs = Vec::with_capacity(g.vertices.len());
    for (i, m) in g.vertices.iter().enumerate() {
        let v = m.vector();
        if v.len() != n {
            return Err(Error::DimensionMismatch(format!("mark {i} vector length")));
        }
        let s = dot(&phi, v);
        if s.is_zero() {
            violations.push(format!(
                "C_iv: mark {i} lies in the hyperplane spanned by Z"
            ));
        }
        signs.push(s);
        if let Mark::Couple { w, .. } = m {
            match z.is_primitive(w) {
                Ok(true) => {}
                Ok(false) => violations.push(format!("C_iv: couple vector at {i} is imprimitive")),
                Err(_) => violations.push(format!("C_iv: couple vector at {i} is not in Z")),
            }
        }
    }
    let pairs: Vec<(usize, usize)> = match g.topology {
        GraphTopology::Interval => (1..g.vertices.len()).map(|i| (i - 1, i)).collect(),
        GraphTopology::Circle => (0..g.vertices.len())
            .map(|i| (i, (i + 1) % g.vertices.len()))
            .collect(),
    };
    for (i, j) in pairs {
        if i == j {
            continue;
        }
        if !(&signs[i] * &signs[j]).is_negative() && !signs[i].is_zero() && !signs[j].is_zero() {
            violations.push(format!(
                "C_iv: consecutive marks {i}, {j} lie on the same side of Z"
            ));
        }
    }
    Ok(GraphReport {
        ok: violations.is_empty(),
        violations,
    })
}

/// Case letter of the classification: a = circle, and for intervals d = two
/// couples, c = one couple, b = no couples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLetter {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub case: CaseLetter,
    pub name: String,
}

fn canonical_lens_q(p: &Int, q: &Int) -> Int {
    // L(p, q), L(p, -q), L(p, q^-1), L(p, -q^-1) are all homeomorphic; pick
    // the smallest representative so the name is invariant under vertex
    // reversal and couple sign changes.
    let q = q.mod_floor(p);
    let mut candidates = vec![q.clone(), (-&q).mod_floor(p)];
    let e = q.extended_gcd(p);
    if e.gcd.is_one() {
        let inv = e.x.mod_floor(p);
        candidates.push(inv.clone());
        candidates.push((-inv).mod_floor(p));
    }
    candidates.into_iter().min().unwrap()
}

/// Classify a valid marked graph: case letter, plus the manifold name for
/// n <= 3 where the classification determines it.
pub fn classify_case(g: &MarkedGraph, z: &IntegerLattice) -> Result<Classification> {
    let report = validate_marked_graph(g, z)?;
    if !report.ok {
        return Err(Error::InvalidArgument(format!(
            "marked graph invalid: {}",
            report.violations.join("; ")
        )));
    }
    let n = g.ambient_dim;
    if g.topology == GraphTopology::Circle {
        let name = match n {
            2 => "T^2".to_string(),
            3 => "T^3".to_string(),
            _ => format!("T^{n}"),
        };
        return Ok(Classification {
            case: CaseLetter::A,
            name,
        });
    }
    let first = g.vertices.first().expect("validated nonempty");
    let last = g.vertices.last().expect("validated nonempty");
    let couples = [first, last]
        .iter()
        .filter(|m| matches!(m, Mark::Couple { .. }))
        .count();
    let case = match couples {
        2 => CaseLetter::D,
        1 => CaseLetter::C,
        _ => CaseLetter::B,
    };
    let name = match (n, case) {
        (2, CaseLetter::D) => "S^2".to_string(),
        (2, CaseLetter::C) => "RP^2".to_string(),
        (2, CaseLetter::B) => "Klein bottle".to_string(),
        (3, CaseLetter::D) => {
            let (Mark::Couple { w: w1, .. }, Mark::Couple { w: w2, .. }) = (first, last) else {
                unreachable!("case d has couples at both ends");
            };
            let c1 = z
                .coords(w1)
                .ok_or_else(|| Error::Membership("couple vector not in Z".into()))?;
            let c2 = z
                .coords(w2)
                .ok_or_else(|| Error::Membership("couple vector not in Z".into()))?;
            let neg: Vec<Int> = c1.iter().map(|x| -x).collect();
            if c2 == c1 || c2 == neg {
                "S^2 x S^1".to_string()
            } else {
                let p = (&c1[0] * &c2[1] - &c1[1] * &c2[0]).abs();
                if p.is_one() {
                    "S^3".to_string()
                } else {
                    // Map c1 to (1, 0) by a unimodular matrix from the
                    // extended gcd; q is the image of c2's first coordinate.
                    let e = c1[0].extended_gcd(&c1[1]);
                    let q = &e.x * &c2[0] + &e.y * &c2[1];
                    format!("L({p}, {})", canonical_lens_q(&p, &q))
                }
            }
        }
        _ => format!(
            "case {} (n = {n})",
            match case {
                CaseLetter::A => "a",
                CaseLetter::B => "b",
                CaseLetter::C => "c",
                CaseLetter::D => "d",
            }
        ),
    };
    Ok(Classification { case, name })
}

// ---------------------------------------------------------------------------
// Monodromy: decomposition, retwisting, compatibility.

/// An element of R^n / Z_rho.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyElement {
    pub representative: Vec<Rat>,
    pub modulus: IntegerLattice,
}

impl MonodromyElement {
    pub fn new(representative: Vec<Rat>, modulus: IntegerLattice) -> Result<Self> {
        if representative.len() != modulus.ambient_dim() {
            return Err(Error::DimensionMismatch("monodromy representative".into()));
        }
        Ok(Self {
            representative,
            modulus,
        })
    }

    /// Equality modulo Z_rho.
    pub fn eq_mod(&self, other: &Self) -> bool {
        self.modulus == other.modulus && {
            let diff: Vec<Rat> = self
                .representative
                .iter()
                .zip(other.representative.iter())
                .map(|(a, b)| a - b)
                .collect();
            self.modulus.contains_rational(&diff)
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.modulus.contains_rational(&self.representative)
    }

    fn scaled(&self, m: &Int) -> Vec<Rat> {
        let f = Rat::from_integer(m.clone());
        self.representative.iter().map(|x| x * &f).collect()
    }
}

/// A finite presentation of H_1(M, Z)/tau(Z_rho): generators are the columns
/// of the relation matrix after Smith reduction, with cached orders (0 means
/// a free generator, 1 a trivial one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianPresentation {
    pub relation_matrix: Vec<Vec<Int>>,
    pub generator_count: usize,
    pub orders: Vec<Int>,
}

impl AbelianPresentation {
    pub fn new(relation_matrix: Vec<Vec<Int>>, generator_count: usize) -> Result<Self> {
        if relation_matrix.iter().any(|r| r.len() != generator_count) {
            return Err(Error::DimensionMismatch("relation row length".into()));
        }
        let (_, d, _) = crate::exact::intmat::smith(&relation_matrix);
        let mut orders = vec![Int::zero(); generator_count];
        for (i, order) in orders.iter_mut().enumerate() {
            if i < relation_matrix.len() && i < generator_count {
                *order = d[i][i].clone();
            }
        }
        Ok(Self {
            relation_matrix,
            generator_count,
            orders,
        })
    }
}

/// The split of a monodromy map along the torsion/free decomposition, with
/// original generator indices retained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyDecomposition {
    pub torsion: Vec<(usize, Int, MonodromyElement)>,
    pub free: Vec<(usize, MonodromyElement)>,
    pub generator_count: usize,
}

/// Split mu along the Smith-form generators: order-m generators (m >= 1) go
/// to the torsion part and must map to elements killed by m (m·rep in Z_rho;
/// order-1 generators must map to 0 mod Z_rho); order-0 generators are free.
pub fn monodromy_decompose(
    p: &AbelianPresentation,
    mu: &[MonodromyElement],
) -> Result<MonodromyDecomposition> {
    if mu.len() != p.generator_count {
        return Err(Error::DimensionMismatch(
            "one monodromy value per generator".into(),
        ));
    }
    let mut torsion = Vec::new();
    let mut free = Vec::new();
    for (i, (order, elem)) in p.orders.iter().zip(mu.iter()).enumerate() {
        if order.is_zero() {
            free.push((i, elem.clone()));
        } else {
            let scaled = elem.scaled(order);
            if !elem.modulus.contains_rational(&scaled) {
                return Err(Error::InvalidArgument(format!(
                    "generator {i} has order {order} but {order}·mu is not in Z_rho"
                )));
            }
            torsion.push((i, order.clone(), elem.clone()));
        }
    }
    Ok(MonodromyDecomposition {
        torsion,
        free,
        generator_count: p.generator_count,
    })
}

/// Reassemble mu' = mu_torsion + mu'_free: the torsion part is preserved
/// verbatim, the free slots are replaced in order.
pub fn monodromy_retwist(
    decomp: &MonodromyDecomposition,
    new_free: &[MonodromyElement],
) -> Result<Vec<MonodromyElement>> {
    if new_free.len() != decomp.free.len() {
        return Err(Error::DimensionMismatch(
            "one replacement per free generator".into(),
        ));
    }
    let mut out: Vec<Option<MonodromyElement>> = vec![None; decomp.generator_count];
    for (i, _, elem) in &decomp.torsion {
        out[*i] = Some(elem.clone());
    }
    for ((i, _), elem) in decomp.free.iter().zip(new_free.iter()) {
        out[*i] = Some(elem.clone());
    }
    out.into_iter()
        .enumerate()
        .map(|(i, e)| e.ok_or_else(|| Error::InvalidArgument(format!("generator {i} unset"))))
        .collect()
}

/// Compatibility condition: for every witness (loop class gamma as integer
/// coefficients over the generators, target w in Z_rho tensor R), check
/// mu(gamma) = w mod Z_rho.
pub fn twisting_compatibility(
    witnesses: &[(Vec<Int>, Vec<Rat>)],
    mu: &[MonodromyElement],
    modulus: &IntegerLattice,
) -> Result<bool> {
    for (coeffs, w) in witnesses {
        if coeffs.len() != mu.len() {
            return Err(Error::DimensionMismatch("witness loop coefficients".into()));
        }
        if modulus.span_coords(w).is_none() {
            return Err(Error::Precondition(
                "witness target must lie in Z_rho tensor R".into(),
            ));
        }
        let n = modulus.ambient_dim();
        let mut value = vec![Rat::zero(); n];
        for (c, elem) in coeffs.iter().zip(mu.iter()) {
            let f = Rat::from_integer(c.clone());
            for (acc, x) in value.iter_mut().zip(elem.representative.iter()) {
                *acc = &*acc + &(x * &f);
            }
        }
        let diff: Vec<Rat> = value.iter().zip(w.iter()).map(|(a, b)| a - b).collect();
        if !modulus.contains_rational(&diff) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// 2D totally hyperbolic arrangements.

/// A combinatorial arrangement of singular curves on a surface: each domain
/// lists its boundary curves in cyclic order; the orientation flag says
/// whether that order is counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement2D {
    pub curve_count: usize,
    pub domains: Vec<Vec<usize>>,
    pub orientation_flags: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArrangementResult {
    /// One angle (in turns, in [0, 1)) per curve.
    Feasible(Vec<Rat>),
    /// A minimal infeasible subset of domain indices.
    Infeasible(Vec<usize>),
}

const MAX_ARRANGEMENT_CURVES: usize = 10;

fn validate_arrangement(a: &Arrangement2D) -> Result<()> {
    if a.curve_count == 0 || a.curve_count > MAX_ARRANGEMENT_CURVES {
        return Err(Error::InvalidArgument(format!(
            "curve count must be 1..={MAX_ARRANGEMENT_CURVES}"
        )));
    }
    if a.orientation_flags.len() != a.domains.len() {
        return Err(Error::DimensionMismatch(
            "one orientation flag per domain".into(),
        ));
    }
    let mut seen = vec![false; a.curve_count];
    for (i, d) in a.domains.iter().enumerate() {
        if d.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "domain {i} needs at least 3 boundary curves"
            )));
        }
        let distinct: BTreeSet<usize> = d.iter().copied().collect();
        if distinct.len() != d.len() {
            return Err(Error::InvalidArgument(format!(
                "domain {i} repeats a boundary curve"
            )));
        }
        for &c in d {
            if c >= a.curve_count {
                return Err(Error::InvalidArgument(format!(
                    "domain {i} references unknown curve {c}"
                )));
            }
            seen[c] = true;
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::InvalidArgument(
            "every curve must appear in some domain boundary".into(),
        ));
    }
    Ok(())
}

/// Number of cyclic descents of a position sequence; a sequence is strictly
/// cyclically increasing iff this is exactly one.
fn cyclic_descents(positions: &[usize]) -> usize {
    let m = positions.len();
    (0..m)
        .filter(|&i| positions[(i + 1) % m] <= positions[i])
        .count()
}

/// Check one domain against a global circular ordering and, if compatible,
/// append its angular-gap constraints (each consecutive boundary arc covers
/// less than half a turn) to `strict` over the gap variables g_0..g_{N-1}.
fn domain_constraints(
    boundary: &[usize],
    ccw: bool,
    pos: &[usize],
    ncurves: usize,
    strict: &mut Vec<Vec<Rat>>,
) -> bool {
    let seq: Vec<usize> = if ccw {
        boundary.iter().map(|&c| pos[c]).collect()
    } else {
        boundary.iter().rev().map(|&c| pos[c]).collect()
    };
    if cyclic_descents(&seq) != 1 {
        return false;
    }
    // Arc from position p to position q (ccw): sum of gaps g_p, ..., g_{q-1}
    // cyclically. Constraint: (sum of all gaps)/2 - arc > 0.
    let m = seq.len();
    for i in 0..m {
        let (p, q) = (seq[i], seq[(i + 1) % m]);
        let mut row = vec![frac(1, 2); ncurves];
        let mut j = p;
        while j != q {
            row[j] = &row[j] - &rat(1);
            j = (j + 1) % ncurves;
        }
        strict.push(row);
    }
    true
}

/// Try every circular ordering of the curves (curve 0 pinned) in
/// lexicographic order; return the first angle assignment satisfying every
/// domain in `active`.
fn search_orderings(a: &Arrangement2D, active: &[usize]) -> Option<Vec<Rat>> {
    let n = a.curve_count;
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best: Option<Vec<Rat>> = None;
    permute(&mut rest, 0, &mut |perm| {
        if best.is_some() {
            return;
        }
        let order: Vec<usize> = std::iter::once(0).chain(perm.iter().copied()).collect();
        let mut pos = vec![0usize; n];
        for (p, &c) in order.iter().enumerate() {
            pos[c] = p;
        }
        // Gap variables g_p for p = 0..n-1 (from position p to p+1 mod n).
        let mut strict: Vec<Vec<Rat>> = Vec::new();
        for p in 0..n {
            let mut row = vec![Rat::zero(); n];
            row[p] = rat(1);
            strict.push(row);
        }
        for &di in active {
            if !domain_constraints(&a.domains[di], a.orientation_flags[di], &pos, n, &mut strict) {
                return;
            }
        }
        let Some(g) = feasibility::strict_positive(&strict, n) else {
            return;
        };
        let total: Rat = g.iter().fold(Rat::zero(), |s, x| s + x);
        let mut angles = vec![Rat::zero(); n];
        let mut acc = Rat::zero();
        for p in 0..n {
            let c = order[p];
            angles[c] = &acc / &total;
            acc = &acc + &g[p];
        }
        best = Some(angles);
    });
    best
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
    // Restore lexicographic enumeration order: the swap scheme above visits
    // permutations in a deterministic (not lexicographic) order, which is
    // all the returned-certificate contract needs.
}

/// Decide whether the arrangement is realizable by one angle per curve such
/// that every domain's boundary is strictly cyclically monotone with all
/// consecutive gaps below half a turn. Infeasible answers carry a minimal
/// infeasible domain subset.
pub fn check_2d_arrangement(a: &Arrangement2D) -> Result<ArrangementResult> {
    validate_arrangement(a)?;
    let all: Vec<usize> = (0..a.domains.len()).collect();
    if let Some(angles) = search_orderings(a, &all) {
        return Ok(ArrangementResult::Feasible(angles));
    }
    // Minimal infeasible certificate by iterative dropping.
    let mut cert = all;
    let mut i = 0;
    while i < cert.len() {
        let mut trial = cert.clone();
        trial.remove(i);
        if search_orderings(a, &trial).is_none() {
            cert = trial;
        } else {
            i += 1;
        }
    }
    Ok(ArrangementResult::Infeasible(cert))
}
