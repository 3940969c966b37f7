//! The toric ideal `J` of `P_w`, its term order and the quadratic type A /
//! type B binomials whose leading terms generate the initial ideal.
//!
//! Variables `X_u` are the level-1 points of `P_w ∩ M`, indexed in
//! lexicographic order of their coordinates.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::HilbertFunction;
use crate::polytope::{
    balanced_pair_in, build_pw, lattice_points, normality_check, point_index, HPolytope, LatticePoint,
    NormalityReport,
};
use crate::weights::WeightVector;

/// Variables of the toric ring of `P_w` and the data needed to order
/// monomials in them.
#[derive(Clone, Debug)]
pub struct TermOrderContext {
    weights: WeightVector,
    polytope: HPolytope,
    variables: Vec<LatticePoint>,
    index: HashMap<Vec<i64>, usize>,
}

impl TermOrderContext {
    pub fn new(w: &WeightVector) -> Result<Self> {
        let polytope = build_pw(w)?;
        let variables = lattice_points(&polytope, 1)?;
        let index = point_index(&variables);
        Ok(Self { weights: w.clone(), polytope, variables, index })
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn polytope(&self) -> &HPolytope {
        &self.polytope
    }

    pub fn variables(&self) -> &[LatticePoint] {
        &self.variables
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    pub fn index_of(&self, coords: &[i64]) -> Result<usize> {
        self.index
            .get(coords)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(format!("{coords:?}")))
    }

    /// Monomial from variable indices in any order.
    pub fn monomial(&self, mut vars: Vec<usize>) -> ToricMonomial {
        vars.sort_unstable();
        let dim = self.polytope.dim;
        let mut multidegree = vec![0; dim];
        let mut norm = 0;
        for &v in &vars {
            for (acc, &c) in multidegree.iter_mut().zip(&self.variables[v].coords) {
                *acc += c;
                norm += c * c;
            }
        }
        ToricMonomial { vars, multidegree, norm }
    }

    pub fn monomial_of_points(&self, points: &[&[i64]]) -> Result<ToricMonomial> {
        let vars = points.iter().map(|p| self.index_of(p)).collect::<Result<Vec<_>>>()?;
        Ok(self.monomial(vars))
    }

    pub fn points_of(&self, m: &ToricMonomial) -> Vec<Vec<i64>> {
        m.vars.iter().map(|&v| self.variables[v].coords.clone()).collect()
    }
}

/// A monomial `Π X_u` stored as a sorted multiset of variable indices with
/// cached multidegree `Σu` and norm `Σ_t Σ_i u_t(i)^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToricMonomial {
    vars: Vec<usize>,
    multidegree: Vec<i64>,
    norm: i64,
}

impl ToricMonomial {
    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    pub fn multidegree(&self) -> &[i64] {
        &self.multidegree
    }

    pub fn norm(&self) -> i64 {
        self.norm
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut vars = self.vars.clone();
        vars.extend_from_slice(&other.vars);
        vars.sort_unstable();
        let multidegree = self.multidegree.iter().zip(&other.multidegree).map(|(a, b)| a + b).collect();
        Self { vars, multidegree, norm: self.norm + other.norm }
    }

    /// Whether `other` divides `self` as a multiset.
    pub fn divisible_by(&self, other: &Self) -> bool {
        let mut it = self.vars.iter();
        other.vars.iter().all(|v| it.by_ref().any(|x| x == v))
    }

    /// `self / other`; `other` must divide `self`.
    fn div(&self, other: &Self) -> Self {
        let mut vars = Vec::with_capacity(self.vars.len() - other.vars.len());
        let mut rest = other.vars.iter().peekable();
        for &v in &self.vars {
            if rest.peek() == Some(&&v) {
                rest.next();
            } else {
                vars.push(v);
            }
        }
        let multidegree = self.multidegree.iter().zip(&other.multidegree).map(|(a, b)| a - b).collect();
        Self { vars, multidegree, norm: self.norm - other.norm }
    }

    /// Least common multiple as multisets.
    fn lcm(&self, other: &Self, ctx: &TermOrderContext) -> Self {
        let mut vars = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() || j < other.vars.len() {
            match (self.vars.get(i), other.vars.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    vars.push(*a);
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    vars.push(*a);
                    i += 1;
                }
                (Some(a), None) => {
                    vars.push(*a);
                    i += 1;
                }
                (_, Some(b)) => {
                    vars.push(*b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        ctx.monomial(vars)
    }

    fn coprime(&self, other: &Self) -> bool {
        self.vars.iter().all(|v| other.vars.binary_search(v).is_err())
    }
}

/// Reverse-lexicographic comparison of exponent vectors: at the first
/// variable whose exponents differ, the larger exponent is the smaller
/// monomial.
fn grevlex_tail(a: &[usize], b: &[usize]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        let x = match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (Some(&x), Some(&y)) => x.min(y),
        };
        let ca = a[i..].iter().take_while(|&&v| v == x).count();
        let cb = b[j..].iter().take_while(|&&v| v == x).count();
        if ca != cb {
            return cb.cmp(&ca);
        }
        i += ca;
        j += cb;
    }
}

impl Ord for ToricMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.norm.cmp(&other.norm))
            .then_with(|| grevlex_tail(&self.vars, &other.vars))
    }
}

impl PartialOrd for ToricMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The term order: degree, then norm, then reverse lexicographic.
pub fn compare(a: &ToricMonomial, b: &ToricMonomial) -> Ordering {
    a.cmp(b)
}

/// Whether `lhs - rhs` lies in the toric ideal.
pub fn is_in_j(lhs: &ToricMonomial, rhs: &ToricMonomial) -> bool {
    lhs.degree() == rhs.degree() && lhs.multidegree == rhs.multidegree
}

/// No two factors differ by more than 2 in any coordinate.
pub fn is_norm_minimal(ctx: &TermOrderContext, m: &ToricMonomial) -> bool {
    (0..ctx.polytope.dim).all(|i| {
        let coords = m.vars.iter().map(|&v| ctx.variables[v].coords[i]);
        let (lo, hi) = coords.fold((i64::MAX, i64::MIN), |(lo, hi), c| (lo.min(c), hi.max(c)));
        m.vars.is_empty() || hi - lo <= 2
    })
}

/// Exchanges the coordinates `u(j), ..., u(n-2)` of `u` and `v`.
pub fn tail_swap(u: &LatticePoint, v: &LatticePoint, j: usize) -> (LatticePoint, LatticePoint) {
    let cut = j - 2;
    let mut u2 = u.coords[..cut].to_vec();
    u2.extend_from_slice(&v.coords[cut..]);
    let mut v2 = v.coords[..cut].to_vec();
    v2.extend_from_slice(&u.coords[cut..]);
    (LatticePoint::new(u2, u.level), LatticePoint::new(v2, v.level))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    A,
    B { position: usize },
}

/// `lhs - rhs` with `lhs` the leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToricBinomial {
    pub lhs: ToricMonomial,
    pub rhs: ToricMonomial,
    pub kind: RelationKind,
}

/// One type A relation per quadratic monomial that is not norm-minimal,
/// with the balanced pair of the two factors as trailing term.
pub fn generate_type_a(ctx: &TermOrderContext) -> Result<Vec<ToricBinomial>> {
    let n = ctx.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let out: Result<Vec<Option<ToricBinomial>>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let lhs = ctx.monomial(vec![i, j]);
            if is_norm_minimal(ctx, &lhs) {
                return Ok(None);
            }
            let (u, u2) = balanced_pair_in(&ctx.polytope, &ctx.variables[i], &ctx.variables[j], &ctx.weights)?;
            let rhs = ctx.monomial(vec![ctx.index_of(&u.coords)?, ctx.index_of(&u2.coords)?]);
            Ok(Some(ToricBinomial { lhs, rhs, kind: RelationKind::A }))
        })
        .collect();
    Ok(out?.into_iter().flatten().collect())
}

fn triangle_ok(x: i64, y: i64, z: i64) -> bool {
    x + y >= z && y + z >= x && z + x >= y
}

/// Tail swaps at positions `3 <= j <= n-2` allowed by the triangle
/// inequalities, oriented by the term order and deduplicated as unordered
/// relations (smallest position kept).
pub fn generate_type_b(ctx: &TermOrderContext) -> Vec<ToricBinomial> {
    let n = ctx.weights.n();
    let vars = &ctx.variables;
    let found: Vec<(ToricMonomial, ToricMonomial, usize)> = (0..vars.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut local = Vec::new();
            for b in 0..vars.len() {
                let (u, v) = (&vars[a], &vars[b]);
                for j in 3..=n.saturating_sub(2) {
                    let wj = ctx.weights.get(j);
                    // u(j-1) is coords[j-3], u(j) is coords[j-2]
                    if !triangle_ok(u.coords[j - 3], wj, v.coords[j - 2])
                        || !triangle_ok(v.coords[j - 3], wj, u.coords[j - 2])
                    {
                        continue;
                    }
                    let (u2, v2) = tail_swap(u, v, j);
                    let (Ok(iu), Ok(iv)) = (ctx.index_of(&u2.coords), ctx.index_of(&v2.coords)) else {
                        continue;
                    };
                    let before = ctx.monomial(vec![a, b]);
                    let after = ctx.monomial(vec![iu, iv]);
                    if before == after {
                        continue;
                    }
                    let (lhs, rhs) = if before > after { (before, after) } else { (after, before) };
                    local.push((lhs, rhs, j));
                }
            }
            local
        })
        .collect();
    let mut best: BTreeMap<(Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
    let mut monomials = HashMap::new();
    for (lhs, rhs, j) in found {
        let key = (lhs.vars.clone(), rhs.vars.clone());
        let slot = best.entry(key).or_insert(j);
        *slot = (*slot).min(j);
        monomials.entry((lhs.vars.clone(), rhs.vars.clone())).or_insert((lhs, rhs));
    }
    best.into_iter()
        .map(|(key, position)| {
            let (lhs, rhs) = monomials.remove(&key).expect("recorded");
            ToricBinomial { lhs, rhs, kind: RelationKind::B { position } }
        })
        .collect()
}

/// Type A relations followed by type B relations.
pub fn generate_basis(ctx: &TermOrderContext) -> Result<Vec<ToricBinomial>> {
    let mut basis = generate_type_a(ctx)?;
    basis.extend(generate_type_b(ctx));
    Ok(basis)
}

/// Leading terms of all type A and type B relations.
pub fn initial_ideal_leads(ctx: &TermOrderContext) -> Result<BTreeSet<ToricMonomial>> {
    Ok(generate_basis(ctx)?.into_iter().map(|b| b.lhs).collect())
}

struct Compatibility {
    words: usize,
    // bit j of row i: X_i X_j is not a lead
    rows: Vec<Vec<u64>>,
}

impl Compatibility {
    fn new(vars: usize, leads: &BTreeSet<ToricMonomial>) -> Self {
        let words = vars.div_ceil(64).max(1);
        let mut rows = vec![vec![u64::MAX; words]; vars];
        for lead in leads.iter().filter(|l| l.degree() == 2) {
            let (i, j) = (lead.vars[0], lead.vars[1]);
            rows[i][j / 64] &= !(1 << (j % 64));
            rows[j][i / 64] &= !(1 << (i % 64));
        }
        Self { words, rows }
    }

    fn count(&self, allowed: Vec<u64>, remaining: usize, memo: &mut HashMap<(Vec<u64>, usize), u64>) -> u64 {
        if remaining == 0 {
            return 1;
        }
        if let Some(&c) = memo.get(&(allowed.clone(), remaining)) {
            return c;
        }
        let mut total = 0;
        for (w, &word) in allowed.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let x = w * 64 + b;
                let mut next: Vec<u64> = allowed.iter().zip(&self.rows[x]).map(|(a, r)| a & r).collect();
                // keep only variables >= x so each multiset is generated once
                for (k, word) in next.iter_mut().enumerate().take(w + 1) {
                    if k < w {
                        *word = 0;
                    } else {
                        *word &= u64::MAX << b;
                    }
                }
                total += self.count(next, remaining - 1, memo);
            }
        }
        memo.insert((allowed, remaining), total);
        total
    }

    fn full(&self, vars: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.words];
        for x in 0..vars {
            v[x / 64] |= 1 << (x % 64);
        }
        v
    }
}

/// Standard monomials of degrees `0..=max_degree` for a set of quadratic
/// leads.
fn standard_counts(vars: usize, leads: &BTreeSet<ToricMonomial>, max_degree: usize) -> Vec<u64> {
    let compat = Compatibility::new(vars, leads);
    let mut memo = HashMap::new();
    (0..=max_degree).map(|d| compat.count(compat.full(vars), d, &mut memo)).collect()
}

/// Degree-`d` monomials divisible by no lead.
pub fn standard_monomial_count(ctx: &TermOrderContext, d: usize) -> Result<u64> {
    let leads = initial_ideal_leads(ctx)?;
    Ok(standard_counts(ctx.len(), &leads, d)[d])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCount {
    pub degree: u64,
    pub standard: u64,
    pub lattice: u64,
    pub hilbert: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroebnerReport {
    pub weights: WeightVector,
    pub variables: usize,
    pub type_a: usize,
    pub type_b: usize,
    pub degrees: Vec<DegreeCount>,
    pub normality: NormalityReport,
}

impl GroebnerReport {
    pub fn mismatch(&self) -> Option<u64> {
        self.degrees
            .iter()
            .find(|c| c.standard != c.lattice || c.lattice != c.hilbert)
            .map(|c| c.degree)
    }

    pub fn passed(&self) -> bool {
        self.mismatch().is_none() && self.normality.passed()
    }
}

/// Compares, for each `d <= max_degree`, the standard monomials of the
/// type A/B leads with `|dP_w ∩ M|` and with `h(d)`. Since every lead lies
/// in the initial ideal, equality certifies that the leads generate it up to
/// that degree. Normality is checked up to the same degree because the
/// variables only generate the semigroup when it holds.
pub fn groebner_certify(w: &WeightVector, max_degree: u64) -> Result<GroebnerReport> {
    if max_degree < 2 {
        return Err(Error::InvalidArgument(format!("certification degree must be at least 2, got {max_degree}")));
    }
    let ctx = TermOrderContext::new(w)?;
    let type_a = generate_type_a(&ctx)?;
    let type_b = generate_type_b(&ctx);
    let leads: BTreeSet<ToricMonomial> = type_a.iter().chain(&type_b).map(|b| b.lhs.clone()).collect();
    let standard = standard_counts(ctx.len(), &leads, max_degree as usize);
    let h = HilbertFunction::new(w);
    let mut degrees = Vec::new();
    for d in 0..=max_degree {
        let lattice = lattice_points(&ctx.polytope, d)?.len() as u64;
        let hilbert: i128 = h.at(d);
        degrees.push(DegreeCount { degree: d, standard: standard[d as usize], lattice, hilbert: hilbert as u64 });
    }
    Ok(GroebnerReport {
        weights: w.clone(),
        variables: ctx.len(),
        type_a: type_a.len(),
        type_b: type_b.len(),
        degrees,
        normality: normality_check(w, max_degree)?,
    })
}

/// Rewrites binomials `a - b` by the relations, always reducing the larger
/// term, until the two sides meet or the larger side is irreducible.
pub struct Reducer<'a> {
    ctx: &'a TermOrderContext,
    basis: &'a [ToricBinomial],
}

impl<'a> Reducer<'a> {
    pub fn new(ctx: &'a TermOrderContext, basis: &'a [ToricBinomial]) -> Self {
        Self { ctx, basis }
    }

    fn rewrite(&self, m: &ToricMonomial) -> Option<ToricMonomial> {
        self.basis
            .iter()
            .find(|g| m.divisible_by(&g.lhs))
            .map(|g| m.div(&g.lhs).mul(&g.rhs))
    }

    /// Remainder of `a - b`, or `None` when it reduces to zero.
    pub fn reduce(&self, a: &ToricMonomial, b: &ToricMonomial) -> Option<(ToricMonomial, ToricMonomial)> {
        let (mut a, mut b) = (a.clone(), b.clone());
        loop {
            match a.cmp(&b) {
                Ordering::Equal => return None,
                Ordering::Less => std::mem::swap(&mut a, &mut b),
                Ordering::Greater => {}
            }
            match self.rewrite(&a) {
                Some(next) => a = next,
                None => return Some((a, b)),
            }
        }
    }

    /// Remainder of the S-binomial of `basis[i]` and `basis[j]`.
    pub fn s_remainder(&self, i: usize, j: usize) -> Option<(ToricMonomial, ToricMonomial)> {
        let (f, g) = (&self.basis[i], &self.basis[j]);
        let l = f.lhs.lcm(&g.lhs, self.ctx);
        let a = l.div(&f.lhs).mul(&f.rhs);
        let b = l.div(&g.lhs).mul(&g.rhs);
        self.reduce(&a, &b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuchbergerFailure {
    pub first: usize,
    pub second: usize,
    pub remainder_lhs: Vec<Vec<i64>>,
    pub remainder_rhs: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuchbergerReport {
    pub weights: WeightVector,
    pub generators: usize,
    pub pairs_checked: usize,
    pub failures: Vec<BuchbergerFailure>,
}

impl BuchbergerReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Default bound on the number of variables for [`buchberger_check`].
pub const BUCHBERGER_VARIABLE_LIMIT: usize = 64;

/// Buchberger's criterion for the type A/B binomials: every S-binomial of
/// two generators with overlapping leads reduces to zero.
pub fn buchberger_check(w: &WeightVector, variable_limit: usize) -> Result<BuchbergerReport> {
    let ctx = TermOrderContext::new(w)?;
    if ctx.len() > variable_limit {
        return Err(Error::TooManyVariables { count: ctx.len(), limit: variable_limit });
    }
    let basis = generate_basis(&ctx)?;
    let reducer = Reducer::new(&ctx, &basis);
    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (i + 1..basis.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| !basis[i].lhs.coprime(&basis[j].lhs))
        .collect();
    let failures = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            reducer.s_remainder(i, j).map(|(a, b)| BuchbergerFailure {
                first: i,
                second: j,
                remainder_lhs: ctx.points_of(&a),
                remainder_rhs: ctx.points_of(&b),
            })
        })
        .collect();
    Ok(BuchbergerReport { weights: w.clone(), generators: basis.len(), pairs_checked: pairs.len(), failures })
}

/// True when no lead is a square `X_v^2`.
pub fn radical_certificate(w: &WeightVector) -> Result<bool> {
    let ctx = TermOrderContext::new(w)?;
    Ok(initial_ideal_leads(&ctx)?.iter().all(|m| m.vars.windows(2).all(|p| p[0] != p[1])))
}

/// One relation in exported form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisEntry {
    #[serde(rename = "type")]
    pub kind: &'static str,
    pub lhs: Vec<Vec<i64>>,
    pub rhs: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
}

pub fn export_basis(ctx: &TermOrderContext, basis: &[ToricBinomial]) -> Vec<BasisEntry> {
    basis
        .iter()
        .map(|b| {
            let (kind, position) = match b.kind {
                RelationKind::A => ("A", None),
                RelationKind::B { position } => ("B", Some(position)),
            };
            BasisEntry { kind, lhs: ctx.points_of(&b.lhs), rhs: ctx.points_of(&b.rhs), position }
        })
        .collect()
}
