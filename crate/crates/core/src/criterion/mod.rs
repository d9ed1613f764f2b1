//! Deciding `I^(n) ⊆ I^m` for `I = I₂(M)` from the presentation of the
//! Rees algebra `S/(F, G)`, `S = R[T1, T2, T3]`.
//!
//! The containment holds iff for every T-monomial `T^(i,j,k)` of degree
//! `m − 2` the element `f1^u f2^v f3^w T^(i+u, j+v, k+w)` (any `u+v+w = n−m`)
//! lies in the `R`-span of the columns of `H_n`, read as elements of `S` of
//! T-degree `n − 2`.

mod matrices;

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use parking_lot::Mutex;
use rayon::prelude::*;

use crate::curves::CurveMatrix;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, buchberger_truncated, GroebnerBasis, ResourceLimits, Truncation};
use crate::idealops::quasi_homogeneous_weights;
use crate::polyring::{Field, Monomial, Polynomial, Ring, RingRef, TermOrder};
use crate::symbolic::{ContainmentReport, Method, Outcome};

pub use matrices::{
    apply_lift, build_h, build_v, build_v_with, commutation_defects, t_label, t_monomials, CommutationDefect, Lift,
    LiftEntry, LiftMatrix, StrandMatrix, Tag,
};

/// `S = R[T1,T2,T3]` with `F = Σ a_l T_l`, `G = Σ b_l T_l` and the
/// truncated bases of the column ideals of `H_n`.
#[derive(Debug)]
pub struct CriterionContext<F: Field> {
    matrix: CurveMatrix<F>,
    s: RingRef<F>,
    minors: [Polynomial<F>; 3],
    f: Polynomial<F>,
    g: Polynomial<F>,
    gb_fg: GroebnerBasis<F>,
    limits: ResourceLimits,
    strands: Mutex<HashMap<u32, Arc<GroebnerBasis<F>>>>,
}

pub fn build_context<F: Field>(m: &CurveMatrix<F>) -> Result<CriterionContext<F>> {
    build_context_with_limits(m, ResourceLimits::default())
}

pub fn build_context_with_limits<F: Field>(m: &CurveMatrix<F>, limits: ResourceLimits) -> Result<CriterionContext<F>> {
    let r = m.ring();
    if r.nvars() != 3 {
        return Err(Error::Structural("the criterion needs a matrix over a three-variable ring".into()));
    }
    let minors_r = m.minors();
    if minors_r.iter().any(|f| f.is_zero()) {
        return Err(Error::DegenerateMatrix(format!("a 2×2 minor of [{m}] vanishes")));
    }
    let height = m.ideal()?.with_limits(limits.clone()).gb()?.height();
    if height != 2 {
        return Err(Error::DegenerateMatrix(format!("minors of [{m}] have height {height}, not 2")));
    }

    let mut names = r.vars().to_vec();
    for t in ["T1", "T2", "T3"] {
        if names.iter().any(|v| v == t) {
            return Err(Error::Structural(format!("variable name {t} is reserved")));
        }
        names.push(t.into());
    }
    let order = s_order(m)?;
    let s = Ring::new(&names, r.field().clone(), order)?;
    let embed = |p: &Polynomial<F>| p.embed(&s, &[0, 1, 2]);
    let t = |l: usize| Polynomial::var(&s, 3 + l);
    let mut f = Polynomial::zero(&s);
    let mut g = Polynomial::zero(&s);
    for l in 0..3 {
        f = f.try_add(&embed(m.a(l + 1))?.try_mul(&t(l))?)?;
        g = g.try_add(&embed(m.b(l + 1))?.try_mul(&t(l))?)?;
    }
    let minors = [embed(&minors_r[0])?, embed(&minors_r[1])?, embed(&minors_r[2])?];

    let mut images: Vec<Polynomial<F>> = (0..3).map(|i| Polynomial::var(&s, i)).collect();
    images.extend(minors.iter().cloned());
    if !f.substitute(&images)?.is_zero() || !g.substitute(&images)?.is_zero() {
        return Err(Error::Internal("F or G does not vanish at T = (f1, f2, f3)".into()));
    }
    let gb_fg = buchberger(&s, &[f.clone(), g.clone()], &limits)?;
    Ok(CriterionContext {
        matrix: m.clone(),
        s,
        minors,
        f,
        g,
        gb_fg,
        limits,
        strands: Mutex::new(HashMap::new()),
    })
}

/// A weighted order making `F` and `G` homogeneous when the matrix allows
/// one, grevlex otherwise.
fn s_order<F: Field>(m: &CurveMatrix<F>) -> Result<TermOrder> {
    let Some(w) = quasi_homogeneous_weights(&m.ideal()?) else {
        return Ok(TermOrder::Grevlex);
    };
    let degs: Vec<u64> = m.minors().iter().map(|f| f.weighted_degree(&w).unwrap_or(0)).collect();
    let k = degs.iter().max().copied().unwrap_or(0) + 1;
    let tw: Vec<u64> = degs.iter().map(|d| k - d).collect();
    let row_ok = |row: [&Polynomial<F>; 3]| {
        let mut seen = None;
        for l in 0..3 {
            if row[l].is_zero() {
                continue;
            }
            if !row[l].is_homogeneous(&w) {
                return false;
            }
            let d = row[l].weighted_degree(&w).unwrap_or(0) + tw[l];
            if *seen.get_or_insert(d) != d {
                return false;
            }
        }
        true
    };
    if !row_ok([m.a(1), m.a(2), m.a(3)]) || !row_ok([m.b(1), m.b(2), m.b(3)]) {
        return Ok(TermOrder::Grevlex);
    }
    let mut all = w.clone();
    for d in tw {
        all.push(u32::try_from(d).map_err(|_| Error::Internal("weight overflow".into()))?);
    }
    Ok(TermOrder::Weighted(all))
}

impl<F: Field> CriterionContext<F> {
    pub fn matrix(&self) -> &CurveMatrix<F> {
        &self.matrix
    }

    pub fn s_ring(&self) -> &RingRef<F> {
        &self.s
    }

    pub fn f(&self) -> &Polynomial<F> {
        &self.f
    }

    pub fn g(&self) -> &Polynomial<F> {
        &self.g
    }

    pub fn gb_fg(&self) -> &GroebnerBasis<F> {
        &self.gb_fg
    }

    pub fn limits(&self) -> &ResourceLimits {
        &self.limits
    }

    pub fn characteristic(&self) -> u64 {
        self.s.field().characteristic()
    }

    /// `f_{l+1}` as an element of `S`.
    pub fn minor_in_s(&self, l: usize) -> &Polynomial<F> {
        &self.minors[l]
    }

    /// `T^mono` in `S`, `mono` having three exponents.
    pub fn t_monomial(&self, mono: &Monomial) -> Result<Polynomial<F>> {
        let mut e = vec![0; 6];
        e[3..].copy_from_slice(mono.exps());
        Ok(Polynomial::monomial(&self.s, Monomial::new(&e)?))
    }

    /// `f1^u f2^v f3^w · T^mono` in `S`.
    pub fn target(&self, uvw: &[u32; 3], mono: &Monomial) -> Result<Polynomial<F>> {
        let mut p = self.t_monomial(mono)?;
        for (minor, &e) in self.minors.iter().zip(uvw) {
            if e > 0 {
                p = p.try_mul(&minor.pow(e)?)?;
            }
        }
        Ok(p)
    }

    /// Columns of `H_n` as elements of `S` of T-degree `n − 2`.
    pub fn strand_generators(&self, n: u32) -> Result<Vec<Polynomial<F>>> {
        let h = build_h(self, n)?;
        let rows = h.rows.iter().map(|r| self.t_monomial(r)).collect::<Result<Vec<_>>>()?;
        let mut out = Vec::with_capacity(h.cols.len());
        for c in 0..h.cols.len() {
            let mut acc = Polynomial::zero(&self.s);
            for (r, t) in rows.iter().enumerate() {
                let e = h.entry(r, c);
                if !e.is_zero() {
                    acc = acc.try_add(&e.embed(&self.s, &[0, 1, 2])?.try_mul(t)?)?;
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Basis of the column ideal of `H_n`, valid through T-degree `n − 2`.
    pub fn strand_basis(&self, n: u32) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(b) = self.strands.lock().get(&n) {
            return Ok(b.clone());
        }
        let gens = self.strand_generators(n)?;
        let grading = vec![0, 0, 0, 1, 1, 1];
        let trunc = Truncation { weights: grading, max_degree: (n - 2) as u64 };
        let basis = Arc::new(buchberger_truncated(&self.s, &gens, &self.limits, trunc)?);
        self.strands.lock().insert(n, basis.clone());
        Ok(basis)
    }

    /// Whether an element of `S` of T-degree `n − 2` lies in the image of `H_n`.
    pub fn in_image(&self, n: u32, p: &Polynomial<F>) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        let grading = [0, 0, 0, 1, 1, 1];
        if !p.is_homogeneous(&grading) || p.weighted_degree(&grading) != Some((n - 2) as u64) {
            return Err(Error::InvalidArgument(format!("element is not of T-degree {}", n - 2)));
        }
        self.strand_basis(n)?.contains(p)
    }
}

/// Which lifts of `I^n ⊆ I^m` are chain maps with invertible scale factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftValidity {
    DLift,
    DerivationLift,
    Both,
    Neither,
}

impl LiftValidity {
    pub fn as_str(self) -> &'static str {
        match self {
            LiftValidity::DLift => "d-lift-valid",
            LiftValidity::DerivationLift => "derivation-lift-valid",
            LiftValidity::Both => "both",
            LiftValidity::Neither => "neither",
        }
    }

    pub fn derivation_valid(self) -> bool {
        matches!(self, LiftValidity::DerivationLift | LiftValidity::Both)
    }

    pub fn d_valid(self) -> bool {
        matches!(self, LiftValidity::DLift | LiftValidity::Both)
    }
}

/// `D`-lift valid iff `p ≠ 3`; derivation lift valid iff `p ∤ n!/m!`.
pub fn char_guard(p: u64, n: u32, m: u32) -> LiftValidity {
    if p == 0 {
        return LiftValidity::Both;
    }
    let d = p != 3;
    let der = (m + 1..=n).all(|k| !(k as u64).is_multiple_of(p));
    match (d, der) {
        (true, true) => LiftValidity::Both,
        (true, false) => LiftValidity::DLift,
        (false, true) => LiftValidity::DerivationLift,
        (false, false) => LiftValidity::Neither,
    }
}

fn check_query(n: u32, m: u32) -> Result<()> {
    if !(n > m && m >= 1) {
        return Err(Error::InvalidArgument(format!("criterion needs n > m ≥ 1, got ({n}, {m})")));
    }
    Ok(())
}

fn guard<F: Field>(ctx: &CriterionContext<F>, n: u32, m: u32) -> Result<()> {
    let p = ctx.characteristic();
    if !char_guard(p, n, m).derivation_valid() {
        return Err(Error::CharacteristicGuard(format!(
            "characteristic {p} divides {n}!/{m}!; the criterion does not apply to ({n}, {m})"
        )));
    }
    Ok(())
}

/// `f1^u f2^v f3^w T^(i+u, j+v, k+w) ∈ im H_n`.
pub fn representative_member<F: Field>(
    ctx: &CriterionContext<F>,
    n: u32,
    m: u32,
    ijk: [u32; 3],
    uvw: [u32; 3],
) -> Result<bool> {
    check_query(n, m)?;
    if m < 2 || ijk.iter().sum::<u32>() != m - 2 || uvw.iter().sum::<u32>() != n - m {
        return Err(Error::InvalidArgument(format!(
            "need i+j+k = m−2 and u+v+w = n−m, got {ijk:?}, {uvw:?} for ({n}, {m})"
        )));
    }
    guard(ctx, n, m)?;
    let row = Monomial::new(&[ijk[0] + uvw[0], ijk[1] + uvw[1], ijk[2] + uvw[2]])?;
    ctx.in_image(n, &ctx.target(&uvw, &row)?)
}

/// Whether the full column `T^(i,j,k)` of `V_{n,m}` for `lift` lies in `im H_n`.
pub fn column_member<F: Field>(ctx: &CriterionContext<F>, n: u32, m: u32, ijk: [u32; 3], lift: Lift) -> Result<bool> {
    check_query(n, m)?;
    let v = build_v_with(ctx, n, m, lift)?;
    let mono = Monomial::new(&ijk)?;
    let c = v
        .cols
        .iter()
        .position(|x| *x == mono)
        .ok_or_else(|| Error::InvalidArgument(format!("{ijk:?} is not of degree {}", m - 2)))?;
    ctx.in_image(n, &v.column_element(ctx, c)?)
}

/// Column membership for the derivation lift, which needs `p ∤ n!/m!`.
pub fn derivation_variant_member<F: Field>(ctx: &CriterionContext<F>, n: u32, m: u32, ijk: [u32; 3]) -> Result<bool> {
    check_query(n, m)?;
    guard(ctx, n, m)?;
    column_member(ctx, n, m, ijk, Lift::Derivation)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Deterministic,
    Exhaustive,
}

fn compositions(total: u32) -> Vec<[u32; 3]> {
    t_monomials(total).iter().map(|m| [m.exps()[0], m.exps()[1], m.exps()[2]]).collect()
}

pub fn decide<F: Field>(ctx: &CriterionContext<F>, n: u32, m: u32, mode: Mode) -> Result<ContainmentReport<F>> {
    check_query(n, m)?;
    guard(ctx, n, m)?;
    let start = Instant::now();
    let mut report = ContainmentReport::new(n, m, Method::Criterion);
    if m == 1 {
        report.elapsed = start.elapsed();
        return Ok(report.with_note("radical ideal"));
    }
    let triples = compositions(m - 2);
    let one = |ijk: &[u32; 3]| -> Result<bool> {
        match mode {
            Mode::Deterministic => representative_member(ctx, n, m, *ijk, [n - m, 0, 0]),
            Mode::Exhaustive => {
                let verdicts = compositions(n - m)
                    .into_iter()
                    .map(|uvw| representative_member(ctx, n, m, *ijk, uvw))
                    .collect::<Result<Vec<_>>>()?;
                if verdicts.iter().any(|&v| v != verdicts[0]) {
                    return Err(Error::Internal(format!(
                        "representatives for column {ijk:?} of V_{{{n},{m}}} disagree"
                    )));
                }
                Ok(verdicts[0])
            }
        }
    };
    // build the shared basis once before fanning out
    let run = || -> Result<Vec<bool>> {
        ctx.strand_basis(n)?;
        triples.par_iter().map(one).collect()
    };
    match run() {
        Ok(verdicts) => {
            if let Some(pos) = verdicts.iter().position(|v| !v) {
                report.outcome = Outcome::Fails;
                let col = Monomial::new(&triples[pos])?;
                report.note = Some(format!("column {} of V_{{{n},{m}}} is outside the image of H_{n}", t_label(&col)));
            }
        }
        Err(Error::ResourceLimit(k)) => report.outcome = Outcome::ResourceLimited(k),
        Err(e) => return Err(e),
    }
    report.elapsed = start.elapsed();
    Ok(report)
}
