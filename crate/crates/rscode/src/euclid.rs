//! Extended Euclidean algorithms over GF(p^m)[x]: the classic form, a monic
//! variant, and a step-wise variant that applies one elementary 2x2 update
//! per coefficient of each quotient.
//!
//! The step-wise state carries two rows `(R, F, G)` and `(R̃, F̃, G̃)` plus the
//! counters `d` (an upper bound on deg R) and `d̃` (the exact degree of R̃).
//! Each step picks one of two unimodular updates, so the Bézout identities
//! `F·b + G·a = R` and `F̃·b + G̃·a = R̃` hold throughout.

use thiserror::Error;

use crate::gf::Fe;
use crate::poly::{Degree, Poly};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum EuclidError {
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("first argument must be monic")]
    NotMonic,
    #[error("require deg(b) < deg(a), got deg(a) = {da}, deg(b) = {db}")]
    DegreeOrder { da: Degree, db: Degree },
}

/// One row of the classic extended Euclidean trace: `f·b + g·a = r` with
/// quotient `q` from the division that produced `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtEuclidRow {
    pub r: Poly,
    pub f: Poly,
    pub g: Poly,
    pub q: Poly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtEuclidResult {
    /// Last nonzero remainder; a gcd of `a` and `b` (not normalized monic).
    pub gcd: Poly,
    pub f: Poly,
    pub g: Poly,
    pub rows: Vec<ExtEuclidRow>,
}

/// Classic extended Euclid: returns `(gcd, f, g)` with `f·b + g·a = gcd`,
/// plus the per-division trace rows.
pub fn ext_euclid(a: &Poly, b: &Poly) -> Result<ExtEuclidResult, EuclidError> {
    if a.is_zero() && b.is_zero() {
        return Err(EuclidError::BothZero);
    }
    let field = a.field().clone();
    // rows i-2 and i-1 of the recurrence
    let mut r_prev = a.clone();
    let mut f_prev = Poly::zero(field.clone());
    let mut g_prev = Poly::one(field.clone());
    let mut r_cur = b.clone();
    let mut f_cur = Poly::one(field.clone());
    let mut g_cur = Poly::zero(field);
    let mut rows = Vec::new();
    while !r_cur.is_zero() {
        let (q, r_next) = r_prev.divmod(&r_cur).expect("divisor nonzero");
        let f_next = &f_prev - &(&q * &f_cur);
        let g_next = &g_prev - &(&q * &g_cur);
        rows.push(ExtEuclidRow {
            r: r_next.clone(),
            f: f_next.clone(),
            g: g_next.clone(),
            q,
        });
        r_prev = std::mem::replace(&mut r_cur, r_next);
        f_prev = std::mem::replace(&mut f_cur, f_next);
        g_prev = std::mem::replace(&mut g_cur, g_next);
    }
    Ok(ExtEuclidResult {
        gcd: r_prev,
        f: f_prev,
        g: g_prev,
        rows,
    })
}

/// Snapshot of one iteration of the monic variant.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicRow {
    pub mu: Fe,
    pub q: Poly,
    pub r: Poly,
    pub f: Poly,
    pub g: Poly,
    pub rt: Poly,
    pub ft: Poly,
    pub gt: Poly,
}

/// Monic variant: `a` monic, keeps the bottom row monic throughout and
/// returns `(r̃, f̃, g̃)` with `f̃·b + g̃·a = r̃` the monic gcd.
pub fn monic_euclid(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly), EuclidError> {
    let (out, _) = monic_euclid_traced(a, b)?;
    Ok(out)
}

/// Same as [`monic_euclid`] but records every iteration, for the tests that
/// watch the `f_i` stay monic with strictly increasing degree.
pub fn monic_euclid_traced(
    a: &Poly,
    b: &Poly,
) -> Result<((Poly, Poly, Poly), Vec<MonicRow>), EuclidError> {
    if !a.is_monic() || a.deg() < Degree::Finite(1) {
        return Err(EuclidError::NotMonic);
    }
    let field = a.field().clone();
    let mut r = b.clone();
    let mut f = Poly::one(field.clone());
    let mut g = Poly::zero(field.clone());
    let mut rt = a.clone();
    let mut ft = Poly::zero(field.clone());
    let mut gt = Poly::one(field);
    let mut rows = Vec::new();
    while !r.is_zero() {
        let mu = r.lc().expect("nonzero r");
        let mu_inv = r.field().inv(mu).expect("nonzero lc");
        let (q, _) = rt.scale(mu).divmod(&r).expect("nonzero r");
        // update matrix (q, -mu; mu^{-1}, 0)
        let r_next = &(&q * &r) - &rt.scale(mu);
        let f_next = &(&q * &f) - &ft.scale(mu);
        let g_next = &(&q * &g) - &gt.scale(mu);
        rt = r.scale(mu_inv);
        ft = f.scale(mu_inv);
        gt = g.scale(mu_inv);
        r = r_next;
        f = f_next;
        g = g_next;
        rows.push(MonicRow {
            mu,
            q,
            r: r.clone(),
            f: f.clone(),
            g: g.clone(),
            rt: rt.clone(),
            ft: ft.clone(),
            gt: gt.clone(),
        });
    }
    Ok(((rt, ft, gt), rows))
}

/// Which elementary update a step applied: `First` decrements the degree
/// bound in place, `Second` swaps the rows (taken when p < 0 and mu != 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    First,
    Second,
}

impl Branch {
    pub fn tag(self) -> &'static str {
        match self {
            Branch::First => "FIRST",
            Branch::Second => "SECOND",
        }
    }
}

/// State of the step-wise algorithm.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverState {
    pub r: Poly,
    pub f: Poly,
    pub g: Poly,
    pub rt: Poly,
    pub ft: Poly,
    pub gt: Poly,
    /// Upper bound on deg(R); set to minus infinity once R vanishes in a
    /// [`stepwise_run`].
    pub d: Degree,
    /// Exact degree of R̃ (monic throughout).
    pub dt: i64,
    pub iter: usize,
}

/// Full iteration trace: `states[0]` is the initial state and
/// `states[i + 1]` is the state after iteration `i`, which computed `mus[i]`
/// and took `branches[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct EuclidTrace {
    pub states: Vec<SolverState>,
    pub mus: Vec<Fe>,
    pub branches: Vec<Branch>,
}

impl EuclidTrace {
    pub fn final_state(&self) -> &SolverState {
        self.states.last().expect("trace holds the initial state")
    }
}

/// Initial state: `R = b`, `R̃ = a`, identity Bézout rows, `d = deg(b)`,
/// `d̃ = deg(a)`. Requires `a` monic and `deg(b) < deg(a)`.
pub fn stepwise_init(a: &Poly, b: &Poly) -> Result<SolverState, EuclidError> {
    if !a.is_monic() {
        return Err(EuclidError::NotMonic);
    }
    if b.deg() >= a.deg() {
        return Err(EuclidError::DegreeOrder {
            da: a.deg(),
            db: b.deg(),
        });
    }
    let field = a.field().clone();
    let dt = a.deg().finite().expect("monic poly is nonzero");
    Ok(SolverState {
        r: b.clone(),
        f: Poly::one(field.clone()),
        g: Poly::zero(field.clone()),
        rt: a.clone(),
        ft: Poly::zero(field.clone()),
        gt: Poly::one(field),
        d: b.deg(),
        dt,
        iter: 0,
    })
}

/// Applies exactly one elementary update and returns the discrepancy and the
/// branch taken. The caller owns the loop condition; `d` must be finite.
pub fn stepwise_step(st: &mut SolverState) -> (Fe, Branch) {
    let d = st
        .d
        .finite()
        .expect("stepwise_step requires a finite degree bound");
    let field = st.r.field().clone();
    let mu = st.r.coeff(d);
    let p = d - st.dt;
    st.iter += 1;
    if p >= 0 || mu.is_zero() {
        // (1, -mu x^p; 0, 1): with mu = 0 the polynomials are untouched
        if !mu.is_zero() {
            let shift = p as usize;
            st.r = &st.r - &st.rt.shift(shift).scale(mu);
            st.f = &st.f - &st.ft.shift(shift).scale(mu);
            st.g = &st.g - &st.gt.shift(shift).scale(mu);
        }
        st.d = Degree::Finite(d - 1);
        (mu, Branch::First)
    } else {
        // (x^{-p}, -mu; mu^{-1}, 0): rows swap roles
        let shift = (-p) as usize;
        let mu_inv = field.inv(mu).expect("mu nonzero on this branch");
        let r_new = &st.r.shift(shift) - &st.rt.scale(mu);
        let f_new = &st.f.shift(shift) - &st.ft.scale(mu);
        let g_new = &st.g.shift(shift) - &st.gt.scale(mu);
        st.rt = st.r.scale(mu_inv);
        st.ft = st.f.scale(mu_inv);
        st.gt = st.g.scale(mu_inv);
        st.r = r_new;
        st.f = f_new;
        st.g = g_new;
        st.d = Degree::Finite(st.dt - 1);
        st.dt = d;
        (mu, Branch::Second)
    }
}

fn run_loop<F>(a: &Poly, b: &Poly, stop: F, keep_states: bool) -> Result<EuclidTrace, EuclidError>
where
    F: Fn(Degree, usize) -> bool,
{
    let mut st = stepwise_init(a, b)?;
    let mut states = Vec::new();
    if keep_states {
        states.push(st.clone());
    }
    let mut mus = Vec::new();
    let mut branches = Vec::new();
    while st.d.is_finite() && stop(st.d, st.iter) {
        let (mu, branch) = stepwise_step(&mut st);
        mus.push(mu);
        branches.push(branch);
        if st.r.is_zero() {
            // gcd reached: R = 0 means the bound collapses to deg(R)
            st.d = Degree::MinusInfinity;
        }
        if keep_states {
            states.push(st.clone());
        }
    }
    if !keep_states {
        states.push(st);
    }
    Ok(EuclidTrace {
        states,
        mus,
        branches,
    })
}

/// Iterates [`stepwise_step`] while `stop(d, iter)` holds, terminating early
/// once R vanishes (the gcd is then in the R̃ row). Returns the final state.
pub fn stepwise_run<F>(a: &Poly, b: &Poly, stop: F) -> Result<SolverState, EuclidError>
where
    F: Fn(Degree, usize) -> bool,
{
    let trace = run_loop(a, b, stop, false)?;
    Ok(trace.states.into_iter().next_back().expect("final state"))
}

/// As [`stepwise_run`] but snapshots every state; for traces and the
/// invariant suites. Decode paths use the snapshot-free variant.
pub fn stepwise_run_traced<F>(a: &Poly, b: &Poly, stop: F) -> Result<EuclidTrace, EuclidError>
where
    F: Fn(Degree, usize) -> bool,
{
    run_loop(a, b, stop, true)
}

/// The stop predicate for running to the gcd (the §3 semantics).
pub fn run_to_gcd(d: Degree, _iter: usize) -> bool {
    d >= Degree::Finite(0)
}
