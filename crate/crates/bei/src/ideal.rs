//! Ideal-level algorithms: reduced Groebner bases (Buchberger with product
//! and chain criteria, normal pair selection), membership, equality, colon by
//! a polynomial via the single-auxiliary-variable intersection, elimination,
//! products, powers, and minimal homogeneous generators.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex};

use itertools::Itertools;

use crate::poly::{
    normal_form, normal_form_with_quotients, s_polynomial, FieldMode, Monomial, MonomialOrder,
    Polynomial,
};
use crate::{BeiError, Result};

/// Global count of Buchberger runs, the budget unit for ordering searches.
static GB_RUNS: AtomicU64 = AtomicU64::new(0);

pub fn buchberger_runs() -> u64 {
    GB_RUNS.load(AtomicOrdering::Relaxed)
}

/// An ideal given by generators, with a cached reduced Groebner basis per
/// monomial order. Immutable after construction; the cache is populated on
/// first use (first computation wins) and safe for concurrent readers.
#[derive(Debug)]
pub struct IdealHandle {
    nvars: usize,
    field: FieldMode,
    gens: Vec<Polynomial>,
    gb: Mutex<HashMap<MonomialOrder, Arc<Vec<Polynomial>>>>,
}

impl Clone for IdealHandle {
    fn clone(&self) -> Self {
        IdealHandle {
            nvars: self.nvars,
            field: self.field,
            gens: self.gens.clone(),
            gb: Mutex::new(self.gb.lock().unwrap().clone()),
        }
    }
}

impl IdealHandle {
    /// Zero polynomials among the generators are dropped.
    pub fn new(nvars: usize, field: FieldMode, gens: Vec<Polynomial>) -> IdealHandle {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        IdealHandle { nvars, field, gens, gb: Mutex::new(HashMap::new()) }
    }

    pub fn zero(nvars: usize, field: FieldMode) -> IdealHandle {
        IdealHandle::new(nvars, field, Vec::new())
    }

    pub fn unit(nvars: usize, field: FieldMode) -> IdealHandle {
        IdealHandle::new(nvars, field, vec![Polynomial::constant(nvars, field, 1)])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldMode {
        self.field
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.groebner(MonomialOrder::Lex)
            .iter()
            .any(|g| g.total_degree() == Some(0))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// The unique reduced Groebner basis for `order`, computed on first use.
    pub fn groebner(&self, order: MonomialOrder) -> Arc<Vec<Polynomial>> {
        if let Some(gb) = self.gb.lock().unwrap().get(&order) {
            return Arc::clone(gb);
        }
        let gb = Arc::new(buchberger(&self.gens, self.nvars, self.field, order));
        let mut cache = self.gb.lock().unwrap();
        Arc::clone(cache.entry(order).or_insert(gb))
    }

    pub fn member(&self, f: &Polynomial) -> bool {
        if f.is_zero() {
            return true;
        }
        let gb = self.groebner(MonomialOrder::Lex);
        normal_form(f, &gb, MonomialOrder::Lex).is_zero()
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> bool {
        other.gens.iter().all(|g| self.member(g))
    }

    pub fn ideal_equal(&self, other: &IdealHandle) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    /// Ideal sum `I + J` (generator concatenation).
    pub fn sum(&self, other: &IdealHandle) -> IdealHandle {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        IdealHandle::new(self.nvars, self.field, gens)
    }

    /// Product `I * J`: pairwise generator products. The unit ideal acts as
    /// identity. No Groebner basis is computed until needed.
    pub fn product(&self, other: &IdealHandle) -> IdealHandle {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        IdealHandle::new(self.nvars, self.field, gens)
    }

    /// `I^s` for `s >= 0`, with `I^0` the unit ideal; generators are the
    /// s-fold products of generators.
    pub fn power(&self, s: usize) -> IdealHandle {
        if s == 0 {
            return IdealHandle::unit(self.nvars, self.field);
        }
        let k = self.gens.len();
        let mut gens = Vec::new();
        for combo in (0..k).combinations_with_replacement(s) {
            let mut p = Polynomial::constant(self.nvars, self.field, 1);
            for idx in combo {
                p = p.mul(&self.gens[idx]);
            }
            gens.push(p);
        }
        IdealHandle::new(self.nvars, self.field, gens)
    }

    /// Colon ideal `I : <f>`, computed as `(1/f) * (I ∩ <f>)` with the
    /// intersection via the auxiliary-variable trick: eliminate `t` from
    /// `<t*g_i> + <(1-t)*f>` in a block order with `t` first.
    pub fn colon_poly(&self, f: &Polynomial) -> Result<IdealHandle> {
        assert!(!f.is_zero(), "colon by zero polynomial");
        if self.gens.is_empty() {
            // 0 : f = 0 in a domain
            return Ok(IdealHandle::zero(self.nvars, self.field));
        }
        let nv = self.nvars + 1;
        let t = Polynomial::term(nv, self.field, self.field.one(), Monomial::var(0, nv));
        let one_minus_t = Polynomial::constant(nv, self.field, 1).sub(&t);
        let mut gens: Vec<Polynomial> = self
            .gens
            .iter()
            .map(|g| g.extend_front(1).mul(&t))
            .collect();
        gens.push(f.extend_front(1).mul(&one_minus_t));
        let order = MonomialOrder::Block { elim: 1 };
        let gb = buchberger(&gens, nv, self.field, order);
        GB_RUNS.fetch_add(1, AtomicOrdering::Relaxed);
        let mut out = Vec::new();
        for g in gb {
            if g.terms().iter().all(|(_, m)| m.exp(0) == 0) {
                let h = g.contract_front(1);
                let (qs, r) = normal_form_with_quotients(&h, std::slice::from_ref(f), MonomialOrder::Lex);
                if !r.is_zero() {
                    return Err(BeiError::DivisionNotExact);
                }
                out.push(qs.into_iter().next().unwrap());
            }
        }
        Ok(IdealHandle::new(self.nvars, self.field, out))
    }

    /// Minimal homogeneous generators by graded Nakayama: process by
    /// ascending degree, dropping any generator contained in the ideal of
    /// the ones kept so far.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial>> {
        if !self.is_homogeneous() {
            return Err(BeiError::NotHomogeneous);
        }
        let mut by_degree: Vec<&Polynomial> = self.gens.iter().collect();
        by_degree.sort_by_key(|g| g.total_degree().unwrap_or(0));
        let mut kept: Vec<Polynomial> = Vec::new();
        for g in by_degree {
            if kept.is_empty() {
                kept.push(g.clone());
                continue;
            }
            let trial = IdealHandle::new(self.nvars, self.field, kept.clone());
            if !trial.member(g) {
                kept.push(g.clone());
            }
        }
        Ok(kept)
    }
}

/// Both sides of the colon-of-powers identity for a d-sequence: with `u`'s
/// generating `I`, `(<prefix> + I^s) : u = (<prefix> : u) + I^{s-1}`.
/// Evaluates both sides and returns the equality verdict.
pub fn dsequence_colon_identity_check(
    ideal: &IdealHandle,
    prefix: &[Polynomial],
    u: &Polynomial,
    s: usize,
) -> Result<bool> {
    assert!(s >= 1);
    let prefix_ideal = IdealHandle::new(ideal.nvars(), ideal.field(), prefix.to_vec());
    let lhs = prefix_ideal.sum(&ideal.power(s)).colon_poly(u)?;
    let rhs = prefix_ideal.colon_poly(u)?.sum(&ideal.power(s - 1));
    Ok(lhs.ideal_equal(&rhs))
}

/// Buchberger with normal pair selection (minimal lcm degree first), the
/// product criterion, and the chain criterion, followed by reduction to the
/// unique reduced basis.
fn buchberger(
    gens: &[Polynomial],
    nvars: usize,
    field: FieldMode,
    order: MonomialOrder,
) -> Vec<Polynomial> {
    GB_RUNS.fetch_add(1, AtomicOrdering::Relaxed);
    let mut basis: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic(order))
        .collect();
    if basis.is_empty() {
        return Vec::new();
    }
    let lm = |b: &[Polynomial], i: usize| b[i].leading_monomial(order).unwrap().clone();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // normal strategy: smallest lcm total degree first
        let best = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| lm(&basis, i).lcm(&lm(&basis, j)).degree())
            .map(|(idx, _)| idx)
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        let lmi = lm(&basis, i);
        let lmj = lm(&basis, j);
        if lmi.coprime(&lmj) {
            continue; // product criterion
        }
        let lcm_ij = lmi.lcm(&lmj);
        // chain criterion: some k with lt_k | lcm(i,j) and both mixed pairs
        // already handled
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis, k).divides(&lcm_ij)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = normal_form(&s, &basis, order);
        if !r.is_zero() {
            let r = r.monic(order);
            let new_idx = basis.len();
            basis.push(r);
            for k in 0..new_idx {
                pairs.push((k, new_idx));
            }
        }
    }
    reduce_basis(basis, nvars, field, order)
}

/// Interreduce a Groebner basis to the reduced one: minimal leading terms,
/// fully tail-reduced, monic, sorted ascending by leading monomial.
fn reduce_basis(
    mut basis: Vec<Polynomial>,
    nvars: usize,
    field: FieldMode,
    order: MonomialOrder,
) -> Vec<Polynomial> {
    let _ = (nvars, field);
    // drop elements whose leading monomial is divisible by another's
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let lmi = basis[i].leading_monomial(order).unwrap().clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lmj = basis[j].leading_monomial(order).unwrap();
            if lmj.divides(&lmi) && (lmj != &lmi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    basis = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    // tail-reduce each against the others
    let mut reduced = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others: Vec<Polynomial> = basis
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = normal_form(&basis[i], &others, order).monic(order);
        if !r.is_zero() {
            reduced.push(r);
        }
    }
    reduced.sort_by(|a, b| {
        order.cmp(
            a.leading_monomial(order).unwrap(),
            b.leading_monomial(order).unwrap(),
        )
    });
    reduced
}
