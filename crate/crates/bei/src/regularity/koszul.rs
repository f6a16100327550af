//! Graded Betti numbers of `S/I` via Koszul homology.
//!
//! `β_{i,j}(S/I)` equals the dimension of the degree-`j` part of the `i`-th
//! homology of the Koszul complex on all variables tensored with `S/I`. Each
//! graded piece is a finite matrix over the coefficient field, assembled
//! from standard-monomial bases, and its rank is computed exactly.
//!
//! When the ideal is homogeneous for the vertex multigrading (`x_i` and
//! `y_i` both of multidegree `e_i`), the differential preserves
//! multidegrees, so every matrix splits into small independent blocks; the
//! blocks are reduced in parallel.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::ideal::IdealHandle;
use crate::poly::{normal_form, Coeff, FieldMode, Monomial, MonomialOrder, Polynomial};
use crate::{BeiError, Result};

/// Standard-monomial basis of one graded piece of `S/I`.
struct StdBasis {
    mons: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

/// Betti-number oracle for one homogeneous ideal; caches standard bases,
/// normal forms, and differential ranks across queries.
pub struct KoszulOracle {
    nvars: usize,
    field: FieldMode,
    order: MonomialOrder,
    gb: Arc<Vec<Polynomial>>,
    lms_by_maxvar: Vec<Vec<Monomial>>,
    /// variable -> multigrading group; one group per vertex when the ideal
    /// is vertex-multihomogeneous, otherwise a single group
    groups: Vec<usize>,
    ngroups: usize,
    bases: HashMap<u32, Arc<StdBasis>>,
    nf_cache: HashMap<u32, Arc<HashMap<Monomial, Polynomial>>>,
    ranks: HashMap<(usize, u32), usize>,
}

impl KoszulOracle {
    pub fn new(ideal: &IdealHandle) -> Result<KoszulOracle> {
        if !ideal.is_homogeneous() {
            return Err(BeiError::NotHomogeneous);
        }
        let nvars = ideal.nvars();
        let order = MonomialOrder::DegRevLex;
        let gb = ideal.groebner(order);
        let mut lms_by_maxvar = vec![Vec::new(); nvars];
        for g in gb.iter() {
            let lm = g.leading_monomial(order).unwrap().clone();
            let maxvar = (0..nvars).rev().find(|&v| lm.exp(v) > 0).unwrap();
            lms_by_maxvar[maxvar].push(lm);
        }
        let groups = vertex_grading(ideal, nvars);
        let ngroups = groups.iter().max().map_or(1, |&g| g + 1);
        Ok(KoszulOracle {
            nvars,
            field: ideal.field(),
            order,
            gb,
            lms_by_maxvar,
            groups,
            ngroups,
            bases: HashMap::new(),
            nf_cache: HashMap::new(),
            ranks: HashMap::new(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldMode {
        self.field
    }

    /// Monomials of degree `t` not divisible by any leading monomial of the
    /// Groebner basis: a vector-space basis of `(S/I)_t`.
    pub fn std_monomials(&mut self, t: u32) -> Arc<Vec<Monomial>> {
        Arc::new(self.basis(t).mons.clone())
    }

    pub fn hilbert_function(&mut self, t: u32) -> usize {
        self.basis(t).mons.len()
    }

    /// `β_{i,j}(S/I)` as `dim (K_i)_j - rank d_{i,j} - rank d_{i+1,j}`.
    pub fn betti(&mut self, i: usize, j: u32) -> usize {
        if i > self.nvars || (j as usize) < i {
            return 0;
        }
        let t = j - i as u32;
        let dim = binomial(self.nvars, i) * self.hilbert_function(t);
        if dim == 0 {
            return 0;
        }
        dim - self.rank(i, j) - self.rank(i + 1, j)
    }

    fn basis(&mut self, t: u32) -> Arc<StdBasis> {
        if let Some(b) = self.bases.get(&t) {
            return Arc::clone(b);
        }
        let mut mons = Vec::new();
        let mut exps = vec![0u16; self.nvars];
        enumerate_std(&self.lms_by_maxvar, &mut exps, 0, t, &mut mons);
        let index = mons
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let b = Arc::new(StdBasis { mons, index });
        self.bases.insert(t, Arc::clone(&b));
        b
    }

    /// Normal forms of `x_v * u` for every variable `v` and every standard
    /// monomial `u` of degree `t`, keyed by the product monomial.
    fn normal_forms(&mut self, t: u32) -> Arc<HashMap<Monomial, Polynomial>> {
        if let Some(c) = self.nf_cache.get(&t) {
            return Arc::clone(c);
        }
        let basis = self.basis(t);
        let gb = Arc::clone(&self.gb);
        let order = self.order;
        let field = self.field;
        let nvars = self.nvars;
        let mut products: Vec<Monomial> = basis
            .mons
            .iter()
            .flat_map(|u| (0..nvars).map(move |v| u.mul_var(v)))
            .collect();
        products.sort_by(|a, b| a.exps().cmp(b.exps()));
        products.dedup();
        let cache: HashMap<Monomial, Polynomial> = products
            .into_par_iter()
            .map(|m| {
                let p = Polynomial::term(nvars, field, field.one(), m.clone());
                (m, normal_form(&p, &gb, order))
            })
            .collect();
        let cache = Arc::new(cache);
        self.nf_cache.insert(t, Arc::clone(&cache));
        cache
    }

    /// Rank of the degree-`j` piece of the Koszul differential
    /// `d_i : (K_i ⊗ S/I)_j -> (K_{i-1} ⊗ S/I)_j`.
    fn rank(&mut self, i: usize, j: u32) -> usize {
        if i == 0 || i > self.nvars || (j as usize) < i {
            return 0;
        }
        if let Some(&r) = self.ranks.get(&(i, j)) {
            return r;
        }
        let t = j - i as u32;
        let src = self.basis(t);
        let tgt = self.basis(t + 1);
        let nfs = self.normal_forms(t);
        let rank = if src.mons.is_empty() {
            0
        } else {
            self.rank_blocks(i, &src, &tgt, &nfs)
        };
        self.ranks.insert((i, j), rank);
        rank
    }

    fn multidegree(&self, mask: u64, m: &Monomial) -> Vec<u16> {
        let mut md = vec![0u16; self.ngroups];
        for v in 0..self.nvars {
            let mut d = m.exp(v);
            if mask & (1 << v) != 0 {
                d += 1;
            }
            md[self.groups[v]] += d;
        }
        md
    }

    fn rank_blocks(
        &self,
        i: usize,
        src: &StdBasis,
        tgt: &StdBasis,
        nfs: &HashMap<Monomial, Polynomial>,
    ) -> usize {
        // group source basis elements (variable subset, standard monomial)
        // by multidegree; the differential maps each block into the target
        // block of the same multidegree
        let mut blocks: HashMap<Vec<u16>, Vec<(u64, usize)>> = HashMap::new();
        for mask in subsets(self.nvars, i) {
            for (u_idx, u) in src.mons.iter().enumerate() {
                blocks
                    .entry(self.multidegree(mask, u))
                    .or_default()
                    .push((mask, u_idx));
            }
        }
        let blocks: Vec<Vec<(u64, usize)>> = blocks.into_values().collect();
        blocks
            .par_iter()
            .map(|block| self.block_rank(block, src, tgt, nfs))
            .sum()
    }

    /// Assemble one multigraded block of the differential as sparse columns
    /// and return its rank by exact Gaussian column reduction.
    fn block_rank(
        &self,
        block: &[(u64, usize)],
        src: &StdBasis,
        tgt: &StdBasis,
        nfs: &HashMap<Monomial, Polynomial>,
    ) -> usize {
        let mut row_ids: HashMap<(u64, usize), u32> = HashMap::new();
        let mut columns: Vec<Vec<(u32, Coeff)>> = Vec::with_capacity(block.len());
        for &(mask, u_idx) in block {
            let u = &src.mons[u_idx];
            let mut col: Vec<(u32, Coeff)> = Vec::new();
            let mut sign_neg = false;
            for v in 0..self.nvars {
                if mask & (1 << v) == 0 {
                    continue;
                }
                let nf = &nfs[&u.mul_var(v)];
                let tmask = mask & !(1 << v);
                for (c, w) in nf.terms() {
                    let w_idx = tgt.index[w];
                    let next = row_ids.len() as u32;
                    let row = *row_ids.entry((tmask, w_idx)).or_insert(next);
                    let val = if sign_neg { self.field.neg(c) } else { c.clone() };
                    col.push((row, val));
                }
                sign_neg = !sign_neg;
            }
            col.sort_by_key(|&(r, _)| r);
            columns.push(col);
        }
        sparse_rank(columns, self.field)
    }
}

/// Rank by column reduction: each column is reduced against previously
/// stored columns sharing its largest row index until it either vanishes or
/// contributes a new pivot.
fn sparse_rank(mut columns: Vec<Vec<(u32, Coeff)>>, field: FieldMode) -> usize {
    columns.sort_by_key(Vec::len);
    let mut pivots: HashMap<u32, Vec<(u32, Coeff)>> = HashMap::new();
    for mut col in columns {
        loop {
            let Some(&(low, ref c)) = col.last() else { break };
            let Some(p) = pivots.get(&low) else { break };
            let factor = field.div(c, &p.last().unwrap().1);
            col = sub_scaled(&col, p, &factor, field);
        }
        if let Some(&(low, _)) = col.last() {
            pivots.insert(low, col);
        }
    }
    pivots.len()
}

/// `a - factor * b` for sorted sparse columns.
fn sub_scaled(
    a: &[(u32, Coeff)],
    b: &[(u32, Coeff)],
    factor: &Coeff,
    field: FieldMode,
) -> Vec<(u32, Coeff)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.neg(&field.mul(factor, &b[j].1))));
            j += 1;
        } else {
            let v = field.sub(&a[i].1, &field.mul(factor, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// The vertex multigrading `deg x_i = deg y_i = e_i`, when every generator
/// is homogeneous for it; otherwise the trivial single-group grading.
fn vertex_grading(ideal: &IdealHandle, nvars: usize) -> Vec<usize> {
    if nvars % 2 == 0 && nvars > 0 {
        let n = nvars / 2;
        let groups: Vec<usize> = (0..nvars).map(|v| v % n).collect();
        let multideg = |m: &Monomial| -> Vec<u16> {
            let mut md = vec![0u16; n];
            for v in 0..nvars {
                md[groups[v]] += m.exp(v);
            }
            md
        };
        let ok = ideal.generators().iter().all(|g| {
            let mut terms = g.terms().iter();
            let Some((_, first)) = terms.next() else { return true };
            let md = multideg(first);
            terms.all(|(_, m)| multideg(m) == md)
        });
        if ok {
            return groups;
        }
    }
    vec![0; nvars]
}

/// Degree-`t` monomials avoiding every leading monomial, by exponent
/// backtracking; a partial assignment is pruned as soon as some leading
/// monomial supported on the assigned variables divides it.
fn enumerate_std(
    lms_by_maxvar: &[Vec<Monomial>],
    exps: &mut Vec<u16>,
    pos: usize,
    remaining: u32,
    out: &mut Vec<Monomial>,
) {
    let nvars = exps.len();
    let divisible = |exps: &[u16], pos: usize| {
        lms_by_maxvar[pos]
            .iter()
            .any(|lm| (0..=pos).all(|v| lm.exp(v) <= exps[v]))
    };
    if pos == nvars - 1 {
        exps[pos] = remaining as u16;
        if !divisible(exps, pos) {
            out.push(Monomial::from_exps(exps.clone()));
        }
        exps[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        exps[pos] = e as u16;
        if !divisible(exps, pos) {
            enumerate_std(lms_by_maxvar, exps, pos + 1, remaining - e, out);
        }
        exps[pos] = 0;
    }
}

/// Iterator over all `nvars`-bit masks with exactly `k` bits set.
fn subsets(nvars: usize, k: usize) -> impl Iterator<Item = u64> {
    assert!(nvars < 64);
    let end = 1u64 << nvars;
    let mut next = if k == 0 { Some(0u64) } else { Some((1u64 << k) - 1) };
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= end {
            return None;
        }
        // Gosper's hack
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur)
    })
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}
