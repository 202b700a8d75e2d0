//! Incremental Buchberger algorithm in degrevlex with the product and chain criteria.

use std::collections::HashSet;

use malachite_base::num::basic::traits::One;
use malachite_q::Rational;
use thiserror::Error;

use super::poly::{Mono, MultiPoly};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("certificate budget exhausted: more than {limit} {what}")]
pub struct BudgetExceeded {
    pub what: &'static str,
    pub limit: usize,
}

pub const DEFAULT_SPOLY_BUDGET: usize = 4000;

/// A growing Gröbner basis. Generators may be added at any time; pairs are
/// processed lazily by [`Groebner::complete`] or [`Groebner::complete_until`].
pub struct Groebner {
    nvars: usize,
    basis: Vec<MultiPoly>,
    pending: Vec<(usize, usize)>,
    done: HashSet<(usize, usize)>,
    spolys: usize,
    budget: usize,
}

impl Groebner {
    pub fn new(nvars: usize, budget: usize) -> Groebner {
        Groebner {
            nvars,
            basis: Vec::new(),
            pending: Vec::new(),
            done: HashSet::new(),
            spolys: 0,
            budget,
        }
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn spolys_used(&self) -> usize {
        self.spolys
    }

    fn lm(&self, i: usize) -> &Mono {
        self.basis[i].leading().expect("basis elements are nonzero").0
    }

    /// Full reduction of `p` modulo the current basis.
    pub fn normal_form(&self, p: &MultiPoly) -> MultiPoly {
        let mut p = p.clone();
        let mut r = MultiPoly::zero(self.nvars);
        'outer: while let Some((m, c)) = p.leading() {
            let (m, c) = (m.clone(), c.clone());
            for g in &self.basis {
                let (gm, gc) = g.leading().unwrap();
                if gm.divides(&m) {
                    let q = gm.quotient_of(&m);
                    p.sub_mul_term_assign(&q, &(&c / gc), g);
                    continue 'outer;
                }
            }
            let t = MultiPoly::term(m, c);
            p = p.sub(&t);
            r = r.add(&t);
        }
        r
    }

    fn insert(&mut self, p: MultiPoly) {
        let idx = self.basis.len();
        self.basis.push(p.monic());
        for i in 0..idx {
            self.pending.push((i, idx));
        }
    }

    /// Reduces `p` and, if nonzero, adds it to the basis. Returns whether it was added.
    pub fn add(&mut self, p: &MultiPoly) -> bool {
        assert_eq!(p.nvars(), self.nvars, "variable count");
        let r = self.normal_form(p);
        if r.is_zero() {
            return false;
        }
        self.insert(r);
        true
    }

    fn chain_criterion(&self, i: usize, j: usize, l: &Mono) -> bool {
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        (0..self.basis.len()).any(|k| {
            k != i
                && k != j
                && self.lm(k).divides(l)
                && self.done.contains(&key(i, k))
                && self.done.contains(&key(j, k))
        })
    }

    fn spoly(&self, i: usize, j: usize, l: &Mono) -> MultiPoly {
        let (f, g) = (&self.basis[i], &self.basis[j]);
        let one = Rational::ONE;
        let a = f.mul_term(&self.lm(i).quotient_of(l), &one);
        let b = g.mul_term(&self.lm(j).quotient_of(l), &one);
        a.sub(&b)
    }

    /// Processes pending pairs until none remain or `stop` holds on the basis.
    pub fn complete_until(&mut self, mut stop: impl FnMut(&Groebner) -> bool) -> Result<bool, BudgetExceeded> {
        loop {
            if stop(self) {
                return Ok(true);
            }
            // Normal selection strategy: smallest lcm first.
            let Some(pos) = (0..self.pending.len()).min_by(|&x, &y| {
                let (a, b) = self.pending[x];
                let (c, d) = self.pending[y];
                self.lm(a).lcm(self.lm(b)).cmp(&self.lm(c).lcm(self.lm(d)))
            }) else {
                return Ok(false);
            };
            let (i, j) = self.pending.swap_remove(pos);
            let l = self.lm(i).lcm(self.lm(j));
            let skip = self.lm(i).coprime(self.lm(j)) || self.chain_criterion(i, j, &l);
            self.done.insert((i, j));
            if skip {
                continue;
            }
            if self.spolys >= self.budget {
                self.pending.push((i, j));
                self.done.remove(&(i, j));
                return Err(BudgetExceeded { what: "S-polynomials", limit: self.budget });
            }
            self.spolys += 1;
            let s = self.spoly(i, j, &l);
            let r = self.normal_form(&s);
            if !r.is_zero() {
                self.insert(r);
            }
        }
    }

    pub fn complete(&mut self) -> Result<(), BudgetExceeded> {
        self.complete_until(|_| false).map(|_| ())
    }

    /// Every variable occurs as a pure power among the leading monomials.
    /// Sufficient for a zero-dimensional ideal even on a partial basis.
    pub fn has_pure_powers(&self) -> bool {
        let mut seen = vec![false; self.nvars];
        for g in &self.basis {
            let (m, _) = g.leading().unwrap();
            if m.degree() == 0 {
                return true;
            }
            if let Some(v) = m.pure_power_var() {
                seen[v] = true;
            }
        }
        seen.iter().all(|&s| s)
    }
}

/// Decides whether homogeneous generators have only the origin as common
/// zero over the algebraic closure.
pub fn zero_locus_is_origin(gens: &[MultiPoly], budget: usize) -> Result<bool, BudgetExceeded> {
    zero_locus_is_origin_iter(gens.iter().cloned(), gens.first().map_or(0, |g| g.nvars()), budget)
}

/// Streaming variant: generators are pulled lazily, so a certificate found
/// early avoids producing the rest.
pub fn zero_locus_is_origin_iter(
    gens: impl IntoIterator<Item = MultiPoly>,
    nvars: usize,
    budget: usize,
) -> Result<bool, BudgetExceeded> {
    let mut gb = Groebner::new(nvars, budget);
    if nvars == 0 {
        return Ok(true);
    }
    for g in gens {
        assert!(g.is_homogeneous(), "generators must be homogeneous");
        if gb.add(&g) && gb.complete_until(Groebner::has_pure_powers)? {
            return Ok(true);
        }
    }
    gb.complete()?;
    Ok(gb.has_pure_powers())
}
