//! Buchberger's algorithm over submodules of `R^r`; ideals are the rank-1 case.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::polyring::{Monomial, MonomialOrder, PolyVector, Polynomial, PolynomialRing, Rational};

/// Orders on the terms `m * e_c` of a free module.
#[derive(Clone, Debug)]
pub enum ModuleOrder {
    /// Component first (`e_0 > e_1 > ...`), then the monomial order.
    PositionOverTerm,
    /// Monomial first, ties broken by component (`e_0 > e_1 > ...`).
    TermOverPosition,
    /// Induced by a parent order and the leading terms of the generators:
    /// `m e_i > m' e_j` iff `m lt(g_i) > m' lt(g_j)`, ties won by the larger index.
    Schreyer(Arc<SchreyerFrame>),
    /// Components below `at` dominate every component at or above it.
    /// The lower side is compared by `lower` after re-indexing from zero.
    Split { at: usize, upper: Box<ModuleOrder>, lower: Box<ModuleOrder> },
}

#[derive(Debug)]
pub struct SchreyerFrame {
    pub parent: ModuleOrder,
    /// Leading term (monomial, component) of each generator; `None` for zero generators,
    /// which sort below everything.
    pub leads: Vec<Option<(Monomial, usize)>>,
}

impl ModuleOrder {
    pub fn compare(&self, base: MonomialOrder, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        match self {
            ModuleOrder::PositionOverTerm => b.1.cmp(&a.1).then_with(|| base.compare(a.0, b.0)),
            ModuleOrder::TermOverPosition => base.compare(a.0, b.0).then_with(|| b.1.cmp(&a.1)),
            ModuleOrder::Schreyer(frame) => {
                let la = frame.leads.get(a.1).and_then(|l| l.as_ref());
                let lb = frame.leads.get(b.1).and_then(|l| l.as_ref());
                match (la, lb) {
                    (Some((ma, ca)), Some((mb, cb))) => {
                        let pa = a.0.mul(ma);
                        let pb = b.0.mul(mb);
                        frame.parent.compare(base, (&pa, *ca), (&pb, *cb)).then_with(|| a.1.cmp(&b.1))
                    }
                    (Some(_), None) => Ordering::Greater,
                    (None, Some(_)) => Ordering::Less,
                    (None, None) => base.compare(a.0, b.0).then_with(|| a.1.cmp(&b.1)),
                }
            }
            ModuleOrder::Split { at, upper, lower } => match (a.1 < *at, b.1 < *at) {
                (true, true) => upper.compare(base, a, b),
                (false, false) => lower.compare(base, (a.0, a.1 - at), (b.0, b.1 - at)),
                (true, false) => Ordering::Greater,
                (false, true) => Ordering::Less,
            },
        }
    }

    pub fn schreyer(parent: ModuleOrder, leads: Vec<Option<(Monomial, usize)>>) -> ModuleOrder {
        ModuleOrder::Schreyer(Arc::new(SchreyerFrame { parent, leads }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MTerm {
    pub m: Monomial,
    pub c: usize,
    pub k: Rational,
}

/// Module element with terms sorted in descending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MElem {
    pub terms: Vec<MTerm>,
}

impl MElem {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&MTerm> {
        self.terms.first()
    }
}

/// Term arithmetic and Buchberger's algorithm for one fixed (ring, module order) pair.
pub(crate) struct Engine {
    pub ring: PolynomialRing,
    pub order: ModuleOrder,
}

impl Engine {
    pub fn new(ring: &PolynomialRing, order: ModuleOrder) -> Self {
        Engine { ring: ring.clone(), order }
    }

    fn cmp(&self, a: &MTerm, b: &MTerm) -> Ordering {
        self.order.compare(self.ring.order(), (&a.m, a.c), (&b.m, b.c))
    }

    pub fn from_terms(&self, mut terms: Vec<MTerm>) -> MElem {
        terms.retain(|t| !t.k.is_zero());
        terms.sort_by(|a, b| self.cmp(b, a));
        // combine equal terms
        let mut out: Vec<MTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.c == t.c && last.m == t.m => last.k += t.k,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.k.is_zero());
        MElem { terms: out }
    }

    pub fn from_poly(&self, p: &Polynomial, comp: usize) -> MElem {
        let terms = p.terms().iter().map(|(m, k)| MTerm { m: m.clone(), c: comp, k: k.clone() }).collect();
        self.from_terms(terms)
    }

    pub fn from_vector(&self, v: &[Polynomial], offset: usize) -> Vec<MTerm> {
        let mut terms = Vec::new();
        for (i, p) in v.iter().enumerate() {
            for (m, k) in p.terms() {
                terms.push(MTerm { m: m.clone(), c: offset + i, k: k.clone() });
            }
        }
        terms
    }

    pub fn elem_from_vector(&self, v: &PolyVector) -> MElem {
        let terms = self.from_vector(v.entries(), 0);
        self.from_terms(terms)
    }

    /// Entries `lo..hi` of `e` as polynomials.
    pub fn to_polys(&self, e: &MElem, lo: usize, hi: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); hi - lo];
        for t in &e.terms {
            if t.c >= lo && t.c < hi {
                buckets[t.c - lo].push((t.m.clone(), t.k.clone()));
            }
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(&self.ring, b)).collect()
    }

    /// `a + k * m * b`.
    pub fn add_scaled(&self, a: &MElem, k: &Rational, m: &Monomial, b: &MElem) -> MElem {
        if k.is_zero() || b.is_zero() {
            return a.clone();
        }
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let mut ia = a.terms.iter().peekable();
        let mut ib = b.terms.iter().map(|t| MTerm { m: t.m.mul(m), c: t.c, k: &t.k * k }).peekable();
        loop {
            match (ia.peek(), ib.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(ia.next().unwrap().clone()),
                (None, Some(_)) => out.push(ib.next().unwrap()),
                (Some(x), Some(y)) => match self.cmp(x, y) {
                    Ordering::Greater => out.push(ia.next().unwrap().clone()),
                    Ordering::Less => out.push(ib.next().unwrap()),
                    Ordering::Equal => {
                        let x = ia.next().unwrap();
                        let y = ib.next().unwrap();
                        let s = &x.k + &y.k;
                        if !s.is_zero() {
                            out.push(MTerm { m: x.m.clone(), c: x.c, k: s });
                        }
                    }
                },
            }
        }
        MElem { terms: out }
    }

    pub fn monic(&self, e: MElem) -> MElem {
        match e.lead() {
            Some(t) if !t.k.is_one() => {
                let inv = t.k.recip();
                MElem { terms: e.terms.into_iter().map(|t| MTerm { k: t.k * &inv, ..t }).collect() }
            }
            _ => e,
        }
    }

    fn find_reducer<'a>(&self, t: &MTerm, basis: &'a [MElem]) -> Option<(&'a MElem, Monomial)> {
        for g in basis {
            let l = g.lead().expect("basis elements are nonzero");
            if l.c == t.c {
                if let Some(q) = l.m.quotient_of(&t.m) {
                    return Some((g, q));
                }
            }
        }
        None
    }

    /// Full reduction of `f` by `basis`: no term of the result is divisible by a leading term.
    pub fn reduce(&self, f: &MElem, basis: &[MElem]) -> MElem {
        let mut p = f.clone();
        let mut rem: Vec<MTerm> = Vec::new();
        while let Some(t) = p.terms.first().cloned() {
            match self.find_reducer(&t, basis) {
                Some((g, q)) => {
                    let k = -(&t.k / &g.lead().unwrap().k);
                    p = self.add_scaled(&p, &k, &q, g);
                }
                None => {
                    rem.push(t);
                    p.terms.remove(0);
                }
            }
        }
        MElem { terms: rem }
    }

    fn s_poly(&self, f: &MElem, g: &MElem) -> Option<MElem> {
        let (lf, lg) = (f.lead()?, g.lead()?);
        if lf.c != lg.c {
            return None;
        }
        let l = lf.m.lcm(&lg.m);
        let qf = lf.m.quotient_of(&l).unwrap();
        let qg = lg.m.quotient_of(&l).unwrap();
        let a = self.add_scaled(&MElem { terms: vec![] }, &lf.k.recip(), &qf, f);
        Some(self.add_scaled(&a, &-lg.k.recip(), &qg, g))
    }

    fn pair_lcm(&self, f: &MElem, g: &MElem) -> MTerm {
        let (lf, lg) = (f.lead().unwrap(), g.lead().unwrap());
        MTerm { m: lf.m.lcm(&lg.m), c: lf.c, k: Rational::one() }
    }

    /// Reduced Groebner basis, monic, sorted by descending leading term.
    /// `ideal_mode` enables the coprime-leading-monomial criterion, valid only in rank one.
    pub fn groebner(&self, gens: Vec<MElem>, ideal_mode: bool) -> Vec<MElem> {
        let mut basis: Vec<MElem> = Vec::new();
        for g in gens {
            if g.is_zero() || basis.contains(&g) {
                continue;
            }
            basis.push(self.monic(g));
        }
        let mut pending: Vec<(usize, usize)> = Vec::new();
        let mut pending_set: HashSet<(usize, usize)> = HashSet::new();
        for j in 0..basis.len() {
            for i in 0..j {
                if basis[i].lead().unwrap().c == basis[j].lead().unwrap().c {
                    pending.push((i, j));
                    pending_set.insert((i, j));
                }
            }
        }
        while !pending.is_empty() {
            // normal selection strategy: smallest lcm first, ties by index
            let mut best = 0;
            let mut best_lcm = self.pair_lcm(&basis[pending[0].0], &basis[pending[0].1]);
            for (idx, &(i, j)) in pending.iter().enumerate().skip(1) {
                let l = self.pair_lcm(&basis[i], &basis[j]);
                let o = self.cmp(&l, &best_lcm);
                if o == Ordering::Less || (o == Ordering::Equal && (j, i) < (pending[best].1, pending[best].0)) {
                    best = idx;
                    best_lcm = l;
                }
            }
            let (i, j) = pending.swap_remove(best);
            pending_set.remove(&(i, j));

            let (li, lj) = (basis[i].lead().unwrap(), basis[j].lead().unwrap());
            if ideal_mode && li.m.is_coprime(&lj.m) {
                continue;
            }
            if self.chain_criterion(i, j, &basis, &pending_set) {
                continue;
            }
            let Some(s) = self.s_poly(&basis[i], &basis[j]) else { continue };
            let r = self.reduce(&s, &basis);
            if r.is_zero() {
                continue;
            }
            let r = self.monic(r);
            let n = basis.len();
            let rc = r.lead().unwrap().c;
            basis.push(r);
            for k in 0..n {
                if basis[k].lead().unwrap().c == rc {
                    pending.push((k, n));
                    pending_set.insert((k, n));
                }
            }
        }
        self.reduce_basis(basis)
    }

    /// Buchberger's second criterion.
    fn chain_criterion(&self, i: usize, j: usize, basis: &[MElem], pending: &HashSet<(usize, usize)>) -> bool {
        let l = self.pair_lcm(&basis[i], &basis[j]);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        basis.iter().enumerate().any(|(k, g)| {
            if k == i || k == j {
                return false;
            }
            let lk = g.lead().unwrap();
            lk.c == l.c && lk.m.divides(&l.m) && !pending.contains(&key(i, k)) && !pending.contains(&key(j, k))
        })
    }

    fn reduce_basis(&self, basis: Vec<MElem>) -> Vec<MElem> {
        // drop elements whose leading term is divisible by another's
        let mut keep: Vec<MElem> = Vec::new();
        for (idx, g) in basis.iter().enumerate() {
            let lg = g.lead().unwrap();
            let redundant = basis.iter().enumerate().any(|(o, h)| {
                if o == idx {
                    return false;
                }
                let lh = h.lead().unwrap();
                lh.c == lg.c && lh.m.divides(&lg.m) && (lh.m != lg.m || o < idx)
            });
            if !redundant {
                keep.push(g.clone());
            }
        }
        let mut reduced = Vec::with_capacity(keep.len());
        for idx in 0..keep.len() {
            let lead = MElem { terms: vec![keep[idx].terms[0].clone()] };
            let tail = MElem { terms: keep[idx].terms[1..].to_vec() };
            let others: Vec<MElem> =
                keep.iter().enumerate().filter(|(o, _)| *o != idx).map(|(_, g)| g.clone()).collect();
            let tail = self.reduce(&tail, &others);
            let mut terms = lead.terms;
            terms.extend(tail.terms);
            reduced.push(self.monic(MElem { terms }));
        }
        reduced.sort_by(|a, b| self.cmp(b.lead().unwrap(), a.lead().unwrap()));
        reduced
    }

    /// Checks that every S-pair of `basis` reduces to zero.
    pub fn is_groebner(&self, basis: &[MElem]) -> bool {
        for j in 0..basis.len() {
            for i in 0..j {
                if let Some(s) = self.s_poly(&basis[i], &basis[j]) {
                    if !self.reduce(&s, basis).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}
