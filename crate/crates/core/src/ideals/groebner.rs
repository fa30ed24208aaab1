//! Buchberger's algorithm over sparse polynomials with non-negative exponents,
//! optionally tracking cofactors with respect to the input generators.

use crate::field::{Field, FieldElement};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermOrder {
    /// Graded reverse lexicographic, variable 0 largest.
    DegRevLex,
    /// Block order: the first `k` variables are eliminated (degrevlex on each block).
    Elimination(usize),
}

fn degrevlex(a: &[i32], b: &[i32]) -> Ordering {
    let da: i64 = a.iter().map(|&x| x as i64).sum();
    let db: i64 = b.iter().map(|&x| x as i64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl TermOrder {
    pub fn cmp(&self, a: &[i32], b: &[i32]) -> Ordering {
        match *self {
            TermOrder::DegRevLex => degrevlex(a, b),
            TermOrder::Elimination(k) => {
                degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
            }
        }
    }
}

pub(crate) type Exps = Vec<i32>;

/// Polynomial with terms sorted in decreasing term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly {
    pub terms: Vec<(Exps, FieldElement)>,
}

fn divides(a: &[i32], b: &[i32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[i32], b: &[i32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn sub_exps(a: &[i32], b: &[i32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_exps(a: &[i32], b: &[i32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn from_terms(order: TermOrder, mut terms: Vec<(Exps, FieldElement)>) -> Poly {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Exps, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Exps {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &FieldElement {
        &self.terms[0].1
    }

    /// `self + c·x^m·other`.
    pub fn add_scaled(&self, order: TermOrder, c: &FieldElement, m: &[i32], other: &Poly) -> Poly {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let shifted: Vec<(Exps, FieldElement)> = other
            .terms
            .iter()
            .map(|(e, a)| (add_exps(e, m), a * c))
            .collect();
        while i < self.terms.len() || j < shifted.len() {
            let ord = match (self.terms.get(i), shifted.get(j)) {
                (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(shifted[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &self.terms[i].1 + &shifted[j].1;
                    if !s.is_zero() {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct GbElement {
    pub poly: Poly,
    /// `poly = Σ cof[j]·gens[j]`, present only when tracking.
    pub cof: Option<Vec<Poly>>,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
#[derive(Clone, Debug)]
pub(crate) struct GroebnerBasis {
    pub order: TermOrder,
    pub nvars: usize,
    pub field: Field,
    pub gens: Vec<Poly>,
    pub basis: Vec<GbElement>,
}

pub(crate) struct Division {
    pub quotients: Vec<Poly>,
    pub remainder: Poly,
}

impl GroebnerBasis {
    pub fn compute(
        field: &Field,
        nvars: usize,
        order: TermOrder,
        gens: Vec<Poly>,
        track: bool,
    ) -> GroebnerBasis {
        let ngens = gens.len();
        let unit_cof = |j: usize| -> Option<Vec<Poly>> {
            track.then(|| {
                (0..ngens)
                    .map(|k| {
                        if k == j {
                            Poly {
                                terms: vec![(vec![0; nvars], field.one())],
                            }
                        } else {
                            Poly::zero()
                        }
                    })
                    .collect()
            })
        };
        let mut gb = GroebnerBasis {
            order,
            nvars,
            field: field.clone(),
            gens: gens.clone(),
            basis: Vec::new(),
        };
        let mut pending: Vec<GbElement> = gens
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(j, g)| GbElement {
                poly: g.clone(),
                cof: unit_cof(j),
            })
            .collect();
        pending.sort_by(|a, b| order.cmp(a.poly.lm(), b.poly.lm()));
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for el in pending {
            let r = gb.reduce_element(el);
            if !r.poly.is_zero() {
                gb.push_with_pairs(r, &mut pairs);
            }
        }
        while let Some(idx) = gb.pick_pair(&pairs) {
            let (i, j) = pairs.swap_remove(idx);
            let (a, b) = (&gb.basis[i], &gb.basis[j]);
            let l = lcm(a.poly.lm(), b.poly.lm());
            if add_exps(a.poly.lm(), b.poly.lm()) == l {
                continue;
            }
            let ma = sub_exps(&l, a.poly.lm());
            let mb = sub_exps(&l, b.poly.lm());
            let ca = a.poly.lc().inv().unwrap();
            let cb = -b.poly.lc().inv().unwrap();
            let s = Poly::zero()
                .add_scaled(order, &ca, &ma, &a.poly)
                .add_scaled(order, &cb, &mb, &b.poly);
            let cof = match (&a.cof, &b.cof) {
                (Some(x), Some(y)) => Some(
                    x.iter()
                        .zip(y)
                        .map(|(p, q)| {
                            Poly::zero()
                                .add_scaled(order, &ca, &ma, p)
                                .add_scaled(order, &cb, &mb, q)
                        })
                        .collect(),
                ),
                _ => None,
            };
            let r = gb.reduce_element(GbElement { poly: s, cof });
            if !r.poly.is_zero() {
                gb.push_with_pairs(r, &mut pairs);
            }
        }
        gb.interreduce();
        gb
    }

    fn pick_pair(&self, pairs: &[(usize, usize)]) -> Option<usize> {
        pairs
            .iter()
            .enumerate()
            .min_by(|(_, p), (_, q)| {
                let lp = lcm(self.basis[p.0].poly.lm(), self.basis[p.1].poly.lm());
                let lq = lcm(self.basis[q.0].poly.lm(), self.basis[q.1].poly.lm());
                self.order.cmp(&lp, &lq)
            })
            .map(|(i, _)| i)
    }

    fn push_with_pairs(&mut self, el: GbElement, pairs: &mut Vec<(usize, usize)>) {
        let k = self.basis.len();
        self.basis.push(el);
        for i in 0..k {
            pairs.push((i, k));
        }
    }

    /// Full reduction of an element by the current basis, carrying cofactors.
    fn reduce_element(&self, el: GbElement) -> GbElement {
        let order = self.order;
        let mut p = el.poly;
        let mut cof = el.cof;
        let mut rem: Vec<(Exps, FieldElement)> = Vec::new();
        while !p.is_zero() {
            let lm = p.lm().clone();
            let hit = self.basis.iter().find(|g| divides(g.poly.lm(), &lm));
            match hit {
                Some(g) => {
                    let c = -(p.lc() * &g.poly.lc().inv().unwrap());
                    let m = sub_exps(&lm, g.poly.lm());
                    p = p.add_scaled(order, &c, &m, &g.poly);
                    if let (Some(cf), Some(gc)) = (cof.as_mut(), g.cof.as_ref()) {
                        for (x, y) in cf.iter_mut().zip(gc) {
                            *x = x.add_scaled(order, &c, &m, y);
                        }
                    }
                }
                None => {
                    rem.push(p.terms.remove(0));
                }
            }
        }
        let poly = Poly { terms: rem };
        if poly.is_zero() {
            return GbElement { poly, cof };
        }
        let inv = poly.lc().inv().unwrap();
        GbElement {
            poly: poly.scale(&inv),
            cof: cof.map(|c| c.iter().map(|x| x.scale(&inv)).collect()),
        }
    }

    fn interreduce(&mut self) {
        let mut els = std::mem::take(&mut self.basis);
        els.sort_by(|a, b| self.order.cmp(a.poly.lm(), b.poly.lm()));
        let mut minimal: Vec<GbElement> = Vec::new();
        for (i, e) in els.iter().enumerate() {
            let redundant = els.iter().enumerate().any(|(j, f)| {
                j != i && divides(f.poly.lm(), e.poly.lm()) && (f.poly.lm() != e.poly.lm() || j < i)
            });
            if !redundant {
                minimal.push(e.clone());
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others = GroebnerBasis {
                order: self.order,
                nvars: self.nvars,
                field: self.field.clone(),
                gens: Vec::new(),
                basis: minimal
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, e)| e.clone())
                    .collect(),
            };
            // Tail reduction keeps the leading term since no other lead divides it.
            out.push(others.reduce_element(minimal[i].clone()));
        }
        out.sort_by(|a, b| self.order.cmp(a.poly.lm(), b.poly.lm()));
        self.basis = out;
    }

    pub fn is_unit(&self) -> bool {
        self.basis
            .iter()
            .any(|g| g.poly.lm().iter().all(|&e| e == 0))
    }

    pub fn divide(&self, p: &Poly) -> Division {
        let order = self.order;
        let mut quotients = vec![Poly::zero(); self.basis.len()];
        let mut p = p.clone();
        let mut rem: Vec<(Exps, FieldElement)> = Vec::new();
        while !p.is_zero() {
            let lm = p.lm().clone();
            match self.basis.iter().position(|g| divides(g.poly.lm(), &lm)) {
                Some(k) => {
                    let g = &self.basis[k].poly;
                    let c = p.lc() * &g.lc().inv().unwrap();
                    let m = sub_exps(&lm, g.lm());
                    p = p.add_scaled(order, &-&c, &m, g);
                    quotients[k] = quotients[k].add_scaled(
                        order,
                        &c,
                        &m,
                        &Poly {
                            terms: vec![(vec![0; self.nvars], self.field.one())],
                        },
                    );
                }
                None => rem.push(p.terms.remove(0)),
            }
        }
        Division {
            quotients,
            remainder: Poly { terms: rem },
        }
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.divide(p).remainder
    }

    /// Cofactors of `p` with respect to the input generators when `p` lies in
    /// the ideal; requires a tracked basis.
    pub fn lift(&self, p: &Poly) -> Option<Vec<Poly>> {
        let d = self.divide(p);
        if !d.remainder.is_zero() {
            return None;
        }
        let mut out = vec![Poly::zero(); self.gens.len()];
        for (q, g) in d.quotients.iter().zip(&self.basis) {
            let cof = g.cof.as_ref().expect("tracked basis");
            for (o, c) in out.iter_mut().zip(cof) {
                *o = o.add_scaled_poly(self.order, q, c);
            }
        }
        Some(out)
    }

    /// Leading monomials of the basis.
    pub fn leads(&self) -> Vec<&Exps> {
        self.basis.iter().map(|g| g.poly.lm()).collect()
    }

    /// Monomials outside the leading-term ideal, when there are finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Exps>> {
        let leads = self.leads();
        for v in 0..self.nvars {
            let pure = leads
                .iter()
                .any(|m| m.iter().enumerate().all(|(i, &e)| (i == v) == (e > 0)));
            if !pure {
                return None;
            }
        }
        let mut out = Vec::new();
        let mut frontier = vec![vec![0; self.nvars]];
        let mut seen = std::collections::HashSet::new();
        while let Some(m) = frontier.pop() {
            if !seen.insert(m.clone()) || leads.iter().any(|l| divides(l, &m)) {
                continue;
            }
            for v in 0..self.nvars {
                let mut n = m.clone();
                n[v] += 1;
                frontier.push(n);
            }
            out.push(m);
        }
        out.sort_by(|a, b| self.order.cmp(a, b));
        Some(out)
    }
}

impl Poly {
    /// `self + a·b`.
    pub fn add_scaled_poly(&self, order: TermOrder, a: &Poly, b: &Poly) -> Poly {
        let mut acc = self.clone();
        for (m, c) in &a.terms {
            acc = acc.add_scaled(order, c, m, b);
        }
        acc
    }
}
