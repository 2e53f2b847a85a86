//! Buchberger's algorithm for the lexicographic order `y_1 > y_2 > … > y_k`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::Rat;
use crate::poly::{write_term, LPoly, Monomial, VarNames};

/// Default cap on the number of S-pairs reduced by [`buchberger_lex`].
pub const DEFAULT_PAIR_BUDGET: usize = 20_000;

/// A polynomial in `y` alone. Exponent vectors compare lexicographically,
/// so the last key is the leading monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl YPoly {
    pub fn zero(nvars: usize) -> Self {
        YPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = YPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    /// Keeps the listed `y` coordinates of an `x`-free polynomial.
    ///
    /// Panics if a term involves `x` or a coordinate outside `active`.
    pub fn from_lpoly(f: &LPoly, active: &[usize]) -> Self {
        let mut p = YPoly::zero(active.len());
        for (m, c) in f.terms() {
            assert!(m.x.iter().all(Zero::is_zero), "polynomial still involves x");
            let e: Vec<u32> = active.iter().map(|&i| m.y[i]).collect();
            let total: u32 = m.y.iter().sum();
            assert_eq!(total, e.iter().sum::<u32>(), "term outside the active coordinates");
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Vec<u32>, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().all(|e| e.iter().all(|&b| b == 0))
    }

    /// Smallest index of a variable that occurs, or `nvars` for constants.
    pub fn first_var(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|e| e.iter().position(|&b| b > 0))
            .min()
            .unwrap_or(self.nvars)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn monic(&self) -> YPoly {
        let Some((_, lead)) = self.leading() else {
            return self.clone();
        };
        let inv = Rat::one() / lead;
        YPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * &inv)).collect(),
        }
    }

    /// `self - k · x^shift · g`.
    fn sub_shifted(&mut self, k: &Rat, shift: &[u32], g: &YPoly) {
        for (e, c) in &g.terms {
            let e: Vec<u32> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            self.add_term(e, -(k * c));
        }
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.terms.iter().fold(Rat::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (v, &b) in point.iter().zip(e) {
                for _ in 0..b {
                    t *= v;
                }
            }
            acc + t
        })
    }

    /// Full reduction modulo `basis`, scanning from the leading term down.
    pub fn reduce(&self, basis: &[YPoly]) -> YPoly {
        let mut p = self.clone();
        let mut rem = YPoly::zero(self.nvars);
        while let Some((e, c)) = p.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let reducer = basis.iter().find(|g| {
                g.leading()
                    .is_some_and(|(lg, _)| divides(lg, &e))
            });
            match reducer {
                Some(g) => {
                    let (lg, lc) = g.leading().unwrap();
                    let shift: Vec<u32> = e.iter().zip(lg).map(|(a, b)| a - b).collect();
                    p.sub_shifted(&(&c / lc), &shift, g);
                }
                None => {
                    p.terms.remove(&e);
                    rem.terms.insert(e, c);
                }
            }
        }
        rem
    }
}

impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names = VarNames::default_for(0, self.nvars);
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let m = Monomial {
                x: Vec::new(),
                y: e.clone(),
            };
            write_term(f, i == 0, &m, c, &names)?;
        }
        Ok(())
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn s_poly(f: &YPoly, g: &YPoly) -> YPoly {
    let (lf, cf) = f.leading().unwrap();
    let (lg, cg) = g.leading().unwrap();
    let l = lcm(lf, lg);
    let sf: Vec<u32> = l.iter().zip(lf).map(|(a, b)| a - b).collect();
    let sg: Vec<u32> = l.iter().zip(lg).map(|(a, b)| a - b).collect();
    let mut s = YPoly::zero(f.nvars);
    s.sub_shifted(&-(Rat::one() / cf), &sf, f);
    s.sub_shifted(&(Rat::one() / cg), &sg, g);
    s
}

/// Reduced lexicographic Gröbner basis with the default pair budget.
pub fn buchberger_lex(system: &[YPoly]) -> Result<Vec<YPoly>> {
    buchberger_lex_with_budget(system, DEFAULT_PAIR_BUDGET)
}

/// Reduced lexicographic Gröbner basis, monic and sorted by leading
/// monomial. An inconsistent system yields `[1]`, the zero ideal `[]`.
///
/// Pairs are selected by the normal strategy (smallest lcm first) and
/// reduced with the first divisor found in insertion order.
pub fn buchberger_lex_with_budget(system: &[YPoly], budget: usize) -> Result<Vec<YPoly>> {
    let nvars = system.first().map_or(0, YPoly::nvars);
    let mut basis: Vec<YPoly> = system
        .iter()
        .filter(|p| !p.is_zero())
        .map(YPoly::monic)
        .collect();
    if basis.iter().any(YPoly::is_constant) {
        return Ok(vec![YPoly::from_terms(nvars, [(vec![0; nvars], Rat::one())])]);
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let mut processed = 0;
    while !pairs.is_empty() {
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                let la = pair_lcm(&basis, pairs[a]);
                let lb = pair_lcm(&basis, pairs[b]);
                la.cmp(&lb).then(pairs[a].cmp(&pairs[b]))
            })
            .unwrap();
        let (i, j) = pairs.remove(pick);
        let (li, lj) = (basis[i].leading().unwrap().0, basis[j].leading().unwrap().0);
        if coprime(li, lj) {
            continue;
        }
        processed += 1;
        if processed > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let r = s_poly(&basis[i], &basis[j]).reduce(&basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.is_constant() {
            return Ok(vec![r]);
        }
        let k = basis.len();
        basis.push(r);
        pairs.extend((0..k).map(|i| (i, k)));
    }
    Ok(reduce_basis(basis))
}

fn pair_lcm(basis: &[YPoly], (i, j): (usize, usize)) -> Vec<u32> {
    lcm(basis[i].leading().unwrap().0, basis[j].leading().unwrap().0)
}

fn reduce_basis(basis: Vec<YPoly>) -> Vec<YPoly> {
    let mut minimal: Vec<YPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lg = g.leading().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let lh = h.leading().unwrap().0;
            l != k && divides(lh, lg) && (lh != lg || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<YPoly> = (0..minimal.len())
        .map(|k| {
            let others: Vec<YPoly> = minimal
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != k)
                .map(|(_, h)| h.clone())
                .collect();
            minimal[k].reduce(&others).monic()
        })
        .collect();
    reduced.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    reduced
}
