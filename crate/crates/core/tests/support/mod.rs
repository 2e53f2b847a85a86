//! Test-only oracles. None of them call into the library's expansion,
//! tropical or solver code; they share only the data types.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use puiseux::numeric::{rat, ratio};
use puiseux::{LPoly, Rat, WeightMatrix};

pub mod newton {
    //! Classical Newton polygon expansion of one plane curve `f(x, y)`,
    //! with rational exponents of `x` kept as they are (no ramification).

    use super::*;

    /// `(exponent of x, degree in y) -> coefficient`.
    pub type Curve = BTreeMap<(Rat, u32), Rat>;

    #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
    pub struct OracleBranch {
        /// `(coefficient, exponent)` in the order found.
        pub terms: Vec<(Rat, Rat)>,
        pub exact: bool,
    }

    pub fn from_lpoly(f: &LPoly) -> Curve {
        assert_eq!((f.nx(), f.ny()), (1, 1));
        f.to_terms()
            .into_iter()
            .map(|t| ((t.xexp[0].clone(), t.ydeg[0]), t.coeff))
            .collect()
    }

    /// Compact edges of the lower hull of `{(b, a)}` as `(μ, edge terms)`,
    /// where every edge term minimises `a + μ b`.
    pub fn edges(f: &Curve) -> Vec<(Rat, Vec<(u32, Rat)>)> {
        let mut lowest: BTreeMap<u32, Rat> = BTreeMap::new();
        for (a, b) in f.keys() {
            lowest
                .entry(*b)
                .and_modify(|v| {
                    if a < v {
                        *v = a.clone()
                    }
                })
                .or_insert_with(|| a.clone());
        }
        let pts: Vec<(Rat, Rat)> = lowest.into_iter().map(|(b, a)| (rat(b.into()), a)).collect();
        // Andrew's monotone chain, lower half
        let mut hull: Vec<(Rat, Rat)> = Vec::new();
        for p in pts {
            while hull.len() >= 2 {
                let (o, q) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
                let cross = (&q.0 - &o.0) * (&p.1 - &o.1) - (&q.1 - &o.1) * (&p.0 - &o.0);
                if cross <= Rat::zero() {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.windows(2)
            .map(|e| {
                let mu = (&e[0].1 - &e[1].1) / (&e[1].0 - &e[0].0);
                let value = |a: &Rat, b: u32| a + &mu * rat(b.into());
                let min = f.keys().map(|(a, b)| value(a, *b)).min().unwrap();
                let on_edge = f
                    .iter()
                    .filter(|((a, b), _)| value(a, *b) == min)
                    .map(|((_, b), c)| (*b, c.clone()))
                    .collect();
                (mu, on_edge)
            })
            .collect()
    }

    /// Nonzero rational roots of `Σ c t^b`, by the rational root theorem.
    pub fn nonzero_rational_roots(poly: &[(u32, Rat)]) -> Vec<Rat> {
        let lcm = poly.iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
        let ints: BTreeMap<u32, BigInt> = poly
            .iter()
            .map(|(b, c)| (*b, (c * Rat::from_integer(lcm.clone())).to_integer()))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let (_, low) = ints.iter().next().unwrap();
        let (_, high) = ints.iter().next_back().unwrap();
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let n = n.abs();
            let mut d = BigInt::one();
            let mut out = Vec::new();
            while &d * &d <= n {
                if (&n % &d).is_zero() {
                    out.push(d.clone());
                    out.push(&n / &d);
                }
                d += 1;
            }
            out
        };
        let eval = |t: &Rat| -> Rat {
            ints.iter()
                .map(|(b, c)| Rat::from_integer(c.clone()) * num_traits::pow(t.clone(), *b as usize))
                .fold(Rat::zero(), |s, v| s + v)
        };
        let mut roots = Vec::new();
        for p in divisors(low) {
            for q in divisors(high) {
                for s in [Rat::new(p.clone(), q.clone()), -Rat::new(p.clone(), q.clone())] {
                    if eval(&s).is_zero() && !roots.contains(&s) {
                        roots.push(s);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// `f(x, c x^μ + y)`.
    pub fn shift(f: &Curve, c: &Rat, mu: &Rat) -> Curve {
        let mut out = Curve::new();
        for ((a, b), coeff) in f {
            let mut binom = BigInt::one();
            for k in 0..=*b {
                if k > 0 {
                    binom = binom * BigInt::from(b - k + 1) / BigInt::from(k);
                }
                let e = b - k;
                let v = coeff * Rat::from_integer(binom.clone()) * num_traits::pow(c.clone(), e as usize);
                let key = (a + mu * rat(e.into()), k);
                let entry = out.entry(key.clone()).or_insert_with(Rat::zero);
                *entry += v;
                if entry.is_zero() {
                    out.remove(&key);
                }
            }
        }
        out
    }

    /// All branches with up to `max_terms` terms. The first exponent must
    /// be positive and later ones strictly larger than their predecessor.
    pub fn expand(f: &Curve, max_terms: usize) -> Vec<OracleBranch> {
        let mut out = Vec::new();
        walk(f, &mut Vec::new(), None, max_terms, &mut out);
        out.sort();
        out.dedup();
        out
    }

    fn walk(f: &Curve, acc: &mut Vec<(Rat, Rat)>, prev: Option<&Rat>, max: usize, out: &mut Vec<OracleBranch>) {
        let y_divides = f.keys().all(|(_, b)| *b > 0);
        if acc.len() == max {
            out.push(OracleBranch {
                terms: acc.clone(),
                exact: y_divides,
            });
            return;
        }
        if y_divides {
            out.push(OracleBranch {
                terms: acc.clone(),
                exact: true,
            });
        }
        for (mu, edge) in edges(f) {
            let admissible = match prev {
                None => mu > Rat::zero(),
                Some(p) => &mu > p,
            };
            if !admissible {
                continue;
            }
            for c in nonzero_rational_roots(&edge) {
                acc.push((c.clone(), mu.clone()));
                walk(&shift(f, &c, &mu), acc, Some(&mu), max, out);
                acc.pop();
            }
        }
    }
}

/// Coefficients of `(1 + x)^(1/2)` up to `x^n`.
pub fn sqrt_one_plus_x(n: usize) -> Vec<Rat> {
    let half = ratio(1, 2);
    let mut out = vec![Rat::one()];
    let mut c = Rat::one();
    for k in 1..=n {
        c = c * (&half - rat(k as i64 - 1)) / rat(k as i64);
        out.push(c.clone());
    }
    out
}

fn weighted(w: &WeightMatrix, e: &[Rat]) -> Vec<Rat> {
    w.rows()
        .iter()
        .map(|r| r.iter().zip(e).fold(Rat::zero(), |s, (a, b)| s + a * b))
        .collect()
}

/// `y_i = c_i x^{γ_i}` per coordinate, `None` for `y_i = 0`.
pub type MonomialTuple = Vec<Option<(Rat, Vec<Rat>)>>;

/// Whether substituting `y_i = c_i x^{γ_i}` (`None` meaning `y_i = 0`)
/// cancels the lowest-value part of every generator.
pub fn tuple_cancels_initial_forms(gens: &[LPoly], w: &WeightMatrix, tuple: &[Option<(Rat, Vec<Rat>)>]) -> bool {
    gens.iter().all(|g| {
        let mut sum: BTreeMap<Vec<Rat>, Rat> = BTreeMap::new();
        let mut lowest: Option<Vec<Rat>> = None;
        for t in g.to_terms() {
            let mut coeff = t.coeff.clone();
            let mut exp = t.xexp.clone();
            let mut vanished = false;
            for (i, &b) in t.ydeg.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                match &tuple[i] {
                    None => vanished = true,
                    Some((c, gamma)) => {
                        coeff *= num_traits::pow(c.clone(), b as usize);
                        for (e, gk) in exp.iter_mut().zip(gamma) {
                            *e += gk * rat(b.into());
                        }
                    }
                }
            }
            if vanished {
                continue;
            }
            let v = weighted(w, &exp);
            if lowest.as_ref().is_none_or(|l| &v < l) {
                lowest = Some(v);
            }
            *sum.entry(exp).or_insert_with(Rat::zero) += coeff;
        }
        let Some(lowest) = lowest else {
            return true;
        };
        sum.iter().all(|(e, c)| c.is_zero() || weighted(w, e) != lowest)
    })
}

/// Exhaustive search for monomial tuples cancelling every initial form,
/// with exponents from `gammas`, coefficients from `coeffs`, and the
/// coordinates outside `active` set to zero.
pub fn brute_starting_tuples(
    gens: &[LPoly],
    w: &WeightMatrix,
    active: &[usize],
    gammas: &[Vec<Rat>],
    coeffs: &[Rat],
) -> Vec<MonomialTuple> {
    let m = gens[0].ny();
    let choices: Vec<(Rat, Vec<Rat>)> = gammas
        .iter()
        .flat_map(|g| coeffs.iter().map(move |c| (c.clone(), g.clone())))
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; active.len()];
    loop {
        let mut tuple = vec![None; m];
        for (k, &i) in active.iter().enumerate() {
            tuple[i] = Some(choices[idx[k]].clone());
        }
        if tuple_cancels_initial_forms(gens, w, &tuple) {
            out.push(tuple);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < choices.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Small rationals `±p/q` with `1 ≤ p, q ≤ bound`, sorted and distinct.
pub fn small_rationals(bound: i64) -> Vec<Rat> {
    let mut v: Vec<Rat> = (1..=bound)
        .flat_map(|p| (1..=bound).flat_map(move |q| [ratio(p, q), ratio(-p, q)]))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// Exponent vectors in `N` variables with entries in `{0, 1/2, ..., top/2}`.
pub fn half_grid(n: usize, top: i64) -> Vec<Vec<Rat>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=top).map(move |k| {
                    let mut v2 = v.clone();
                    v2.push(ratio(k, 2));
                    v2
                })
            })
            .collect();
    }
    out
}

/// The corpus files shipped with the crate, as `(name, text)`.
pub fn corpus() -> Vec<(String, String)> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("problems");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "txt"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).unwrap())
        })
        .collect()
}

pub fn problem_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("problems")
        .join(format!("{name}.txt"))
}

pub mod strategies {
    use proptest::prelude::*;

    use super::*;
    use puiseux::{EtaVec, Term, Val};

    pub fn small_rat() -> impl Strategy<Value = Rat> {
        (-6i64..=6, 1i64..=3).prop_map(|(p, q)| ratio(p, q))
    }

    pub fn nonzero_rat() -> impl Strategy<Value = Rat> {
        small_rat().prop_filter("nonzero", |r| !r.is_zero())
    }

    /// A weight matrix of rank `nx` with `nx` or `nx + 1` rows.
    pub fn weight(nx: usize) -> impl Strategy<Value = WeightMatrix> {
        (nx..=nx + 1)
            .prop_flat_map(move |d| prop::collection::vec(prop::collection::vec(-3i64..=3, nx), d))
            .prop_filter_map("rank deficient", |rows| {
                WeightMatrix::new(rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect()).ok()
            })
    }

    pub fn lpoly(nx: usize, ny: usize, max_terms: usize) -> impl Strategy<Value = LPoly> {
        let term = (
            nonzero_rat(),
            prop::collection::vec((-4i64..=4, 1i64..=2).prop_map(|(p, q)| ratio(p, q)), nx),
            prop::collection::vec(0u32..=3, ny),
        )
            .prop_map(|(coeff, xexp, ydeg)| Term { coeff, xexp, ydeg });
        prop::collection::vec(term, 1..=max_terms).prop_map(move |ts| LPoly::from_terms(nx, ny, ts))
    }

    /// Each coordinate is `∞` with probability about 1/4.
    pub fn eta(ny: usize, d: usize) -> impl Strategy<Value = EtaVec> {
        let val = prop_oneof![
            1 => Just(Val::Infinite),
            3 => prop::collection::vec(small_rat(), d).prop_map(Val::Finite),
        ];
        prop::collection::vec(val, ny).prop_map(EtaVec)
    }

    /// `(W, η, f, g)` with matching dimensions.
    pub fn weighted_pair() -> impl Strategy<Value = (WeightMatrix, EtaVec, LPoly, LPoly)> {
        (1usize..=2, 1usize..=2).prop_flat_map(|(nx, ny)| {
            weight(nx).prop_flat_map(move |w| {
                let d = w.dim();
                (Just(w), eta(ny, d), lpoly(nx, ny, 5), lpoly(nx, ny, 5))
            })
        })
    }
}
