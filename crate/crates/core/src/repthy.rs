//! Highest-weight representations of the dual group.
//!
//! Weights of `\hat G` are coweights of `G`; the dual group's roots are the
//! coroots of the datum. Nothing here materializes the dual group.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::affweyl::OmegaElt;
use crate::error::{Error, Result};
use crate::lattice;
use crate::rootdata::{Coweight, RootDatum, StandardLevi};

/// Dominant weight multiplicities of the irreducible representation with
/// highest weight `highest`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMultiset {
    pub highest: Coweight,
    pub mults: BTreeMap<Coweight, u64>,
}

impl WeightMultiset {
    pub fn mult(&self, lambda: &Coweight) -> u64 {
        self.mults.get(lambda).copied().unwrap_or(0)
    }

    /// Entries by decreasing `<2 rho, lambda>`, then decreasing coordinates.
    pub fn sorted_entries(&self, rd: &RootDatum) -> Vec<(&Coweight, u64)> {
        let mut out: Vec<_> = self.mults.iter().map(|(k, m)| (k, *m)).collect();
        out.sort_by(|a, b| rd.two_rho_pairing(b.0).cmp(&rd.two_rho_pairing(a.0)).then_with(|| b.0.cmp(a.0)));
        out
    }

    /// `sum_lambda m(lambda) |W_0 lambda|`.
    pub fn dimension(&self, rd: &RootDatum) -> u64 {
        self.mults.iter().map(|(k, m)| m * rd.weyl_orbit(k).len() as u64).sum()
    }

    /// Multiplicities of all weights, not only dominant ones.
    pub fn all_weights(&self, rd: &RootDatum) -> BTreeMap<Coweight, u64> {
        let mut out = BTreeMap::new();
        for (k, m) in &self.mults {
            for x in rd.weyl_orbit(k) {
                out.insert(x, *m);
            }
        }
        out
    }
}

/// Freudenthal's recursion in `X_*(T)`, with the invariant form
/// `B(x, y) = sum_{alpha > 0} <alpha, x><alpha, y>`.
pub fn freudenthal(rd: &RootDatum, mu: &Coweight) -> Result<WeightMultiset> {
    rd.coweight(mu.coords())?;
    if !rd.is_dominant(mu) {
        return Err(Error::InvalidInput(format!("{mu} is not dominant")));
    }
    let form = |x: &[i64], y: &[i64]| -> i128 {
        rd.positive_roots().iter().map(|a| lattice::dot(a, x) as i128 * lattice::dot(a, y) as i128).sum()
    };
    let rho2 = rd.two_rho_check();
    let norm_shifted = |x: &Coweight| -> i128 {
        let v = lattice::add(&lattice::scale(x.coords(), 2), rho2);
        form(&v, &v)
    };
    let top = norm_shifted(mu);

    // dominant weights below mu, reachable from mu by subtracting positive
    // coroots without leaving the dominant chamber
    let mut seen: BTreeSet<Coweight> = BTreeSet::new();
    seen.insert(mu.clone());
    let mut queue = VecDeque::from([mu.clone()]);
    while let Some(x) = queue.pop_front() {
        for beta in rd.positive_coroots() {
            let y = Coweight(lattice::sub(x.coords(), beta));
            if rd.is_dominant(&y) && !seen.contains(&y) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut order: Vec<Coweight> = seen.into_iter().collect();
    order.sort_by_key(|x| (rd.two_rho_pairing(&mu.sub(x)), x.clone()));

    let mut mults: BTreeMap<Coweight, u64> = BTreeMap::new();
    mults.insert(mu.clone(), 1);
    for lambda in order.iter().skip(1) {
        let mut num: i128 = 0;
        for beta in rd.positive_coroots() {
            let mut k = 1;
            loop {
                let y = Coweight(lattice::add(lambda.coords(), &lattice::scale(beta, k)));
                let (d, _) = rd.dominate(&y);
                if !rd.dominance_leq(&d, mu) {
                    break;
                }
                let m = mults.get(&d).copied().ok_or_else(|| {
                    Error::Inconsistency(format!("weight {d} used before its multiplicity was known"))
                })?;
                num += form(y.coords(), beta) * m as i128;
                k += 1;
            }
        }
        let den = top - norm_shifted(lambda);
        let num = 8 * num;
        if den <= 0 || num % den != 0 {
            return Err(Error::Inconsistency(format!("Freudenthal quotient at {lambda} is not an integer")));
        }
        let m = num / den;
        if m > 0 {
            mults.insert(lambda.clone(), m as u64);
        }
    }
    Ok(WeightMultiset { highest: mu.clone(), mults })
}

/// Weyl dimension formula for the dual group:
/// `prod_{alpha > 0} <alpha, mu + rho^vee> / <alpha, rho^vee>`.
pub fn weyl_dimension(rd: &RootDatum, mu: &Coweight) -> u64 {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for alpha in rd.positive_roots() {
        let r = lattice::dot(alpha, rd.two_rho_check());
        num *= 2 * lattice::dot(alpha, mu.coords()) + r;
        den *= r;
    }
    let (q, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    q.to_u64().expect("dimension fits in u64")
}

/// Multiplicities of the irreducible `\hat M`-constituents of `V_mu`,
/// keyed by `M`-dominant highest weights.
pub fn branch_to_levi(rd: &RootDatum, mu: &Coweight, m: &StandardLevi) -> Result<BTreeMap<Coweight, u64>> {
    let full = freudenthal(rd, mu)?;
    let md = rd.levi_datum(m)?;
    let rho_m = md.two_rho().to_vec();
    let mut rest: BTreeMap<Coweight, i64> = full.all_weights(rd).into_iter().map(|(k, v)| (k, v as i64)).collect();
    let mut out = BTreeMap::new();
    while let Some(top) = rest
        .keys()
        .max_by(|a, b| lattice::dot(&rho_m, a.coords()).cmp(&lattice::dot(&rho_m, b.coords())).then_with(|| a.cmp(b)))
        .cloned()
    {
        let k = rest[&top];
        if !md.is_dominant(&top) {
            return Err(Error::Inconsistency(format!("maximal remaining weight {top} is not M-dominant")));
        }
        let sub = freudenthal(&md, &top)?;
        for (w, mult) in sub.all_weights(&md) {
            let e = rest.entry(w.clone()).or_insert(0);
            *e -= k * mult as i64;
            if *e < 0 {
                return Err(Error::Inconsistency(format!("negative multiplicity at {w} while branching")));
            }
            if *e == 0 {
                rest.remove(&w);
            }
        }
        out.insert(top, k as u64);
    }
    Ok(out)
}

/// `<2 rho, mu_dom> mod 2`.
pub fn parity(rd: &RootDatum, mu: &Coweight) -> u8 {
    let (d, _) = rd.dominate(mu);
    rd.two_rho_pairing(&d).rem_euclid(2) as u8
}

/// Class of `mu` in `X_*(T) / Q^vee`, shared by every weight of `V_mu`.
pub fn omega_of_rep(rd: &RootDatum, mu: &Coweight) -> OmegaElt {
    OmegaElt(rd.omega_class(mu))
}
