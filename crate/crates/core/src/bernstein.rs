//! Bernstein elements `theta_lambda`, the central basis `z_lambda`, expansion
//! of central elements in that basis, and constant terms to standard Levis.
//!
//! Convention: `theta_lambda = v^{-l(t_lambda)} T_{t_lambda}` for dominant
//! `lambda` (base alcove in the dominant chamber). With this choice the
//! orbit sums `z_lambda` are central; `bernstein_z` re-checks that on every
//! call.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::affweyl::AffineElt;
use crate::error::{Error, Result};
use crate::exactpoly::LaurentPoly;
use crate::hecke::{HeckeAlgebra, HeckeElt};
use crate::lattice;
use crate::rootdata::{Coweight, RootDatum, StandardLevi};

/// Coordinates in the monomial basis of `Z[v^±][X_*]^{W_0(M)}`, keyed by
/// `M`-dominant representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernsteinCoords {
    group: Arc<RootDatum>,
    levi: StandardLevi,
    coeffs: BTreeMap<Coweight, LaurentPoly>,
}

impl BernsteinCoords {
    pub fn new(group: Arc<RootDatum>, levi: StandardLevi) -> Self {
        Self { group, levi, coeffs: BTreeMap::new() }
    }

    /// Coordinates for `G` itself.
    pub fn for_group(group: Arc<RootDatum>) -> Self {
        let levi = group.full_levi();
        Self::new(group, levi)
    }

    pub fn group(&self) -> &RootDatum {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<RootDatum> {
        &self.group
    }

    pub fn levi(&self) -> &StandardLevi {
        &self.levi
    }

    /// Adds `c` to the coefficient of the orbit of `lambda` (any member).
    pub fn add(&mut self, lambda: &Coweight, c: &LaurentPoly) {
        let (key, _) = self.group.dominate_levi(lambda, &self.levi);
        let entry = self.coeffs.entry(key.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn get(&self, lambda: &Coweight) -> LaurentPoly {
        let (key, _) = self.group.dominate_levi(lambda, &self.levi);
        self.coeffs.get(&key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Coweight, &LaurentPoly)> {
        self.coeffs.iter()
    }

    /// Entries by decreasing `<2 rho, lambda>`, then decreasing coordinates;
    /// this refines the reverse dominance order.
    pub fn sorted_entries(&self) -> Vec<(&Coweight, &LaurentPoly)> {
        let mut out: Vec<_> = self.coeffs.iter().collect();
        out.sort_by(|a, b| {
            let ka = self.group.two_rho_pairing(a.0);
            let kb = self.group.two_rho_pairing(b.0);
            kb.cmp(&ka).then_with(|| b.0.cmp(a.0))
        });
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::new(self.group.clone(), self.levi.clone());
        for (k, a) in &self.coeffs {
            out.add(k, &(a * c));
        }
        out
    }

    pub fn plus(&self, other: &BernsteinCoords) -> Result<Self> {
        if self.group != other.group || self.levi != other.levi {
            return Err(Error::MismatchedDatum);
        }
        let mut out = self.clone();
        for (k, a) in &other.coeffs {
            out.add(k, a);
        }
        Ok(out)
    }
}

fn check_rank(alg: &HeckeAlgebra, lambda: &Coweight) -> Result<()> {
    alg.group().datum().coweight(lambda.coords()).map(|_| ())
}

/// `v^{-l_L(t_lambda)}` for a translation.
fn norm(alg: &HeckeAlgebra, lambda: &Coweight) -> i32 {
    alg.group().weighted_length(&AffineElt::translation(lambda.clone()), alg.params()) as i32
}

/// `theta_lambda = theta_{lambda_1} theta_{lambda_2}^{-1}` with
/// `lambda = lambda_1 - lambda_2`, both dominant.
pub fn theta(alg: &HeckeAlgebra, lambda: &Coweight) -> Result<HeckeElt> {
    check_rank(alg, lambda)?;
    let rd = alg.group().datum();
    if rd.is_dominant(lambda) {
        return Ok(HeckeElt::term(AffineElt::translation(lambda.clone()), LaurentPoly::v_pow(-norm(alg, lambda))));
    }
    let lambda2 = rd.dominant_complement(lambda);
    let lambda1 = lambda.add(&lambda2);
    let c = LaurentPoly::v_pow(norm(alg, &lambda2) - norm(alg, &lambda1));
    let t1 = HeckeElt::term(AffineElt::translation(lambda1), c);
    Ok(alg.right_mul_inverse_basis(&t1, &AffineElt::translation(lambda2)))
}

/// `z_lambda = sum_{lambda' in W_0 lambda} theta_{lambda'}` for dominant
/// `lambda`.
pub fn bernstein_z(alg: &HeckeAlgebra, lambda: &Coweight) -> Result<HeckeElt> {
    check_rank(alg, lambda)?;
    let rd = alg.group().datum();
    if !rd.is_dominant(lambda) {
        return Err(Error::InvalidInput(format!("{lambda} is not dominant")));
    }
    let mut z = HeckeElt::zero();
    for mu in rd.weyl_orbit(lambda) {
        z = z.add(&theta(alg, &mu)?);
    }
    if !alg.is_central(&z) {
        return Err(Error::Inconsistency(format!(
            "z_{lambda} is not central; the theta convention does not match the base alcove"
        )));
    }
    Ok(z)
}

/// `sum_lambda c_lambda z_lambda` for coordinates on `G`.
pub fn assemble(alg: &HeckeAlgebra, coords: &BernsteinCoords) -> Result<HeckeElt> {
    if coords.group() != alg.group().datum() || coords.levi() != &coords.group().full_levi() {
        return Err(Error::MismatchedDatum);
    }
    let mut out = HeckeElt::zero();
    for (lambda, c) in coords.iter() {
        out.add_scaled(&bernstein_z(alg, lambda)?, c);
    }
    Ok(out)
}

/// Coordinates of a central `h` in the basis `z_lambda`.
pub fn bernstein_expand(alg: &HeckeAlgebra, h: &HeckeElt) -> Result<BernsteinCoords> {
    if !alg.is_central(h) {
        return Err(Error::NotCentral);
    }
    let w = alg.group();
    let rd = w.datum();
    let mut out = BernsteinCoords::for_group(w.datum_arc().clone());
    let mut rest = h.clone();
    let mut guard = 0usize;
    while !rest.is_zero() {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::Inconsistency("Bernstein expansion does not terminate".into()));
        }
        let (x, c) =
            rest.terms().max_by_key(|(x, _)| w.length(x)).map(|(x, c)| (x.clone(), c.clone())).expect("nonzero");
        if !x.is_translation() {
            return Err(Error::Inconsistency(format!(
                "top of the support of a central element is {}, not a translation",
                w.format_elt(&x)
            )));
        }
        let (dom, _) = rd.dominate(&x.translation);
        let a = c.shift(norm(alg, &dom));
        out.add(&dom, &a);
        let z = bernstein_z(alg, &dom)?;
        rest.add_scaled(&z, &-&a);
        if !rest.coeff(&x).is_zero() {
            return Err(Error::Inconsistency(format!(
                "leading coefficient of z_{dom} at {} is not v^-l",
                w.format_elt(&x)
            )));
        }
    }
    Ok(out)
}

fn check_sub_levi(c: &BernsteinCoords, m: &StandardLevi) -> Result<()> {
    if let Some(i) = m.indices().find(|&i| i >= c.group().semisimple_rank()) {
        return Err(Error::InvalidInput(format!("Levi index {} out of range", i + 1)));
    }
    if !m.is_subset(c.levi()) {
        return Err(Error::InvalidInput("target Levi is not contained in the source Levi".into()));
    }
    Ok(())
}

/// Constant term: restriction of `W_0(L)`-invariants to `W_0(M)`-invariants
/// for `M` inside the Levi `L` of `c`.
pub fn constant_term(c: &BernsteinCoords, m: &StandardLevi) -> Result<BernsteinCoords> {
    check_sub_levi(c, m)?;
    let rd = c.group();
    let mut out = BernsteinCoords::new(c.group_arc().clone(), m.clone());
    for (lambda, a) in c.iter() {
        let mut reps: Vec<Coweight> =
            rd.levi_orbit(lambda, c.levi()).iter().map(|x| rd.dominate_levi(x, m).0).collect();
        reps.sort();
        reps.dedup();
        for r in reps {
            out.add(&r, a);
        }
    }
    Ok(out)
}

/// `2 rho_N` for the unipotent radical of `M` inside the Levi `L`.
pub fn two_rho_relative(rd: &RootDatum, l: &StandardLevi, m: &StandardLevi) -> Vec<i64> {
    lattice::sub(&rd.two_rho_unipotent(m), &rd.two_rho_unipotent(l))
}

/// Constant term followed by the sign `(-1)^{<2 rho_N, lambda>}` on each
/// `M`-orbit.
pub fn signed_constant_term(c: &BernsteinCoords, m: &StandardLevi) -> Result<BernsteinCoords> {
    let plain = constant_term(c, m)?;
    let rho_n = two_rho_relative(c.group(), c.levi(), m);
    let mut out = BernsteinCoords::new(c.group_arc().clone(), m.clone());
    for (lambda, a) in plain.iter() {
        if lattice::dot(&rho_n, lambda.coords()).rem_euclid(2) == 1 {
            out.add(lambda, &-a);
        } else {
            out.add(lambda, a);
        }
    }
    Ok(out)
}
