//! The central test functions `z_mu = sum_lambda m_mu(lambda) z_lambda` of a
//! split group and the identities they satisfy: integrality after the
//! `q^{d_mu/2}` normalization, support in the admissible set, the
//! Lefschetz (point-count) pairing, and transfer to anisotropic inner forms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::affweyl::{AffineElt, Facet, OmegaElt};
use crate::bernstein::{self, BernsteinCoords};
use crate::error::{Error, Result};
use crate::exactpoly::LaurentPoly;
use crate::hecke::{HeckeAlgebra, HeckeElt};
use crate::lattice;
use crate::repthy;
use crate::rootdata::{Coweight, RootDatum, StandardLevi};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestFunction {
    pub group: Arc<RootDatum>,
    pub mu: Coweight,
    /// `<2 rho, mu>`.
    pub d_mu: i64,
    pub element: HeckeElt,
    pub coords: BernsteinCoords,
}

impl TestFunction {
    pub fn omega(&self) -> OmegaElt {
        repthy::omega_of_rep(&self.group, &self.mu)
    }
}

/// `z_mu` for dominant `mu`, with `coords(lambda) = m_mu(lambda)`.
pub fn test_function(alg: &HeckeAlgebra, mu: &Coweight) -> Result<TestFunction> {
    let rd = alg.group().datum_arc().clone();
    rd.coweight(mu.coords())?;
    if !rd.is_dominant(mu) {
        return Err(Error::InvalidInput(format!("{mu} is not dominant")));
    }
    let mults = repthy::freudenthal(&rd, mu)?;
    let mut coords = BernsteinCoords::for_group(rd.clone());
    for (lambda, m) in &mults.mults {
        coords.add(lambda, &LaurentPoly::from_int(*m as i64));
    }
    let element = bernstein::assemble(alg, &coords)?;
    if !alg.is_central(&element) {
        return Err(Error::TheoremViolation(format!("z_{mu} is not central")));
    }
    Ok(TestFunction { d_mu: rd.two_rho_pairing(mu), group: rd, mu: mu.clone(), element, coords })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedEntry {
    pub element: AffineElt,
    pub value: LaurentPoly,
    /// `v^{d_mu} * value`.
    pub normalized: LaurentPoly,
}

/// Values and `q^{d_mu/2}`-normalized values on the support, sorted by
/// `(length, word)`. Fails if a normalized value is not in `Z[q]`.
pub fn normalized_table(alg: &HeckeAlgebra, tf: &TestFunction) -> Result<Vec<NormalizedEntry>> {
    let d = tf.d_mu as i32;
    let mut out = Vec::new();
    for (x, c) in alg.sorted_terms(&tf.element) {
        if !c.shift_membership(d) {
            return Err(Error::TheoremViolation(format!(
                "normalized value at {} is {}, not in Z[q]",
                alg.group().format_elt(x),
                c.shift(d)
            )));
        }
        out.push(NormalizedEntry { element: x.clone(), value: c.clone(), normalized: c.shift(d) });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportReport {
    pub facet: Facet,
    /// Minimal double-coset representatives where the function is nonzero.
    pub support: Vec<AffineElt>,
    pub admissible: Vec<AffineElt>,
    pub contained: bool,
    pub equal: bool,
}

/// Support of `tf` at level `f` against `W_f \ Adm(mu) / W_f`.
pub fn support_check(alg: &HeckeAlgebra, tf: &TestFunction, f: &Facet) -> Result<SupportReport> {
    let w = alg.group();
    let table = alg.compress_to_parahoric(&tf.element, f)?;
    let mut support: Vec<AffineElt> = table.integral.keys().cloned().collect();
    w.sort_elements(&mut support);
    let admissible = w.admissible_set_parahoric(&tf.mu, f)?;
    let contained =
        support.iter().all(|x| admissible.binary_search_by(|a| w.order_key(a).cmp(&w.order_key(x))).is_ok());
    let equal = contained && support.len() == admissible.len();
    Ok(SupportReport { facet: f.clone(), support, admissible, contained, equal })
}

/// `sum_w value(w) q^{l_L(w)}`.
pub fn lefschetz_pairing(alg: &HeckeAlgebra, h: &HeckeElt) -> LaurentPoly {
    h.terms().map(|(x, c)| c.shift(2 * alg.group().weighted_length(x, alg.params()) as i32)).sum()
}

fn default_quotient(rd: &RootDatum) -> Result<Vec<i64>> {
    let map = rd.omega_map();
    match map.moduli() {
        [0] => Ok(map.rows()[0].clone()),
        _ => Err(Error::IncompatibleQuotient(format!(
            "{} has no canonical map to Z; pass the Kottwitz quotient explicitly",
            rd.name()
        ))),
    }
}

/// Test function of the anisotropic inner form (e.g. `D^x` for `GL_n`):
/// `C * 1_{omega_V}` with `omega_V` the image of `mu` and `C` the
/// Lefschetz pairing of `z_mu`. The quotient defaults to the coordinate sum.
pub fn anisotropic_transfer(alg: &HeckeAlgebra, mu: &Coweight, quotient: Option<&[i64]>) -> Result<(i64, LaurentPoly)> {
    let rd = alg.group().datum();
    let q = match quotient {
        Some(q) => q.to_vec(),
        None => default_quotient(rd)?,
    };
    if q.len() != rd.rank() {
        return Err(Error::IncompatibleQuotient(format!("quotient has {} entries, rank is {}", q.len(), rd.rank())));
    }
    if rd.simple_coroots().iter().any(|c| lattice::dot(&q, c) != 0) {
        return Err(Error::IncompatibleQuotient("quotient does not kill the coroots".into()));
    }
    let tf = test_function(alg, mu)?;
    Ok((lattice::dot(&q, mu.coords()), lefschetz_pairing(alg, &tf.element)))
}

/// `c_m = sum_{t in W_0 nu, t -> m} v^{<2 rho, t> - <2 rho_N, t>}` for the
/// standard parabolic with Levi `M`. `quotient` maps `X_*` to `Lambda_M`
/// (rows of an integer matrix); by default the `Omega`-coordinates of `M`.
pub fn transfer_coefficients(
    rd: &RootDatum,
    nu: &Coweight,
    m: &StandardLevi,
    quotient: Option<&[Vec<i64>]>,
) -> Result<BTreeMap<Vec<i64>, LaurentPoly>> {
    rd.coweight(nu.coords())?;
    if !rd.is_dominant(nu) {
        return Err(Error::InvalidInput(format!("{nu} is not dominant")));
    }
    let md = rd.levi_datum(m)?;
    let apply = |x: &Coweight| -> Vec<i64> {
        match quotient {
            Some(rows) => rows.iter().map(|r| lattice::dot(r, x.coords())).collect(),
            None => md.omega_class(x),
        }
    };
    if let Some(rows) = quotient {
        if rows.iter().any(|r| r.len() != rd.rank()) {
            return Err(Error::IncompatibleQuotient("quotient rows have the wrong length".into()));
        }
        if md.simple_coroots().iter().any(|c| rows.iter().any(|r| lattice::dot(r, c) != 0)) {
            return Err(Error::IncompatibleQuotient("quotient does not kill the coroots of M".into()));
        }
    }
    let rho_n = rd.two_rho_unipotent(m);
    let mut out: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
    let mut n_pairing: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for t in rd.weyl_orbit(nu) {
        let cls = apply(&t);
        let pn = lattice::dot(&rho_n, t.coords());
        if let Some(prev) = n_pairing.insert(cls.clone(), pn) {
            if prev != pn {
                return Err(Error::IncompatibleQuotient(format!(
                    "<2 rho_N, -> is not constant on the fiber over {cls:?}"
                )));
            }
        }
        *out.entry(cls).or_default() += LaurentPoly::v_pow((rd.two_rho_pairing(&t) - pn) as i32);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affweyl::AffineWeylGroup;
    use crate::rootdata::Preset;
    use alloc::vec;

    fn alg(f: Preset, n: usize) -> HeckeAlgebra {
        HeckeAlgebra::equal(AffineWeylGroup::new(RootDatum::preset(f, n).unwrap()))
    }

    fn cw(v: &[i64]) -> Coweight {
        Coweight(v.to_vec())
    }

    /// `v^{-(n-1)} (1 + q + ... + q^{n-1})`.
    fn division_value(n: i32) -> LaurentPoly {
        (0..n).map(|i| LaurentPoly::v_pow(2 * i - (n - 1))).sum()
    }

    #[test]
    fn torus_test_function() {
        let h = HeckeAlgebra::equal(AffineWeylGroup::new(RootDatum::new("T2", 2, vec![], vec![]).unwrap()));
        let tf = test_function(&h, &cw(&[2, -1])).unwrap();
        assert_eq!(tf.element, HeckeElt::basis(AffineElt::translation(cw(&[2, -1]))));
    }

    #[test]
    fn gl2_minuscule() {
        let h = alg(Preset::GL, 2);
        let tf = test_function(&h, &cw(&[1, 0])).unwrap();
        let table = normalized_table(&h, &tf).unwrap();
        assert_eq!(table.len(), 3);
        assert_eq!(table[0].normalized, LaurentPoly::one() - LaurentPoly::q());
        assert_eq!(table[1].normalized, LaurentPoly::one());
        assert_eq!(table[2].normalized, LaurentPoly::one());
        let rep = support_check(&h, &tf, &Facet::iwahori()).unwrap();
        assert!(rep.contained && rep.equal);
        assert_eq!(lefschetz_pairing(&h, &tf.element), division_value(2));
    }

    #[test]
    fn sl2_adjoint() {
        let h = alg(Preset::SL, 2);
        let tf = test_function(&h, &cw(&[1])).unwrap();
        let z = bernstein::bernstein_z(&h, &cw(&[1])).unwrap();
        assert_eq!(tf.element, z.add(&h.one()));
    }

    #[test]
    fn division_algebra_values() {
        for n in 2..=4 {
            let h = alg(Preset::GL, n);
            let mut e = vec![0; n];
            e[0] = 1;
            let (om, c) = anisotropic_transfer(&h, &cw(&e), None).unwrap();
            assert_eq!(om, 1);
            assert_eq!(c, division_value(n as i32));
        }
        let h = alg(Preset::GL, 2);
        assert_eq!(anisotropic_transfer(&h, &cw(&[1, 1]), None).unwrap(), (2, LaurentPoly::one()));
        let (om, c) = anisotropic_transfer(&h, &cw(&[2, 0]), None).unwrap();
        assert_eq!(om, 2);
        assert_eq!(c.eval_at_one(), 3.into());
        assert!(anisotropic_transfer(&h, &cw(&[1, 0]), Some(&[1, 0])).is_err());
    }

    #[test]
    fn transfer_coefficient_examples() {
        let gl2 = RootDatum::preset(Preset::GL, 2).unwrap();
        let c = transfer_coefficients(&gl2, &cw(&[1, 0]), &gl2.full_levi(), None).unwrap();
        assert_eq!(c, BTreeMap::from([(vec![1], division_value(2))]));
        let c = transfer_coefficients(&gl2, &cw(&[1, 1]), &gl2.full_levi(), None).unwrap();
        assert_eq!(c, BTreeMap::from([(vec![2], LaurentPoly::one())]));
        // self-transfer: M = T, quotient the identity
        let gl3 = RootDatum::preset(Preset::GL, 3).unwrap();
        let c = transfer_coefficients(&gl3, &cw(&[1, 1, 0]), &StandardLevi::torus(), None).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.values().all(|x| x.is_one()));
        let bad = [vec![1, 0, 0]];
        assert!(transfer_coefficients(&gl3, &cw(&[1, 0, 0]), &StandardLevi::new([0]), Some(&bad)).is_err());
    }
}
