//! The polar retraction `phi_t(g) = g (g* g)^{-t/2} = k e^{(1-t) p}` from a
//! complex group onto its compact form, applied arrow by arrow.

use crate::error::{Error, Result};
use crate::matgroup::hermitian_power;
use crate::matrix::CMatrix;
use crate::representation::Representation;
use crate::TOL_MEMBERSHIP;

pub fn phi_t(gm: &CMatrix, t: f64) -> Result<CMatrix> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParameterOutOfRange("t"));
    }
    if gm.det().norm() <= TOL_MEMBERSHIP {
        return Err(Error::Singular);
    }
    if t == 0.0 {
        return Ok(gm.clone());
    }
    let h = (&gm.adjoint() * gm).hermitian_part();
    Ok(gm * &hermitian_power(&h, -t / 2.0)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Retraction {
    pub representation: Representation,
    /// Set when the group is already compact and the retraction is the
    /// identity.
    pub notice: Option<&'static str>,
}

/// `phi_t` on every marking. At `t = 1` every marking is unitary.
pub fn retract_representation(f: &Representation, t: f64) -> Result<Retraction> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParameterOutOfRange("t"));
    }
    if f.group().family.is_compact() {
        return Ok(Retraction {
            representation: f.clone(),
            notice: Some("group is compact; the retraction is the identity"),
        });
    }
    let representation = f.map_markings(|_, m| phi_t(m, t))?;
    Ok(Retraction {
        representation,
        notice: None,
    })
}
