use std::sync::Arc;

use super::descriptor::Descriptor;
use super::element::DOElement;
use crate::error::{Error, Result};
use crate::group::{jm_elements, GroupAlgebraElement};
use crate::scalar::{ratio, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Z,
    Y,
    YBar,
    ZTilde,
}

/// The Jucys-Murphy elements of the descriptor's group as algebra elements.
pub fn jm(desc: &Arc<Descriptor>) -> (Vec<DOElement>, Vec<DOElement>) {
    let (a, b) = jm_elements(desc.m(), desc.n(), desc.field());
    let lift = |v: Vec<GroupAlgebraElement>| -> Vec<DOElement> {
        v.iter().map(|x| DOElement::from_group_algebra(desc, x)).collect()
    };
    (lift(a), lift(b))
}

/// z_i, y_i = z_i - s M_i, ybar_i = z_i + s Mbar_i, or zt_i = z_i + (s/2)(Mbar_i - M_i),
/// where s is kappa (or c in type A). 1-based i.
pub fn build_family(desc: &Arc<Descriptor>, kind: Family, i: usize) -> Result<DOElement> {
    if i == 0 || i > desc.n() {
        return Err(Error::IndexOutOfRange { index: i, n: desc.n() });
    }
    let z = DOElement::z(desc, i)?;
    if kind == Family::Z {
        return Ok(z);
    }
    let (big, bar) = jm(desc);
    let s = desc.jm_scale();
    Ok(match kind {
        Family::Z => unreachable!(),
        Family::Y => &z - &big[i - 1].scale(&s),
        Family::YBar => &z + &bar[i - 1].scale(&s),
        Family::ZTilde => {
            let half = s.scale(&ratio(1, 2));
            &z + &(&bar[i - 1] - &big[i - 1]).scale(&half)
        }
    })
}

/// All n members of a family.
pub fn family(desc: &Arc<Descriptor>, kind: Family) -> Vec<DOElement> {
    (1..=desc.n())
        .map(|i| build_family(desc, kind, i).expect("index in range"))
        .collect()
}

/// kappa as an algebra element (or the type-A scale).
pub fn scale_element(desc: &Arc<Descriptor>) -> DOElement {
    DOElement::scalar(desc, desc.jm_scale())
}

pub fn kappa(desc: &Arc<Descriptor>) -> Scalar {
    Scalar::kappa(desc.field())
}
