//! Places of the projective line, given exactly.

use super::gcd::gcd_multi;
use super::poly::{MPoly, Var};
use super::squarefree::squarefree;
use super::uroots::multiplicity_at;
use crate::Q;
use std::fmt;

/// A point of P^1: a rational number, a Galois orbit described by a monic
/// squarefree polynomial in `s` of degree >= 2, or infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Place {
    Rational(Q),
    Algebraic(MPoly),
    Infinity,
}

impl Place {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Rational(q) => {
                if q.denom() == &crate::Z::from(1) {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Place::Algebraic(m) => write!(f, "{}", m),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlaceError {
    #[error("order at infinity is handled by the caller")]
    InfinityPlace,
    #[error("minimal polynomial for a place must be squarefree")]
    NotSquarefree,
}

/// Vanishing order of the nonzero univariate `a in Q[s]` at a place.
///
/// For a rational `c` this is the multiplicity of `(s - c)`. For a
/// squarefree `m(s)` it is the common multiplicity of the roots of `m`,
/// read off the squarefree decomposition of `a`: the unique `k` with
/// `m | b_k`, and 0 when there is none.
pub fn order_at_place(a: &MPoly, place: &Place) -> Result<u32, PlaceError> {
    assert!(!a.is_zero(), "order of the zero polynomial");
    match place {
        Place::Infinity => Err(PlaceError::InfinityPlace),
        Place::Rational(c) => Ok(multiplicity_at(a, Var::S, c)),
        Place::Algebraic(m) => {
            if !gcd_multi(m, &m.derivative(Var::S)).is_constant() {
                return Err(PlaceError::NotSquarefree);
            }
            if a.is_constant() {
                return Ok(0);
            }
            for (b, k) in squarefree(a).factors {
                if b.exact_div(&m.monic()).is_some() || b.monic().exact_div(&m.monic()).is_some() {
                    return Ok(k);
                }
            }
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Z;

    fn s() -> MPoly {
        MPoly::var(Var::S)
    }
    fn q(n: i64) -> Q {
        Q::from_integer(Z::from(n))
    }

    #[test]
    fn rational_orders() {
        // (4s, c=0) -> 1
        let p = s().scale(&q(4));
        assert_eq!(order_at_place(&p, &Place::Rational(q(0))).unwrap(), 1);
        assert_eq!(order_at_place(&p, &Place::Rational(q(1))).unwrap(), 0);
    }

    #[test]
    fn minimal_polynomial_orders() {
        // (s^2 (s-1), m = s-1): handled as rational via multiplicity too,
        // but exercise the algebraic branch with s^2+1.
        let p = s().pow(2).mul(&s().sub(&MPoly::one()));
        assert_eq!(order_at_place(&p, &Place::Rational(q(1))).unwrap(), 1);

        let m = s().pow(2).add(&MPoly::one());
        let p = m.pow(2);
        assert_eq!(order_at_place(&p, &Place::Algebraic(m.clone())).unwrap(), 2);
        let other = s().pow(2).add(&MPoly::from_int(2));
        assert_eq!(order_at_place(&p, &Place::Algebraic(other)).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_places() {
        let p = s();
        assert_eq!(
            order_at_place(&p, &Place::Infinity),
            Err(PlaceError::InfinityPlace)
        );
        let not_sf = s().pow(2);
        assert_eq!(
            order_at_place(&p, &Place::Algebraic(not_sf)),
            Err(PlaceError::NotSquarefree)
        );
    }
}
