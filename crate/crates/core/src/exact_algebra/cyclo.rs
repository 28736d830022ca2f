//! Elements of the cyclotomic field Q(ζ_N).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::rat::Rat;
use super::ring::Ring;
use super::upoly::{cyclotomic_poly, UPoly};

struct Ctx {
    phi: usize,
    modulus: UPoly,
    // reduction of x^k for k < 2*phi - 1
    powers: Vec<Vec<Rat>>,
}

fn ctx(order: u32) -> Arc<Ctx> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Ctx>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&order) {
        return c.clone();
    }
    let modulus = cyclotomic_poly(order);
    let phi = modulus.degree().unwrap();
    let powers = (0..(2 * phi).max(1))
        .map(|k| {
            let r = UPoly::monomial(k, Rat::one()).divrem(&modulus).1;
            (0..phi).map(|i| r.coeff(i)).collect()
        })
        .collect();
    let c = Arc::new(Ctx {
        phi,
        modulus,
        powers,
    });
    cache.lock().unwrap().insert(order, c.clone());
    c
}

/// `Σ coords[i] ζ^i` with ζ a primitive `order`-th root of unity.
///
/// Orders 1 and 2 give the rationals; such elements combine freely with
/// elements of any other order.
#[derive(Clone)]
pub struct CycloNum {
    order: u32,
    coords: Vec<Rat>,
}

impl CycloNum {
    pub fn rational(r: Rat) -> CycloNum {
        CycloNum {
            order: 1,
            coords: vec![r],
        }
    }

    pub fn from_coords(order: u32, coords: Vec<Rat>) -> CycloNum {
        let c = ctx(order);
        assert_eq!(coords.len(), c.phi, "wrong number of coordinates");
        CycloNum { order, coords }
    }

    /// `ζ_order^k`.
    pub fn zeta_pow(order: u32, k: i64) -> CycloNum {
        let c = ctx(order);
        let k = k.rem_euclid(order as i64) as usize;
        let r = UPoly::monomial(k, Rat::one()).divrem(&c.modulus).1;
        CycloNum {
            order,
            coords: (0..c.phi).map(|i| r.coeff(i)).collect(),
        }
        .normalized()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    fn is_scalar(&self) -> bool {
        self.coords.len() == 1
    }

    // orders 1 and 2 are both stored as order 1
    fn normalized(mut self) -> CycloNum {
        if self.coords.len() == 1 {
            self.order = 1;
        }
        self
    }

    /// The rational value, if all irrational coordinates vanish.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn lift(&self, order: u32) -> CycloNum {
        if self.order == order {
            return self.clone();
        }
        assert!(self.is_scalar(), "mixing cyclotomic orders {} and {}", self.order, order);
        let phi = ctx(order).phi;
        let mut coords = vec![Rat::zero(); phi];
        coords[0] = self.coords[0].clone();
        CycloNum { order, coords }
    }

    fn common(a: &CycloNum, b: &CycloNum) -> (CycloNum, CycloNum) {
        if a.order == b.order {
            (a.clone(), b.clone())
        } else if a.is_scalar() {
            (a.lift(b.order), b.clone())
        } else {
            (a.clone(), b.lift(a.order))
        }
    }

    fn zip(&self, o: &CycloNum, f: impl Fn(&Rat, &Rat) -> Rat) -> CycloNum {
        let (a, b) = CycloNum::common(self, o);
        CycloNum {
            order: a.order,
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| f(x, y)).collect(),
        }
    }

    fn as_upoly(&self) -> UPoly {
        UPoly::new(self.coords.clone())
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, o: &CycloNum) -> bool {
        if self.order == o.order {
            return self.coords == o.coords;
        }
        let (a, b) = if self.is_scalar() {
            (self, o)
        } else if o.is_scalar() {
            (o, self)
        } else {
            return false;
        };
        b.as_rational().as_ref() == Some(&a.coords[0])
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            write!(f, "{r}")
        } else {
            write!(f, "[{}]_{}", UPoly::new(self.coords.clone()).display_var("ζ"), self.order)
        }
    }
}

impl Ring for CycloNum {
    fn zero() -> Self {
        CycloNum::rational(Rat::zero())
    }
    fn one() -> Self {
        CycloNum::rational(Rat::one())
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
    fn from_rat(r: &Rat) -> Self {
        CycloNum::rational(r.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }
    fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_scalar() {
            return o.scale(&self.coords[0]);
        }
        if o.is_scalar() {
            return self.scale(&o.coords[0]);
        }
        let (a, b) = CycloNum::common(self, o);
        let c = ctx(a.order);
        let mut out = vec![Rat::zero(); c.phi];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let p = x * y;
                for (k, r) in c.powers[i + j].iter().enumerate() {
                    if !r.is_zero() {
                        out[k] += &p * r;
                    }
                }
            }
        }
        CycloNum {
            order: a.order,
            coords: out,
        }
    }
    fn neg(&self) -> Self {
        CycloNum {
            order: self.order,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
    fn scale(&self, r: &Rat) -> Self {
        CycloNum {
            order: self.order,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_scalar() {
            return self.coords[0].inv().map(CycloNum::rational);
        }
        let c = ctx(self.order);
        let inv = self.as_upoly().inverse_mod(&c.modulus)?;
        Some(CycloNum {
            order: self.order,
            coords: (0..c.phi).map(|i| inv.coeff(i)).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity() {
        for n in 1..=7u32 {
            let z = CycloNum::zeta_pow(n, 1);
            assert_eq!(z.pow_u(n as u64), CycloNum::one(), "ζ^N = 1 for N={n}");
            if [2, 3, 5, 7].contains(&n) {
                let s = (0..n as i64).fold(CycloNum::zero(), |acc, k| acc.add(&CycloNum::zeta_pow(n, k)));
                assert!(s.is_zero(), "sum of roots for N={n}");
            }
        }
    }

    #[test]
    fn inverse() {
        let z = CycloNum::zeta_pow(5, 1);
        let a = z.add(&CycloNum::from_rat(&Rat::int(3)));
        assert_eq!(a.mul(&a.inv().unwrap()), CycloNum::one());
        assert_eq!(CycloNum::zeta_pow(2, 1), CycloNum::from_rat(&Rat::int(-1)));
        assert_eq!(CycloNum::zeta_pow(4, 2), CycloNum::from_rat(&Rat::int(-1)));
    }
}
