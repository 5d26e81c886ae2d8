use crate::error::{Error, Result};
use crate::exactlin::Fp;

/// An element of `k[T]/T^α`, stored as its `α` low coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPoly {
    field: Fp,
    coeffs: Vec<u32>,
}

impl TruncatedPoly {
    /// Truncates or zero-pads `coeffs` to length `order`.
    pub fn new(field: Fp, coeffs: &[u32], order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Input("truncation order must be at least 1".into()));
        }
        let mut c: Vec<u32> = coeffs.iter().take(order).map(|&v| v % field.p()).collect();
        c.resize(order, 0);
        Ok(Self { field, coeffs: c })
    }

    pub fn one(field: Fp, order: usize) -> Result<Self> {
        Self::new(field, &[1], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field || self.order() != other.order() {
            return Err(Error::DimensionMismatch(
                "truncated polynomials of different shape".into(),
            ));
        }
        let f = self.field;
        let n = self.order();
        let mut out = vec![0u32; n];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in other.coeffs[..n - i].iter().enumerate() {
                out[i + j] = f.mul_add(out[i + j], a, b);
            }
        }
        Ok(Self {
            field: f,
            coeffs: out,
        })
    }

    /// Inverse modulo `T^α` by successive correction: start from
    /// `g = 1/λ_0`, then at step `i` subtract `(c_i/λ_0) T^i` where `c_i` is
    /// the first nonvanishing higher coefficient of `g f`.
    pub fn invert(&self) -> Result<Self> {
        let f = self.field;
        let lead_inv = f.inv(self.coeffs[0]).ok_or(Error::NotInvertible)?;
        let mut g = Self::new(f, &[lead_inv], self.order())?;
        for i in 1..self.order() {
            let c = g.mul(self)?.coeffs[i];
            if c != 0 {
                g.coeffs[i] = f.sub(g.coeffs[i], f.mul(c, lead_inv));
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        let f3 = Fp::new(3).unwrap();
        for order in 1..5 {
            let one = TruncatedPoly::one(f3, order).unwrap();
            assert_eq!(one.invert().unwrap(), one);
        }
        let two = TruncatedPoly::new(f3, &[2], 1).unwrap();
        assert_eq!(two.invert().unwrap().coeffs(), &[2]);
        let f = TruncatedPoly::new(f3, &[1, 1], 3).unwrap();
        assert_eq!(f.invert().unwrap().coeffs(), &[1, 2, 1]);
    }

    #[test]
    fn zero_constant_term_rejected() {
        let f5 = Fp::new(5).unwrap();
        let f = TruncatedPoly::new(f5, &[0, 1], 2).unwrap();
        assert_eq!(f.invert(), Err(Error::NotInvertible));
    }
}
