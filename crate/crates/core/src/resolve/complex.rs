use crate::error::{Error, Result};
use crate::exactlin::Matrix;

/// A finite sequence `0 → A_0 → A_1 → .. → A_n → 0` of vector spaces, stored
/// as the dimensions of the `A_i` and the maps `A_i → A_{i+1}`.
#[derive(Clone, Debug)]
pub struct Sequence {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Sequence {
    pub fn new(dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != maps.len() + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} objects need {} maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.cols() != dims[i] || m.rows() != dims[i + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "map {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        Ok(Self { dims, maps })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Exact at every object: consecutive composites vanish and
    /// `rank(in) = dim - rank(out)` everywhere, with zero maps at both ends.
    pub fn is_exact(&self) -> bool {
        for w in self.maps.windows(2) {
            if !w[1].mul(&w[0]).expect("composable").is_zero() {
                return false;
            }
        }
        let ranks: Vec<usize> = self.maps.iter().map(Matrix::rank).collect();
        (0..self.dims.len()).all(|i| {
            let incoming = if i == 0 { 0 } else { ranks[i - 1] };
            let outgoing = ranks.get(i).copied().unwrap_or(0);
            incoming + outgoing == self.dims[i]
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Fp;

    #[test]
    fn identity_is_exact() {
        let f = Fp::new(3).unwrap();
        let s = Sequence::new(vec![2, 2], vec![Matrix::identity(f, 2)]).unwrap();
        assert!(s.is_exact());
    }

    #[test]
    fn zero_map_is_not_exact() {
        let f = Fp::new(3).unwrap();
        let s = Sequence::new(vec![2, 2], vec![Matrix::zeros(f, 2, 2)]).unwrap();
        assert!(!s.is_exact());
        assert!(Sequence::new(vec![2, 3], vec![Matrix::zeros(f, 2, 2)]).is_err());
    }

    #[test]
    fn nonzero_composite_detected() {
        let f = Fp::new(5).unwrap();
        // 0 → k → k → k → 0 with identities: ranks add up wrongly and d² ≠ 0
        let id = Matrix::identity(f, 1);
        let s = Sequence::new(vec![1, 1, 1], vec![id.clone(), id]).unwrap();
        assert!(!s.is_exact());
    }
}
