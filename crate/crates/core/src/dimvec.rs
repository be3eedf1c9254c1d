//! Dimension vectors and integral weights, indexed by declared vertex order.

use std::fmt;

/// Non-negative integer per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimensionVector {
    values: Vec<u32>,
}

impl DimensionVector {
    pub fn new(values: Vec<u32>) -> Self {
        DimensionVector { values }
    }

    pub fn zero(n: usize) -> Self {
        DimensionVector { values: vec![0; n] }
    }

    /// Standard basis vector e_x.
    pub fn simple(n: usize, x: usize) -> Self {
        let mut values = vec![0; n];
        values[x] = 1;
        DimensionVector { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> u32 {
        self.values[v]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn total(&self) -> u32 {
        self.values.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &DimensionVector) -> DimensionVector {
        assert_eq!(self.len(), other.len());
        DimensionVector {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scaled(&self, m: u32) -> DimensionVector {
        DimensionVector { values: self.values.iter().map(|v| v * m).collect() }
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Integral weight theta; the pairing with a dimension vector is total.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    values: Vec<i64>,
}

impl Weight {
    pub fn new(values: Vec<i64>) -> Self {
        Weight { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> i64 {
        self.values[v]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// theta(d) = sum_x theta(x) d(x).
    pub fn pairing(&self, d: &DimensionVector) -> i64 {
        assert_eq!(self.len(), d.len(), "weight/dimension vertex sets differ");
        self.values
            .iter()
            .zip(d.values())
            .map(|(&t, &v)| t * v as i64)
            .sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        let theta = Weight::new(vec![1, -1]);
        assert_eq!(theta.pairing(&DimensionVector::new(vec![1, 1])), 0);
        assert_eq!(theta.pairing(&DimensionVector::new(vec![1, 0])), 1);
        assert_eq!(theta.pairing(&DimensionVector::zero(2)), 0);
    }
}
