//! Triangular arrays indexed by `(i, j, k)` with `i + j + k = n`.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::qcore::check_degree;
use crate::tribasis::MultiIndex3;

/// Number of triples `(i, j, k)` with `i + j + k = n`.
#[inline]
pub const fn net_len(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// A triangular net of values of degree `n`, one per index triple.
///
/// Entries are stored in the canonical order used everywhere in the crate:
/// descending `i`, then descending `j` (`k` implied).
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularNet<T> {
    degree: usize,
    values: Vec<T>,
}

/// A net of scalar coefficients `b_ijk`.
pub type CoefficientNet = TriangularNet<f64>;

impl<T> TriangularNet<T> {
    pub fn from_fn(degree: usize, mut f: impl FnMut(MultiIndex3) -> T) -> Result<Self> {
        check_degree(degree)?;
        let values = MultiIndex3::triples(degree).map(&mut f).collect();
        Ok(TriangularNet { degree, values })
    }

    /// Builds a net from values already in canonical order.
    pub fn from_vec(degree: usize, values: Vec<T>) -> Result<Self> {
        check_degree(degree)?;
        if values.len() != net_len(degree) {
            return Err(Error::InvalidNet(format!(
                "degree {degree} needs {} values, got {}",
                net_len(degree),
                values.len()
            )));
        }
        Ok(TriangularNet { degree, values })
    }

    /// Builds a net from `(index, value)` pairs in any order. Every triple of
    /// the given degree must appear exactly once.
    pub fn from_entries(
        degree: usize,
        entries: impl IntoIterator<Item = (MultiIndex3, T)>,
    ) -> Result<Self> {
        check_degree(degree)?;
        let mut slots: Vec<Option<T>> = (0..net_len(degree)).map(|_| None).collect();
        for (idx, value) in entries {
            if idx.degree() != degree {
                return Err(Error::InvalidNet(format!(
                    "entry {idx} does not have degree {degree}"
                )));
            }
            let slot = &mut slots[idx.position()];
            if slot.is_some() {
                return Err(Error::InvalidNet(format!("duplicate entry {idx}")));
            }
            *slot = Some(value);
        }
        let values = slots
            .into_iter()
            .zip(MultiIndex3::triples(degree))
            .map(|(slot, idx)| slot.ok_or_else(|| Error::InvalidNet(format!("missing entry {idx}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(TriangularNet { degree, values })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, idx: MultiIndex3) -> Option<&T> {
        (idx.degree() == self.degree).then(|| &self.values[idx.position()])
    }

    /// Values in canonical order.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (MultiIndex3, &T)> + '_ {
        MultiIndex3::triples(self.degree).zip(self.values.iter())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> TriangularNet<U> {
        TriangularNet {
            degree: self.degree,
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> TriangularNet<T> {
    pub fn constant(degree: usize, value: T) -> Result<Self> {
        Self::from_fn(degree, |_| value.clone())
    }

    /// The corner values `(b_n00, b_0n0, b_00n)`.
    pub fn corners(&self) -> [T; 3] {
        let n = self.degree;
        [
            self[MultiIndex3::new(n, 0, 0)].clone(),
            self[MultiIndex3::new(0, n, 0)].clone(),
            self[MultiIndex3::new(0, 0, n)].clone(),
        ]
    }

    /// Entries with `j = 0`, ordered by increasing `i`: the net of the edge `v = 0`.
    pub fn edge_v0(&self) -> Vec<T> {
        let n = self.degree;
        (0..=n)
            .map(|i| self[MultiIndex3::new(i, 0, n - i)].clone())
            .collect()
    }
}

impl<T> Index<MultiIndex3> for TriangularNet<T> {
    type Output = T;

    fn index(&self, idx: MultiIndex3) -> &T {
        assert_eq!(idx.degree(), self.degree, "index {idx} outside net");
        &self.values[idx.position()]
    }
}

impl<T> IndexMut<MultiIndex3> for TriangularNet<T> {
    fn index_mut(&mut self, idx: MultiIndex3) -> &mut T {
        assert_eq!(idx.degree(), self.degree, "index {idx} outside net");
        &mut self.values[idx.position()]
    }
}

impl CoefficientNet {
    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}
