//! Dense univariate polynomials over Z_p and Lagrange interpolation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Accumulator, Fe, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("interpolation nodes repeat (node {0})")]
    DuplicateNode(u64),
    #[error("{xs} nodes but {ys} values")]
    LengthMismatch { xs: usize, ys: usize },
}

/// Coefficient `i` is the coefficient of `y^i`. Always stored without
/// trailing zeros, so the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FieldPoly {
    coeffs: Vec<Fe>,
}

impl FieldPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Fe) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * y^e`.
    pub fn monomial(c: Fe, e: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Fe::ZERO; e + 1];
        coeffs[e] = c;
        Self { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn deg_star(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Nonzero degrees in increasing order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn eval(&self, f: &PrimeField, y: Fe) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, y), c))
    }

    pub fn add(&self, f: &PrimeField, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, f: &PrimeField, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, f: &PrimeField, c: Fe) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplies by `y^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Fe::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Schoolbook product.
    pub fn mul(&self, f: &PrimeField, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::from_coeffs(out)
    }
}

/// `sum_{i <= c} coeff_i(q)`, the coefficient of `y^c` in
/// `q * (1 + y + ... + y^L)` for any `L >= c`.
pub fn prefix_sum_coeff(f: &PrimeField, q: &FieldPoly, c: usize) -> Fe {
    q.coeffs
        .iter()
        .take(c + 1)
        .fold(Fe::ZERO, |acc, &x| f.add(acc, x))
}

/// Lagrange basis polynomials for a fixed node set, stored as a
/// `len x len` table: `table[k * len + d]` is coefficient `d` of `L_k`.
///
/// Building it costs O(len^2); afterwards each interpolation is a single
/// matrix-vector product and any individual coefficient of the interpolant
/// is a dot product.
#[derive(Debug, Clone)]
pub struct LagrangeBasis {
    field: PrimeField,
    nodes: Vec<Fe>,
    table: Vec<Fe>,
}

impl LagrangeBasis {
    pub fn new(f: PrimeField, nodes: &[Fe]) -> Result<Self, PolyError> {
        let len = nodes.len();
        let mut sorted: Vec<u64> = nodes.iter().map(|x| x.value()).collect();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(PolyError::DuplicateNode(w[0]));
        }

        // master polynomial m(y) = prod (y - x_j), degree len
        let mut master = vec![Fe::ZERO; len + 1];
        master[0] = Fe::ONE;
        for (deg, &x) in nodes.iter().enumerate() {
            for i in (0..=deg).rev() {
                let c = master[i];
                master[i + 1] = f.add(master[i + 1], c);
                master[i] = f.mul(f.neg(x), c);
            }
        }

        let denoms: Vec<Fe> = nodes
            .iter()
            .enumerate()
            .map(|(k, &xk)| {
                nodes
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .fold(Fe::ONE, |acc, (_, &xj)| f.mul(acc, f.sub(xk, xj)))
            })
            .collect();
        let inv = f.batch_inv(&denoms).expect("distinct nodes give nonzero denominators");

        let mut table = vec![Fe::ZERO; len * len];
        for (k, &xk) in nodes.iter().enumerate() {
            // synthetic division m(y) / (y - x_k)
            let row = &mut table[k * len..(k + 1) * len];
            let mut carry = Fe::ZERO;
            for d in (0..len).rev() {
                carry = f.add(master[d + 1], f.mul(carry, xk));
                row[d] = carry;
            }
            for c in row.iter_mut() {
                *c = f.mul(*c, inv[k]);
            }
        }
        Ok(Self { field: f, nodes: nodes.to_vec(), table })
    }

    pub fn nodes(&self) -> &[Fe] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Coefficient `d` of `L_k`.
    #[inline]
    pub fn weight(&self, k: usize, d: usize) -> Fe {
        self.table[k * self.nodes.len() + d]
    }

    pub fn interpolate(&self, ys: &[Fe]) -> Result<FieldPoly, PolyError> {
        let len = self.nodes.len();
        if ys.len() != len {
            return Err(PolyError::LengthMismatch { xs: len, ys: ys.len() });
        }
        let mut acc: Vec<Accumulator> = vec![Accumulator::new(self.field); len];
        for (k, &y) in ys.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let row = &self.table[k * len..(k + 1) * len];
            for (a, &w) in acc.iter_mut().zip(row) {
                a.add_mul(w, y);
            }
        }
        Ok(FieldPoly::from_coeffs(acc.into_iter().map(Accumulator::finish).collect()))
    }

    /// Interpolates many value columns at once. `values[k * cols + e]` is
    /// column `e` at node `k`; the result has one polynomial per column.
    pub fn interpolate_columns(&self, values: &[Fe], cols: usize) -> Vec<FieldPoly> {
        let len = self.nodes.len();
        assert_eq!(values.len(), len * cols);
        let mut out: Vec<Vec<Fe>> = vec![Vec::with_capacity(len); cols];
        let mut acc: Vec<Accumulator> = vec![Accumulator::new(self.field); cols];
        for d in 0..len {
            for a in acc.iter_mut() {
                *a = Accumulator::new(self.field);
            }
            for k in 0..len {
                let w = self.weight(k, d);
                if w.is_zero() {
                    continue;
                }
                let row = &values[k * cols..(k + 1) * cols];
                for (a, &v) in acc.iter_mut().zip(row) {
                    a.add_mul(w, v);
                }
            }
            for (o, a) in out.iter_mut().zip(&acc) {
                o.push(a.finish());
            }
        }
        out.into_iter().map(FieldPoly::from_coeffs).collect()
    }
}

/// The unique polynomial of degree `< xs.len()` through the given points.
pub fn lagrange_interpolate(f: &PrimeField, xs: &[Fe], ys: &[Fe]) -> Result<FieldPoly, PolyError> {
    if xs.len() != ys.len() {
        return Err(PolyError::LengthMismatch { xs: xs.len(), ys: ys.len() });
    }
    LagrangeBasis::new(*f, xs)?.interpolate(ys)
}
