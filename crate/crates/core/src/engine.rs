//! Determinants, adjugates and coefficient gradients of polynomial matrices,
//! by evaluation at distinct points followed by Lagrange interpolation.
//!
//! Evaluation points are `1, 2, 3, ...`. The determinant is sampled at the
//! first `D` of them, where `D - 1` bounds its degree. Adjugate entries and
//! gradients need invertible samples, so singular points are skipped and
//! replaced by the next integers until `D` invertible points are found.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::autodiff::{record_determinant, Tape, TapeError};
use crate::field::{Fe, PrimeField};
use crate::poly::{FieldPoly, LagrangeBasis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("field too small: {needed} evaluation points needed, p = {p}")]
    InsufficientField { needed: u64, p: u64 },
    #[error("matrix is singular for every value of y")]
    SingularEverywhere,
    #[error("degree {d} out of range (max {max})")]
    DegreeOutOfRange { d: usize, max: usize },
    #[error("variable {0} is not linked to the matrix")]
    UnknownVariable(usize),
    #[error(transparent)]
    Tape(#[from] TapeError),
}

/// Entry `(row, col)` contains the term `sign * x * y^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Link {
    pub row: usize,
    pub col: usize,
    pub negative: bool,
    pub exp: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarInfo {
    /// sigma(x), the value substituted for the variable.
    pub value: Fe,
    pub links: Vec<Link>,
}

#[derive(Debug, Clone)]
pub struct PolyMatrix {
    field: PrimeField,
    n: usize,
    entries: Vec<FieldPoly>,
    deg_bound: usize,
    var_links: BTreeMap<usize, VarInfo>,
}

impl PolyMatrix {
    pub fn zeros(field: PrimeField, n: usize) -> Self {
        Self {
            field,
            n,
            entries: vec![FieldPoly::zero(); n * n],
            deg_bound: 0,
            var_links: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn deg_bound(&self) -> usize {
        self.deg_bound
    }

    pub fn entry(&self, r: usize, c: usize) -> &FieldPoly {
        &self.entries[r * self.n + c]
    }

    pub fn var_links(&self) -> &BTreeMap<usize, VarInfo> {
        &self.var_links
    }

    pub fn set_entry(&mut self, r: usize, c: usize, q: FieldPoly) {
        if let Some(d) = q.degree() {
            self.deg_bound = self.deg_bound.max(d);
        }
        self.entries[r * self.n + c] = q;
    }

    pub fn add_to_entry(&mut self, r: usize, c: usize, q: &FieldPoly) {
        let sum = self.entry(r, c).add(&self.field, q);
        self.set_entry(r, c, sum);
    }

    /// Adds `sign * value * y^exp` at `(row, col)` and records the link.
    /// A variable may appear at several entries but always with the same
    /// value. A zero value leaves the entries untouched and only registers
    /// the variable for differentiation.
    pub fn add_var_term(&mut self, var: usize, value: Fe, row: usize, col: usize, negative: bool, exp: usize) {
        let info = self
            .var_links
            .entry(var)
            .or_insert(VarInfo { value, links: Vec::new() });
        assert_eq!(info.value, value, "variable {var} substituted inconsistently");
        info.links.push(Link { row, col, negative, exp });
        self.deg_bound = self.deg_bound.max(exp);
        let c = if negative { self.field.neg(value) } else { value };
        self.add_to_entry(row, col, &FieldPoly::monomial(c, exp));
    }

    /// `M + y^exp * I`.
    pub fn add_identity(&mut self, exp: usize) {
        let one = FieldPoly::monomial(Fe::ONE, exp);
        for i in 0..self.n {
            self.add_to_entry(i, i, &one);
        }
    }

    /// `M * y^k`.
    pub fn shift_y(&mut self, k: usize) {
        for e in &mut self.entries {
            *e = e.shift(k);
        }
        for info in self.var_links.values_mut() {
            for l in &mut info.links {
                l.exp += k;
            }
        }
        self.deg_bound += k;
    }

    /// Degree bound for the determinant and every adjugate entry: the sum
    /// over rows of the largest exponent in that row (never more than
    /// `n * deg_bound`).
    pub fn det_degree_bound(&self) -> usize {
        let mut row_max = vec![0usize; self.n];
        for r in 0..self.n {
            for c in 0..self.n {
                if let Some(d) = self.entry(r, c).degree() {
                    row_max[r] = row_max[r].max(d);
                }
            }
        }
        for info in self.var_links.values() {
            for l in &info.links {
                row_max[l.row] = row_max[l.row].max(l.exp);
            }
        }
        row_max.iter().sum::<usize>().min(self.n * self.deg_bound)
    }

    pub fn eval_at(&self, y: Fe) -> Vec<Fe> {
        let f = self.field;
        let mut pows = Vec::with_capacity(self.deg_bound + 1);
        let mut acc = Fe::ONE;
        for _ in 0..=self.deg_bound {
            pows.push(acc);
            acc = f.mul(acc, y);
        }
        self.entries
            .iter()
            .map(|q| f.dot(q.coeffs(), &pows[..q.coeffs().len()]))
            .collect()
    }
}

/// Determinant of a dense matrix by elimination.
pub fn det_dense(f: &PrimeField, mut a: Vec<Fe>, n: usize) -> Fe {
    let mut det = Fe::ONE;
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
            return Fe::ZERO;
        };
        if r != k {
            for j in 0..n {
                a.swap(r * n + j, k * n + j);
            }
            det = f.neg(det);
        }
        let piv = a[k * n + k];
        det = f.mul(det, piv);
        let inv = f.inv(piv).expect("nonzero pivot");
        for i in (k + 1)..n {
            let factor = f.mul(a[i * n + k], inv);
            if factor.is_zero() {
                continue;
            }
            for j in (k + 1)..n {
                a[i * n + j] = f.sub(a[i * n + j], f.mul(factor, a[k * n + j]));
            }
        }
    }
    det
}

/// `(det, adj)` of a dense matrix, or `None` if it is singular.
pub fn adjugate_dense(f: &PrimeField, a: &[Fe], n: usize) -> Option<(Fe, Vec<Fe>)> {
    let w = 2 * n;
    let mut m = vec![Fe::ZERO; n * w];
    for i in 0..n {
        m[i * w..i * w + n].copy_from_slice(&a[i * n..(i + 1) * n]);
        m[i * w + n + i] = Fe::ONE;
    }
    let mut det = Fe::ONE;
    for k in 0..n {
        let r = (k..n).find(|&r| !m[r * w + k].is_zero())?;
        if r != k {
            for j in 0..w {
                m.swap(r * w + j, k * w + j);
            }
            det = f.neg(det);
        }
        let piv = m[k * w + k];
        det = f.mul(det, piv);
        let inv = f.inv(piv).expect("nonzero pivot");
        for j in k..w {
            m[k * w + j] = f.mul(m[k * w + j], inv);
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let factor = m[i * w + k];
            if factor.is_zero() {
                continue;
            }
            for j in k..w {
                m[i * w + j] = f.sub(m[i * w + j], f.mul(factor, m[k * w + j]));
            }
        }
    }
    let mut adj = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            adj.push(f.mul(det, m[i * w + n + j]));
        }
    }
    Some((det, adj))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub deg_star: Option<usize>,
    pub coeffs: FieldPoly,
}

impl DegreeReport {
    fn from_poly(coeffs: FieldPoly) -> Self {
        Self { deg_star: coeffs.deg_star(), coeffs }
    }
}

fn check_field(m: &PolyMatrix, needed: usize) -> Result<(), EngineError> {
    let p = m.field.modulus();
    if needed as u64 >= p {
        return Err(EngineError::InsufficientField { needed: needed as u64, p });
    }
    Ok(())
}

/// Exact determinant polynomial.
pub fn det_poly(m: &PolyMatrix) -> Result<DegreeReport, EngineError> {
    let f = m.field;
    let d = m.det_degree_bound() + 1;
    check_field(m, d)?;
    let points: Vec<Fe> = (1..=d as u64).map(Fe).collect();
    let values: Vec<Fe> = points
        .par_iter()
        .map(|&y| det_dense(&f, m.eval_at(y), m.n))
        .collect();
    let basis = LagrangeBasis::new(f, &points).expect("distinct points");
    Ok(DegreeReport::from_poly(basis.interpolate(&values).expect("matching lengths")))
}

/// Determinant and adjugate values at enough invertible points to recover
/// every adjugate entry and every first derivative of the determinant.
#[derive(Debug, Clone)]
pub struct AdjugateSamples {
    field: PrimeField,
    n: usize,
    points: Vec<Fe>,
    dets: Vec<Fe>,
    adjs: Vec<Vec<Fe>>,
    basis: LagrangeBasis,
}

impl AdjugateSamples {
    pub fn new(m: &PolyMatrix) -> Result<Self, EngineError> {
        let f = m.field;
        let bound = m.det_degree_bound();
        let need = bound + 1;
        check_field(m, need)?;
        let p = f.modulus();
        let mut points = Vec::with_capacity(need);
        let mut dets = Vec::with_capacity(need);
        let mut adjs = Vec::with_capacity(need);
        let mut next = 1u64;
        let mut singular = 0usize;
        while points.len() < need {
            let want = (need - points.len()) as u64;
            if next + want > p {
                return Err(EngineError::InsufficientField { needed: next + want, p });
            }
            let batch: Vec<(Fe, Option<(Fe, Vec<Fe>)>)> = (next..next + want)
                .into_par_iter()
                .map(|y| {
                    let y = Fe(y);
                    (y, adjugate_dense(&f, &m.eval_at(y), m.n))
                })
                .collect();
            next += want;
            for (y, res) in batch {
                match res {
                    Some((det, adj)) => {
                        points.push(y);
                        dets.push(det);
                        adjs.push(adj);
                    }
                    None => singular += 1,
                }
            }
            // a nonzero determinant has at most `bound` roots
            if singular > bound {
                return Err(EngineError::SingularEverywhere);
            }
        }
        let basis = LagrangeBasis::new(f, &points).expect("distinct points");
        Ok(Self { field: f, n: m.n, points, dets, adjs, basis })
    }

    pub fn points(&self) -> &[Fe] {
        &self.points
    }

    pub fn basis(&self) -> &LagrangeBasis {
        &self.basis
    }

    pub fn det_poly(&self) -> DegreeReport {
        DegreeReport::from_poly(self.basis.interpolate(&self.dets).expect("matching lengths"))
    }

    /// Adjugate entries `(i, j)` as polynomials, in the order given.
    pub fn adjugate_entries(&self, which: &[(usize, usize)]) -> Vec<FieldPoly> {
        let cols = which.len();
        let mut values = Vec::with_capacity(cols * self.points.len());
        for adj in &self.adjs {
            for &(i, j) in which {
                values.push(adj[i * self.n + j]);
            }
        }
        self.basis.interpolate_columns(&values, cols)
    }

    /// `deg*` of every adjugate entry.
    pub fn adjugate_degrees(&self) -> Vec<Vec<Option<usize>>> {
        let n = self.n;
        let which: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let polys = self.adjugate_entries(&which);
        polys
            .chunks(n)
            .map(|row| row.iter().map(FieldPoly::deg_star).collect())
            .collect()
    }

    pub fn gradients(&self, m: &PolyMatrix, vars: &[usize], backend: GradientBackend) -> Result<GradientTable, EngineError> {
        match backend {
            GradientBackend::Adjugate => self.gradient_table(m, vars),
            GradientBackend::Tape => self.gradient_table_tape(m, vars),
        }
    }

    /// Chain rule: `d det / dx = sum over links of sign * y^e * adj_{col,row}`.
    pub fn gradient_table(&self, m: &PolyMatrix, vars: &[usize]) -> Result<GradientTable, EngineError> {
        let f = self.field;
        let infos = lookup(m, vars)?;
        let cols = vars.len();
        let mut values = Vec::with_capacity(cols * self.points.len());
        for (k, adj) in self.adjs.iter().enumerate() {
            let y = self.points[k];
            for info in &infos {
                let mut acc = Fe::ZERO;
                for l in &info.links {
                    let t = f.mul(f.pow(y, l.exp as u64), adj[l.col * self.n + l.row]);
                    acc = if l.negative { f.sub(acc, t) } else { f.add(acc, t) };
                }
                values.push(acc);
            }
        }
        Ok(GradientTable::new(f, vars.to_vec(), self.basis.interpolate_columns(&values, cols)))
    }

    /// Same quantity as [`AdjugateSamples::gradient_table`], obtained by
    /// recording the determinant evaluation at each point on a tape and
    /// sweeping it backwards.
    pub fn gradient_table_tape(&self, m: &PolyMatrix, vars: &[usize]) -> Result<GradientTable, EngineError> {
        let f = self.field;
        lookup(m, vars)?;
        let all: Vec<(&usize, &VarInfo)> = m.var_links.iter().collect();
        let per_point: Vec<Result<Vec<Fe>, EngineError>> = self
            .points
            .par_iter()
            .map(|&y| {
                let mut tape = Tape::new(f);
                let inputs: Vec<usize> = all.iter().map(|(_, info)| tape.input(info.value)).collect();
                // constant part of each entry, then add the variable terms
                let mut base = m.eval_at(y);
                let mut terms: Vec<Vec<(usize, Fe)>> = vec![Vec::new(); m.n * m.n];
                for (slot, (_, info)) in all.iter().enumerate() {
                    for l in &info.links {
                        let mut coeff = f.pow(y, l.exp as u64);
                        if l.negative {
                            coeff = f.neg(coeff);
                        }
                        let idx = l.row * m.n + l.col;
                        base[idx] = f.sub(base[idx], f.mul(coeff, info.value));
                        terms[idx].push((slot, coeff));
                    }
                }
                let mut entries = Vec::with_capacity(m.n * m.n);
                for (idx, &b) in base.iter().enumerate() {
                    let mut node = tape.constant(b);
                    for &(slot, coeff) in &terms[idx] {
                        let c = tape.constant(coeff);
                        let t = tape.mul(inputs[slot], c);
                        node = tape.add(node, t);
                    }
                    entries.push(node);
                }
                let det = record_determinant(&mut tape, &entries, m.n)?;
                let grad = tape.reverse_sweep(det)?;
                let by_var: BTreeMap<usize, Fe> = all
                    .iter()
                    .zip(&inputs)
                    .map(|((&v, _), &node)| (v, grad.get(node).unwrap_or(Fe::ZERO)))
                    .collect();
                Ok(vars.iter().map(|v| by_var[v]).collect())
            })
            .collect();
        let cols = vars.len();
        let mut values = Vec::with_capacity(cols * self.points.len());
        for row in per_point {
            values.extend(row?);
        }
        Ok(GradientTable::new(f, vars.to_vec(), self.basis.interpolate_columns(&values, cols)))
    }
}

fn lookup<'a>(m: &'a PolyMatrix, vars: &[usize]) -> Result<Vec<&'a VarInfo>, EngineError> {
    vars.iter()
        .map(|v| m.var_links.get(v).ok_or(EngineError::UnknownVariable(*v)))
        .collect()
}

/// `deg*` of every adjugate entry; `None` marks an identically zero entry.
pub fn adjugate_degree_matrix(m: &PolyMatrix) -> Result<Vec<Vec<Option<usize>>>, EngineError> {
    Ok(AdjugateSamples::new(m)?.adjugate_degrees())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GradientBackend {
    /// Reverse sweep over a recorded elimination at each point.
    Tape,
    /// Chain rule through adjugate entries.
    #[default]
    Adjugate,
}

/// Per-variable polynomials `d det / dx` (as polynomials in y), with cheap
/// coefficient and prefix-sum queries.
#[derive(Debug, Clone)]
pub struct GradientTable {
    field: PrimeField,
    vars: Vec<usize>,
    polys: Vec<FieldPoly>,
    prefix: Vec<Vec<Fe>>,
}

impl GradientTable {
    fn new(field: PrimeField, vars: Vec<usize>, polys: Vec<FieldPoly>) -> Self {
        let prefix = polys
            .iter()
            .map(|q| {
                let mut acc = Fe::ZERO;
                q.coeffs()
                    .iter()
                    .map(|&c| {
                        acc = field.add(acc, c);
                        acc
                    })
                    .collect()
            })
            .collect();
        Self { field, vars, polys, prefix }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    fn slot(&self, var: usize) -> Option<usize> {
        self.vars.binary_search(&var).ok().or_else(|| self.vars.iter().position(|&v| v == var))
    }

    pub fn poly(&self, var: usize) -> Option<&FieldPoly> {
        self.slot(var).map(|s| &self.polys[s])
    }

    /// Coefficient of `y^d` in `d det / dx`.
    pub fn coeff(&self, var: usize, d: usize) -> Fe {
        self.poly(var).map_or(Fe::ZERO, |q| q.coeff(d))
    }

    /// `sum_{i <= d}` of those coefficients.
    pub fn prefix(&self, var: usize, d: usize) -> Fe {
        self.slot(var).map_or(Fe::ZERO, |s| {
            let p = &self.prefix[s];
            if p.is_empty() {
                Fe::ZERO
            } else {
                p[d.min(p.len() - 1)]
            }
        })
    }

    pub fn query(&self, var: usize, d: usize, prefix: bool) -> Fe {
        if prefix {
            self.prefix(var, d)
        } else {
            self.coeff(var, d)
        }
    }

    pub fn at(&self, d: usize, prefix: bool) -> BTreeMap<usize, Fe> {
        self.vars.iter().map(|&v| (v, self.query(v, d, prefix))).collect()
    }
}

/// Gradient table for the given variables (all linked variables when
/// `vars` is `None`).
pub fn gradient_table(
    m: &PolyMatrix,
    backend: GradientBackend,
    vars: Option<&[usize]>,
) -> Result<GradientTable, EngineError> {
    let all: Vec<usize>;
    let vars = match vars {
        Some(v) => v,
        None => {
            all = m.var_links.keys().copied().collect();
            &all
        }
    };
    AdjugateSamples::new(m)?.gradients(m, vars, backend)
}

/// `d/dx` of the coefficient of `y^d` of `det M` (or of the sum of the
/// coefficients up to `d` when `prefix` is set), for every linked variable.
pub fn coeff_gradient(
    m: &PolyMatrix,
    d: usize,
    prefix: bool,
    backend: GradientBackend,
) -> Result<BTreeMap<usize, Fe>, EngineError> {
    let max = m.det_degree_bound();
    if d > max && !prefix {
        return Err(EngineError::DegreeOutOfRange { d, max });
    }
    Ok(gradient_table(m, backend, None)?.at(d, prefix))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ZeroVerdict {
    Nonzero,
    /// Possibly a false zero, with probability at most `error_bound`.
    Zero { error_bound: f64 },
}

/// Schwartz-Zippel verdict for a value obtained at a uniformly random
/// substitution of a polynomial of total degree at most `degree_bound`.
pub fn symbolic_nonzero(field: &PrimeField, f_value: Fe, degree_bound: u64) -> ZeroVerdict {
    if f_value.is_zero() {
        ZeroVerdict::Zero { error_bound: degree_bound as f64 / field.modulus() as f64 }
    } else {
        ZeroVerdict::Nonzero
    }
}
