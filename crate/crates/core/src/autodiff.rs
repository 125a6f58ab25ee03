//! Straight-line programs over Z_p recorded on a tape, differentiated by a
//! single reverse sweep.
//!
//! Operation counting: every field operation (`+`, `-`, `*`, `/`, negation)
//! counts as one, in both directions. Leaves are free. Under that model each
//! node's reverse step costs at most four operations while its forward step
//! costs one, so a sweep never exceeds five times the recorded work.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::field::{Fe, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TapeError {
    #[error("division by zero at node {0}")]
    DivisionByZero(usize),
    #[error("node {0} does not exist")]
    InvalidNode(usize),
    #[error("{op:?} takes {expected} arguments, got {got}")]
    Arity { op: OpKind, expected: usize, got: usize },
}

/// What to record. Leaves carry their value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Input(Fe),
    Const(Fe),
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Input,
    Const,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

impl Op {
    fn kind(self) -> OpKind {
        match self {
            Op::Input(_) => OpKind::Input,
            Op::Const(_) => OpKind::Const,
            Op::Add => OpKind::Add,
            Op::Sub => OpKind::Sub,
            Op::Mul => OpKind::Mul,
            Op::Div => OpKind::Div,
            Op::Neg => OpKind::Neg,
        }
    }

    fn arity(self) -> usize {
        match self {
            Op::Input(_) | Op::Const(_) => 0,
            Op::Neg => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Node {
    kind: OpKind,
    a: u32,
    b: u32,
    value: Fe,
    // inverse of the divisor, kept for the reverse step of Div
    aux: Fe,
}

#[derive(Debug, Clone)]
pub struct Tape {
    field: PrimeField,
    nodes: Vec<Node>,
    inputs: Vec<usize>,
    forward_ops: u64,
}

/// Partial derivatives of one output with respect to every input node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gradient {
    pub partials: BTreeMap<usize, Fe>,
    /// Field operations spent in the sweep.
    pub ops: u64,
}

impl Gradient {
    pub fn get(&self, input: usize) -> Option<Fe> {
        self.partials.get(&input).copied()
    }
}

impl Tape {
    pub fn new(field: PrimeField) -> Self {
        Self { field, nodes: Vec::new(), inputs: Vec::new(), forward_ops: 0 }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn value(&self, node: usize) -> Fe {
        self.nodes[node].value
    }

    /// Field operations performed while recording.
    pub fn forward_ops(&self) -> u64 {
        self.forward_ops
    }

    pub fn record(&mut self, op: Op, args: &[usize]) -> Result<usize, TapeError> {
        if args.len() != op.arity() {
            return Err(TapeError::Arity { op: op.kind(), expected: op.arity(), got: args.len() });
        }
        let idx = self.nodes.len();
        if let Some(&bad) = args.iter().find(|&&a| a >= idx) {
            return Err(TapeError::InvalidNode(bad));
        }
        let f = self.field;
        let arg = |i: usize| self.nodes[args[i]].value;
        let mut aux = Fe::ZERO;
        let value = match op {
            Op::Input(v) | Op::Const(v) => v,
            Op::Add => f.add(arg(0), arg(1)),
            Op::Sub => f.sub(arg(0), arg(1)),
            Op::Mul => f.mul(arg(0), arg(1)),
            Op::Neg => f.neg(arg(0)),
            Op::Div => {
                aux = f.inv(arg(1)).map_err(|_| TapeError::DivisionByZero(idx))?;
                f.mul(arg(0), aux)
            }
        };
        if op.arity() > 0 {
            self.forward_ops += 1;
        }
        let a = args.first().copied().unwrap_or(0) as u32;
        let b = args.get(1).copied().unwrap_or(0) as u32;
        self.nodes.push(Node { kind: op.kind(), a, b, value, aux });
        if let Op::Input(_) = op {
            self.inputs.push(idx);
        }
        Ok(idx)
    }

    pub fn input(&mut self, v: Fe) -> usize {
        self.record(Op::Input(v), &[]).expect("leaf")
    }

    pub fn constant(&mut self, v: Fe) -> usize {
        self.record(Op::Const(v), &[]).expect("leaf")
    }

    pub fn add(&mut self, a: usize, b: usize) -> usize {
        self.record(Op::Add, &[a, b]).expect("valid args")
    }

    pub fn sub(&mut self, a: usize, b: usize) -> usize {
        self.record(Op::Sub, &[a, b]).expect("valid args")
    }

    pub fn mul(&mut self, a: usize, b: usize) -> usize {
        self.record(Op::Mul, &[a, b]).expect("valid args")
    }

    pub fn neg(&mut self, a: usize) -> usize {
        self.record(Op::Neg, &[a]).expect("valid args")
    }

    pub fn div(&mut self, a: usize, b: usize) -> Result<usize, TapeError> {
        self.record(Op::Div, &[a, b])
    }

    /// Recomputes every node from the leaves. Used to check forward
    /// consistency.
    pub fn replay(&self) -> Vec<Fe> {
        let f = self.field;
        let mut vals: Vec<Fe> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let (a, b) = (node.a as usize, node.b as usize);
            let v = match node.kind {
                OpKind::Input | OpKind::Const => node.value,
                OpKind::Add => f.add(vals[a], vals[b]),
                OpKind::Sub => f.sub(vals[a], vals[b]),
                OpKind::Mul => f.mul(vals[a], vals[b]),
                OpKind::Neg => f.neg(vals[a]),
                OpKind::Div => f.div(vals[a], vals[b]).unwrap_or(Fe::ZERO),
            };
            vals.push(v);
        }
        vals
    }

    pub fn reverse_sweep(&self, output: usize) -> Result<Gradient, TapeError> {
        if output >= self.nodes.len() {
            return Err(TapeError::InvalidNode(output));
        }
        let f = self.field;
        let mut adj = vec![Fe::ZERO; output + 1];
        adj[output] = Fe::ONE;
        let mut ops = 0u64;
        for k in (0..=output).rev() {
            let g = adj[k];
            if g.is_zero() {
                continue;
            }
            let node = self.nodes[k];
            let (a, b) = (node.a as usize, node.b as usize);
            match node.kind {
                OpKind::Input | OpKind::Const => {}
                OpKind::Add => {
                    adj[a] = f.add(adj[a], g);
                    adj[b] = f.add(adj[b], g);
                    ops += 2;
                }
                OpKind::Sub => {
                    adj[a] = f.add(adj[a], g);
                    adj[b] = f.sub(adj[b], g);
                    ops += 2;
                }
                OpKind::Mul => {
                    let (va, vb) = (self.nodes[a].value, self.nodes[b].value);
                    adj[a] = f.add(adj[a], f.mul(g, vb));
                    adj[b] = f.add(adj[b], f.mul(g, va));
                    ops += 4;
                }
                OpKind::Neg => {
                    adj[a] = f.sub(adj[a], g);
                    ops += 1;
                }
                OpKind::Div => {
                    // c = a / b: dc/da = 1/b, dc/db = -c/b
                    let t = f.mul(g, node.aux);
                    adj[a] = f.add(adj[a], t);
                    adj[b] = f.sub(adj[b], f.mul(t, node.value));
                    ops += 4;
                }
            }
        }
        let partials = self
            .inputs
            .iter()
            .map(|&i| (i, if i <= output { adj[i] } else { Fe::ZERO }))
            .collect();
        Ok(Gradient { partials, ops })
    }
}

/// Records Gaussian elimination of the `n x n` matrix whose entries are the
/// given nodes (row-major) and returns the node holding the determinant.
///
/// The pivot in each column is the first row with a nonzero value at record
/// time. The derivative obtained from a sweep is that of the traced program,
/// which agrees with the derivative of the determinant whenever the
/// determinant is nonzero at the recorded point. A singular point yields a
/// constant zero node.
pub fn record_determinant(tape: &mut Tape, entries: &[usize], n: usize) -> Result<usize, TapeError> {
    assert_eq!(entries.len(), n * n);
    if n == 0 {
        return Ok(tape.constant(Fe::ONE));
    }
    let mut a: Vec<usize> = entries.to_vec();
    let mut swaps = 0usize;
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| !tape.value(a[r * n + k]).is_zero()) else {
            return Ok(tape.constant(Fe::ZERO));
        };
        if r != k {
            for j in 0..n {
                a.swap(r * n + j, k * n + j);
            }
            swaps += 1;
        }
        let piv = a[k * n + k];
        pivots.push(piv);
        for i in (k + 1)..n {
            let factor = tape.div(a[i * n + k], piv)?;
            for j in (k + 1)..n {
                let t = tape.mul(factor, a[k * n + j]);
                a[i * n + j] = tape.sub(a[i * n + j], t);
            }
        }
    }
    let mut det = pivots[0];
    for &p in &pivots[1..] {
        det = tape.mul(det, p);
    }
    if swaps % 2 == 1 {
        det = tape.neg(det);
    }
    Ok(det)
}
