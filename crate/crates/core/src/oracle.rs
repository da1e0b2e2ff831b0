//! Exhaustive ground truth for small special linear groups: enumeration,
//! U2 elements, commutator values, word lengths by breadth-first search,
//! and derived subgroups.
//!
//! Elements are stored as row-major vectors of indices into the field's scan
//! order and keyed by the base-`q` integer they spell (first entry most
//! significant), kept sorted for binary search.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::unipotent::is_u2;

/// Default cap on `|SL_n(F_q)|`.
pub const DEFAULT_BUDGET: u64 = 200_000;

/// Cap on `q^(n^2)` for the brute-force enumeration used when `n > 2`.
const BRUTE_CAP: u64 = 1 << 22;

/// `|SL_n(F_q)| = (1 / (q - 1)) prod_{i < n} (q^n - q^i)`.
pub fn group_order_formula(q: u64, n: u32) -> u128 {
    let q = q as u128;
    let qn = q.pow(n);
    (0..n).map(|i| qn - q.pow(i)).product::<u128>() / (q - 1)
}

/// Every element of `SL_n(F)` for a finite field `F`.
#[derive(Clone, Debug)]
pub struct GroupTable<F: Field> {
    field: F,
    n: usize,
    elems: Vec<F::Elem>,
    add: Vec<u32>,
    mul: Vec<u32>,
    codes: Vec<u64>,
    entries: Vec<u32>,
    u2: Vec<usize>,
    identity: usize,
    zero: u32,
}

pub fn enumerate_group<F: Field>(field: &F, n: usize, budget: u64) -> Result<GroupTable<F>> {
    let q = field
        .size()
        .ok_or_else(|| Error::PreconditionViolated("finite field required".into()))?;
    if n == 0 {
        return Err(Error::PreconditionViolated("size at least 1".into()));
    }
    let order = group_order_formula(q, n as u32);
    if order > budget as u128 {
        return Err(Error::BudgetExceeded {
            size: order.min(u64::MAX as u128) as u64,
            budget,
        });
    }
    let elems: Vec<F::Elem> = field.scan().collect();
    let qs = q as usize;
    let index_of = |e: &F::Elem| elems.iter().position(|x| x == e).expect("field element") as u32;
    let mut add = vec![0u32; qs * qs];
    let mut mul = vec![0u32; qs * qs];
    for i in 0..qs {
        for j in 0..qs {
            add[i * qs + j] = index_of(&field.add(&elems[i], &elems[j]));
            mul[i * qs + j] = index_of(&field.mul(&elems[i], &elems[j]));
        }
    }
    let zero = index_of(&field.zero());
    let one = index_of(&field.one());
    let mut table = GroupTable {
        field: field.clone(),
        n,
        elems: elems.clone(),
        add,
        mul,
        codes: Vec::new(),
        entries: Vec::new(),
        u2: Vec::new(),
        identity: 0,
        zero,
    };
    let mut found: Vec<Vec<u32>> = Vec::with_capacity(order as usize);
    if n == 1 {
        found.push(vec![one]);
    } else if n == 2 {
        // d = (1 + bc) / a, or any d when a = 0 and bc = -1
        let neg_one = index_of(&field.neg(&field.one()));
        for a in 0..q as u32 {
            for b in 0..q as u32 {
                for c in 0..q as u32 {
                    let bc = table.mul_idx(b, c);
                    if a != zero {
                        let num = table.add_idx(one, bc);
                        let ainv = field.inv(&table.elems[a as usize]).expect("nonzero");
                        let d = index_of(&field.mul(&table.elems[num as usize], &ainv));
                        found.push(vec![a, b, c, d]);
                    } else if bc == neg_one {
                        for d in 0..q as u32 {
                            found.push(vec![a, b, c, d]);
                        }
                    }
                }
            }
        }
    } else {
        let total = q
            .checked_pow((n * n) as u32)
            .filter(|&t| t <= BRUTE_CAP)
            .ok_or(Error::BudgetExceeded {
                size: order.min(u64::MAX as u128) as u64,
                budget,
            })?;
        for code in 0..total {
            let idx = table.decode(code);
            if table.matrix_of(&idx).det() == field.one() {
                found.push(idx);
            }
        }
    }
    let mut keyed: Vec<(u64, Vec<u32>)> = found.into_iter().map(|e| (table.encode(&e), e)).collect();
    keyed.sort_unstable_by_key(|(c, _)| *c);
    keyed.dedup_by_key(|(c, _)| *c);
    for (c, e) in keyed {
        table.codes.push(c);
        table.entries.extend(e);
    }
    let id: Vec<u32> = (0..n * n)
        .map(|k| if k % (n + 1) == 0 { one } else { zero })
        .collect();
    table.identity = table.lookup(&id).expect("identity present");
    table.u2 = (0..table.order())
        .filter(|&i| is_u2(&table.element(i)))
        .collect();
    Ok(table)
}

impl<F: Field> GroupTable<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.codes.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Ids of the U2 elements, ascending.
    pub fn u2_ids(&self) -> &[usize] {
        &self.u2
    }

    fn q(&self) -> usize {
        self.elems.len()
    }

    fn add_idx(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q() + b as usize]
    }

    fn mul_idx(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q() + b as usize]
    }

    fn encode(&self, idx: &[u32]) -> u64 {
        idx.iter().fold(0u64, |acc, &i| acc * self.q() as u64 + i as u64)
    }

    fn decode(&self, mut code: u64) -> Vec<u32> {
        let q = self.q() as u64;
        let mut out = vec![0u32; self.n * self.n];
        for slot in out.iter_mut().rev() {
            *slot = (code % q) as u32;
            code /= q;
        }
        out
    }

    fn matrix_of(&self, idx: &[u32]) -> Matrix<F> {
        let data = idx.iter().map(|&i| self.elems[i as usize].clone()).collect();
        Matrix::new(self.field.clone(), self.n, data).expect("square")
    }

    fn entries_of(&self, id: usize) -> &[u32] {
        let nn = self.n * self.n;
        &self.entries[id * nn..(id + 1) * nn]
    }

    fn lookup(&self, idx: &[u32]) -> Option<usize> {
        self.codes.binary_search(&self.encode(idx)).ok()
    }

    /// Canonical integer key of an element.
    pub fn code(&self, id: usize) -> u64 {
        self.codes[id]
    }

    pub fn element(&self, id: usize) -> Matrix<F> {
        self.matrix_of(self.entries_of(id))
    }

    /// Id of a matrix, if it lies in the group.
    pub fn id_of(&self, m: &Matrix<F>) -> Option<usize> {
        if m.n() != self.n || m.field() != &self.field {
            return None;
        }
        let idx: Option<Vec<u32>> = m
            .entries()
            .iter()
            .map(|e| self.elems.iter().position(|x| x == e).map(|p| p as u32))
            .collect();
        self.lookup(&idx?)
    }

    pub fn mul_ids(&self, a: usize, b: usize) -> usize {
        let n = self.n;
        let (x, y) = (self.entries_of(a), self.entries_of(b));
        let zero = self.zero;
        let mut out = vec![zero; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero;
                for k in 0..n {
                    acc = self.add_idx(acc, self.mul_idx(x[i * n + k], y[k * n + j]));
                }
                out[i * n + j] = acc;
            }
        }
        self.lookup(&out).expect("closed under multiplication")
    }

    pub fn inv_id(&self, a: usize) -> usize {
        let inv = self.element(a).inverse().expect("invertible");
        self.id_of(&inv).expect("closed under inversion")
    }

    pub fn commutator_ids(&self, x: usize, y: usize) -> usize {
        let xy = self.mul_ids(x, y);
        let t = self.mul_ids(xy, self.inv_id(x));
        self.mul_ids(t, self.inv_id(y))
    }

    /// Inverse of every element, by id.
    pub fn inverse_table(&self) -> Vec<usize> {
        (0..self.order()).map(|a| self.inv_id(a)).collect()
    }
}

/// All values `[X, Y]` over U2 pairs, deduplicated, ascending.
pub fn commutator_generators<F: Field>(t: &GroupTable<F>) -> Vec<usize> {
    let inv = t.inverse_table();
    let mut seen = vec![false; t.order()];
    for &x in t.u2_ids() {
        for &y in t.u2_ids() {
            let xy = t.mul_ids(x, y);
            let v = t.mul_ids(t.mul_ids(xy, inv[x]), inv[y]);
            seen[v] = true;
        }
    }
    (0..t.order()).filter(|&i| seen[i]).collect()
}

/// Minimal number of commutator factors per element; `None` when unreachable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthTable {
    pub lengths: Vec<Option<u32>>,
}

impl LengthTable {
    pub fn get(&self, id: usize) -> Option<u32> {
        self.lengths[id]
    }

    /// Largest finite length.
    pub fn max_finite(&self) -> u32 {
        self.lengths.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn reachable(&self) -> Vec<usize> {
        (0..self.lengths.len()).filter(|&i| self.lengths[i].is_some()).collect()
    }
}

/// Distances from the identity in the Cayley graph with right
/// multiplication by `gens`.
pub fn bfs_from<F: Field>(t: &GroupTable<F>, gens: &[usize]) -> LengthTable {
    let mut lengths = vec![None; t.order()];
    let mut queue = VecDeque::new();
    lengths[t.identity()] = Some(0);
    queue.push_back(t.identity());
    while let Some(g) = queue.pop_front() {
        let d = lengths[g].unwrap();
        for &s in gens {
            let h = t.mul_ids(g, s);
            if lengths[h].is_none() {
                lengths[h] = Some(d + 1);
                queue.push_back(h);
            }
        }
    }
    LengthTable { lengths }
}

/// Word lengths over the U2 commutator values.
pub fn bfs_lengths<F: Field>(t: &GroupTable<F>) -> LengthTable {
    bfs_from(t, &commutator_generators(t))
}

/// Subgroup generated by all commutators `[x, y]` of group elements.
pub fn derived_subgroup<F: Field>(t: &GroupTable<F>) -> Vec<usize> {
    let inv = t.inverse_table();
    let mut seen = vec![false; t.order()];
    for x in 0..t.order() {
        for y in 0..t.order() {
            let xy = t.mul_ids(x, y);
            seen[t.mul_ids(t.mul_ids(xy, inv[x]), inv[y])] = true;
        }
    }
    let gens: Vec<usize> = (0..t.order()).filter(|&i| seen[i]).collect();
    bfs_from(t, &gens).reachable()
}

/// Outcome of comparing length-one elements against the trace criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceReport {
    pub checked: usize,
    /// Nonscalar ids where the two sides disagree.
    pub exceptions: Vec<usize>,
}

impl TraceReport {
    pub fn passed(&self) -> bool {
        self.exceptions.is_empty()
    }
}

/// For every nonscalar element of `SL_2`: length one exactly when
/// `tr - 2` is a nonzero square.
pub fn check_trace_characterization<F: Field>(
    t: &GroupTable<F>,
    lengths: &LengthTable,
) -> Result<TraceReport> {
    if t.n() != 2 {
        return Err(Error::SizeMismatch(t.n(), 2));
    }
    let f = t.field();
    let two = f.from_i64(2);
    let mut checked = 0;
    let mut exceptions = Vec::new();
    for id in 0..t.order() {
        let m = t.element(id);
        if m.is_scalar() {
            continue;
        }
        checked += 1;
        let d = f.sub(&m.trace(), &two);
        let predicted = !f.is_zero(&d) && f.sqrt(&d).is_some();
        if predicted != (lengths.get(id) == Some(1)) {
            exceptions.push(id);
        }
    }
    Ok(TraceReport {
        checked,
        exceptions,
    })
}
