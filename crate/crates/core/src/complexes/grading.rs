use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use super::ComplexError;

/// A `(p, q)` type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: usize,
    pub q: usize,
}

impl Bidegree {
    pub const fn new(p: usize, q: usize) -> Self {
        Bidegree { p, q }
    }

    pub fn total(self) -> usize {
        self.p + self.q
    }

    /// `self + shift`, or `None` when a coordinate would go negative.
    pub fn shifted(self, shift: Shift) -> Option<Bidegree> {
        let p = self.p as i64 + shift.dp as i64;
        let q = self.q as i64 + shift.dq as i64;
        (p >= 0 && q >= 0).then(|| Bidegree::new(p as usize, q as usize))
    }

    pub fn conjugate(self) -> Bidegree {
        Bidegree::new(self.q, self.p)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Shift {
    pub dp: i32,
    pub dq: i32,
}

impl Shift {
    pub const ZERO: Shift = Shift { dp: 0, dq: 0 };
    pub const DEL: Shift = Shift { dp: 1, dq: 0 };
    pub const DELBAR: Shift = Shift { dp: 0, dq: 1 };

    pub const fn new(dp: i32, dq: i32) -> Self {
        Shift { dp, dq }
    }

    pub fn total(self) -> i32 {
        self.dp + self.dq
    }
}

impl Add for Shift {
    type Output = Shift;
    fn add(self, rhs: Shift) -> Shift {
        Shift::new(self.dp + rhs.dp, self.dq + rhs.dq)
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dp, self.dq)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_degree(k: i64) -> Parity {
        if k.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Finite bigraded vector space `⊕ V^{p,q}` with `0 ≤ p, q ≤ n`, each slot
/// carrying one label per basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedSpace {
    n: usize,
    slots: BTreeMap<Bidegree, Vec<String>>,
}

impl BigradedSpace {
    pub fn new(n: usize) -> Self {
        BigradedSpace {
            n,
            slots: BTreeMap::new(),
        }
    }

    /// Builds a space from slot dimensions with generated labels `e(p,q)#k`.
    pub fn from_dims(n: usize, dims: &BTreeMap<Bidegree, usize>) -> Result<Self, ComplexError> {
        let mut space = BigradedSpace::new(n);
        for (&bd, &dim) in dims {
            if dim > 0 {
                let labels = (0..dim).map(|k| format!("e{bd}#{k}")).collect();
                space.add_slot(bd, labels)?;
            }
        }
        Ok(space)
    }

    pub fn add_slot(&mut self, bd: Bidegree, labels: Vec<String>) -> Result<(), ComplexError> {
        if bd.p > self.n || bd.q > self.n {
            return Err(ComplexError::OutOfRange { slot: bd, n: self.n });
        }
        if labels.is_empty() {
            return Ok(());
        }
        for l in &labels {
            if self.slots.values().flatten().any(|x| x == l) || labels.iter().filter(|x| *x == l).count() > 1 {
                return Err(ComplexError::DuplicateLabel(l.clone()));
            }
        }
        if self.slots.insert(bd, labels).is_some() {
            return Err(ComplexError::DuplicateSlot(bd));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self, bd: Bidegree) -> usize {
        self.slots.get(&bd).map_or(0, Vec::len)
    }

    pub fn labels(&self, bd: Bidegree) -> &[String] {
        self.slots.get(&bd).map_or(&[], Vec::as_slice)
    }

    /// Nonempty slots in `(p, q)` order.
    pub fn slots(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.slots.iter().map(|(&bd, l)| (bd, l.len()))
    }

    /// Every bidegree of the `(n+1) × (n+1)` grid, empty or not.
    pub fn grid(&self) -> impl Iterator<Item = Bidegree> {
        let n = self.n;
        (0..=n).flat_map(move |p| (0..=n).map(move |q| Bidegree::new(p, q)))
    }

    pub fn in_grid(&self, bd: Bidegree) -> bool {
        bd.p <= self.n && bd.q <= self.n
    }

    pub fn max_total_degree(&self) -> usize {
        2 * self.n
    }

    /// Slots of total degree `k` with their offsets in the total-degree basis
    /// (ordered by increasing `p`).
    pub fn total_layout(&self, k: usize) -> Vec<(Bidegree, usize)> {
        let mut offset = 0;
        let mut out = Vec::new();
        for p in 0..=k.min(self.n) {
            let q = k - p;
            if q > self.n {
                continue;
            }
            let bd = Bidegree::new(p, q);
            let d = self.dim(bd);
            if d > 0 {
                out.push((bd, offset));
                offset += d;
            }
        }
        out
    }

    pub fn total_dim(&self, k: usize) -> usize {
        self.slots
            .iter()
            .filter(|(bd, _)| bd.total() == k)
            .map(|(_, l)| l.len())
            .sum()
    }

    pub fn dimension(&self) -> usize {
        self.slots.values().map(Vec::len).sum()
    }
}
