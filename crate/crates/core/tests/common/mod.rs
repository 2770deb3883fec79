//! Shared test support: reference tables and a modular-arithmetic
//! cohomology oracle that shares no code with the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use bigraded_core::{Bicomplex, Bidegree, GaussianRational};

pub const P: u64 = 1_000_000_009;

pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64) -> u64 {
    assert_ne!(a % P, 0, "inverse of zero");
    pow(a, P - 2)
}

pub fn from_i64(v: i64) -> u64 {
    v.rem_euclid(P as i64) as u64
}

/// A square root of `-1`; exists since `P ≡ 1 (mod 4)`.
pub fn sqrt_minus_one() -> u64 {
    let g = (2..).find(|&g| pow(g, (P - 1) / 2) == P - 1).unwrap();
    let r = pow(g, (P - 1) / 4);
    assert_eq!(mul(r, r), P - 1);
    r
}

fn big_to_fp(x: &num_bigint::BigInt) -> u64 {
    let m = x % num_bigint::BigInt::from(P);
    let m = if m < num_bigint::BigInt::from(0) { m + P } else { m };
    m.try_into().unwrap()
}

pub fn gaussian_to_fp(g: &GaussianRational, i: u64) -> u64 {
    let part = |r: &num_rational::BigRational| mul(big_to_fp(r.numer()), inv(big_to_fp(r.denom())));
    (part(g.re()) + mul(i, part(g.im()))) % P
}

/// Row-major matrix over `F_P`.
#[derive(Clone, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Vec<u64>>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            a: vec![vec![0; cols]; rows],
        }
    }

    pub fn rank(&self) -> usize {
        let mut a = self.a.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| a[r][c] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let s = inv(a[rank][c]);
            for x in a[rank].iter_mut() {
                *x = mul(*x, s);
            }
            for r in 0..self.rows {
                if r != rank && a[r][c] != 0 {
                    let f = a[r][c];
                    let pivot_row = a[rank].clone();
                    for (x, &y) in a[r].iter_mut().zip(&pivot_row) {
                        *x = (*x + P - mul(f, y)) % P;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.a[r][k] == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    out.a[r][c] = (out.a[r][c] + mul(self.a[r][k], rhs.a[k][c])) % P;
                }
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.rows, rhs.rows);
        let a = self
            .a
            .iter()
            .zip(&rhs.a)
            .map(|(x, y)| x.iter().chain(y).copied().collect())
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols + rhs.cols,
            a,
        }
    }

    pub fn vstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.cols);
        Mat {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            a: self.a.iter().chain(&rhs.a).cloned().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().flatten().all(|&x| x == 0)
    }
}

pub type Slot = (usize, usize);

/// A bicomplex over `F_P`: `del` raises `p`, `delbar` raises `q`.
/// Missing blocks are zero.
#[derive(Clone, Debug)]
pub struct FpBicomplex {
    pub n: usize,
    pub dims: BTreeMap<Slot, usize>,
    pub del: BTreeMap<Slot, Mat>,
    pub delbar: BTreeMap<Slot, Mat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpTables {
    pub dolbeault: BTreeMap<Slot, usize>,
    pub anti: BTreeMap<Slot, usize>,
    pub bott_chern: BTreeMap<Slot, usize>,
    pub aeppli: BTreeMap<Slot, usize>,
    pub betti: Vec<usize>,
}

impl FpBicomplex {
    pub fn dim(&self, s: (i64, i64)) -> usize {
        if s.0 < 0 || s.1 < 0 {
            return 0;
        }
        self.dims.get(&(s.0 as usize, s.1 as usize)).copied().unwrap_or(0)
    }

    fn block(&self, map: &BTreeMap<Slot, Mat>, src: (i64, i64), tgt: (i64, i64)) -> Mat {
        let rows = self.dim(tgt);
        let cols = self.dim(src);
        if rows == 0 || cols == 0 {
            return Mat::zeros(rows, cols);
        }
        map.get(&(src.0 as usize, src.1 as usize))
            .cloned()
            .unwrap_or_else(|| Mat::zeros(rows, cols))
    }

    /// `∂` out of `(p,q)`.
    pub fn del_at(&self, p: i64, q: i64) -> Mat {
        self.block(&self.del, (p, q), (p + 1, q))
    }

    /// `∂̄` out of `(p,q)`.
    pub fn delbar_at(&self, p: i64, q: i64) -> Mat {
        self.block(&self.delbar, (p, q), (p, q + 1))
    }

    fn slots_of_degree(&self, k: usize) -> Vec<Slot> {
        self.dims
            .iter()
            .filter(|(s, &d)| s.0 + s.1 == k && d > 0)
            .map(|(s, _)| *s)
            .collect()
    }

    /// Total `d` from degree `k` to `k + 1`.
    pub fn d_total(&self, k: usize) -> Mat {
        let src = self.slots_of_degree(k);
        let tgt = self.slots_of_degree(k + 1);
        let offsets = |v: &[Slot]| {
            let mut o = BTreeMap::new();
            let mut acc = 0;
            for s in v {
                o.insert(*s, acc);
                acc += self.dims[s];
            }
            (o, acc)
        };
        let (so, cols) = offsets(&src);
        let (to, rows) = offsets(&tgt);
        let mut m = Mat::zeros(rows, cols);
        for &(p, q) in &src {
            let (p, q) = (p as i64, q as i64);
            for (blk, t) in [(self.del_at(p, q), (p + 1, q)), (self.delbar_at(p, q), (p, q + 1))] {
                let Some(&r0) = to.get(&(t.0 as usize, t.1 as usize)) else {
                    continue;
                };
                let c0 = so[&(p as usize, q as usize)];
                for r in 0..blk.rows {
                    for c in 0..blk.cols {
                        m.a[r0 + r][c0 + c] = (m.a[r0 + r][c0 + c] + blk.a[r][c]) % P;
                    }
                }
            }
        }
        m
    }

    pub fn squares_to_zero(&self) -> bool {
        let top = 2 * self.n;
        (0..top.saturating_sub(1)).all(|k| self.d_total(k + 1).mul(&self.d_total(k)).is_zero())
    }

    pub fn tables(&self) -> FpTables {
        let n = self.n as i64;
        let mut t = FpTables {
            dolbeault: BTreeMap::new(),
            anti: BTreeMap::new(),
            bott_chern: BTreeMap::new(),
            aeppli: BTreeMap::new(),
            betti: Vec::new(),
        };
        for p in 0..=n {
            for q in 0..=n {
                let dim = self.dim((p, q));
                let slot = (p as usize, q as usize);
                let dol = dim - self.delbar_at(p, q).rank() - self.delbar_at(p, q - 1).rank();
                let anti = dim - self.del_at(p, q).rank() - self.del_at(p - 1, q).rank();
                let both = self.del_at(p, q).vstack(&self.delbar_at(p, q));
                let ddbar_in = self.del_at(p - 1, q).mul(&self.delbar_at(p - 1, q - 1));
                let bc = dim - both.rank() - ddbar_in.rank();
                let ddbar_out = self.del_at(p, q + 1).mul(&self.delbar_at(p, q));
                let images = self.del_at(p - 1, q).hstack(&self.delbar_at(p, q - 1));
                let ae = dim - ddbar_out.rank() - images.rank();
                t.dolbeault.insert(slot, dol);
                t.anti.insert(slot, anti);
                t.bott_chern.insert(slot, bc);
                t.aeppli.insert(slot, ae);
            }
        }
        for k in 0..=2 * self.n {
            let dim: usize = self.slots_of_degree(k).iter().map(|s| self.dims[s]).sum();
            let out = self.d_total(k).rank();
            let inc = if k == 0 { 0 } else { self.d_total(k - 1).rank() };
            t.betti.push(dim - out - inc);
        }
        t
    }

    /// Reduction of a library bicomplex, `i ↦ sqrt(-1)`.
    pub fn reduce(b: &Bicomplex) -> FpBicomplex {
        let i = sqrt_minus_one();
        let n = b.n();
        let conv = |m: &bigraded_core::ExactMatrix| {
            let mut out = Mat::zeros(m.rows(), m.cols());
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    out.a[r][c] = gaussian_to_fp(m.get(r, c), i);
                }
            }
            out
        };
        let mut f = FpBicomplex {
            n,
            dims: BTreeMap::new(),
            del: BTreeMap::new(),
            delbar: BTreeMap::new(),
        };
        for p in 0..=n {
            for q in 0..=n {
                let bd = Bidegree::new(p, q);
                f.dims.insert((p, q), b.space().dim(bd));
                f.delbar.insert((p, q), conv(&b.delbar_block(bd)));
                if b.has_del() {
                    f.del.insert((p, q), conv(&b.del_block(bd)));
                }
            }
        }
        f
    }
}

/// Left-invariant forms on a nilpotent Lie group: exterior algebra on
/// `z_1..z_m` of type (1,0) and their conjugates of type (0,1), with
/// `d` on generators given by quadratic terms.
pub struct LieData {
    pub n: usize,
    /// Generator `j < n` is `z_j`, generator `n + j` is its conjugate.
    /// Each entry: `(coefficient, a, b)` meaning `coefficient · g_a ∧ g_b`.
    pub d: Vec<Vec<(i64, usize, usize)>>,
}

fn wedge_sign(a: u32, b: u32) -> Option<u64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0;
    for x in 0..32 {
        if a >> x & 1 == 1 {
            swaps += (b & ((1u32 << x) - 1)).count_ones();
        }
    }
    Some(if swaps % 2 == 0 { 1 } else { P - 1 })
}

impl LieData {
    pub fn bicomplex(&self) -> FpBicomplex {
        let n = self.n;
        let gens = 2 * n;
        let bideg = |m: u32| {
            let p = (0..n).filter(|&j| m >> j & 1 == 1).count();
            let q = (n..gens).filter(|&j| m >> j & 1 == 1).count();
            (p, q)
        };
        let mut basis: BTreeMap<Slot, Vec<u32>> = BTreeMap::new();
        for m in 0..(1u32 << gens) {
            basis.entry(bideg(m)).or_default().push(m);
        }
        let index: BTreeMap<u32, usize> = basis
            .values()
            .flat_map(|v| v.iter().enumerate().map(|(i, &m)| (m, i)))
            .collect();
        let mut f = FpBicomplex {
            n,
            dims: basis.iter().map(|(s, v)| (*s, v.len())).collect(),
            del: BTreeMap::new(),
            delbar: BTreeMap::new(),
        };
        for (&(p, q), monos) in &basis {
            let mut del = Mat::zeros(f.dim((p as i64 + 1, q as i64)), monos.len());
            let mut delbar = Mat::zeros(f.dim((p as i64, q as i64 + 1)), monos.len());
            for (c, &m) in monos.iter().enumerate() {
                let mut pos = 0;
                for g in 0..gens {
                    if m >> g & 1 == 0 {
                        continue;
                    }
                    let pre = m & ((1u32 << g) - 1);
                    let post = m & !((1u32 << (g + 1)) - 1);
                    let sign_g = if pos % 2 == 0 { 1 } else { P - 1 };
                    pos += 1;
                    for &(coef, a, b) in &self.d[g] {
                        let (Some(s0), mid) = (wedge_sign(1 << a, 1 << b), (1u32 << a) | (1u32 << b)) else {
                            continue;
                        };
                        let Some(s1) = wedge_sign(pre, mid) else { continue };
                        let Some(s2) = wedge_sign(pre | mid, post) else {
                            continue;
                        };
                        let t = pre | mid | post;
                        let v = mul(mul(mul(sign_g, s0), mul(s1, s2)), from_i64(coef));
                        let r = index[&t];
                        let target = if bideg(t).0 == p + 1 { &mut del } else { &mut delbar };
                        target.a[r][c] = (target.a[r][c] + v) % P;
                    }
                }
            }
            f.del.insert((p, q), del);
            f.delbar.insert((p, q), delbar);
        }
        f
    }
}

pub fn torus_data(n: usize) -> LieData {
    LieData {
        n,
        d: vec![Vec::new(); 2 * n],
    }
}

/// `d z3 = -z1 ∧ z2` and its conjugate.
pub fn iwasawa_data() -> LieData {
    let mut d = vec![Vec::new(); 6];
    d[2] = vec![(-1, 0, 1)];
    d[5] = vec![(-1, 3, 4)];
    LieData { n: 3, d }
}

/// `d z2 = z1 ∧ z̄1` and its conjugate `d z̄2 = z̄1 ∧ z1`.
pub fn kodaira_thurston_data() -> LieData {
    let mut d = vec![Vec::new(); 4];
    d[1] = vec![(1, 0, 2)];
    d[3] = vec![(1, 2, 0)];
    LieData { n: 2, d }
}

/// Invariant model of the Hopf manifold of complex dimension `n`:
/// `ΛΘ ⊗ H_B` with `H_B` spanned by `w^j` in `(j,j)`, `∂̄θ10 = i w`,
/// `∂θ01 = -i w`, extended as derivations.
pub fn hopf_data(n: usize) -> FpBicomplex {
    let i = sqrt_minus_one();
    let prefixes: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let elems: Vec<(usize, usize)> = (0..4).flat_map(|a| (0..n).map(move |j| (a, j))).collect();
    let slot = |(a, j): (usize, usize)| (prefixes[a].0 + j, prefixes[a].1 + j);
    let mut basis: BTreeMap<Slot, Vec<(usize, usize)>> = BTreeMap::new();
    for &e in &elems {
        basis.entry(slot(e)).or_default().push(e);
    }
    let pos = |e: (usize, usize)| basis[&slot(e)].iter().position(|&x| x == e).unwrap();
    let mut f = FpBicomplex {
        n,
        dims: basis.iter().map(|(s, v)| (*s, v.len())).collect(),
        del: BTreeMap::new(),
        delbar: BTreeMap::new(),
    };
    for (&(p, q), es) in &basis {
        let mut del = Mat::zeros(f.dim((p as i64 + 1, q as i64)), es.len());
        let mut delbar = Mat::zeros(f.dim((p as i64, q as i64 + 1)), es.len());
        for (c, &(a, j)) in es.iter().enumerate() {
            if j + 1 >= n {
                continue;
            }
            let l = j + 1;
            match a {
                1 => del.a[pos((0, l))][c] = P - i,
                2 => delbar.a[pos((0, l))][c] = i,
                3 => {
                    delbar.a[pos((1, l))][c] = i;
                    del.a[pos((2, l))][c] = i;
                }
                _ => {}
            }
        }
        f.del.insert((p, q), del);
        f.delbar.insert((p, q), delbar);
    }
    f
}

pub struct Golden {
    pub dolbeault: &'static [&'static [usize]],
    pub anti: &'static [&'static [usize]],
    pub bott_chern: &'static [&'static [usize]],
    pub aeppli: &'static [&'static [usize]],
    pub betti: &'static [usize],
}

/// Grid entry `[p][q]`.
pub fn grid_map(g: &[&[usize]]) -> BTreeMap<Slot, usize> {
    let mut m = BTreeMap::new();
    for (p, row) in g.iter().enumerate() {
        for (q, &v) in row.iter().enumerate() {
            m.insert((p, q), v);
        }
    }
    m
}

impl Golden {
    pub fn matches(&self, t: &FpTables) -> bool {
        grid_map(self.dolbeault) == t.dolbeault
            && grid_map(self.anti) == t.anti
            && grid_map(self.bott_chern) == t.bott_chern
            && grid_map(self.aeppli) == t.aeppli
            && self.betti == t.betti.as_slice()
    }
}

pub const IWASAWA: Golden = Golden {
    dolbeault: &[&[1, 2, 2, 1], &[3, 6, 6, 3], &[3, 6, 6, 3], &[1, 2, 2, 1]],
    anti: &[&[1, 3, 3, 1], &[2, 6, 6, 2], &[2, 6, 6, 2], &[1, 3, 3, 1]],
    bott_chern: &[&[1, 2, 3, 1], &[2, 4, 6, 2], &[3, 6, 8, 3], &[1, 2, 3, 1]],
    aeppli: &[&[1, 3, 2, 1], &[3, 8, 6, 3], &[2, 6, 4, 2], &[1, 3, 2, 1]],
    betti: &[1, 4, 8, 10, 8, 4, 1],
};

pub const KODAIRA_THURSTON: Golden = Golden {
    dolbeault: &[&[1, 2, 1], &[1, 2, 1], &[1, 2, 1]],
    anti: &[&[1, 1, 1], &[2, 2, 2], &[1, 1, 1]],
    bott_chern: &[&[1, 1, 1], &[1, 3, 2], &[1, 2, 1]],
    aeppli: &[&[1, 2, 1], &[2, 3, 1], &[1, 1, 1]],
    betti: &[1, 3, 4, 3, 1],
};

pub const HOPF2: Golden = Golden {
    dolbeault: &[&[1, 1, 0], &[0, 0, 0], &[0, 1, 1]],
    anti: &[&[1, 0, 0], &[1, 0, 1], &[0, 0, 1]],
    bott_chern: &[&[1, 0, 0], &[0, 1, 1], &[0, 1, 1]],
    aeppli: &[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]],
    betti: &[1, 1, 0, 1, 1],
};

pub const HOPF3: Golden = Golden {
    dolbeault: &[&[1, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 1]],
    anti: &[&[1, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 1]],
    bott_chern: &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 1]],
    aeppli: &[&[1, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
    betti: &[1, 1, 0, 0, 0, 1, 1],
};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// Library tables of a bicomplex, keyed like [`FpTables`].
pub fn library_tables(b: &Bicomplex) -> FpTables {
    use bigraded_core::cohomology::{aeppli, anti_dolbeault, bott_chern, derham, dolbeault, CohomologyTable};
    let n = b.n();
    let grid = |t: CohomologyTable| {
        let mut m = BTreeMap::new();
        for p in 0..=n {
            for q in 0..=n {
                m.insert((p, q), t.slot_dim(p, q));
            }
        }
        m
    };
    let dr = derham(b).unwrap();
    FpTables {
        dolbeault: grid(dolbeault(b).unwrap()),
        anti: grid(anti_dolbeault(b).unwrap()),
        bott_chern: grid(bott_chern(b).unwrap()),
        aeppli: grid(aeppli(b).unwrap()),
        betti: (0..=2 * n).map(|k| dr.degree_dim(k)).collect(),
    }
}
