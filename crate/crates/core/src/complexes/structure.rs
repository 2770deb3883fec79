//! Bicomplexes generated by structure equations: the exterior algebra on
//! degree-one generators, with `d` given on generators and extended by the
//! Leibniz rule.

use std::collections::{BTreeMap, HashMap};

use crate::exactmath::{ExactMatrix, GaussianRational, Vector};

use super::bicomplex::Bicomplex;
use super::grading::{Bidegree, BigradedSpace, Parity, Shift};
use super::operator::GradedOperator;
use super::ComplexError;

const MAX_GENERATORS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDecl {
    pub name: String,
    pub bidegree: Bidegree,
}

/// `coeff · f₁ ∧ f₂ ∧ …`, factors named as declared (`~name` for conjugates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: GaussianRational,
    pub factors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialDecl {
    pub generator: String,
    pub terms: Vec<Term>,
}

/// Declarative model: generators of type (1,0) or (0,1) and `d` on them.
/// Conjugate generators and their differentials are implied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureSpec {
    pub name: String,
    pub n: usize,
    pub generators: Vec<GeneratorDecl>,
    pub differentials: Vec<DifferentialDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("unknown generator `{name}` in d {equation}")]
    UnknownGenerator { name: String, equation: String },
    #[error("`{0}` is not a valid generator name")]
    InvalidName(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("differential of `{0}` given twice")]
    DuplicateDifferential(String),
    #[error("generator `{name}` has type {bidegree}; expected (1,0) or (0,1)")]
    InvalidGeneratorType { name: String, bidegree: Bidegree },
    #[error("d {generator}: term of degree {degree}, expected 2")]
    NonHomogeneous { generator: String, degree: usize },
    #[error("d {generator}: term of type {term} is not of type (p+1,q) or (p,q+1)")]
    NonIntegrable { generator: String, term: Bidegree },
    #[error("{declared} generators of type (1,0) declared for complex dimension {n}")]
    GeneratorCount { declared: usize, n: usize },
    #[error("d^2 {generator} = {witness} != 0")]
    DSquaredNonzero { generator: String, witness: String },
    #[error("at most {MAX_GENERATORS} generators (including conjugates) are supported")]
    TooManyGenerators,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub bidegree: Bidegree,
    pub conjugate: usize,
}

/// Monomial basis of `Λ[generators]`. A monomial is a bitmask of generator
/// indices, read in increasing index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorAlgebra {
    n: usize,
    generators: Vec<Generator>,
    slots: BTreeMap<Bidegree, Vec<u64>>,
    position: HashMap<u64, (Bidegree, usize)>,
}

/// Sign and product of two monomials; `None` when they share a factor.
fn wedge(a: u64, b: u64) -> Option<(u64, bool)> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        swaps += (a >> (y + 1)).count_ones();
        rest &= rest - 1;
    }
    Some((a | b, swaps % 2 == 1))
}

type Image = Vec<(u64, GaussianRational)>;

impl ExteriorAlgebra {
    pub fn new(n: usize, generators: Vec<Generator>) -> Result<Self, StructureError> {
        if generators.len() > MAX_GENERATORS {
            return Err(StructureError::TooManyGenerators);
        }
        let mut slots: BTreeMap<Bidegree, Vec<u64>> = BTreeMap::new();
        for mask in 0u64..(1u64 << generators.len()) {
            let bd = Self::bidegree_of(&generators, mask);
            slots.entry(bd).or_default().push(mask);
        }
        let key = |m: &u64| -> Vec<u32> { (0..64).filter(|b| m >> b & 1 == 1).collect() };
        for masks in slots.values_mut() {
            masks.sort_by_key(key);
        }
        let mut position = HashMap::new();
        for (&bd, masks) in &slots {
            for (k, &m) in masks.iter().enumerate() {
                position.insert(m, (bd, k));
            }
        }
        Ok(ExteriorAlgebra {
            n,
            generators,
            slots,
            position,
        })
    }

    fn bidegree_of(generators: &[Generator], mask: u64) -> Bidegree {
        let (mut p, mut q) = (0, 0);
        for (k, g) in generators.iter().enumerate() {
            if mask >> k & 1 == 1 {
                p += g.bidegree.p;
                q += g.bidegree.q;
            }
        }
        Bidegree::new(p, q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn monomial_label(&self, mask: u64) -> String {
        if mask == 0 {
            return "1".to_string();
        }
        self.generators
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, g)| g.name.as_str())
            .collect::<Vec<_>>()
            .join("^")
    }

    pub fn space(&self) -> BigradedSpace {
        let mut space = BigradedSpace::new(self.n);
        for (&bd, masks) in &self.slots {
            let labels = masks.iter().map(|&m| self.monomial_label(m)).collect();
            space.add_slot(bd, labels).expect("exterior monomials fit the grid");
        }
        space
    }

    /// Sorted monomial and sign for an ordered product of generator indices;
    /// `None` if a factor repeats.
    pub fn ordered_product(&self, factors: &[usize]) -> Option<(u64, GaussianRational)> {
        let mut mask = 0u64;
        let mut negative = false;
        for &f in factors {
            let (m, s) = wedge(mask, 1u64 << f)?;
            mask = m;
            negative ^= s;
        }
        Some((mask, GaussianRational::from(if negative { -1 } else { 1 })))
    }

    /// Slot and coordinate vector of the wedge of the named generators in
    /// the given order.
    pub fn vector(&self, factors: &[&str]) -> Option<(Bidegree, Vector)> {
        let idx: Option<Vec<usize>> = factors.iter().map(|f| self.generator_index(f)).collect();
        let (mask, sign) = self.ordered_product(&idx?)?;
        let (bd, k) = self.position[&mask];
        let mut v = vec![GaussianRational::zero(); self.slots[&bd].len()];
        v[k] = sign;
        Some((bd, v))
    }

    /// Image of one monomial under the odd derivation with the given values
    /// on generators.
    fn apply_odd_derivation(&self, mask: u64, images: &[Image]) -> BTreeMap<u64, GaussianRational> {
        let mut out: BTreeMap<u64, GaussianRational> = BTreeMap::new();
        let mut seen = 0u32;
        for (b, image) in images.iter().enumerate().take(self.generators.len()) {
            if mask >> b & 1 == 0 {
                continue;
            }
            let outer_negative = seen % 2 == 1;
            seen += 1;
            let pre = mask & ((1u64 << b) - 1);
            let post = mask & !((1u64 << (b + 1)) - 1);
            for (t, c) in image {
                let Some((m1, s1)) = wedge(pre, *t) else { continue };
                let Some((m2, s2)) = wedge(m1, post) else { continue };
                let coeff = if outer_negative ^ s1 ^ s2 {
                    -c.clone()
                } else {
                    c.clone()
                };
                let e = out.entry(m2).or_insert_with(GaussianRational::zero);
                *e += &coeff;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// The odd derivation determined by its values on generators, as one
    /// graded operator per bidegree shift.
    pub fn odd_derivation(&self, images: &[Image]) -> BTreeMap<Shift, GradedOperator> {
        let mut parts: BTreeMap<Shift, GradedOperator> = BTreeMap::new();
        let mut blocks: BTreeMap<(Shift, Bidegree), ExactMatrix> = BTreeMap::new();
        for (&src, masks) in &self.slots {
            for (col, &m) in masks.iter().enumerate() {
                for (dst, c) in self.apply_odd_derivation(m, images) {
                    let (tbd, row) = self.position[&dst];
                    let shift = Shift::new(tbd.p as i32 - src.p as i32, tbd.q as i32 - src.q as i32);
                    let block = blocks
                        .entry((shift, src))
                        .or_insert_with(|| ExactMatrix::zeros(self.slots[&tbd].len(), masks.len()));
                    block.set(row, col, c);
                }
            }
        }
        for ((shift, src), m) in blocks {
            parts
                .entry(shift)
                .or_insert_with(|| GradedOperator::zero(shift, Parity::Odd))
                .set_block(src, m);
        }
        parts
    }

    /// Contraction-type derivation: generator `k` maps to the scalar
    /// `values[k]`.
    pub fn contraction_parts(&self, values: &[GaussianRational]) -> BTreeMap<Shift, GradedOperator> {
        let images: Vec<Image> = values
            .iter()
            .map(|v| {
                if v.is_zero() {
                    Vec::new()
                } else {
                    vec![(0u64, v.clone())]
                }
            })
            .collect();
        self.odd_derivation(&images)
    }
}

/// Output of [`from_structure_equations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureModel {
    pub algebra: ExteriorAlgebra,
    pub bicomplex: Bicomplex,
}

pub fn conjugate_name(name: &str) -> String {
    match name.strip_prefix('~') {
        Some(base) => base.to_string(),
        None => format!("~{name}"),
    }
}

pub fn from_structure_equations(spec: &StructureSpec) -> Result<StructureModel, StructureError> {
    let mut generators: Vec<Generator> = Vec::new();
    for g in &spec.generators {
        if g.bidegree != Bidegree::new(1, 0) && g.bidegree != Bidegree::new(0, 1) {
            return Err(StructureError::InvalidGeneratorType {
                name: g.name.clone(),
                bidegree: g.bidegree,
            });
        }
        if g.name.starts_with('~') || g.name == "i" || g.name.is_empty() {
            return Err(StructureError::InvalidName(g.name.clone()));
        }
        if generators.iter().any(|x| x.name == g.name) {
            return Err(StructureError::DuplicateGenerator(g.name.clone()));
        }
        generators.push(Generator {
            name: g.name.clone(),
            bidegree: g.bidegree,
            conjugate: 0,
        });
    }
    let declared = generators.len();
    if declared * 2 > MAX_GENERATORS {
        return Err(StructureError::TooManyGenerators);
    }
    for k in 0..declared {
        let g = &generators[k];
        let conj = Generator {
            name: conjugate_name(&g.name),
            bidegree: g.bidegree.conjugate(),
            conjugate: k,
        };
        generators[k].conjugate = declared + k;
        generators.push(conj);
    }
    let holomorphic = generators.iter().filter(|g| g.bidegree == Bidegree::new(1, 0)).count();
    if holomorphic != spec.n {
        return Err(StructureError::GeneratorCount {
            declared: holomorphic,
            n: spec.n,
        });
    }
    let algebra = ExteriorAlgebra::new(spec.n, generators)?;

    let mut images: Vec<Image> = vec![Vec::new(); algebra.generators().len()];
    let mut given = vec![false; declared];
    for decl in &spec.differentials {
        let Some(g) = algebra.generator_index(&decl.generator).filter(|&g| g < declared) else {
            if algebra.generator_index(&decl.generator).is_some() {
                return Err(StructureError::DuplicateDifferential(decl.generator.clone()));
            }
            return Err(StructureError::UnknownGenerator {
                name: decl.generator.clone(),
                equation: decl.generator.clone(),
            });
        };
        if given[g] {
            return Err(StructureError::DuplicateDifferential(decl.generator.clone()));
        }
        given[g] = true;
        let gen_bd = algebra.generators()[g].bidegree;
        let mut image: BTreeMap<u64, GaussianRational> = BTreeMap::new();
        let mut conj_image: BTreeMap<u64, GaussianRational> = BTreeMap::new();
        for term in &decl.terms {
            if term.factors.len() != 2 {
                return Err(StructureError::NonHomogeneous {
                    generator: decl.generator.clone(),
                    degree: term.factors.len(),
                });
            }
            let idx = term
                .factors
                .iter()
                .map(|f| {
                    algebra
                        .generator_index(f)
                        .ok_or_else(|| StructureError::UnknownGenerator {
                            name: f.clone(),
                            equation: decl.generator.clone(),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let term_bd = idx.iter().fold(Bidegree::new(0, 0), |acc, &k| {
                let b = algebra.generators()[k].bidegree;
                Bidegree::new(acc.p + b.p, acc.q + b.q)
            });
            if term_bd != Bidegree::new(gen_bd.p + 1, gen_bd.q) && term_bd != Bidegree::new(gen_bd.p, gen_bd.q + 1) {
                return Err(StructureError::NonIntegrable {
                    generator: decl.generator.clone(),
                    term: term_bd,
                });
            }
            if let Some((mask, sign)) = algebra.ordered_product(&idx) {
                *image.entry(mask).or_insert_with(GaussianRational::zero) += &(&sign * &term.coeff);
            }
            let cidx: Vec<usize> = idx.iter().map(|&k| algebra.generators()[k].conjugate).collect();
            if let Some((mask, sign)) = algebra.ordered_product(&cidx) {
                *conj_image.entry(mask).or_insert_with(GaussianRational::zero) += &(&sign * &term.coeff.conj());
            }
        }
        images[g] = image.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        images[declared + g] = conj_image.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }

    // d² is an even derivation, so it vanishes iff it vanishes on generators
    for (g, image) in images.iter().enumerate() {
        let mut dd: BTreeMap<u64, GaussianRational> = BTreeMap::new();
        for (mask, c) in image {
            for (m, v) in algebra.apply_odd_derivation(*mask, &images) {
                *dd.entry(m).or_insert_with(GaussianRational::zero) += &(c * &v);
            }
        }
        if let Some((m, c)) = dd.into_iter().find(|(_, c)| !c.is_zero()) {
            return Err(StructureError::DSquaredNonzero {
                generator: algebra.generators()[g].name.clone(),
                witness: format!("{c} {}", algebra.monomial_label(m)),
            });
        }
    }

    let space = algebra.space();
    let mut parts = algebra.odd_derivation(&images);
    let del = parts
        .remove(&Shift::DEL)
        .unwrap_or_else(|| GradedOperator::zero(Shift::DEL, Parity::Odd));
    let delbar = parts
        .remove(&Shift::DELBAR)
        .unwrap_or_else(|| GradedOperator::zero(Shift::DELBAR, Parity::Odd));
    if let Some((shift, op)) = parts.into_iter().next() {
        let (slot, _) = op.blocks().next().expect("nonzero component");
        return Err(StructureError::NonIntegrable {
            generator: format!("component {shift} at {slot}"),
            term: slot.shifted(shift).unwrap_or(slot),
        });
    }
    let bicomplex = Bicomplex::new(space, Some(del), delbar)?;
    debug_assert!(bicomplex.validate().passed());
    Ok(StructureModel { algebra, bicomplex })
}
