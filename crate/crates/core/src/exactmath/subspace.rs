use super::matrix::{ExactMatrix, Vector};
use super::scalar::GaussianRational;
use super::ExactError;

/// A linear subspace of `ℚ(i)^ambient_dim`, stored as the nonzero rows of a
/// reduced row echelon form. The echelon form is unique per subspace, so
/// `==` compares subspaces, not spanning sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::span(ambient_dim, ExactMatrix::identity(ambient_dim).columns())
    }

    /// Span of arbitrary (possibly dependent) vectors of length `ambient_dim`.
    pub fn span(ambient_dim: usize, vectors: Vec<Vector>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient_dim));
        if vectors.is_empty() || ambient_dim == 0 {
            return Self::zero(ambient_dim);
        }
        let m = ExactMatrix::from_rows(vectors, ambient_dim).expect("vector lengths checked");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|k| r.row(k).to_vec()).collect();
        Subspace {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after clearing every pivot coordinate with basis
    /// vectors. Zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[GaussianRational]) -> Vector {
        let mut out = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let f = out[p].clone();
            if f.is_zero() {
                continue;
            }
            for (o, bk) in out.iter_mut().zip(b) {
                if !bk.is_zero() {
                    *o -= &(&f * bk);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[GaussianRational]) -> bool {
        self.reduce(v).iter().all(GaussianRational::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), ExactError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(ExactError::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient_dim, vs))
    }

    /// `u ∩ v` from the kernel of `[U | −V]`: each kernel vector `(a, b)`
    /// gives the common element `Σ aₖ uₖ`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.check_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect::<Vector>()));
        let m = ExactMatrix::from_columns(self.ambient_dim, &cols);
        let ker = m.kernel_basis();
        let vectors = ker
            .basis()
            .iter()
            .map(|coeffs| {
                let mut v = vec![GaussianRational::zero(); self.ambient_dim];
                for (c, u) in coeffs.iter().zip(&self.basis) {
                    if c.is_zero() {
                        continue;
                    }
                    for (vk, uk) in v.iter_mut().zip(u) {
                        *vk += &(c * uk);
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::span(self.ambient_dim, vectors))
    }

    /// Image of the subspace under `t`.
    pub fn map(&self, t: &ExactMatrix) -> Subspace {
        assert_eq!(t.cols(), self.ambient_dim);
        Subspace::span(t.rows(), self.basis.iter().map(|v| t.mul_vec(v)).collect())
    }
}

/// The subquotient `num / den` with a canonical coset basis: the vectors of
/// `num` that vanish on the pivot coordinates of `den`, in echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    num: Subspace,
    den: Subspace,
    reps: Subspace,
}

impl Quotient {
    pub fn new(num: Subspace, den: Subspace) -> Result<Self, ExactError> {
        num.check_ambient(&den)?;
        if let Some(v) = den.basis.iter().find(|v| !num.contains(v)) {
            return Err(ExactError::NotContained {
                vector: v.clone(),
                context: "numerator (denominator must be a subspace of the numerator)",
            });
        }
        let reps = Subspace::span(num.ambient_dim, num.basis.iter().map(|v| den.reduce(v)).collect());
        debug_assert_eq!(reps.dim() + den.dim(), num.dim());
        Ok(Quotient { num, den, reps })
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.num.ambient_dim
    }

    pub fn numerator(&self) -> &Subspace {
        &self.num
    }

    pub fn denominator(&self) -> &Subspace {
        &self.den
    }

    /// Canonical coset representatives, one per quotient basis element.
    pub fn representatives(&self) -> &[Vector] {
        self.reps.basis()
    }

    /// Coordinates of the class of `v` in the representative basis.
    pub fn coordinates(&self, v: &[GaussianRational]) -> Result<Vector, ExactError> {
        if !self.num.contains(v) {
            return Err(ExactError::NotContained {
                vector: v.to_vec(),
                context: "target numerator",
            });
        }
        let r = self.den.reduce(v);
        Ok(self.reps.pivots().iter().map(|&p| r[p].clone()).collect())
    }

    pub fn is_zero_class(&self, v: &[GaussianRational]) -> bool {
        self.den.contains(v)
    }
}

/// Matrix of the map `src.num/src.den → dst.num/dst.den` induced by `t`.
pub fn induced_map(t: &ExactMatrix, src: &Quotient, dst: &Quotient) -> Result<ExactMatrix, ExactError> {
    if t.cols() != src.ambient_dim() || t.rows() != dst.ambient_dim() {
        return Err(ExactError::ShapeMismatch {
            expected: (dst.ambient_dim(), src.ambient_dim()),
            found: t.shape(),
        });
    }
    for v in src.den.basis() {
        let w = t.mul_vec(v);
        if !dst.den.contains(&w) {
            return Err(ExactError::NotContained {
                vector: v.clone(),
                context: "source denominator whose image leaves the target denominator",
            });
        }
    }
    let mut cols = Vec::with_capacity(src.dim());
    for v in src.representatives() {
        let w = t.mul_vec(v);
        match dst.coordinates(&w) {
            Ok(c) => cols.push(c),
            Err(_) => {
                return Err(ExactError::NotContained {
                    vector: v.clone(),
                    context: "source numerator whose image leaves the target numerator",
                })
            }
        }
    }
    Ok(ExactMatrix::from_columns(dst.dim(), &cols))
}

/// Free-standing form of [`induced_map`] taking the four subspaces.
pub fn induced_quotient_map(
    t: &ExactMatrix,
    num_src: &Subspace,
    den_src: &Subspace,
    num_dst: &Subspace,
    den_dst: &Subspace,
) -> Result<ExactMatrix, ExactError> {
    let src = Quotient::new(num_src.clone(), den_src.clone())?;
    let dst = Quotient::new(num_dst.clone(), den_dst.clone())?;
    induced_map(t, &src, &dst)
}
