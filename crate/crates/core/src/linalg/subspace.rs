use crate::choice::Choice;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// A linear subspace of `Q^n`, stored by a basis in reduced column-echelon
/// form. The form is canonical, so two subspaces are equal iff their bases
/// are equal as matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    /// Row index at which each basis column has its leading 1; every other
    /// basis column vanishes there.
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the columns of `generators`.
    pub fn span(generators: &Matrix) -> Self {
        let ambient_dim = generators.rows();
        let rref = generators.transpose().rref();
        let k = rref.pivots.len();
        let basis = rref.reduced.block(0, 0, k, ambient_dim).transpose();
        Subspace {
            ambient_dim,
            basis,
            pivots: rref.pivots,
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(ambient_dim, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of the columns of `v` in this basis, or `None` if some
    /// column lies outside the subspace.
    pub fn coordinates(&self, v: &Matrix) -> Option<Matrix> {
        assert_eq!(v.rows(), self.ambient_dim, "ambient mismatch");
        let coords = v.select_rows(&self.pivots);
        if &self.basis * &coords == *v {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &Matrix) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.contains(&other.basis)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&self.basis.hstack(&other.basis))
    }

    /// Image of this subspace under `m`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        Subspace::span(&(m * &self.basis))
    }
}

/// Kernel `{v : m v = 0}` of a matrix.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let n = m.cols();
    let rref = m.rref();
    let mut is_pivot = vec![false; n];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut gens = Matrix::zeros(n, free.len());
    for (j, &f) in free.iter().enumerate() {
        gens[(f, j)] = Rational::one();
        for (i, &p) in rref.pivots.iter().enumerate() {
            let v = &rref.reduced[(i, f)];
            if !v.is_zero() {
                gens[(p, j)] = -v;
            }
        }
    }
    Subspace::span(&gens)
}

/// Column space of a matrix.
pub fn image_basis(m: &Matrix) -> Subspace {
    Subspace::span(m)
}

/// Solves `m x = b` column by column. `Ok(None)` means some column of `b`
/// is outside the image of `m`; a shape mismatch is an error.
pub fn solve(m: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if m.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "solve: {}x{} system with {}-row right-hand side",
            m.rows(),
            m.cols(),
            b.rows()
        )));
    }
    let n = m.cols();
    let rref = m.hstack(b).rref();
    if rref.pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = Matrix::zeros(n, b.cols());
    for (i, &p) in rref.pivots.iter().enumerate() {
        for c in 0..b.cols() {
            x[(p, c)] = rref.reduced[(i, n + c)].clone();
        }
    }
    Ok(Some(x))
}

/// Like [`solve`], then moves each solution within its affine solution set
/// according to `choice`.
pub fn solve_with(m: &Matrix, b: &Matrix, choice: &mut Choice) -> Result<Option<Matrix>> {
    let Some(x) = solve(m, b)? else {
        return Ok(None);
    };
    if choice.is_canonical() {
        return Ok(Some(x));
    }
    Ok(Some(choice.perturb(x, &kernel_basis(m))))
}

/// A subquotient `numerator / denominator` of `Q^n` with a fixed basis.
///
/// Representatives are the numerator basis columns at the non-pivot
/// positions of the denominator (in numerator coordinates). The reduction
/// map is exact on the numerator; outside it its values carry no meaning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPresentation {
    ambient_dim: usize,
    numerator: Subspace,
    denominator: Subspace,
    representatives: Matrix,
    reduction: Matrix,
}

impl QuotientPresentation {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }

    pub fn numerator(&self) -> &Subspace {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }

    /// Columns represent a basis of the quotient.
    pub fn representatives(&self) -> &Matrix {
        &self.representatives
    }

    /// Ambient vectors to quotient coordinates.
    pub fn reduction(&self) -> &Matrix {
        &self.reduction
    }

    pub fn reduce(&self, v: &Matrix) -> Matrix {
        &self.reduction * v
    }
}

/// `Q^ambient_dim / w`.
pub fn quotient(ambient_dim: usize, w: &Subspace) -> Result<QuotientPresentation> {
    if w.ambient_dim() != ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "quotient of Q^{ambient_dim} by a subspace of Q^{}",
            w.ambient_dim()
        )));
    }
    subquotient(&Subspace::full(ambient_dim), w)
}

/// `numerator / denominator`; the denominator must lie in the numerator.
pub fn subquotient(numerator: &Subspace, denominator: &Subspace) -> Result<QuotientPresentation> {
    let n = numerator.ambient_dim();
    if denominator.ambient_dim() != n {
        return Err(Error::DimensionMismatch(
            "subquotient ambient dimensions differ".into(),
        ));
    }
    let Some(den_coords) = numerator.coordinates(denominator.basis()) else {
        return Err(Error::WellDefinedness(
            "denominator is not contained in numerator".into(),
        ));
    };
    let z = numerator.dim();
    let w = Subspace::span(&den_coords);
    let mut is_pivot = vec![false; z];
    for &p in w.pivots() {
        is_pivot[p] = true;
    }
    let kept: Vec<usize> = (0..z).filter(|&i| !is_pivot[i]).collect();

    // In numerator coordinates: R = (I - W * E_pivots) restricted to kept rows.
    let mut reduce_z = Matrix::zeros(kept.len(), z);
    for (r, &i) in kept.iter().enumerate() {
        reduce_z[(r, i)] = Rational::one();
        for (j, &p) in w.pivots().iter().enumerate() {
            let v = &w.basis()[(i, j)];
            if !v.is_zero() {
                reduce_z[(r, p)] -= v;
            }
        }
    }
    let mut select = Matrix::zeros(z, n);
    for (i, &p) in numerator.pivots().iter().enumerate() {
        select[(i, p)] = Rational::one();
    }
    Ok(QuotientPresentation {
        ambient_dim: n,
        numerator: numerator.clone(),
        denominator: denominator.clone(),
        representatives: numerator.basis().select_columns(&kept),
        reduction: &reduce_z * &select,
    })
}

/// Matrix of the map induced by `m` between two subquotients, in their
/// representative bases.
pub fn induced_map(
    src: &QuotientPresentation,
    dst: &QuotientPresentation,
    m: &Matrix,
) -> Result<Matrix> {
    if m.cols() != src.ambient_dim || m.rows() != dst.ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "induced map: {}x{} matrix between ambients {} and {}",
            m.rows(),
            m.cols(),
            src.ambient_dim,
            dst.ambient_dim
        )));
    }
    if !dst.numerator.contains(&(m * src.numerator.basis())) {
        return Err(Error::WellDefinedness(
            "map does not carry numerator into numerator".into(),
        ));
    }
    if !dst.denominator.contains(&(m * src.denominator.basis())) {
        return Err(Error::WellDefinedness(
            "map does not carry denominator into denominator".into(),
        ));
    }
    Ok(&dst.reduction * &(m * &src.representatives))
}
